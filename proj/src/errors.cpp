#include "dctfuse/errors.hpp"

#include <cstdio>

namespace dctfuse {

namespace {

std::string describe(const std::string& kind, const std::string& detail,
                     std::uint8_t marker, std::size_t offset) {
  char where[64];
  if (marker != 0) {
    std::snprintf(where, sizeof where, " (marker 0xFF%02X, byte offset %zu)",
                  static_cast<unsigned>(marker), offset);
  } else {
    std::snprintf(where, sizeof where, " (byte offset %zu)", offset);
  }
  return kind + ": " + detail + where;
}

}  // namespace

StreamError::StreamError(const std::string& kind, const std::string& detail,
                         std::uint8_t marker, std::size_t offset)
    : Error(describe(kind, detail, marker, offset)),
      marker_(marker),
      offset_(offset) {}

}  // namespace dctfuse
