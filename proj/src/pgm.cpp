#include "dctfuse/pgm.hpp"

#include <cctype>
#include <string>

#include "dctfuse/errors.hpp"

namespace dctfuse {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* field) {
    skip_separators();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw MalformedHeader(std::string("PGM ") + field + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw MalformedHeader(std::string("PGM header: missing ") + field);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw MalformedHeader("PGM header: no separator before raster");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Raster read_pgm_raster(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw MalformedHeader("not a binary PGM (expected magic P5)");
  }
  HeaderReader reader(bytes);
  reader.advance(2);
  const long width = reader.number("width");
  const long height = reader.number("height");
  const long maxval = reader.number("maxval");
  if (width <= 0 || height <= 0) throw MalformedHeader("PGM dimensions must be positive");
  if (maxval != 255) throw UnsupportedMaxval("PGM maxval " + std::to_string(maxval) + " (only 255 supported)");
  reader.single_separator();

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - reader.pos() < count) {
    throw MalformedHeader("PGM raster truncated: expected " + std::to_string(count) +
                          " bytes, found " + std::to_string(bytes.size() - reader.pos()));
  }
  Raster out(static_cast<int>(width), static_cast<int>(height));
  const auto* data = bytes.data() + reader.pos();
  for (std::size_t i = 0; i < count; ++i) out.pixels[i] = data[i];
  return out;
}

std::vector<std::uint8_t> write_pgm_raster(const Raster& image) {
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + image.pixels.size());
  for (double v : image.pixels) out.push_back(to_byte(v));
  return out;
}

PixelImage parse_pgm(std::span<const std::uint8_t> bytes) {
  return to_blocks(read_pgm_raster(bytes));
}

std::vector<std::uint8_t> emit_pgm(const PixelImage& image) {
  return write_pgm_raster(to_raster(image));
}

}  // namespace dctfuse
