#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dctfuse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A coefficient block was handed to an operation expecting the other form
// (quantized integers vs. de-quantized reals).
class FormMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownMethod : public Error {
 public:
  using Error::Error;
};

class RegionOutOfBounds : public Error {
 public:
  using Error::Error;
};

class DatasetMissing : public Error {
 public:
  using Error::Error;
};

class CoefficientOutOfRange : public Error {
 public:
  using Error::Error;
};

// Bitstream errors carry the marker code being processed (0 if none) and the
// byte offset into the stream where the problem was detected.
class StreamError : public Error {
 public:
  StreamError(const std::string& kind, const std::string& detail,
              std::uint8_t marker, std::size_t offset);

  std::uint8_t marker() const noexcept { return marker_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::uint8_t marker_;
  std::size_t offset_;
};

class MalformedStream : public StreamError {
 public:
  MalformedStream(const std::string& detail, std::uint8_t marker,
                  std::size_t offset)
      : StreamError("malformed stream", detail, marker, offset) {}
};

class Unsupported : public StreamError {
 public:
  Unsupported(const std::string& detail, std::uint8_t marker,
              std::size_t offset)
      : StreamError("unsupported stream", detail, marker, offset) {}
};

class MalformedHeader : public Error {
 public:
  using Error::Error;
};

class UnsupportedMaxval : public Error {
 public:
  using Error::Error;
};

}  // namespace dctfuse
