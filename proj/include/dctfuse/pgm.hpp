#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dctfuse/image.hpp"

namespace dctfuse {

// Binary PGM (P5), maxval 255. Header comments are skipped.
// Throws MalformedHeader for a bad header or truncated raster and
// UnsupportedMaxval for any maxval other than 255.
PixelImage parse_pgm(std::span<const std::uint8_t> bytes);

// Writes P5 at the original dimensions (padding cropped); samples are
// clamped to [0, 255] and rounded half away from zero.
std::vector<std::uint8_t> emit_pgm(const PixelImage& image);

Raster read_pgm_raster(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm_raster(const Raster& image);

}  // namespace dctfuse
