#pragma once

// Baseline sequential, single-component, 8-bit, Huffman-coded JPEG.
//
// parse_jpeg/emit_jpeg work purely on quantized coefficients; no transform is
// applied on either side. The -128 level shift lives in to_coefficients and
// to_pixels, the only places where pixels and coefficients meet.

#include <cstdint>
#include <span>
#include <vector>

#include "dctfuse/image.hpp"

namespace dctfuse {

// Standard luminance quantization table (natural order), quality 50.
const std::array<int, kBlockArea>& standard_luma_table();

// Standard table scaled by the usual quality mapping: quality < 50 scales by
// 5000/quality, otherwise by 200 - 2*quality (percent), entries clamped to
// [1, 255]. Throws InvalidArgument outside 1..100.
QuantTable quality_table(int quality);

// Zigzag index -> natural (row-major) index.
const std::array<int, kBlockArea>& zigzag_order();

// Entropy-decodes the stream into quantized coefficients plus its table.
// Throws MalformedStream or Unsupported naming the marker and byte offset.
BlockImage parse_jpeg(std::span<const std::uint8_t> stream);

// Writes SOI, APP0 (JFIF), DQT, SOF0, DHT, SOS, entropy-coded data and EOI
// using the image's own table and the standard luminance Huffman tables.
// Throws FormMismatch on de-quantized input and CoefficientOutOfRange when a
// value cannot be represented by the baseline tables (|AC| > 1023, |DC| or
// |DC difference| > 2047).
std::vector<std::uint8_t> emit_jpeg(const BlockImage& image);

// Level shift by -128 and forward DCT of every block. The result is in
// de-quantized form and carries `table` for later re-quantization.
BlockImage to_coefficients(const PixelImage& image, const QuantTable& table);

// Inverse DCT and +128 level shift. Quantized input is de-quantized first.
PixelImage to_pixels(const BlockImage& image);

// Raster -> quantized coefficients under `table`.
BlockImage encode_raster(const Raster& image, const QuantTable& table);

// Quantized or de-quantized coefficients -> cropped real-valued raster.
// Values are not clamped or rounded.
Raster decode_raster(const BlockImage& image);

// Convenience wrappers over the byte-level calls.
std::vector<std::uint8_t> encode_jpeg(const Raster& image, int quality);
Raster decode_jpeg(std::span<const std::uint8_t> stream);

}  // namespace dctfuse
