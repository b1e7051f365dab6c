#include "dctfuse/jpeg_codec.hpp"

namespace dctfuse {

namespace {

constexpr double kLevelShift = 128.0;

}  // namespace

BlockImage to_coefficients(const PixelImage& image, const QuantTable& table) {
  BlockImage out(image.geometry, table, CoeffForm::dequantized);
  for (std::size_t i = 0; i < image.blocks.size(); ++i) {
    PixelBlock shifted = image.blocks[i];
    for (double& s : shifted.samples) s -= kLevelShift;
    out.blocks[i] = forward_dct(shifted);
  }
  return out;
}

PixelImage to_pixels(const BlockImage& image) {
  PixelImage out(image.geometry);
  const bool quantized = image.form() == CoeffForm::quantized;
  for (std::size_t i = 0; i < image.blocks.size(); ++i) {
    const CoeffBlock coeffs =
        quantized ? dequantize(image.blocks[i], image.quant) : image.blocks[i];
    out.blocks[i] = inverse_dct(coeffs);
    for (double& s : out.blocks[i].samples) s += kLevelShift;
  }
  return out;
}

BlockImage encode_raster(const Raster& image, const QuantTable& table) {
  return quantize(to_coefficients(to_blocks(image), table), table);
}

Raster decode_raster(const BlockImage& image) { return to_raster(to_pixels(image)); }

std::vector<std::uint8_t> encode_jpeg(const Raster& image, int quality) {
  return emit_jpeg(encode_raster(image, quality_table(quality)));
}

Raster decode_jpeg(std::span<const std::uint8_t> stream) {
  return decode_raster(parse_jpeg(stream));
}

}  // namespace dctfuse
