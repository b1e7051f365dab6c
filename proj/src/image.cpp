#include "dctfuse/image.hpp"

#include <algorithm>
#include <cmath>

#include "dctfuse/errors.hpp"

namespace dctfuse {

std::uint8_t to_byte(double value) {
  const double clamped = std::clamp(value, 0.0, 255.0);
  return static_cast<std::uint8_t>(std::round(clamped));
}

Raster to_8bit(const Raster& image) {
  Raster out(image.width, image.height);
  std::transform(image.pixels.begin(), image.pixels.end(), out.pixels.begin(),
                 [](double v) { return static_cast<double>(to_byte(v)); });
  return out;
}

BlockImage::BlockImage(GridGeometry geom, QuantTable table, CoeffForm form)
    : geometry(geom), quant(table), blocks(geom.block_count()) {
  for (auto& b : blocks) b.form = form;
}

CoeffForm BlockImage::form() const {
  if (blocks.empty()) return CoeffForm::dequantized;
  const CoeffForm first = blocks.front().form;
  for (const auto& b : blocks) {
    if (b.form != first) throw FormMismatch("block image mixes coefficient forms");
  }
  return first;
}

PixelImage::PixelImage(GridGeometry geom)
    : geometry(geom), blocks(geom.block_count()) {}

PixelImage to_blocks(const Raster& image) {
  if (image.width <= 0 || image.height <= 0) {
    throw InvalidArgument("image dimensions must be positive");
  }
  PixelImage out(GridGeometry{image.width, image.height});
  const int padded_w = out.blocks_wide() * kBlockSize;
  const int padded_h = out.blocks_high() * kBlockSize;
  for (int row = 0; row < padded_h; ++row) {
    const int src_row = std::min(row, image.height - 1);
    for (int col = 0; col < padded_w; ++col) {
      const int src_col = std::min(col, image.width - 1);
      out.block(row / kBlockSize, col / kBlockSize)
          .at(row % kBlockSize, col % kBlockSize) = image.at(src_row, src_col);
    }
  }
  return out;
}

Raster to_raster(const PixelImage& image) {
  Raster out(image.geometry.width, image.geometry.height);
  for (int row = 0; row < out.height; ++row) {
    for (int col = 0; col < out.width; ++col) {
      out.at(row, col) = image.sample(row, col);
    }
  }
  return out;
}

BlockImage dequantize(const BlockImage& image) {
  BlockImage out(image.geometry, image.quant, CoeffForm::dequantized);
  for (std::size_t i = 0; i < image.blocks.size(); ++i) {
    out.blocks[i] = dequantize(image.blocks[i], image.quant);
  }
  return out;
}

BlockImage quantize(const BlockImage& image, const QuantTable& q) {
  BlockImage out(image.geometry, q, CoeffForm::quantized);
  for (std::size_t i = 0; i < image.blocks.size(); ++i) {
    out.blocks[i] = quantize(image.blocks[i], q);
  }
  return out;
}

}  // namespace dctfuse
