#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dctfuse/blockdct.hpp"

namespace dctfuse {

// Dense row-major 2-D grid.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return cells_.size(); }

  T& operator()(int row, int col) { return cells_[index(row, col)]; }
  const T& operator()(int row, int col) const { return cells_[index(row, col)]; }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < rows_ && col >= 0 && col < cols_;
  }

  template <class U>
  bool same_shape(const Grid<U>& other) const {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  const std::vector<T>& cells() const { return cells_; }
  std::vector<T>& cells() { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

// Real-valued grayscale image, row-major, 8-bit intensity scale.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Raster() = default;
  Raster(int w, int h, double fill = 0.0)
      : width(w), height(h),
        pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  double& at(int row, int col) {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  double at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }

  friend bool operator==(const Raster&, const Raster&) = default;
};

// Rounds half away from zero and clamps into [0, 255].
std::uint8_t to_byte(double value);

// Copy of the raster with every sample passed through to_byte.
Raster to_8bit(const Raster& image);

// Pixel dimensions plus the derived 8x8 block grid. Padding is the number of
// columns (rows) added on the right (bottom) to reach a multiple of 8.
struct GridGeometry {
  int width = 0;
  int height = 0;

  int blocks_wide() const { return (width + kBlockSize - 1) / kBlockSize; }
  int blocks_high() const { return (height + kBlockSize - 1) / kBlockSize; }
  int pad_right() const { return blocks_wide() * kBlockSize - width; }
  int pad_bottom() const { return blocks_high() * kBlockSize - height; }
  std::size_t block_count() const {
    return static_cast<std::size_t>(blocks_wide()) * blocks_high();
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

// Coefficient-domain image: every cell of the block grid is populated.
struct BlockImage {
  GridGeometry geometry;
  QuantTable quant;
  std::vector<CoeffBlock> blocks;

  BlockImage() = default;
  BlockImage(GridGeometry geom, QuantTable table, CoeffForm form);

  int blocks_wide() const { return geometry.blocks_wide(); }
  int blocks_high() const { return geometry.blocks_high(); }

  CoeffBlock& block(int block_row, int block_col) {
    return blocks[static_cast<std::size_t>(block_row) * blocks_wide() + block_col];
  }
  const CoeffBlock& block(int block_row, int block_col) const {
    return blocks[static_cast<std::size_t>(block_row) * blocks_wide() + block_col];
  }

  CoeffForm form() const;

  friend bool operator==(const BlockImage&, const BlockImage&) = default;
};

// Raster form split into 8x8 pixel blocks (padding already filled in).
struct PixelImage {
  GridGeometry geometry;
  std::vector<PixelBlock> blocks;

  PixelImage() = default;
  explicit PixelImage(GridGeometry geom);

  int blocks_wide() const { return geometry.blocks_wide(); }
  int blocks_high() const { return geometry.blocks_high(); }

  PixelBlock& block(int block_row, int block_col) {
    return blocks[static_cast<std::size_t>(block_row) * blocks_wide() + block_col];
  }
  const PixelBlock& block(int block_row, int block_col) const {
    return blocks[static_cast<std::size_t>(block_row) * blocks_wide() + block_col];
  }

  // Sample at pixel coordinates, including the padded area.
  double sample(int row, int col) const {
    return block(row / kBlockSize, col / kBlockSize)
        .at(row % kBlockSize, col % kBlockSize);
  }
};

// Splits into blocks, filling the right/bottom padding by edge replication.
PixelImage to_blocks(const Raster& image);

// Reassembles and crops back to the original pixel dimensions.
Raster to_raster(const PixelImage& image);

// Block-wise dequantize/quantize of a whole image. quantize() installs the
// given table as the image's table.
BlockImage dequantize(const BlockImage& image);
BlockImage quantize(const BlockImage& image, const QuantTable& q);

}  // namespace dctfuse
