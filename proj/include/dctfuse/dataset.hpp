#pragma once

// Synthetic multi-focus pairs: blur complementary regions of a ground-truth
// image so that each source is sharp exactly where the other is blurred.

#include <string_view>
#include <variant>
#include <vector>

#include "dctfuse/image.hpp"

namespace dctfuse {

struct GaussianKernel {
  double sigma = 2.0;
  int radius = 6;
};

struct DiskKernel {
  int radius = 0;
};

using BlurKernel = std::variant<GaussianKernel, DiskKernel>;

struct Rect {
  int x = 0;  // left column
  int y = 0;  // top row
  int width = 0;
  int height = 0;

  bool contains(int row, int col) const {
    return col >= x && col < x + width && row >= y && row < y + height;
  }
};

enum class Half { left, right, top, bottom };

using Region = std::variant<Half, Rect>;

struct BlurSpec {
  BlurKernel kernel = GaussianKernel{};
  Region region = Half::right;
};

// Parses "left", "right", "top", "bottom" or "x,y,w,h".
// Throws InvalidArgument.
Region parse_region(std::string_view text);

// Half regions split at width/2 (height/2); the left (top) half is the
// smaller one for odd sizes. Throws RegionOutOfBounds for rectangles outside
// the image.
Rect resolve_region(const Region& region, int width, int height);

// Separable 1-D weights over [-radius, radius], normalized to sum 1.
// Throws InvalidArgument unless sigma > 0 and radius >= ceil(3 sigma).
std::vector<double> gaussian_weights(double sigma, int radius);

// Whole-image convolution with edge replication.
Raster blur(const Raster& image, const BlurKernel& kernel);

// Pixels inside spec.region replaced by the blurred image, all others
// copied unchanged.
Raster blur_region(const Raster& image, const BlurSpec& spec);

struct SourcePair {
  Raster a;  // sharp on spec.region, blurred elsewhere
  Raster b;  // blurred on spec.region, sharp elsewhere
};

SourcePair make_pair(const Raster& ground_truth, const BlurSpec& spec);

}  // namespace dctfuse
