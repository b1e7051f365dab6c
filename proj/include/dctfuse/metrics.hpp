#pragma once

#include <string>

#include "dctfuse/image.hpp"

namespace dctfuse {

inline constexpr double kSsimC1 = (0.01 * 255.0) * (0.01 * 255.0);
inline constexpr double kSsimC2 = (0.03 * 255.0) * (0.03 * 255.0);
inline constexpr int kSsimWindow = 8;

enum class SsimMode { global, windowed };

struct MetricReport {
  std::string pair_id;
  std::string method;
  double rmse = 0.0;
  double ssim_global = 0.0;
  double ssim_windowed = 0.0;
};

// sqrt(mean((reference - test)^2)). Throws DimensionMismatch.
double rmse(const Raster& reference, const Raster& test);

// Global mode uses one window spanning the whole image; windowed mode
// averages SSIM over every 8x8 window at stride 1 with uniform weights.
// Throws DimensionMismatch on differing sizes, or windowed mode on images
// smaller than 8x8.
double ssim(const Raster& im1, const Raster& im2,
            SsimMode mode = SsimMode::global);

}  // namespace dctfuse
