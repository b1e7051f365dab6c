#include "dctfuse/metrics.hpp"

#include <cmath>
#include <string>

#include "dctfuse/errors.hpp"

namespace dctfuse {

namespace {

void require_same_size(const Raster& a, const Raster& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionMismatch("images differ in size: " + std::to_string(a.width) + "x" +
                            std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                            std::to_string(b.height));
  }
}

struct Moments {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double cov = 0.0;
};

double ssim_from(const Moments& m) {
  const double num = (2.0 * m.mean1 * m.mean2 + kSsimC1) * (2.0 * m.cov + kSsimC2);
  const double den =
      (m.mean1 * m.mean1 + m.mean2 * m.mean2 + kSsimC1) * (m.var1 + m.var2 + kSsimC2);
  return num / den;
}

// Two-pass population moments over a rectangular window.
Moments window_moments(const Raster& a, const Raster& b, int top, int left, int rows, int cols) {
  Moments m;
  const double n = static_cast<double>(rows) * cols;
  for (int r = top; r < top + rows; ++r) {
    for (int c = left; c < left + cols; ++c) {
      m.mean1 += a.at(r, c);
      m.mean2 += b.at(r, c);
    }
  }
  m.mean1 /= n;
  m.mean2 /= n;
  for (int r = top; r < top + rows; ++r) {
    for (int c = left; c < left + cols; ++c) {
      const double d1 = a.at(r, c) - m.mean1;
      const double d2 = b.at(r, c) - m.mean2;
      m.var1 += d1 * d1;
      m.var2 += d2 * d2;
      m.cov += d1 * d2;
    }
  }
  m.var1 /= n;
  m.var2 /= n;
  m.cov /= n;
  return m;
}

}  // namespace

double rmse(const Raster& reference, const Raster& test) {
  require_same_size(reference, test);
  if (reference.pixels.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
    const double d = reference.pixels[i] - test.pixels[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(reference.pixels.size()));
}

double ssim(const Raster& im1, const Raster& im2, SsimMode mode) {
  require_same_size(im1, im2);
  if (im1.width <= 0 || im1.height <= 0) throw DimensionMismatch("SSIM of an empty image");
  if (mode == SsimMode::global) {
    return ssim_from(window_moments(im1, im2, 0, 0, im1.height, im1.width));
  }
  if (im1.width < kSsimWindow || im1.height < kSsimWindow) {
    throw DimensionMismatch("windowed SSIM needs at least 8x8 pixels");
  }
  double total = 0.0;
  long windows = 0;
  for (int top = 0; top + kSsimWindow <= im1.height; ++top) {
    for (int left = 0; left + kSsimWindow <= im1.width; ++left) {
      total += ssim_from(window_moments(im1, im2, top, left, kSsimWindow, kSsimWindow));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

}  // namespace dctfuse
