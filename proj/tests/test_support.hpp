#pragma once

#include <cmath>
#include <random>

#include "dctfuse/blockdct.hpp"
#include "dctfuse/image.hpp"

namespace dctfuse::testing {

inline PixelBlock random_pixels(std::mt19937_64& rng, double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  PixelBlock b;
  for (double& s : b.samples) s = dist(rng);
  return b;
}

inline CoeffBlock random_coeffs(std::mt19937_64& rng, double magnitude = 500.0) {
  std::uniform_real_distribution<double> dist(-magnitude, magnitude);
  CoeffBlock b;
  for (double& c : b.coeffs) c = dist(rng);
  return b;
}

// Smooth random field plus noise, values in [0, 255].
inline Raster random_raster(std::mt19937_64& rng, int width, int height) {
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> freq(0.02, 0.6);
  std::normal_distribution<double> noise(0.0, 12.0);
  const double fx = freq(rng), fy = freq(rng), px = phase(rng), py = phase(rng);
  Raster r(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double v = 128.0 + 60.0 * std::sin(fx * x + px) * std::cos(fy * y + py) + noise(rng);
      r.at(y, x) = static_cast<double>(to_byte(v));
    }
  }
  return r;
}

// Random dequantized block image whose blocks have varied texture.
inline BlockImage random_block_image(std::mt19937_64& rng, int width, int height) {
  BlockImage img(GridGeometry{width, height}, QuantTable{}, CoeffForm::dequantized);
  std::uniform_real_distribution<double> scale(0.0, 200.0);
  for (auto& b : img.blocks) {
    const double s = scale(rng);
    b = random_coeffs(rng, s);
    b.form = CoeffForm::dequantized;
  }
  return img;
}

}  // namespace dctfuse::testing
