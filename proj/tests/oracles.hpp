#pragma once
// Reference implementations used to check the library.

#include <cmath>
#include <numbers>

#include "dctfuse/blockdct.hpp"
#include "dctfuse/dataset.hpp"
#include "dctfuse/fusion.hpp"

namespace dctfuse::testing {

// Direct evaluation of the DCT-II definition.
inline CoeffBlock naive_dct(const PixelBlock& f) {
  CoeffBlock out;
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      const double au = u == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
      const double av = v == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
      double sum = 0.0;
      for (int x = 0; x < 8; ++x) {
        for (int y = 0; y < 8; ++y) {
          sum += f.at(x, y) * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0) *
                 std::cos((2 * y + 1) * v * std::numbers::pi / 16.0);
        }
      }
      out.at(u, v) = au * av * sum;
    }
  }
  return out;
}

// Direct enumeration of the 3x3 neighbourhood sum, zero outside the grid.
inline int neighbourhood_sum(const DecisionMap& w, int i, int j) {
  int sum = 0;
  for (int x = i - 1; x <= i + 1; ++x) {
    for (int y = j - 1; y <= j + 1; ++y) {
      if (w.in_bounds(x, y)) sum += w(x, y);
    }
  }
  return sum;
}

inline int neighbourhood_size(const DecisionMap& w, int i, int j) {
  int n = 0;
  for (int x = i - 1; x <= i + 1; ++x) {
    for (int y = j - 1; y <= j + 1; ++y) n += w.in_bounds(x, y) ? 1 : 0;
  }
  return n;
}

}  // namespace dctfuse::testing
