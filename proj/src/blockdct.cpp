#include "dctfuse/blockdct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dctfuse/errors.hpp"

namespace dctfuse {

namespace {

constexpr int N = kBlockSize;

std::array<double, kBlockArea> make_dct_matrix() {
  std::array<double, kBlockArea> c{};
  for (int u = 0; u < N; ++u) {
    for (int j = 0; j < N; ++j) {
      c[u * N + j] = u == 0 ? 1.0 / std::sqrt(8.0)
                            : 0.5 * std::cos((2 * j + 1) * u * std::numbers::pi / 16.0);
    }
  }
  return c;
}

// SF^2 = v^t M v / 64 with M = S^t (Dr^t Dr + Dc^t Dc) S, where S maps the
// coefficient vector to the pixel vector (f = C^t F C) and Dr, Dc are the
// intra-block horizontal and vertical first differences.
std::array<double, kBlockArea * kBlockArea> make_sf_form() {
  const auto& c = dct_matrix();
  constexpr int K = kBlockArea;

  std::vector<double> synth(K * K);  // synth[p * K + k], p pixel, k coeff
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      for (int u = 0; u < N; ++u) {
        for (int v = 0; v < N; ++v) {
          synth[(x * N + y) * K + (u * N + v)] = c[u * N + x] * c[v * N + y];
        }
      }
    }
  }

  std::vector<double> laplacian(K * K, 0.0);
  auto add_difference = [&](int p, int q) {
    laplacian[p * K + p] += 1.0;
    laplacian[q * K + q] += 1.0;
    laplacian[p * K + q] -= 1.0;
    laplacian[q * K + p] -= 1.0;
  };
  for (int x = 0; x < N; ++x) {
    for (int y = 1; y < N; ++y) add_difference(x * N + y, x * N + y - 1);
  }
  for (int x = 1; x < N; ++x) {
    for (int y = 0; y < N; ++y) add_difference(x * N + y, (x - 1) * N + y);
  }

  std::vector<double> ls(K * K, 0.0);
  for (int i = 0; i < K; ++i) {
    for (int p = 0; p < K; ++p) {
      const double l = laplacian[i * K + p];
      if (l == 0.0) continue;
      for (int k = 0; k < K; ++k) ls[i * K + k] += l * synth[p * K + k];
    }
  }

  std::array<double, K * K> m{};
  for (int r = 0; r < K; ++r) {
    for (int k = 0; k < K; ++k) {
      double acc = 0.0;
      for (int p = 0; p < K; ++p) acc += synth[p * K + r] * ls[p * K + k];
      m[r * K + k] = acc;
    }
  }
  for (int r = 0; r < K; ++r) {
    for (int k = r + 1; k < K; ++k) {
      const double sym = 0.5 * (m[r * K + k] + m[k * K + r]);
      m[r * K + k] = sym;
      m[k * K + r] = sym;
    }
  }
  return m;
}

void require_dequantized(const CoeffBlock& coeffs, const char* op) {
  if (coeffs.form != CoeffForm::dequantized) {
    throw FormMismatch(std::string(op) + " requires de-quantized coefficients");
  }
}

// out = a * b for 8x8 row-major matrices; transposes selected per operand.
template <bool TransA, bool TransB>
void multiply(const BlockArray& a, const BlockArray& b, BlockArray& out) {
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double acc = 0.0;
      for (int k = 0; k < N; ++k) {
        const double lhs = TransA ? a[k * N + i] : a[i * N + k];
        const double rhs = TransB ? b[j * N + k] : b[k * N + j];
        acc += lhs * rhs;
      }
      out[i * N + j] = acc;
    }
  }
}

}  // namespace

QuantTable::QuantTable() { steps_.fill(1); }

QuantTable::QuantTable(const std::array<int, kBlockArea>& natural_order) {
  for (int i = 0; i < kBlockArea; ++i) {
    const int q = natural_order[i];
    if (q < 1 || q > 255) {
      throw InvalidArgument("quantization table entry " + std::to_string(i) +
                            " out of [1, 255]: " + std::to_string(q));
    }
    steps_[i] = static_cast<std::uint8_t>(q);
  }
}

const std::array<double, kBlockArea>& dct_matrix() {
  static const std::array<double, kBlockArea> matrix = make_dct_matrix();
  return matrix;
}

const std::array<double, kBlockArea * kBlockArea>& sf_quadratic_form() {
  static const std::array<double, kBlockArea * kBlockArea> form = make_sf_form();
  return form;
}

CoeffBlock forward_dct(const PixelBlock& block) {
  const auto& c = dct_matrix();
  BlockArray tmp;
  CoeffBlock out;
  multiply<false, false>(c, block.samples, tmp);
  multiply<false, true>(tmp, c, out.coeffs);
  out.form = CoeffForm::dequantized;
  return out;
}

PixelBlock inverse_dct(const CoeffBlock& coeffs) {
  require_dequantized(coeffs, "inverse_dct");
  const auto& c = dct_matrix();
  BlockArray tmp;
  PixelBlock out;
  multiply<true, false>(c, coeffs.coeffs, tmp);
  multiply<false, false>(tmp, c, out.samples);
  return out;
}

double spatial_frequency_spatial(const PixelBlock& block) {
  double row_energy = 0.0;
  for (int x = 0; x < N; ++x) {
    for (int y = 1; y < N; ++y) {
      const double d = block.at(x, y) - block.at(x, y - 1);
      row_energy += d * d;
    }
  }
  double col_energy = 0.0;
  for (int x = 1; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      const double d = block.at(x, y) - block.at(x - 1, y);
      col_energy += d * d;
    }
  }
  return std::sqrt(row_energy / kBlockArea + col_energy / kBlockArea);
}

double spatial_frequency_dct(const CoeffBlock& coeffs) {
  require_dequantized(coeffs, "spatial_frequency_dct");
  const auto& m = sf_quadratic_form();

  // Quantized sources leave most coefficients at zero; restrict the form to
  // the non-zero support.
  std::array<int, kBlockArea> support;
  int count = 0;
  for (int i = 0; i < kBlockArea; ++i) {
    if (coeffs.coeffs[i] != 0.0) support[count++] = i;
  }

  double energy = 0.0;
  for (int a = 0; a < count; ++a) {
    const int i = support[a];
    const double* row = &m[static_cast<std::size_t>(i) * kBlockArea];
    double acc = 0.0;
    for (int b = 0; b < count; ++b) acc += row[support[b]] * coeffs.coeffs[support[b]];
    energy += coeffs.coeffs[i] * acc;
  }
  return std::sqrt(std::max(0.0, energy / kBlockArea));
}

double block_variance_dct(const CoeffBlock& coeffs) {
  require_dequantized(coeffs, "block_variance_dct");
  double ac_energy = 0.0;
  for (int i = 1; i < kBlockArea; ++i) ac_energy += coeffs.coeffs[i] * coeffs.coeffs[i];
  return ac_energy / kBlockArea;
}

FocusStats focus_stats(const CoeffBlock& coeffs) {
  return {spatial_frequency_dct(coeffs), block_variance_dct(coeffs)};
}

CoeffBlock dequantize(const CoeffBlock& coeffs, const QuantTable& q) {
  if (coeffs.form != CoeffForm::quantized) {
    throw FormMismatch("dequantize requires quantized coefficients");
  }
  CoeffBlock out;
  for (int i = 0; i < kBlockArea; ++i) out.coeffs[i] = coeffs.coeffs[i] * q[i];
  out.form = CoeffForm::dequantized;
  return out;
}

CoeffBlock quantize(const CoeffBlock& coeffs, const QuantTable& q) {
  require_dequantized(coeffs, "quantize");
  constexpr double limit = kMaxQuantizedMagnitude;
  CoeffBlock out;
  for (int i = 0; i < kBlockArea; ++i) {
    // + 0.0 turns a rounded -0.0 into +0.0.
    const double level = std::round(coeffs.coeffs[i] / q[i]) + 0.0;
    out.coeffs[i] = std::clamp(level, -limit, limit);
  }
  out.form = CoeffForm::quantized;
  return out;
}

}  // namespace dctfuse
