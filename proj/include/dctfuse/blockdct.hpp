#pragma once

// 8x8 block transform kernel: orthonormal DCT-II, quantization and the
// per-block focus statistics used by the fusion rules.
//
// Blocks are stored row-major: index = row * 8 + col. For pixel blocks the
// row is x and the column is y in f(x, y); for coefficient blocks the row is
// the vertical frequency u and the column the horizontal frequency v.

#include <array>
#include <cstdint>

namespace dctfuse {

inline constexpr int kBlockSize = 8;
inline constexpr int kBlockArea = kBlockSize * kBlockSize;

// Largest magnitude a quantized coefficient may hold (12-bit signed range,
// kept symmetric so that negation never overflows it).
inline constexpr int kMaxQuantizedMagnitude = 2047;

using BlockArray = std::array<double, kBlockArea>;

struct PixelBlock {
  BlockArray samples{};

  double& at(int row, int col) { return samples[row * kBlockSize + col]; }
  double at(int row, int col) const { return samples[row * kBlockSize + col]; }
};

enum class CoeffForm { quantized, dequantized };

struct CoeffBlock {
  BlockArray coeffs{};
  CoeffForm form = CoeffForm::dequantized;

  double& at(int u, int v) { return coeffs[u * kBlockSize + v]; }
  double at(int u, int v) const { return coeffs[u * kBlockSize + v]; }

  friend bool operator==(const CoeffBlock&, const CoeffBlock&) = default;
};

// Per-coefficient quantizer step sizes in natural (row-major) order.
class QuantTable {
 public:
  // All-ones table: quantization reduces to rounding.
  QuantTable();
  // Throws InvalidArgument unless every entry is in [1, 255].
  explicit QuantTable(const std::array<int, kBlockArea>& natural_order);

  int operator[](int index) const { return steps_[index]; }
  int at(int u, int v) const { return steps_[u * kBlockSize + v]; }
  const std::array<std::uint8_t, kBlockArea>& steps() const { return steps_; }

  friend bool operator==(const QuantTable&, const QuantTable&) = default;

 private:
  std::array<std::uint8_t, kBlockArea> steps_;
};

struct FocusStats {
  double sf = 0.0;
  double variance = 0.0;
};

// Orthonormal DCT-II matrix C: row 0 is 1/sqrt(8), row u is
// 0.5 * cos((2j + 1) u pi / 16).
const std::array<double, kBlockArea>& dct_matrix();

// F = C f C^t. Total on finite input.
CoeffBlock forward_dct(const PixelBlock& block);

// f = C^t F C. Throws FormMismatch on quantized input.
PixelBlock inverse_dct(const CoeffBlock& coeffs);

// Intra-block spatial frequency sqrt(RF^2 + CF^2), evaluated on pixels.
double spatial_frequency_spatial(const PixelBlock& block);

// Same quantity evaluated directly on de-quantized coefficients through a
// precomputed 64x64 quadratic form. Throws FormMismatch on quantized input.
double spatial_frequency_dct(const CoeffBlock& coeffs);

// Population variance of the block's pixels, from the AC energy.
double block_variance_dct(const CoeffBlock& coeffs);

FocusStats focus_stats(const CoeffBlock& coeffs);

// The 64x64 matrix M with SF^2 = v^t M v / 64 (row-major, 4096 entries).
const std::array<double, kBlockArea * kBlockArea>& sf_quadratic_form();

CoeffBlock dequantize(const CoeffBlock& coeffs, const QuantTable& q);

// Divides by the table, rounds half away from zero, clamps to
// [-kMaxQuantizedMagnitude, kMaxQuantizedMagnitude].
CoeffBlock quantize(const CoeffBlock& coeffs, const QuantTable& q);

}  // namespace dctfuse
