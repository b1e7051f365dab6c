#include "dctfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dctfuse/errors.hpp"

namespace dctfuse {

namespace {

constexpr double kContrastEpsilon = 1e-6;

void require_compatible(const BlockImage& a, const BlockImage& b) {
  if (a.geometry != b.geometry || a.blocks.size() != b.blocks.size()) {
    throw DimensionMismatch(
        "source images differ: " + std::to_string(a.geometry.width) + "x" +
        std::to_string(a.geometry.height) + " vs " + std::to_string(b.geometry.width) + "x" +
        std::to_string(b.geometry.height));
  }
  if (a.form() != CoeffForm::dequantized || b.form() != CoeffForm::dequantized) {
    throw FormMismatch("fusion requires de-quantized coefficients");
  }
}

CoeffBlock mean_block(const CoeffBlock& a, const CoeffBlock& b) {
  CoeffBlock out;
  for (int i = 0; i < kBlockArea; ++i) out.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) / 2.0;
  return out;
}

// Picks whole blocks by comparing a per-block score; ties average.
template <class Score>
BlockImage select_by_score(const BlockImage& a, const BlockImage& b, Score score) {
  require_compatible(a, b);
  BlockImage out(a.geometry, a.quant, CoeffForm::dequantized);
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto sa = score(a.blocks[i]);
    const auto sb = score(b.blocks[i]);
    if (sa > sb) {
      out.blocks[i] = a.blocks[i];
    } else if (sb > sa) {
      out.blocks[i] = b.blocks[i];
    } else {
      out.blocks[i] = mean_block(a.blocks[i], b.blocks[i]);
    }
  }
  return out;
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::sf: return "sf";
    case Method::sf_cv: return "sf_cv";
    case Method::average: return "average";
    case Method::contrast: return "contrast";
    case Method::variance: return "variance";
    case Method::ac_max: return "ac_max";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw UnknownMethod("unknown fusion method '" + std::string(name) +
                      "' (expected sf, sf_cv, average, contrast, variance or ac_max)");
}

void FusionConfig::validate() const {
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  if (!(ac_max_tau >= 0.0)) throw InvalidArgument("ac_max_tau must be non-negative");
}

FocusGrid sf_grid(const BlockImage& image) {
  FocusGrid grid(image.blocks_high(), image.blocks_wide());
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) grid(r, c) = spatial_frequency_dct(image.block(r, c));
  }
  return grid;
}

DecisionMap build_decision_map(const FocusGrid& sf_a, const FocusGrid& sf_b, double threshold) {
  if (!sf_a.same_shape(sf_b)) throw DimensionMismatch("focus grids differ in shape");
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  DecisionMap w(sf_a.rows(), sf_a.cols());
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) {
      const double a = sf_a(r, c);
      const double b = sf_b(r, c);
      w(r, c) = a > b + threshold ? 1 : (b > a + threshold ? -1 : 0);
    }
  }
  return w;
}

RefinedMap consistency_verify(const DecisionMap& w) {
  RefinedMap r(w.rows(), w.cols());
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      int sum = 0;
      for (int x = i - 1; x <= i + 1; ++x) {
        for (int y = j - 1; y <= j + 1; ++y) {
          if (w.in_bounds(x, y)) sum += w(x, y);
        }
      }
      r(i, j) = sum;
    }
  }
  return r;
}

RefinedMap unrefined(const DecisionMap& w) {
  RefinedMap r(w.rows(), w.cols());
  std::copy(w.cells().begin(), w.cells().end(), r.cells().begin());
  return r;
}

BlockImage compose_fused(const BlockImage& a, const BlockImage& b, const RefinedMap& r) {
  require_compatible(a, b);
  if (r.rows() != a.blocks_high() || r.cols() != a.blocks_wide()) {
    throw DimensionMismatch("selection map does not match the block grid");
  }
  BlockImage out(a.geometry, a.quant, CoeffForm::dequantized);
  for (int i = 0; i < r.rows(); ++i) {
    for (int j = 0; j < r.cols(); ++j) {
      const int vote = r(i, j);
      out.block(i, j) = vote > 0   ? a.block(i, j)
                        : vote < 0 ? b.block(i, j)
                                   : mean_block(a.block(i, j), b.block(i, j));
    }
  }
  return out;
}

SelectionMaps selection_maps(const BlockImage& a, const BlockImage& b, double threshold) {
  require_compatible(a, b);
  DecisionMap w = build_decision_map(sf_grid(a), sf_grid(b), threshold);
  RefinedMap r = consistency_verify(w);
  return {std::move(w), std::move(r)};
}

BlockImage fuse(const BlockImage& a, const BlockImage& b, const FusionConfig& cfg) {
  cfg.validate();
  require_compatible(a, b);
  switch (cfg.method) {
    case Method::sf:
      return compose_fused(a, b, unrefined(build_decision_map(sf_grid(a), sf_grid(b), cfg.threshold)));
    case Method::sf_cv:
      return compose_fused(a, b, selection_maps(a, b, cfg.threshold).refined);
    case Method::average: return fuse_average(a, b);
    case Method::contrast: return fuse_contrast(a, b);
    case Method::variance: return fuse_variance(a, b);
    case Method::ac_max: return fuse_ac_max(a, b, cfg.ac_max_tau);
  }
  throw UnknownMethod("unknown fusion method");
}

BlockImage fuse_all(std::span<const BlockImage> sources, const FusionConfig& cfg) {
  if (sources.empty()) throw InvalidArgument("fusion needs at least one source image");
  BlockImage acc = sources.front();
  for (std::size_t i = 1; i < sources.size(); ++i) acc = fuse(acc, sources[i], cfg);
  return acc;
}

BlockImage fuse_average(const BlockImage& a, const BlockImage& b) {
  require_compatible(a, b);
  BlockImage out(a.geometry, a.quant, CoeffForm::dequantized);
  for (std::size_t i = 0; i < a.blocks.size(); ++i) out.blocks[i] = mean_block(a.blocks[i], b.blocks[i]);
  return out;
}

int ac_count(const CoeffBlock& block, double tau) {
  int count = 0;
  for (int i = 1; i < kBlockArea; ++i) {
    if (std::abs(block.coeffs[i]) > tau) ++count;
  }
  return count;
}

BlockImage fuse_ac_max(const BlockImage& a, const BlockImage& b, double tau) {
  if (!(tau >= 0.0)) throw InvalidArgument("ac_max_tau must be non-negative");
  return select_by_score(a, b, [tau](const CoeffBlock& block) { return ac_count(block, tau); });
}

BlockImage fuse_variance(const BlockImage& a, const BlockImage& b) {
  return select_by_score(a, b, [](const CoeffBlock& block) { return block_variance_dct(block); });
}

BlockImage fuse_contrast(const BlockImage& a, const BlockImage& b) {
  require_compatible(a, b);
  BlockImage out(a.geometry, a.quant, CoeffForm::dequantized);
  for (std::size_t n = 0; n < a.blocks.size(); ++n) {
    const auto& fa = a.blocks[n].coeffs;
    const auto& fb = b.blocks[n].coeffs;
    auto& fused = out.blocks[n].coeffs;
    const double dc_a = std::max(std::abs(fa[0]), kContrastEpsilon);
    const double dc_b = std::max(std::abs(fb[0]), kContrastEpsilon);
    fused[0] = (fa[0] + fb[0]) / 2.0;
    for (int i = 1; i < kBlockArea; ++i) {
      const double ca = std::abs(fa[i]) / dc_a;
      const double cb = std::abs(fb[i]) / dc_b;
      fused[i] = ca > cb ? fa[i] : (cb > ca ? fb[i] : (fa[i] + fb[i]) / 2.0);
    }
  }
  return out;
}

}  // namespace dctfuse
