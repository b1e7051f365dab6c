#pragma once

// Block-wise fusion of de-quantized coefficient images.
//
// The spatial-frequency rule compares SF_A and SF_B per block under a
// threshold T, records the outcome in a ternary decision map W, optionally
// refines it with a 3x3 majority sum R, and composes the output from A
// (R > 0), B (R < 0) or the coefficient-wise mean (R == 0). The four
// comparison methods (average, contrast, variance, ac_max) share the same
// inputs and output form.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "dctfuse/image.hpp"

namespace dctfuse {

enum class Method { sf, sf_cv, average, contrast, variance, ac_max };

inline constexpr std::array<Method, 6> kAllMethods = {
    Method::sf, Method::sf_cv, Method::average,
    Method::contrast, Method::variance, Method::ac_max};

std::string_view method_name(Method method);

// Throws UnknownMethod.
Method parse_method(std::string_view name);

struct FusionConfig {
  Method method = Method::sf_cv;
  double threshold = 0.0;
  // Magnitude an AC coefficient must exceed to count for ac_max.
  double ac_max_tau = 0.0;

  // Throws InvalidArgument if threshold or ac_max_tau is negative or NaN.
  void validate() const;
};

using FocusGrid = Grid<double>;
// Entries in {-1, 0, +1}.
using DecisionMap = Grid<std::int8_t>;
// Entries in [-9, 9].
using RefinedMap = Grid<int>;

// Per-block spatial frequency, computed in the coefficient domain.
FocusGrid sf_grid(const BlockImage& image);

// W = +1 if SF_A > SF_B + T, -1 if SF_B > SF_A + T, else 0.
DecisionMap build_decision_map(const FocusGrid& sf_a, const FocusGrid& sf_b,
                               double threshold);

// R(i, j) = sum of W over the 3x3 neighbourhood including (i, j);
// out-of-bounds cells contribute 0. Single pass.
RefinedMap consistency_verify(const DecisionMap& w);

// R := W, i.e. the selection map without consistency verification.
RefinedMap unrefined(const DecisionMap& w);

BlockImage compose_fused(const BlockImage& a, const BlockImage& b,
                         const RefinedMap& r);

struct SelectionMaps {
  DecisionMap decision;
  RefinedMap refined;
};

// W and its consistency-verified refinement for a pair of images.
SelectionMaps selection_maps(const BlockImage& a, const BlockImage& b,
                             double threshold);

BlockImage fuse(const BlockImage& a, const BlockImage& b,
                const FusionConfig& cfg);

// Left fold: fuse(fuse(s0, s1), s2) ... Requires at least one source.
BlockImage fuse_all(std::span<const BlockImage> sources,
                    const FusionConfig& cfg);

BlockImage fuse_average(const BlockImage& a, const BlockImage& b);
BlockImage fuse_ac_max(const BlockImage& a, const BlockImage& b, double tau);
BlockImage fuse_variance(const BlockImage& a, const BlockImage& b);
BlockImage fuse_contrast(const BlockImage& a, const BlockImage& b);

// Number of AC coefficients with |value| > tau.
int ac_count(const CoeffBlock& block, double tau);

}  // namespace dctfuse
