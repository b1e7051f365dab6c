#include <doctest.h>

#include <random>

#include "dctfuse/dataset.hpp"
#include "dctfuse/errors.hpp"
#include "dctfuse/fusion.hpp"
#include "dctfuse/jpeg_codec.hpp"
#include "dctfuse/metrics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace dctfuse;
using dctfuse::testing::neighbourhood_size;
using dctfuse::testing::neighbourhood_sum;
using dctfuse::testing::random_block_image;

namespace {

FocusGrid grid_of(std::initializer_list<double> values, int rows, int cols) {
  FocusGrid g(rows, cols);
  std::copy(values.begin(), values.end(), g.cells().begin());
  return g;
}

DecisionMap random_ternary(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> pick(-1, 1);
  DecisionMap w(rows, cols);
  for (auto& c : w.cells()) c = static_cast<std::int8_t>(pick(rng));
  return w;
}

BlockImage filled(int blocks_wide, int blocks_high, double value) {
  BlockImage img(GridGeometry{blocks_wide * 8, blocks_high * 8}, QuantTable{}, CoeffForm::dequantized);
  for (auto& b : img.blocks) b.coeffs.fill(value);
  return img;
}

BlockImage scaled(const BlockImage& img, double k) {
  BlockImage out = img;
  for (auto& b : out.blocks) {
    for (double& c : b.coeffs) c *= k;
  }
  return out;
}

FusionConfig config(Method m, double threshold = 0.0) {
  FusionConfig cfg;
  cfg.method = m;
  cfg.threshold = threshold;
  return cfg;
}

}  // namespace

TEST_CASE("decision map examples") {
  const DecisionMap w = build_decision_map(grid_of({10, 8, 7}, 1, 3), grid_of({7, 7, 10}, 1, 3), 2.0);
  CHECK(w(0, 0) == 1);
  CHECK(w(0, 1) == 0);
  CHECK(w(0, 2) == -1);

  const DecisionMap tie = build_decision_map(grid_of({5}, 1, 1), grid_of({5}, 1, 1), 0.0);
  CHECK(tie(0, 0) == 0);

  CHECK_THROWS_AS(build_decision_map(FocusGrid(2, 2), FocusGrid(2, 3), 0.0), DimensionMismatch);
}

TEST_CASE("consistency verification examples") {
  const DecisionMap ones(3, 3, 1);
  const RefinedMap r = consistency_verify(ones);
  CHECK(r(1, 1) == 9);
  CHECK(r(0, 0) == 4);
  CHECK(r(0, 1) == 6);
  CHECK(r(2, 2) == 4);

  DecisionMap dissent(3, 3, 1);
  dissent(1, 1) = -1;
  CHECK(consistency_verify(dissent)(1, 1) == 7);

  const DecisionMap single(1, 1, -1);
  CHECK(consistency_verify(single)(0, 0) == -1);

  CHECK(unrefined(dissent)(1, 1) == -1);
  CHECK(unrefined(dissent)(0, 0) == 1);
}

TEST_CASE("consistency verification matches brute-force enumeration") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionMap w = random_ternary(rng, dim(rng), dim(rng));
    const RefinedMap r = consistency_verify(w);
    REQUIRE(r.same_shape(w));
    for (int i = 0; i < w.rows(); ++i) {
      for (int j = 0; j < w.cols(); ++j) {
        REQUIRE(r(i, j) == neighbourhood_sum(w, i, j));
        const int n = neighbourhood_size(w, i, j);
        REQUIRE(std::abs(r(i, j)) <= n);
        REQUIRE(r(i, j) >= -9);
        REQUIRE(r(i, j) <= 9);
      }
    }
  }
}

TEST_CASE("R equals the neighbourhood size only for an all-(+1) neighbourhood") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionMap w = random_ternary(rng, 4, 5);
    const RefinedMap r = consistency_verify(w);
    for (int i = 0; i < w.rows(); ++i) {
      for (int j = 0; j < w.cols(); ++j) {
        bool all_plus = true;
        for (int x = i - 1; x <= i + 1; ++x) {
          for (int y = j - 1; y <= j + 1; ++y) {
            if (w.in_bounds(x, y) && w(x, y) != 1) all_plus = false;
          }
        }
        REQUIRE((r(i, j) == neighbourhood_size(w, i, j)) == all_plus);
      }
    }
  }
}

TEST_CASE("isolated dissent is overruled on every interior cell") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    DecisionMap w = random_ternary(rng, 7, 9);
    for (int i = 1; i + 1 < w.rows(); ++i) {
      for (int j = 1; j + 1 < w.cols(); ++j) {
        for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
          DecisionMap local = w;
          for (int x = i - 1; x <= i + 1; ++x) {
            for (int y = j - 1; y <= j + 1; ++y) local(x, y) = s;
          }
          local(i, j) = static_cast<std::int8_t>(-s);
          const int refined = consistency_verify(local)(i, j);
          REQUIRE(refined == 7 * s);
        }
      }
    }
  }
}

TEST_CASE("compose_fused selects or averages per block") {
  const BlockImage a = filled(2, 1, 4.0);
  const BlockImage b = filled(2, 1, 2.0);

  const BlockImage all_a = compose_fused(a, b, RefinedMap(1, 2, 3));
  CHECK(all_a == a);
  const BlockImage all_b = compose_fused(a, b, RefinedMap(1, 2, -1));
  CHECK(all_b.blocks == b.blocks);

  RefinedMap mixed(1, 2, 0);
  mixed(0, 1) = 5;
  const BlockImage out = compose_fused(a, b, mixed);
  for (double c : out.blocks[0].coeffs) CHECK(c == 3.0);
  CHECK(out.blocks[1] == a.blocks[1]);

  CHECK_THROWS_AS(compose_fused(a, b, RefinedMap(2, 2, 0)), DimensionMismatch);
  CHECK_THROWS_AS(compose_fused(a, filled(1, 1, 2.0), RefinedMap(1, 2, 0)), DimensionMismatch);
}

TEST_CASE("fusing an image with itself is the identity for every method") {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> dim(1, 60);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockImage x = random_block_image(rng, dim(rng), dim(rng));
    for (Method m : kAllMethods) {
      REQUIRE(fuse(x, x, config(m)) == x);
    }
  }
}

TEST_CASE("sf and sf_cv are symmetric under swapping the sources at T = 0") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockImage a = random_block_image(rng, 48, 40);
    BlockImage b = random_block_image(rng, 48, 40);
    b.blocks[0] = a.blocks[0];  // force at least one tie
    for (Method m : {Method::sf, Method::sf_cv, Method::average}) {
      REQUIRE(fuse(a, b, config(m)).blocks == fuse(b, a, config(m)).blocks);
    }
  }
}

TEST_CASE("raising the threshold only moves decisions towards zero") {
  std::mt19937_64 rng(46);
  const std::array<double, 5> thresholds = {0, 1, 2, 5, 10};
  std::uniform_real_distribution<double> sf(0.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    FocusGrid fa(6, 7), fb(6, 7);
    for (auto& v : fa.cells()) v = sf(rng);
    for (auto& v : fb.cells()) v = sf(rng);
    for (std::size_t k = 1; k < thresholds.size(); ++k) {
      const DecisionMap lo = build_decision_map(fa, fb, thresholds[k - 1]);
      const DecisionMap hi = build_decision_map(fa, fb, thresholds[k]);
      for (std::size_t c = 0; c < lo.size(); ++c) {
        REQUIRE(std::abs(hi.cells()[c]) <= std::abs(lo.cells()[c]));
        if (hi.cells()[c] != 0) REQUIRE(hi.cells()[c] == lo.cells()[c]);
      }
    }
  }
}

TEST_CASE("average baseline") {
  const BlockImage a = filled(1, 1, 4.0), b = filled(1, 1, 2.0);
  const BlockImage mean = fuse_average(a, b);
  for (double c : mean.blocks[0].coeffs) CHECK(c == 3.0);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockImage x = random_block_image(rng, 32, 24);
    const BlockImage y = random_block_image(rng, 32, 24);
    const double k = 0.25 + trial * 0.1;
    const BlockImage lhs = fuse_average(scaled(x, k), scaled(y, k));
    const BlockImage rhs = scaled(fuse_average(x, y), k);
    for (std::size_t i = 0; i < lhs.blocks.size(); ++i) {
      for (int c = 0; c < 64; ++c) REQUIRE(std::abs(lhs.blocks[i].coeffs[c] - rhs.blocks[i].coeffs[c]) < 1e-9);
    }
  }
}

TEST_CASE("ac_max baseline counts AC coefficients above tau") {
  BlockImage a = filled(1, 1, 0.0), b = filled(1, 1, 0.0);
  for (int k = 1; k <= 5; ++k) a.blocks[0].coeffs[k] = 1.0;
  for (int k = 1; k <= 2; ++k) b.blocks[0].coeffs[k] = 50.0;
  CHECK(ac_count(a.blocks[0], 0.0) == 5);
  CHECK(ac_count(b.blocks[0], 0.0) == 2);
  CHECK(fuse_ac_max(a, b, 0.0) == a);
  CHECK(fuse_ac_max(b, a, 0.0).blocks == a.blocks);

  // With tau = 10 only B's two coefficients count.
  CHECK(fuse_ac_max(a, b, 10.0).blocks == b.blocks);

  BlockImage tie = filled(1, 1, 0.0);
  tie.blocks[0].coeffs[0] = 8.0;
  for (int k = 10; k < 15; ++k) tie.blocks[0].coeffs[k] = 3.0;
  const BlockImage avg = fuse_ac_max(a, tie, 0.0);
  CHECK(avg.blocks[0].coeffs[0] == 4.0);
  CHECK(avg.blocks[0].coeffs[1] == 0.5);
  CHECK(avg.blocks[0].coeffs[10] == 1.5);
}

TEST_CASE("variance baseline picks the textured block") {
  BlockImage flat = filled(1, 1, 0.0);
  flat.blocks[0].coeffs[0] = 500.0;
  BlockImage textured = filled(1, 1, 0.0);
  textured.blocks[0].coeffs[9] = 3.0;
  CHECK(fuse_variance(flat, textured).blocks == textured.blocks);
  CHECK(fuse_variance(textured, flat).blocks == textured.blocks);

  BlockImage other = textured;
  other.blocks[0].coeffs[0] = 10.0;  // same AC energy, different mean
  const BlockImage tie = fuse_variance(textured, other);
  CHECK(tie.blocks[0].coeffs[0] == 5.0);
  CHECK(tie.blocks[0].coeffs[9] == 3.0);
}

TEST_CASE("contrast baseline selects per coefficient and averages DC") {
  BlockImage a = filled(1, 1, 0.0), b = filled(1, 1, 0.0);
  a.blocks[0].coeffs[0] = 100.0;
  b.blocks[0].coeffs[0] = 60.0;
  a.blocks[0].at(0, 1) = 40.0;
  b.blocks[0].at(1, 0) = 3.0;
  a.blocks[0].at(2, 2) = 10.0;   // ratio 0.1
  b.blocks[0].at(2, 2) = -9.0;   // ratio 0.15
  const BlockImage out = fuse_contrast(a, b);
  CHECK(out.blocks[0].coeffs[0] == 80.0);
  CHECK(out.blocks[0].at(0, 1) == 40.0);
  CHECK(out.blocks[0].at(1, 0) == 3.0);
  CHECK(out.blocks[0].at(2, 2) == -9.0);
  CHECK(out.blocks[0].at(7, 7) == 0.0);

  // A zero DC falls back to the small epsilon instead of dividing by zero.
  BlockImage z = filled(1, 1, 0.0);
  z.blocks[0].at(0, 1) = 1e-3;
  CHECK(fuse_contrast(z, a).blocks[0].at(0, 1) == 1e-3);
}

TEST_CASE("fuse validates its inputs") {
  std::mt19937_64 rng(48);
  const BlockImage a = random_block_image(rng, 16, 16);
  const BlockImage b = random_block_image(rng, 24, 16);
  for (Method m : kAllMethods) CHECK_THROWS_AS(fuse(a, b, config(m)), DimensionMismatch);

  BlockImage quantized(GridGeometry{16, 16}, QuantTable{}, CoeffForm::quantized);
  CHECK_THROWS_AS(fuse(a, quantized, config(Method::sf_cv)), FormMismatch);

  CHECK_THROWS_AS(parse_method("wavelet"), UnknownMethod);
  for (Method m : kAllMethods) CHECK(parse_method(method_name(m)) == m);

  CHECK_THROWS_AS(fuse(a, a, config(Method::sf, -1.0)), InvalidArgument);
  FusionConfig bad_tau;
  bad_tau.ac_max_tau = -0.5;
  CHECK_THROWS_AS(bad_tau.validate(), InvalidArgument);
}

TEST_CASE("fuse_all folds pairwise from the left") {
  std::mt19937_64 rng(49);
  std::vector<BlockImage> sources;
  for (int i = 0; i < 4; ++i) sources.push_back(random_block_image(rng, 40, 32));
  for (Method m : kAllMethods) {
    const FusionConfig cfg = config(m);
    const BlockImage expected = fuse(fuse(fuse(sources[0], sources[1], cfg), sources[2], cfg), sources[3], cfg);
    REQUIRE(fuse_all(sources, cfg) == expected);
  }
  CHECK(fuse_all(std::span(sources).first(1), config(Method::sf)) == sources[0]);
  CHECK_THROWS_AS(fuse_all({}, config(Method::sf)), InvalidArgument);
}

TEST_CASE("sf_grid agrees with the per-block pixel spatial frequency") {
  std::mt19937_64 rng(50);
  const BlockImage img = random_block_image(rng, 40, 24);
  const FocusGrid g = sf_grid(img);
  REQUIRE(g.rows() == 3);
  REQUIRE(g.cols() == 5);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 5; ++c) {
      REQUIRE(std::abs(g(r, c) - spatial_frequency_spatial(inverse_dct(img.block(r, c)))) < 1e-9);
    }
  }
}

TEST_CASE("spatial-frequency fusion beats both sources on a synthetic pair") {
  std::mt19937_64 rng(51);
  const Raster truth = dctfuse::testing::random_raster(rng, 96, 64);
  for (Region region : {Region{Half::left}, Region{Half::right}}) {
    BlurSpec spec;
    spec.region = region;
    const SourcePair pair = make_pair(truth, spec);
    const BlockImage a = to_coefficients(to_blocks(pair.a), QuantTable{});
    const BlockImage b = to_coefficients(to_blocks(pair.b), QuantTable{});
    for (Method m : {Method::sf, Method::sf_cv}) {
      const Raster fused = decode_raster(fuse(a, b, config(m)));
      const double e = rmse(truth, fused);
      CHECK(e < rmse(truth, pair.a));
      CHECK(e < rmse(truth, pair.b));
    }
  }
}
