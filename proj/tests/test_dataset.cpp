#include <doctest.h>

#include <numeric>
#include <random>

#include "dctfuse/dataset.hpp"
#include "dctfuse/errors.hpp"
#include "test_support.hpp"

using namespace dctfuse;

namespace {

// Direct 2-D convolution with the outer product of unnormalized Gaussian
// taps, normalized once over the full square support; edges replicated.
double direct_gaussian_at(const Raster& img, int row, int col, double sigma, int radius) {
  double num = 0.0, den = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      const int r = std::clamp(row + dy, 0, img.height - 1);
      const int c = std::clamp(col + dx, 0, img.width - 1);
      num += w * img.at(r, c);
      den += w;
    }
  }
  return num / den;
}

double sum_of(const Raster& r) { return std::accumulate(r.pixels.begin(), r.pixels.end(), 0.0); }

}  // namespace

TEST_CASE("blurring a constant image leaves it unchanged") {
  const Raster flat(20, 15, 93.0);
  for (BlurKernel k : {BlurKernel{GaussianKernel{}}, BlurKernel{DiskKernel{3}}, BlurKernel{GaussianKernel{0.5, 2}}}) {
    const Raster out = blur(flat, k);
    for (double p : out.pixels) REQUIRE(std::abs(p - 93.0) < 1e-9);
  }
}

TEST_CASE("zero-radius disk is the identity") {
  std::mt19937_64 rng(71);
  const Raster img = dctfuse::testing::random_raster(rng, 19, 11);
  CHECK(blur(img, DiskKernel{0}) == img);
  BlurSpec spec;
  spec.kernel = DiskKernel{0};
  CHECK(blur_region(img, spec) == img);
}

TEST_CASE("impulse response preserves mass and matches direct convolution") {
  Raster impulse(41, 41, 0.0);
  impulse.at(20, 30) = 255.0;
  BlurSpec spec;
  spec.region = Half::right;
  const Raster out = blur_region(impulse, spec);
  CHECK(std::abs(sum_of(out) - 255.0) < 0.5);
  CHECK(std::abs(out.at(20, 30) - direct_gaussian_at(impulse, 20, 30, 2.0, 6)) < 1e-6);
  for (int dr = -3; dr <= 3; ++dr) {
    for (int dc = -3; dc <= 3; ++dc) {
      REQUIRE(std::abs(out.at(20 + dr, 30 + dc) - direct_gaussian_at(impulse, 20 + dr, 30 + dc, 2.0, 6)) < 1e-6);
    }
  }
}

TEST_CASE("disk kernel averages uniformly over its support") {
  Raster impulse(21, 21, 0.0);
  impulse.at(10, 10) = 1.0;
  const Raster out = blur(impulse, DiskKernel{2});
  // Points with dx^2 + dy^2 <= 4: 13 of them.
  CHECK(out.at(10, 10) == doctest::Approx(1.0 / 13.0));
  CHECK(out.at(10, 12) == doctest::Approx(1.0 / 13.0));
  CHECK(out.at(11, 12) == 0.0);
  CHECK(sum_of(out) == doctest::Approx(1.0));
}

TEST_CASE("pixels outside the region are bit-identical") {
  std::mt19937_64 rng(72);
  const Raster img = dctfuse::testing::random_raster(rng, 37, 29);
  for (Region region : {Region{Half::left}, Region{Half::right}, Region{Half::top}, Region{Half::bottom},
                        Region{Rect{5, 7, 10, 12}}}) {
    BlurSpec spec;
    spec.region = region;
    const Rect rect = resolve_region(region, img.width, img.height);
    const Raster out = blur_region(img, spec);
    int changed_inside = 0;
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c) {
        if (rect.contains(r, c)) {
          changed_inside += out.at(r, c) != img.at(r, c) ? 1 : 0;
        } else {
          REQUIRE(out.at(r, c) == img.at(r, c));
        }
      }
    }
    CHECK(changed_inside > 0);
  }
}

TEST_CASE("gaussian weights are normalized and validated") {
  for (double sigma : {0.3, 1.0, 2.0, 3.7}) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const std::vector<double> w = gaussian_weights(sigma, radius);
    REQUIRE(w.size() == static_cast<std::size_t>(2 * radius + 1));
    CHECK(std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) < 1e-9);
    CHECK(w[radius] > w[radius + 1]);
    CHECK(w.front() == w.back());
  }
  CHECK_THROWS_AS(gaussian_weights(2.0, 5), InvalidArgument);
  CHECK_THROWS_AS(gaussian_weights(0.0, 3), InvalidArgument);
  CHECK_THROWS_AS(gaussian_weights(-1.0, 3), InvalidArgument);
  CHECK_THROWS_AS(blur(Raster(4, 4), DiskKernel{-1}), InvalidArgument);
}

TEST_CASE("regions") {
  const Rect right = resolve_region(Half::right, 11, 6);
  CHECK(right.x == 5);
  CHECK(right.width == 6);
  CHECK(right.height == 6);
  const Rect left = resolve_region(Half::left, 11, 6);
  CHECK(left.width == 5);
  const Rect bottom = resolve_region(Half::bottom, 11, 7);
  CHECK(bottom.y == 3);
  CHECK(bottom.height == 4);

  CHECK(std::get<Half>(parse_region("top")) == Half::top);
  const Rect custom = std::get<Rect>(parse_region("1,2,3,4"));
  CHECK(custom.x == 1);
  CHECK(custom.y == 2);
  CHECK(custom.width == 3);
  CHECK(custom.height == 4);
  CHECK_THROWS_AS(parse_region("middle"), InvalidArgument);
  CHECK_THROWS_AS(parse_region("1,2,3"), InvalidArgument);

  CHECK_THROWS_AS(resolve_region(Rect{8, 0, 4, 4}, 10, 10), RegionOutOfBounds);
  CHECK_THROWS_AS(resolve_region(Rect{-1, 0, 4, 4}, 10, 10), RegionOutOfBounds);
  BlurSpec spec;
  spec.region = Rect{0, 0, 11, 1};
  CHECK_THROWS_AS(blur_region(Raster(10, 10), spec), RegionOutOfBounds);
}

TEST_CASE("make_pair produces complementary in-focus halves") {
  std::mt19937_64 rng(73);
  const Raster truth = dctfuse::testing::random_raster(rng, 40, 24);
  const SourcePair pair = make_pair(truth, BlurSpec{});
  const Rect right = resolve_region(Half::right, truth.width, truth.height);
  int a_sharp = 0, b_sharp = 0;
  for (int r = 0; r < truth.height; ++r) {
    for (int c = 0; c < truth.width; ++c) {
      if (right.contains(r, c)) {
        REQUIRE(pair.a.at(r, c) == truth.at(r, c));
      } else {
        REQUIRE(pair.b.at(r, c) == truth.at(r, c));
      }
      a_sharp += pair.a.at(r, c) == truth.at(r, c) ? 1 : 0;
      b_sharp += pair.b.at(r, c) == truth.at(r, c) ? 1 : 0;
    }
  }
  // Every pixel is in focus in at least one source.
  CHECK(a_sharp + b_sharp >= truth.width * truth.height);

  const SourcePair again = make_pair(truth, BlurSpec{});
  CHECK(again.a == pair.a);
  CHECK(again.b == pair.b);
}
