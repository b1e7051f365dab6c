#include "dctfuse/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "dctfuse/errors.hpp"

namespace dctfuse {

namespace {

Raster convolve_separable(const Raster& image, const std::vector<double>& weights) {
  const int radius = static_cast<int>(weights.size() / 2);
  Raster horizontal(image.width, image.height);
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int cc = std::clamp(c + k, 0, image.width - 1);
        acc += weights[k + radius] * image.at(r, cc);
      }
      horizontal.at(r, c) = acc;
    }
  }
  Raster out(image.width, image.height);
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int rr = std::clamp(r + k, 0, image.height - 1);
        acc += weights[k + radius] * horizontal.at(rr, c);
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

Raster convolve_disk(const Raster& image, int radius) {
  std::vector<std::pair<int, int>> taps;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      if (dr * dr + dc * dc <= radius * radius) taps.emplace_back(dr, dc);
    }
  }
  const double weight = 1.0 / static_cast<double>(taps.size());
  Raster out(image.width, image.height);
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      double acc = 0.0;
      for (const auto& [dr, dc] : taps) {
        acc += image.at(std::clamp(r + dr, 0, image.height - 1),
                        std::clamp(c + dc, 0, image.width - 1));
      }
      out.at(r, c) = acc * weight;
    }
  }
  return out;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Region parse_region(std::string_view text) {
  if (text == "left") return Half::left;
  if (text == "right") return Half::right;
  if (text == "top") return Half::top;
  if (text == "bottom") return Half::bottom;

  std::array<int, 4> fields{};
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',', start);
    const bool last = i == 3;
    if (last != (comma == std::string_view::npos)) {
      throw InvalidArgument("region must be left, right, top, bottom or x,y,w,h");
    }
    fields[i] = parse_int(text.substr(start, last ? std::string_view::npos : comma - start));
    start = comma + 1;
  }
  return Rect{fields[0], fields[1], fields[2], fields[3]};
}

Rect resolve_region(const Region& region, int width, int height) {
  if (const auto* half = std::get_if<Half>(&region)) {
    switch (*half) {
      case Half::left: return {0, 0, width / 2, height};
      case Half::right: return {width / 2, 0, width - width / 2, height};
      case Half::top: return {0, 0, width, height / 2};
      case Half::bottom: return {0, height / 2, width, height - height / 2};
    }
  }
  const Rect rect = std::get<Rect>(region);
  if (rect.x < 0 || rect.y < 0 || rect.width < 0 || rect.height < 0 ||
      rect.x + rect.width > width || rect.y + rect.height > height) {
    throw RegionOutOfBounds("region " + std::to_string(rect.x) + "," + std::to_string(rect.y) +
                            "," + std::to_string(rect.width) + "," +
                            std::to_string(rect.height) + " exceeds " + std::to_string(width) +
                            "x" + std::to_string(height) + " image");
  }
  return rect;
}

std::vector<double> gaussian_weights(double sigma, int radius) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
  if (radius < static_cast<int>(std::ceil(3.0 * sigma))) {
    throw InvalidArgument("gaussian radius must be at least ceil(3 sigma)");
  }
  std::vector<double> weights(2 * static_cast<std::size_t>(radius) + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-(k * k) / (2.0 * sigma * sigma));
    weights[k + radius] = w;
    total += w;
  }
  for (double& w : weights) w /= total;
  return weights;
}

Raster blur(const Raster& image, const BlurKernel& kernel) {
  if (const auto* g = std::get_if<GaussianKernel>(&kernel)) {
    return convolve_separable(image, gaussian_weights(g->sigma, g->radius));
  }
  const int radius = std::get<DiskKernel>(kernel).radius;
  if (radius < 0) throw InvalidArgument("disk radius must be non-negative");
  if (radius == 0) return image;
  return convolve_disk(image, radius);
}

Raster blur_region(const Raster& image, const BlurSpec& spec) {
  const Rect rect = resolve_region(spec.region, image.width, image.height);
  const Raster blurred = blur(image, spec.kernel);
  Raster out = image;
  for (int r = rect.y; r < rect.y + rect.height; ++r) {
    for (int c = rect.x; c < rect.x + rect.width; ++c) out.at(r, c) = blurred.at(r, c);
  }
  return out;
}

SourcePair make_pair(const Raster& ground_truth, const BlurSpec& spec) {
  const Rect rect = resolve_region(spec.region, ground_truth.width, ground_truth.height);
  const Raster blurred = blur(ground_truth, spec.kernel);
  SourcePair pair{ground_truth, ground_truth};
  for (int r = 0; r < ground_truth.height; ++r) {
    for (int c = 0; c < ground_truth.width; ++c) {
      if (rect.contains(r, c)) {
        pair.b.at(r, c) = blurred.at(r, c);
      } else {
        pair.a.at(r, c) = blurred.at(r, c);
      }
    }
  }
  return pair;
}

}  // namespace dctfuse
