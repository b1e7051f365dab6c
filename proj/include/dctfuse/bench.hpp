#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dctfuse/dataset.hpp"
#include "dctfuse/fusion.hpp"
#include "dctfuse/metrics.hpp"

namespace dctfuse {

struct DatasetImage {
  std::string id;
  Raster truth;
};

struct BenchmarkConfig {
  std::vector<DatasetImage> images;
  BlurSpec blur;
  int quality = 75;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  double threshold = 0.0;
  double ac_max_tau = 0.0;
  // Worker threads; 0 means one per hardware thread.
  unsigned threads = 1;
};

struct MethodMean {
  std::string method;
  double rmse = 0.0;
  double ssim_global = 0.0;
  double ssim_windowed = 0.0;
};

// Scores of the two JPEG-coded sources themselves against ground truth.
struct SourceScores {
  std::string pair_id;
  MetricReport a;
  MetricReport b;
};

struct BenchmarkRun {
  std::vector<std::string> pair_ids;
  BlurSpec blur;
  int quality = 75;
  double threshold = 0.0;
  std::vector<Method> methods;
  // Sorted by pair id, then method name; one row per (pair, method).
  std::vector<MetricReport> rows;
  // Sorted by method name.
  std::vector<MethodMean> means;
  std::vector<SourceScores> sources;
};

// Loads every *.pgm in `dir` (sorted by file name; id = file stem).
// Throws DatasetMissing if the directory is absent or holds no images.
std::vector<DatasetImage> load_dataset(const std::filesystem::path& dir);

// For each image and method: make the pair, JPEG-code both sources at the
// configured quality, parse and de-quantize, fuse, re-quantize and code the
// result, decode it and score it against the ground truth.
BenchmarkRun run_benchmark(const BenchmarkConfig& config);

enum class ReportFormat { csv, text };

std::string emit_report(const BenchmarkRun& run, ReportFormat format);

// Aggregate row label used in the CSV.
inline constexpr const char* kMeanRowId = "mean";

}  // namespace dctfuse
