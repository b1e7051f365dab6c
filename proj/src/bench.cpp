#include "dctfuse/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <thread>

#include "dctfuse/errors.hpp"
#include "dctfuse/io.hpp"
#include "dctfuse/jpeg_codec.hpp"
#include "dctfuse/pgm.hpp"

namespace dctfuse {

namespace {

struct PairResult {
  SourceScores sources;
  std::vector<MetricReport> rows;
};

MetricReport score(const std::string& pair_id, std::string_view method, const Raster& truth,
                   const Raster& test) {
  MetricReport report;
  report.pair_id = pair_id;
  report.method = std::string(method);
  report.rmse = rmse(truth, test);
  report.ssim_global = ssim(truth, test, SsimMode::global);
  report.ssim_windowed = ssim(truth, test, SsimMode::windowed);
  return report;
}

// Round trip through the bitstream, as a receiving node would see it.
BlockImage code_source(const Raster& image, const QuantTable& table) {
  return dequantize(parse_jpeg(emit_jpeg(encode_raster(to_8bit(image), table))));
}

Raster code_output(const BlockImage& fused, const QuantTable& table) {
  return to_8bit(decode_raster(parse_jpeg(emit_jpeg(quantize(fused, table)))));
}

PairResult run_pair(const DatasetImage& image, const BenchmarkConfig& config,
                    std::span<const Method> methods, const QuantTable& table) {
  PairResult result;
  const SourcePair pair = make_pair(image.truth, config.blur);
  const BlockImage a = code_source(pair.a, table);
  const BlockImage b = code_source(pair.b, table);

  result.sources.pair_id = image.id;
  result.sources.a = score(image.id, "source_a", image.truth, to_8bit(decode_raster(a)));
  result.sources.b = score(image.id, "source_b", image.truth, to_8bit(decode_raster(b)));

  for (Method method : methods) {
    FusionConfig cfg{method, config.threshold, config.ac_max_tau};
    const BlockImage fused = fuse(a, b, cfg);
    result.rows.push_back(score(image.id, method_name(method), image.truth, code_output(fused, table)));
  }
  return result;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string describe_blur(const BlurSpec& spec) {
  char buf[96];
  if (const auto* g = std::get_if<GaussianKernel>(&spec.kernel)) {
    std::snprintf(buf, sizeof buf, "gaussian sigma=%g radius=%d", g->sigma, g->radius);
  } else {
    std::snprintf(buf, sizeof buf, "disk radius=%d", std::get<DiskKernel>(spec.kernel).radius);
  }
  std::string out = buf;
  if (const auto* half = std::get_if<Half>(&spec.region)) {
    static constexpr const char* names[] = {"left", "right", "top", "bottom"};
    out += std::string(", region ") + names[static_cast<int>(*half)];
  } else {
    const Rect& r = std::get<Rect>(spec.region);
    std::snprintf(buf, sizeof buf, ", region %d,%d,%d,%d", r.x, r.y, r.width, r.height);
    out += buf;
  }
  return out;
}

const char* display_name(std::string_view method) {
  if (method == "average") return "DCT + Average";
  if (method == "ac_max") return "DCT + AC-Max";
  if (method == "variance") return "DCT + Variance";
  if (method == "contrast") return "DCT + Contrast";
  if (method == "sf") return "DCT + SF";
  if (method == "sf_cv") return "DCT + SF + CV";
  return "?";
}

std::string csv_report(const BenchmarkRun& run) {
  std::string out = "pair_id,method,rmse,ssim_global,ssim_windowed,threshold\n";
  const std::string threshold = format_real(run.threshold);
  auto line = [&](const std::string& id, const std::string& method, double r, double sg,
                  double sw) {
    out += id + "," + method + "," + format_real(r) + "," + format_real(sg) + "," +
           format_real(sw) + "," + threshold + "\n";
  };
  for (const auto& row : run.rows) line(row.pair_id, row.method, row.rmse, row.ssim_global, row.ssim_windowed);
  for (const auto& mean : run.means) line(kMeanRowId, mean.method, mean.rmse, mean.ssim_global, mean.ssim_windowed);
  return out;
}

std::string text_report(const BenchmarkRun& run) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu pairs, %s, JPEG quality %d, T=%g\n\n", run.pair_ids.size(),
                describe_blur(run.blur).c_str(), run.quality, run.threshold);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %10s %14s %14s\n", "Method", "RMSE", "SSIM(global)", "SSIM(8x8)");
  out += buf;
  out += std::string(57, '-') + "\n";
  static constexpr const char* table_order[] = {"average", "ac_max", "variance",
                                                "contrast", "sf", "sf_cv"};
  for (const char* name : table_order) {
    const auto it = std::find_if(run.means.begin(), run.means.end(),
                                 [&](const MethodMean& m) { return m.method == name; });
    if (it == run.means.end()) continue;
    std::snprintf(buf, sizeof buf, "%-16s %10.3f %14.4f %14.4f\n", display_name(name), it->rmse,
                  it->ssim_global, it->ssim_windowed);
    out += buf;
  }
  if (!run.sources.empty()) {
    double ra = 0, rb = 0;
    for (const auto& s : run.sources) {
      ra += s.a.rmse;
      rb += s.b.rmse;
    }
    const double n = static_cast<double>(run.sources.size());
    std::snprintf(buf, sizeof buf, "\nsource A mean RMSE %.3f, source B mean RMSE %.3f\n", ra / n, rb / n);
    out += buf;
  }
  return out;
}

}  // namespace

std::vector<DatasetImage> load_dataset(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw DatasetMissing("dataset directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  if (files.empty()) throw DatasetMissing("no .pgm images in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<DatasetImage> images;
  for (const auto& file : files) {
    images.push_back({file.stem().string(), read_pgm_raster(read_file(file))});
  }
  return images;
}

BenchmarkRun run_benchmark(const BenchmarkConfig& config) {
  if (config.images.empty()) throw DatasetMissing("benchmark dataset is empty");
  FusionConfig{Method::sf_cv, config.threshold, config.ac_max_tau}.validate();
  const QuantTable table = quality_table(config.quality);

  std::vector<Method> methods;
  for (Method m : config.methods) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }

  std::vector<const DatasetImage*> order;
  for (const auto& image : config.images) order.push_back(&image);
  std::sort(order.begin(), order.end(),
            [](const DatasetImage* l, const DatasetImage* r) { return l->id < r->id; });

  std::vector<PairResult> results(order.size());
  std::vector<std::exception_ptr> failures(order.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      try {
        results[i] = run_pair(*order[i], config, methods, table);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(order.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw Error("pair '" + order[i]->id + "': " + e.what());
    }
  }

  BenchmarkRun run;
  run.blur = config.blur;
  run.quality = config.quality;
  run.threshold = config.threshold;
  run.methods = methods;
  for (auto& result : results) {
    run.pair_ids.push_back(result.sources.pair_id);
    run.sources.push_back(result.sources);
    std::sort(result.rows.begin(), result.rows.end(),
              [](const MetricReport& l, const MetricReport& r) { return l.method < r.method; });
    run.rows.insert(run.rows.end(), result.rows.begin(), result.rows.end());
  }

  std::map<std::string, MethodMean> sums;
  std::map<std::string, int> counts;
  for (const auto& row : run.rows) {
    auto& m = sums[row.method];
    m.method = row.method;
    m.rmse += row.rmse;
    m.ssim_global += row.ssim_global;
    m.ssim_windowed += row.ssim_windowed;
    ++counts[row.method];
  }
  for (auto& [name, m] : sums) {
    const double n = counts[name];
    m.rmse /= n;
    m.ssim_global /= n;
    m.ssim_windowed /= n;
    run.means.push_back(m);
  }
  return run;
}

std::string emit_report(const BenchmarkRun& run, ReportFormat format) {
  return format == ReportFormat::csv ? csv_report(run) : text_report(run);
}

}  // namespace dctfuse
