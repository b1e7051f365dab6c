#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "dctfuse/bench.hpp"
#include "dctfuse/errors.hpp"
#include "dctfuse/fusion.hpp"
#include "dctfuse/io.hpp"
#include "dctfuse/jpeg_codec.hpp"
#include "dctfuse/metrics.hpp"
#include "dctfuse/pgm.hpp"

#ifndef DCTFUSE_DEFAULT_DATA_DIR
#define DCTFUSE_DEFAULT_DATA_DIR "data/standard"
#endif

namespace dctfuse::cli {

namespace fs = std::filesystem;

namespace {

// Carries an exit code to the top-level handler.
struct Failure {
  int code;
  std::string message;
};

std::vector<std::uint8_t> load(const std::string& path) {
  try {
    return read_file(path);
  } catch (const Error& e) {
    throw Failure{kExitParse, e.what()};
  }
}

void store(const fs::path& path, std::span<const std::uint8_t> bytes) {
  try {
    write_file(path, bytes);
  } catch (const Error& e) {
    throw Failure{kExitInternal, e.what()};
  }
}

BlockImage load_jpeg(const std::string& path) {
  const auto bytes = load(path);
  try {
    return parse_jpeg(bytes);
  } catch (const StreamError& e) {
    throw Failure{kExitParse, path + ": " + e.what()};
  }
}

Raster load_pgm(const std::string& path) {
  const auto bytes = load(path);
  try {
    return read_pgm_raster(bytes);
  } catch (const Error& e) {
    throw Failure{kExitParse, path + ": " + e.what()};
  }
}

// JPEG or PGM, chosen by content.
Raster load_any(const std::string& path) {
  const auto bytes = load(path);
  try {
    if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8) {
      return to_8bit(decode_jpeg(bytes));
    }
    return read_pgm_raster(bytes);
  } catch (const Error& e) {
    throw Failure{kExitParse, path + ": " + e.what()};
  }
}

void require_same_geometry(const std::vector<BlockImage>& images,
                           const std::vector<std::string>& paths) {
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (images[i].geometry != images[0].geometry) {
      throw Failure{kExitShape,
                    paths[i] + " is " + std::to_string(images[i].geometry.width) + "x" +
                        std::to_string(images[i].geometry.height) + ", " + paths[0] + " is " +
                        std::to_string(images[0].geometry.width) + "x" +
                        std::to_string(images[0].geometry.height)};
    }
  }
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

struct BlurOptions {
  std::string region = "right";
  std::string kernel = "gaussian";
  double sigma = 2.0;
  std::optional<int> radius;

  void attach(CLI::App* app) {
    app->add_option("--region", region, "left|right|top|bottom or x,y,w,h (sharp area of A)")
        ->capture_default_str();
    app->add_option("--kernel", kernel, "gaussian or disk")
        ->check(CLI::IsMember({"gaussian", "disk"}))
        ->capture_default_str();
    app->add_option("--sigma", sigma, "gaussian sigma")->capture_default_str();
    app->add_option("--radius", radius, "kernel radius (gaussian default ceil(3 sigma), disk default 3)");
  }

  BlurSpec spec() const {
    BlurSpec s;
    try {
      s.region = parse_region(region);
    } catch (const InvalidArgument& e) {
      throw Failure{kExitUsage, e.what()};
    }
    if (kernel == "gaussian") {
      const int r = radius.value_or(static_cast<int>(std::ceil(3.0 * sigma)));
      try {
        gaussian_weights(sigma, r);
      } catch (const InvalidArgument& e) {
        throw Failure{kExitUsage, e.what()};
      }
      s.kernel = GaussianKernel{sigma, r};
    } else {
      const int r = radius.value_or(3);
      if (r < 0) throw Failure{kExitUsage, "disk radius must be non-negative"};
      s.kernel = DiskKernel{r};
    }
    return s;
  }
};

void check_threshold(double threshold) {
  if (!(threshold >= 0.0)) throw Failure{kExitUsage, "--threshold must be non-negative"};
}

Method method_from(const std::string& name) {
  try {
    return parse_method(name);
  } catch (const UnknownMethod& e) {
    throw Failure{kExitUsage, e.what()};
  }
}

std::uint8_t map_level(int value) { return value > 0 ? 255 : (value < 0 ? 0 : 128); }

template <class T>
Raster render_map(const Grid<T>& grid) {
  Raster out(grid.cols(), grid.rows());
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) out.at(r, c) = map_level(static_cast<int>(grid(r, c)));
  }
  return out;
}

fs::path refined_path(const fs::path& map_path) {
  fs::path out = map_path;
  out.replace_filename(map_path.stem().string() + "_refined" + map_path.extension().string());
  return out;
}

// --- subcommands ---------------------------------------------------------

struct FuseArgs {
  std::vector<std::string> inputs;
  std::string method = "sf_cv";
  double threshold = 0.0;
  double tau = 0.0;
  std::optional<int> quality;
  std::string output;
};

int cmd_fuse(const FuseArgs& args, std::ostream& out) {
  check_threshold(args.threshold);
  if (!(args.tau >= 0.0)) throw Failure{kExitUsage, "--tau must be non-negative"};
  const Method method = method_from(args.method);

  std::vector<BlockImage> sources;
  for (const auto& path : args.inputs) sources.push_back(load_jpeg(path));
  require_same_geometry(sources, args.inputs);

  QuantTable table = sources.front().quant;
  if (args.quality) {
    try {
      table = quality_table(*args.quality);
    } catch (const InvalidArgument& e) {
      throw Failure{kExitUsage, e.what()};
    }
  }

  std::vector<BlockImage> dequantized;
  for (const auto& s : sources) dequantized.push_back(dequantize(s));
  const BlockImage fused = fuse_all(dequantized, FusionConfig{method, args.threshold, args.tau});
  store(args.output, emit_jpeg(quantize(fused, table)));

  out << "wrote " << args.output << " (" << fused.geometry.width << "x" << fused.geometry.height
      << ", method " << method_name(method) << ", " << sources.size() << " sources)\n";
  return kExitOk;
}

struct GenerateArgs {
  std::string ground;
  BlurOptions blur;
  int quality = 75;
  std::string output_dir;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  const Raster truth = load_pgm(args.ground);
  const BlurSpec spec = args.blur.spec();
  SourcePair pair;
  try {
    pair = make_pair(truth, spec);
  } catch (const RegionOutOfBounds& e) {
    throw Failure{kExitShape, e.what()};
  }
  QuantTable table;
  try {
    table = quality_table(args.quality);
  } catch (const InvalidArgument& e) {
    throw Failure{kExitUsage, e.what()};
  }

  const fs::path dir(args.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitInternal, "cannot create " + dir.string() + ": " + ec.message()};

  const Raster a = to_8bit(pair.a);
  const Raster b = to_8bit(pair.b);
  store(dir / "A.jpg", emit_jpeg(encode_raster(a, table)));
  store(dir / "B.jpg", emit_jpeg(encode_raster(b, table)));
  store(dir / "A.pgm", write_pgm_raster(a));
  store(dir / "B.pgm", write_pgm_raster(b));
  store(dir / "ground.pgm", write_pgm_raster(truth));
  out << "wrote " << (dir / "A.jpg").string() << " " << (dir / "B.jpg").string() << " "
      << (dir / "ground.pgm").string() << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string reference;
  std::vector<std::string> tests;
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const Raster reference = load_pgm(args.reference);
  for (const auto& path : args.tests) {
    const Raster test = load_any(path);
    if (test.width != reference.width || test.height != reference.height) {
      throw Failure{kExitShape, path + " does not match the reference dimensions"};
    }
    out << "file=" << path << " rmse=" << format_real(rmse(reference, test))
        << " ssim_global=" << format_real(ssim(reference, test, SsimMode::global));
    if (test.width >= kSsimWindow && test.height >= kSsimWindow) {
      out << " ssim_windowed=" << format_real(ssim(reference, test, SsimMode::windowed));
    } else {
      out << " ssim_windowed=n/a";
    }
    out << "\n";
  }
  return kExitOk;
}

struct InspectArgs {
  std::string input_a;
  std::string input_b;
  double threshold = 0.0;
  std::string output;
};

int cmd_inspect(const InspectArgs& args, std::ostream& out) {
  check_threshold(args.threshold);
  std::vector<BlockImage> sources{load_jpeg(args.input_a), load_jpeg(args.input_b)};
  require_same_geometry(sources, {args.input_a, args.input_b});
  const auto maps = selection_maps(dequantize(sources[0]), dequantize(sources[1]), args.threshold);

  const fs::path map_path(args.output);
  store(map_path, write_pgm_raster(render_map(maps.decision)));
  store(refined_path(map_path), write_pgm_raster(render_map(maps.refined)));

  auto tally = [](const auto& grid) {
    std::array<long, 3> counts{};
    for (auto v : grid.cells()) ++counts[v > 0 ? 0 : (v < 0 ? 2 : 1)];
    return counts;
  };
  const auto w = tally(maps.decision);
  const auto r = tally(maps.refined);
  out << "blocks=" << maps.decision.cols() << "x" << maps.decision.rows()
      << " decision a=" << w[0] << " tie=" << w[1] << " b=" << w[2]
      << " refined a=" << r[0] << " tie=" << r[1] << " b=" << r[2] << "\n";
  out << "wrote " << map_path.string() << " " << refined_path(map_path).string() << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string data_dir = DCTFUSE_DEFAULT_DATA_DIR;
  std::vector<int> qualities{75};
  bool sweep = false;
  double threshold = 0.0;
  double tau = 0.0;
  std::vector<std::string> methods;
  BlurOptions blur;
  std::string csv;
  std::string format = "text";
  unsigned threads = 1;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  check_threshold(args.threshold);
  BenchmarkConfig config;
  try {
    config.images = load_dataset(args.data_dir);
  } catch (const Error& e) {
    throw Failure{kExitParse, e.what()};
  }
  config.blur = args.blur.spec();
  config.threshold = args.threshold;
  config.ac_max_tau = args.tau;
  config.threads = args.threads;
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const auto& m : args.methods) config.methods.push_back(method_from(m));
  }

  const std::vector<int> qualities = args.sweep ? std::vector<int>{50, 75, 90} : args.qualities;
  for (int q : qualities) {
    if (q < 1 || q > 100) throw Failure{kExitUsage, "--quality must be in 1..100"};
  }
  for (int q : qualities) {
    config.quality = q;
    BenchmarkRun run;
    try {
      run = run_benchmark(config);
    } catch (const DimensionMismatch& e) {
      throw Failure{kExitShape, e.what()};
    } catch (const RegionOutOfBounds& e) {
      throw Failure{kExitShape, e.what()};
    }
    const std::string csv = emit_report(run, ReportFormat::csv);
    if (args.format == "csv") {
      out << csv;
    } else {
      out << emit_report(run, ReportFormat::text);
      if (qualities.size() > 1) out << "\n";
    }
    if (!args.csv.empty()) {
      fs::path path(args.csv);
      if (qualities.size() > 1) {
        path.replace_filename(path.stem().string() + "_q" + std::to_string(q) +
                              path.extension().string());
      }
      store(path, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-focus image fusion in the JPEG coefficient domain", "dctfuse"};
  app.require_subcommand(1, 1);

  FuseArgs fuse_args;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse JPEG sources into one JPEG");
  fuse_cmd->add_option("inputs", fuse_args.inputs, "source JPEGs (two or more)")
      ->required()
      ->expected(2, -1);
  fuse_cmd->add_option("--method", fuse_args.method, "sf, sf_cv, average, contrast, variance, ac_max")
      ->capture_default_str();
  fuse_cmd->add_option("--threshold,-t", fuse_args.threshold, "SF threshold T")->capture_default_str();
  fuse_cmd->add_option("--tau", fuse_args.tau, "ac_max magnitude cutoff")->capture_default_str();
  fuse_cmd->add_option("--quality,-q", fuse_args.quality,
                       "re-quantize with the standard table at this quality (default: first source's table)");
  fuse_cmd->add_option("-o,--output", fuse_args.output, "output JPEG")->required();

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Make a synthetic multi-focus pair from a PGM");
  gen_cmd->add_option("ground", gen_args.ground, "ground-truth PGM")->required();
  gen_args.blur.attach(gen_cmd);
  gen_cmd->add_option("--quality,-q", gen_args.quality, "JPEG quality")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen_args.output_dir, "output directory")->required();

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score images against a ground-truth PGM");
  eval_cmd->add_option("reference", eval_args.reference, "ground-truth PGM")->required();
  eval_cmd->add_option("tests", eval_args.tests, "JPEG or PGM images to score")->required();

  InspectArgs inspect_args;
  auto* inspect_cmd = app.add_subcommand("inspect", "Render decision and refined maps");
  inspect_cmd->add_option("input_a", inspect_args.input_a, "source A JPEG")->required();
  inspect_cmd->add_option("input_b", inspect_args.input_b, "source B JPEG")->required();
  inspect_cmd->add_option("--threshold,-t", inspect_args.threshold, "SF threshold T")->capture_default_str();
  inspect_cmd->add_option("-o,--output", inspect_args.output,
                          "decision map PGM (refined map goes to <stem>_refined.pgm)")
      ->required();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run every method over a dataset of PGMs");
  bench_cmd->add_option("--data", bench_args.data_dir, "directory of ground-truth PGMs")->capture_default_str();
  bench_cmd->add_option("--quality,-q", bench_args.qualities, "JPEG quality (repeatable)")->capture_default_str();
  bench_cmd->add_flag("--sweep", bench_args.sweep, "run qualities 50, 75 and 90");
  bench_cmd->add_option("--threshold,-t", bench_args.threshold, "SF threshold T")->capture_default_str();
  bench_cmd->add_option("--tau", bench_args.tau, "ac_max magnitude cutoff")->capture_default_str();
  bench_cmd->add_option("--methods", bench_args.methods, "comma-separated method list")->delimiter(',');
  bench_args.blur.attach(bench_cmd);
  bench_cmd->add_option("--csv", bench_args.csv, "write the CSV report to this file");
  bench_cmd->add_option("--format", bench_args.format, "stdout format: text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench_args.threads, "worker threads (0 = all cores)")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dctfuse: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*fuse_cmd) return cmd_fuse(fuse_args, out);
    if (*gen_cmd) return cmd_generate(gen_args, out);
    if (*eval_cmd) return cmd_evaluate(eval_args, out);
    if (*inspect_cmd) return cmd_inspect(inspect_args, out);
    if (*bench_cmd) return cmd_bench(bench_args, out);
  } catch (const Failure& f) {
    err << "dctfuse: " << f.message << "\n";
    return f.code;
  } catch (const DimensionMismatch& e) {
    err << "dctfuse: " << e.what() << "\n";
    return kExitShape;
  } catch (const std::exception& e) {
    err << "dctfuse: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace dctfuse::cli
