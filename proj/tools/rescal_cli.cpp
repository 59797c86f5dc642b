// Copyright 2026 The rescal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rescal: command-line front end. One subcommand per pipeline; every
// subcommand prints a JSON summary on stdout and writes its data product
// (CSV, dump, image) to --out or to a name derived from subcommand + seed.
//
// Exit codes: 0 success, 2 usage/validation, 3 data format, 4 no convergence.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rescal/rescal.hpp"

namespace {

using rescal::Json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "json";
  std::string config;
  std::size_t chunks = 64;
  unsigned threads = 0;

  rescal::ChunkPlan plan() const { return {chunks, threads}; }

  std::string output_path(const std::string& explicit_out, const std::string& stem, const std::string& ext) const {
    if (!explicit_out.empty()) return explicit_out;
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / (stem + "_seed" + std::to_string(seed) + ext)).string();
  }
};

void emit(const Json& j) { std::cout << rescal::format_json(j); }

/// "1.15" or "256/224".
double parse_ratio(const std::string& s) {
  const auto slash = s.find('/');
  double num = 0, den = 1;
  const bool ok = slash == std::string::npos
                      ? rescal::detail::parse_number(s, num)
                      : rescal::detail::parse_number(std::string_view(s).substr(0, slash), num) &&
                            rescal::detail::parse_number(std::string_view(s).substr(slash + 1), den);
  if (!ok || !(den > 0.0)) throw rescal::InvalidArgument("invalid ratio '" + s + "'");
  return num / den;
}

void add_augment_options(CLI::App* app, rescal::AugmentConfig& cfg) {
  app->add_option("--sigma2-min", cfg.sigma2_min, "Lower bound of sigma^2 (RoC area fraction)");
  app->add_option("--sigma2-max", cfg.sigma2_max, "Upper bound of sigma^2");
  app->add_option("--log-alpha-min", cfg.log_alpha_min, "Lower bound of ln(aspect ratio)");
  app->add_option("--log-alpha-max", cfg.log_alpha_max, "Upper bound of ln(aspect ratio)");
  app->add_option("--k-train", cfg.k_train, "Train crop side (pixels)");
}

void add_test_options(CLI::App* app, rescal::TestPreprocConfig& cfg) {
  app->add_option("--k-test-image", cfg.k_test_image, "Test-time shorter-side resize target (pixels)");
  app->add_option("--k-test", cfg.k_test, "Test-time center-crop side (pixels)");
}

// ---------------------------------------------------------------------------

struct RatioReportArgs {
  rescal::AugmentConfig aug;
  std::string ratio = "1.15";
  std::optional<int> k_test_image;
  double fov = 50.0;
  std::size_t mc_samples = 1000000;
  std::string out;
};

void run_ratio_report(const GlobalOptions& g, const RatioReportArgs& a) {
  rescal::validate(a.aug);
  const double ratio = a.k_test_image ? static_cast<double>(*a.k_test_image) / a.aug.k_train : parse_ratio(a.ratio);
  rescal::ApparentSizeReport rep = rescal::expected_ratio_for(a.aug, ratio, rescal::CameraModel{a.fov});
  if (a.mc_samples > 0) {
    const auto cdf = rescal::mc_ratio_distribution_for(a.aug, ratio, a.mc_samples, rescal::RngState(g.seed), g.plan());
    rep.mc = rescal::summarize(cdf);
  }
  const Json j = rescal::to_json(rep);
  if (!a.out.empty()) rescal::write_json_report(j, a.out);
  emit(j);
}

struct RecommendArgs {
  rescal::AugmentConfig aug;
  std::optional<int> k_test;
  double ratio = 1.15;
  int snap = 32;
  std::string snap_mode = "nearest";
  std::string out;
};

void run_recommend(const RecommendArgs& a, bool k_train_given) {
  const auto mode = rescal::parse_snap_mode(a.snap_mode);
  Json j;
  if (a.k_test && !k_train_given) {
    j = rescal::to_json(rescal::recommend_train_resolution(*a.k_test, a.aug, a.ratio, a.snap, mode));
  } else {
    if (a.k_test) throw rescal::InvalidArgument("recommend: give either --k-train or --k-test, not both");
    j = rescal::to_json(rescal::recommend_test_resolution(a.aug.k_train, a.aug, a.ratio, a.snap, mode));
  }
  if (!a.out.empty()) rescal::write_json_report(j, a.out);
  emit(j);
}

struct RocDistArgs {
  std::string manifest;
  std::string mode = "train";
  rescal::AugmentConfig aug;
  rescal::TestPreprocConfig test;
  std::size_t per_image = 1000;
  std::size_t bins = 0;
  std::string out;
};

void run_roc_dist(const GlobalOptions& g, const RocDistArgs& a) {
  const rescal::Manifest manifest = rescal::read_manifest(a.manifest);
  const auto dims = manifest.dims();
  const bool train = a.mode == "train";
  const rescal::EmpiricalCdf cdf = train
                                       ? rescal::roc_area_fractions(dims, a.aug, a.per_image, rescal::RngState(g.seed), g.plan())
                                       : rescal::roc_area_fractions(dims, a.test);
  const std::string path = g.output_path(a.out, "roc-dist_" + a.mode, ".csv");
  if (a.bins > 0) {
    rescal::write_histogram_csv(cdf.histogram(a.bins, 0.0, 1.0), path);
  } else {
    rescal::write_cdf_csv(cdf, path);
  }

  Json j{{"mode", a.mode}, {"n_images", dims.size()}, {"n", cdf.size()}, {"min", cdf.min()}, {"max", cdf.max()},
         {"mean", cdf.mean()}};
  if (train) {
    j["uniform_lo"] = a.aug.sigma2_min;
    j["uniform_hi"] = a.aug.sigma2_max;
    j["ks_uniform"] = a.aug.sigma2_max > a.aug.sigma2_min ? cdf.ks_uniform(a.aug.sigma2_min, a.aug.sigma2_max) : 0.0;
  } else {
    j["distinct_values"] = cdf.steps().size();
    j["square_assumption_fraction"] = rescal::square_test_area_fraction(a.test);
  }
  j["output"] = path;
  emit(j);
}

struct SimulateArgs {
  int k = 224;
  int stride = 32;
  std::optional<int> grid_side;
  std::size_t channels = 1;
  std::size_t samples = 100000;
  double tail_threshold = 2.0;
  double pre_mean = 0.0;
  double pre_sd = 1.0;
  std::optional<double> frechet_mu;
  double frechet_sigma = 1.0;
  double xi = rescal::kDefaultXi;
  std::string out;
};

void run_simulate(const GlobalOptions& g, const SimulateArgs& a) {
  Json j;
  rescal::ActivationSamples samples;
  if (a.frechet_mu) {
    const rescal::FrechetParams p{*a.frechet_mu, a.frechet_sigma, a.xi};
    rescal::detail::require(a.channels >= 1 && a.samples >= 1, "simulate: counts must be >= 1");
    rescal::RngState rng(g.seed);
    const auto draws = rescal::frechet_sample(p, a.channels * a.samples, rng);
    std::vector<float> v(draws.begin(), draws.end());
    bool non_negative = true;
    for (float x : v) non_negative = non_negative && x >= 0.0f;
    samples = rescal::ActivationSamples(a.samples, a.channels, std::move(v), non_negative);
    j["model"] = "frechet";
    j["generator"] = rescal::to_json(p);
  } else {
    const rescal::PoolGrid grid = a.grid_side ? rescal::pool_grid_of_side(*a.grid_side) : rescal::pool_grid_for(a.k, a.stride);
    samples = rescal::simulate_pooled(grid, a.channels, a.samples, rescal::RngState(g.seed), g.plan(),
                                      {a.pre_mean, a.pre_sd});
    j["model"] = "relu-average-pool";
    j["grid"] = rescal::to_json(grid);
    j["gaussian_method"] = rescal::RngState::kGaussianMethod;
    j["pre_activation"] = Json{{"mean", a.pre_mean}, {"sd", a.pre_sd}};
  }
  const std::string path = g.output_path(a.out, "simulate", ".actd");
  rescal::write_activation_dump(samples, path);
  const auto cdf = rescal::empirical_cdf(samples);
  j["n_channels"] = samples.n_channels();
  j["n_samples"] = samples.n_samples();
  j["seed"] = g.seed;
  j["chunks"] = g.chunks;
  j["sparsity"] = rescal::to_json(rescal::sparsity_stats(samples, a.tail_threshold));
  j["mean"] = cdf.mean();
  j["interquartile_range"] = cdf.interquartile_range();
  j["dump"] = path;
  emit(j);
}

struct FitArgs {
  std::string dump;
  double xi = rescal::kDefaultXi;
  std::optional<std::size_t> channel;
  int max_iterations = 200;
  std::string out;
};

rescal::FitReport fit_dump(const std::string& path, double xi, std::optional<std::size_t> channel, int max_iterations) {
  const auto samples = rescal::read_activation_dump(path);
  rescal::FitOptions opt;
  opt.xi = xi;
  opt.max_iterations = max_iterations;
  if (channel) {
    const auto v = samples.channel(*channel);
    return rescal::fit_frechet(std::span<const double>(v), opt);
  }
  return rescal::fit_frechet(samples, opt);
}

int run_fit(const FitArgs& a) {
  const rescal::FitReport rep = fit_dump(a.dump, a.xi, a.channel, a.max_iterations);
  const Json j = rescal::to_json(rep);
  if (!a.out.empty()) rescal::write_json_report(j, a.out);
  emit(j);
  if (!rep.converged) {
    std::cerr << "rescal fit: no convergence after " << rep.iterations << " iterations (best-so-far reported)\n";
    return static_cast<int>(rescal::ErrorKind::no_convergence);
  }
  return 0;
}

struct EqualizeArgs {
  std::string ref_fit, cur_fit, ref_dump, cur_dump;
  double xi = rescal::kDefaultXi;
  bool keep_zeros = true;
  std::string apply;
  std::string applied_out;
  std::string out;
};

int run_equalize(const GlobalOptions& g, const EqualizeArgs& a) {
  auto params_for = [&](const std::string& fit, const std::string& dump, const char* which) {
    if (!fit.empty() == !dump.empty())
      throw rescal::InvalidArgument(std::string("equalize: give exactly one of --") + which + "-fit or --" + which + "-dump");
    if (!fit.empty()) return rescal::frechet_params_from_json(rescal::read_json(fit));
    const auto rep = fit_dump(dump, a.xi, std::nullopt, 200);
    rescal::require_converged(rep);
    return rep.params;
  };
  const auto ref = params_for(a.ref_fit, a.ref_dump, "ref");
  const auto cur = params_for(a.cur_fit, a.cur_dump, "cur");
  rescal::EqualizationMap map = rescal::derive_equalization(ref, cur);
  map.preserve_zeros = a.keep_zeros;

  const Json j{{"reference", rescal::to_json(ref)}, {"current", rescal::to_json(cur)}, {"map", rescal::to_json(map)}};
  const std::string path = g.output_path(a.out, "equalize", g.format == "csv" ? ".csv" : ".json");
  if (g.format == "csv") {
    rescal::write_text(rescal::format_affine_csv(map), path);
  } else {
    rescal::write_json_report(rescal::to_json(map), path);
  }
  if (!a.apply.empty()) {
    const auto applied = rescal::apply_equalization(rescal::read_activation_dump(a.apply), map);
    rescal::write_activation_dump(applied, g.output_path(a.applied_out, "equalized", ".actd"));
  }
  emit(j);
  return 0;
}

struct MatchArgs {
  std::string ref, cur, out;
};

void run_match_channels(const GlobalOptions& g, const MatchArgs& a) {
  const auto set = rescal::gaussian_channel_match(rescal::read_activation_dump(a.ref), rescal::read_activation_dump(a.cur));
  const bool json = g.format == "json" && !a.out.empty() && a.out.ends_with(".json");
  const std::string path = g.output_path(a.out, "match-channels", json ? ".json" : ".csv");
  if (json) {
    rescal::write_json_report(rescal::to_json(set), path);
  } else {
    rescal::write_text(rescal::format_affine_csv(set.channels), path);
  }
  emit(Json{{"n_channels", set.size()}, {"degenerate_channels", set.degenerate}, {"output", path}});
}

struct PreprocessArgs {
  std::string in;
  std::string mode = "test";
  rescal::AugmentConfig aug;
  rescal::TestPreprocConfig test;
  std::string out;
};

void run_preprocess(const GlobalOptions& g, const PreprocessArgs& a) {
  const auto image = rescal::read_pnm(a.in);
  Json j{{"mode", a.mode}, {"input", Json{{"height", image.height()}, {"width", image.width()}, {"channels", image.channels()}}}};
  rescal::ImageBuffer out;
  if (a.mode == "train") {
    rescal::RngState rng(g.seed);
    const auto roc = rescal::sample_roc(image.dims(), a.aug, rng);
    out = rescal::extract_resize(image, roc, a.aug.k_train);
    j["roc"] = Json{{"x", roc.x}, {"y", roc.y}, {"w", roc.w}, {"h", roc.h}};
    j["scaling_factor"] = rescal::scaling_factor(image.dims(), roc, a.aug.k_train);
  } else {
    out = rescal::center_crop_pipeline(image, a.test);
    const auto resized = rescal::test_resized_dims(image.dims(), a.test);
    const auto crop = rescal::test_crop_rect(image.dims(), a.test);
    j["resized"] = Json{{"height", resized.height}, {"width", resized.width}};
    j["crop"] = Json{{"x", crop.x}, {"y", crop.y}, {"w", crop.w}, {"h", crop.h}};
  }
  const std::string path = g.output_path(a.out, "preprocess_" + a.mode, image.channels() == 1 ? ".pgm" : ".ppm");
  rescal::write_pnm(out, path);
  j["output"] = path;
  emit(j);
}

// ---------------------------------------------------------------------------

/// Reads `key=value` lines ('#' comments) from the --config file and appends
/// `--key=value` for every key not already given on the command line, so
/// flags always win.
std::vector<std::string> apply_config_file(std::vector<std::string> args, const std::set<std::string>& subcommands) {
  std::string config;
  std::set<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const std::string name = a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2);
    given.insert(name);
    if (name == "config") config = a.find('=') != std::string::npos ? a.substr(a.find('=') + 1) : (i + 1 < args.size() ? args[i + 1] : "");
  }
  if (config.empty()) return args;

  std::vector<std::string> extra;
  rescal::detail::for_each_line(rescal::read_text(config), [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw rescal::FormatError(config + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key(rescal::detail::trim(line.substr(0, eq)));
    const std::string value(rescal::detail::trim(line.substr(eq + 1)));
    if (key.empty() || key == "config")
      throw rescal::FormatError(config + ":" + std::to_string(line_no) + ": invalid key");
    if (!given.count(key)) extra.push_back("--" + key + "=" + value);
  });

  // Subcommands fall through to the parent, so inserting right after the
  // subcommand name reaches both global and subcommand options.
  std::size_t at = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (subcommands.count(args[i])) {
      at = i + 1;
      break;
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rescal: train/test resolution calibration toolkit", "rescal"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed (64-bit)");
  app.add_option("--out-dir", g.out_dir, "Directory for outputs named from subcommand + seed");
  app.add_option("--format", g.format, "Map/report file format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", g.config, "Plain-text key=value file; command-line flags take precedence");
  app.add_option("--chunks", g.chunks, "Monte-Carlo chunk count (part of the result's identity)")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores); does not change results");

  RatioReportArgs ratio_args;
  auto* ratio_cmd = app.add_subcommand("ratio-report", "Expected train/test apparent-size ratio and its Monte-Carlo check");
  add_augment_options(ratio_cmd, ratio_args.aug);
  ratio_cmd->add_option("--ratio", ratio_args.ratio, "K_test^image / K_train, e.g. 1.15 or 256/224");
  ratio_cmd->add_option("--k-test-image", ratio_args.k_test_image, "Test resize target; overrides --ratio");
  ratio_cmd->add_option("--fov", ratio_args.fov, "Camera field of view in degrees (reporting only)");
  ratio_cmd->add_option("--mc-samples", ratio_args.mc_samples, "Monte-Carlo draws (0 disables)");
  ratio_cmd->add_option("--out", ratio_args.out, "Also write the JSON report here");

  RecommendArgs rec_args;
  auto* rec_cmd = app.add_subcommand("recommend", "Calibrated test resolution for a train resolution");
  add_augment_options(rec_cmd, rec_args.aug);
  rec_cmd->add_option("--k-test", rec_args.k_test, "Inverse direction: train size for this test size (extrapolation)");
  rec_cmd->add_option("--ratio", rec_args.ratio, "K_test^image / K_test, held constant");
  rec_cmd->add_option("--snap", rec_args.snap, "Snap K_test to a multiple of this")->check(CLI::PositiveNumber);
  rec_cmd->add_option("--snap-mode", rec_args.snap_mode, "Snapping rule")->check(CLI::IsMember({"nearest", "down", "up"}));
  rec_cmd->add_option("--out", rec_args.out, "Also write the JSON report here");

  RocDistArgs roc_args;
  auto* roc_cmd = app.add_subcommand("roc-dist", "Distribution of RoC area fractions over a manifest");
  roc_cmd->add_option("--manifest", roc_args.manifest, "CSV with header id,height,width")->required();
  roc_cmd->add_option("--mode", roc_args.mode, "Pipeline")->check(CLI::IsMember({"train", "test"}));
  add_augment_options(roc_cmd, roc_args.aug);
  add_test_options(roc_cmd, roc_args.test);
  roc_cmd->add_option("--per-image", roc_args.per_image, "Train-mode draws per manifest image")->check(CLI::PositiveNumber);
  roc_cmd->add_option("--bins", roc_args.bins, "Histogram bins over [0,1] (0 writes the CDF instead)");
  roc_cmd->add_option("--out", roc_args.out, "Output CSV path");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate pooled activations and write an activation dump");
  sim_cmd->add_option("--k", sim_args.k, "Crop side in pixels");
  sim_cmd->add_option("--stride", sim_args.stride, "Network stride to the final activation map");
  sim_cmd->add_option("--grid-side", sim_args.grid_side, "Pooling grid side; overrides --k/--stride");
  sim_cmd->add_option("--channels", sim_args.channels, "Channels per sample")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--samples", sim_args.samples, "Number of samples")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--tail-threshold", sim_args.tail_threshold, "Threshold for the tail fraction");
  sim_cmd->add_option("--pre-mean", sim_args.pre_mean, "Mean of the pre-ReLU Gaussian");
  sim_cmd->add_option("--pre-sd", sim_args.pre_sd, "Standard deviation of the pre-ReLU Gaussian");
  sim_cmd->add_option("--frechet-mu", sim_args.frechet_mu, "Draw from a Frechet law with this location instead");
  sim_cmd->add_option("--frechet-sigma", sim_args.frechet_sigma, "Frechet scale (with --frechet-mu)");
  sim_cmd->add_option("--xi", sim_args.xi, "Frechet shape (with --frechet-mu)");
  sim_cmd->add_option("--out", sim_args.out, "Output dump path");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Least-squares Frechet fit of an activation dump (zeros excluded)");
  fit_cmd->add_option("--dump", fit_args.dump, "Activation dump")->required();
  fit_cmd->add_option("--xi", fit_args.xi, "Fixed Frechet shape");
  fit_cmd->add_option("--channel", fit_args.channel, "Fit one channel only (default: all values)");
  fit_cmd->add_option("--max-iterations", fit_args.max_iterations, "Gauss-Newton iteration cap");
  fit_cmd->add_option("--out", fit_args.out, "Also write the FitReport JSON here");

  EqualizeArgs eq_args;
  auto* eq_cmd = app.add_subcommand("equalize", "Affine map from current-resolution to reference activation statistics");
  eq_cmd->add_option("--ref-fit", eq_args.ref_fit, "Reference FitReport/params JSON");
  eq_cmd->add_option("--cur-fit", eq_args.cur_fit, "Current FitReport/params JSON");
  eq_cmd->add_option("--ref-dump", eq_args.ref_dump, "Reference activation dump (fitted here)");
  eq_cmd->add_option("--cur-dump", eq_args.cur_dump, "Current activation dump (fitted here)");
  eq_cmd->add_option("--xi", eq_args.xi, "Frechet shape used when fitting dumps");
  eq_cmd->add_option("--keep-zeros", eq_args.keep_zeros, "Pass exact zeros through unchanged");
  eq_cmd->add_option("--apply", eq_args.apply, "Apply the map to this dump");
  eq_cmd->add_option("--applied-out", eq_args.applied_out, "Where to write the equalized dump");
  eq_cmd->add_option("--out", eq_args.out, "Map output path (format from --format)");

  MatchArgs match_args;
  auto* match_cmd = app.add_subcommand("match-channels", "Per-channel Gaussian moment matching of pre-ReLU dumps");
  match_cmd->add_option("--ref", match_args.ref, "Reference dump")->required();
  match_cmd->add_option("--cur", match_args.cur, "Current dump")->required();
  match_cmd->add_option("--out", match_args.out, "Output path (CSV a,b per channel; .json with --format json)");

  PreprocessArgs pre_args;
  auto* pre_cmd = app.add_subcommand("preprocess", "Run the train or test pipeline on a PGM/PPM image");
  pre_cmd->add_option("--in", pre_args.in, "Input P5/P6 image")->required();
  pre_cmd->add_option("--mode", pre_args.mode, "Pipeline")->check(CLI::IsMember({"train", "test"}));
  add_augment_options(pre_cmd, pre_args.aug);
  add_test_options(pre_cmd, pre_args.test);
  pre_cmd->add_option("--out", pre_args.out, "Output image path");

  std::set<std::string> names;
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    names.insert(sub->get_name());
  }

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = apply_config_file(std::move(args), names);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));

    if (*ratio_cmd) run_ratio_report(g, ratio_args);
    else if (*rec_cmd) run_recommend(rec_args, rec_cmd->count("--k-train") > 0);
    else if (*roc_cmd) run_roc_dist(g, roc_args);
    else if (*sim_cmd) run_simulate(g, sim_args);
    else if (*fit_cmd) return run_fit(fit_args);
    else if (*eq_cmd) return run_equalize(g, eq_args);
    else if (*match_cmd) run_match_channels(g, match_args);
    else if (*pre_cmd) run_preprocess(g, pre_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(rescal::ErrorKind::invalid_argument);
  } catch (const rescal::Error& e) {
    std::cerr << "rescal: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "rescal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
