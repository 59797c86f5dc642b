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

#ifndef RESCAL_SCALE_STATS_HPP_
#define RESCAL_SCALE_STATS_HPP_

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rescal/augment.hpp"
#include "rescal/ecdf.hpp"
#include "rescal/error.hpp"
#include "rescal/parallel.hpp"
#include "rescal/rng.hpp"

namespace rescal {

/// Pinhole camera: focal length in pixels is f = k * sqrt(H*W) with
/// k = 1 / (2 tan(fov/2)). k cancels from every train/test ratio below and
/// is carried for reporting only.
struct CameraModel {
  double fov_deg = 50.0;

  double k() const {
    detail::require(fov_deg > 0.0 && fov_deg < 180.0, "camera fov must be in (0, 180) degrees");
    return 1.0 / (2.0 * std::tan(fov_deg * std::numbers::pi / 360.0));
  }
  double focal_length(const ImageDims& d) const { return k() * std::sqrt(static_cast<double>(d.area())); }
};

/// E[sigma] when sigma^2 ~ U([sigma2_min, sigma2_max]):
/// (2/3) (s+^3 - s-^3) / (s+^2 - s-^2), evaluated in the factored form
/// (2/3) (s+^2 + s+ s- + s-^2) / (s+ + s-) which is exact at s+ = s-.
inline double expected_sigma(double sigma2_min, double sigma2_max) {
  detail::require(std::isfinite(sigma2_min) && std::isfinite(sigma2_max) && sigma2_min > 0.0 &&
                      sigma2_min <= sigma2_max,
                  "expected_sigma: need 0 < sigma2_min <= sigma2_max");
  const double lo = std::sqrt(sigma2_min), hi = std::sqrt(sigma2_max);
  return (2.0 / 3.0) * (hi * hi + hi * lo + lo * lo) / (hi + lo);
}

/// r_test / r_train for a single RoC of linear scale sigma.
inline double apparent_ratio(double sigma, double k_test_image, double k_train) {
  detail::require(sigma > 0.0 && k_test_image > 0.0 && k_train > 0.0,
                  "apparent_ratio: arguments must be positive");
  return sigma * k_test_image / k_train;
}

struct MonteCarloSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct ApparentSizeReport {
  double f_expected_sigma = 0.0;
  double test_image_to_train = 0.0;  // K_test^image / K_train
  double expected_ratio = 0.0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double alpha_correction = 0.0;
  double camera_k = 0.0;
  std::optional<MonteCarloSummary> mc;
};

/// Expected apparent-size ratio for a given K_test^image / K_train.
inline ApparentSizeReport expected_ratio_for(const AugmentConfig& cfg, double test_image_to_train,
                                             const CameraModel& camera = {}) {
  validate(cfg);
  detail::require(std::isfinite(test_image_to_train) && test_image_to_train > 0.0,
                  "expected_ratio: K_test^image / K_train must be positive");
  ApparentSizeReport r;
  r.f_expected_sigma = expected_sigma(cfg.sigma2_min, cfg.sigma2_max);
  r.test_image_to_train = test_image_to_train;
  r.expected_ratio = r.f_expected_sigma * test_image_to_train;
  r.ratio_min = std::sqrt(cfg.sigma2_min) * test_image_to_train;
  r.ratio_max = std::sqrt(cfg.sigma2_max) * test_image_to_train;
  r.alpha_correction = 1.0 / r.expected_ratio;
  r.camera_k = camera.k();
  return r;
}

inline ApparentSizeReport expected_ratio(const AugmentConfig& cfg, int k_test_image) {
  detail::require(k_test_image >= 1, "expected_ratio: k_test_image must be >= 1");
  validate(cfg);
  return expected_ratio_for(cfg, static_cast<double>(k_test_image) / cfg.k_train);
}

/// Monte-Carlo sample of r_test / r_train with sigma drawn by the train-time law.
inline EmpiricalCdf mc_ratio_distribution_for(const AugmentConfig& cfg, double test_image_to_train,
                                              std::size_t n, const RngState& rng,
                                              const ChunkPlan& plan = {}) {
  validate(cfg);
  detail::require(n >= 1, "mc_ratio_distribution: n must be >= 1");
  detail::require(test_image_to_train > 0.0, "mc_ratio_distribution: ratio must be positive");
  std::vector<double> out(n);
  detail::for_each_chunk(n, plan, rng, [&](std::size_t, std::size_t b, std::size_t e, RngState& r) {
    for (std::size_t i = b; i < e; ++i)
      out[i] = std::sqrt(r.uniform(cfg.sigma2_min, cfg.sigma2_max)) * test_image_to_train;
  });
  return EmpiricalCdf(std::move(out));
}

inline EmpiricalCdf mc_ratio_distribution(const AugmentConfig& cfg, int k_test_image, std::size_t n,
                                          const RngState& rng, const ChunkPlan& plan = {}) {
  validate(cfg);
  return mc_ratio_distribution_for(cfg, static_cast<double>(k_test_image) / cfg.k_train, n, rng, plan);
}

inline MonteCarloSummary summarize(const EmpiricalCdf& cdf) {
  MonteCarloSummary s;
  s.n = cdf.size();
  s.mean = cdf.mean();
  s.sd = std::sqrt(cdf.variance());
  s.std_error = s.sd / std::sqrt(static_cast<double>(s.n));
  s.min = cdf.min();
  s.max = cdf.max();
  return s;
}

/// Train mode: area fraction w*h / (H*W) of `per_image` sampled RoCs per image.
/// Image i draws from rng.split(i), so images may be processed in parallel.
inline EmpiricalCdf roc_area_fractions(std::span<const ImageDims> manifest, const AugmentConfig& cfg,
                                       std::size_t per_image, const RngState& rng,
                                       const ChunkPlan& plan = {}) {
  detail::require(!manifest.empty(), "roc_area_fractions: empty manifest");
  detail::require(per_image >= 1, "roc_area_fractions: per_image must be >= 1");
  validate(cfg);
  for (const auto& d : manifest) validate(d);
  std::vector<double> out(manifest.size() * per_image);
  ChunkPlan per_image_plan = plan;
  per_image_plan.chunks = manifest.size();
  detail::for_each_chunk(manifest.size(), per_image_plan, rng,
                         [&](std::size_t, std::size_t b, std::size_t e, RngState& r) {
                           for (std::size_t i = b; i < e; ++i) {
                             const ImageDims& d = manifest[i];
                             const double area = static_cast<double>(d.area());
                             for (std::size_t j = 0; j < per_image; ++j)
                               out[i * per_image + j] = sample_roc(d, cfg, r).area() / area;
                           }
                         });
  return EmpiricalCdf(std::move(out));
}

/// Test mode: one deterministic fraction per image,
/// (k_test / k_test_image)^2 * min(H,W) / max(H,W).
inline EmpiricalCdf roc_area_fractions(std::span<const ImageDims> manifest, const TestPreprocConfig& cfg) {
  detail::require(!manifest.empty(), "roc_area_fractions: empty manifest");
  validate(cfg);
  std::vector<double> out;
  out.reserve(manifest.size());
  const double crop = static_cast<double>(cfg.k_test) / cfg.k_test_image;
  for (const auto& d : manifest) {
    validate(d);
    const double aspect = static_cast<double>(std::min(d.height, d.width)) / std::max(d.height, d.width);
    out.push_back(crop * crop * aspect);
  }
  return EmpiricalCdf(std::move(out));
}

/// The H = W simplification of the test-mode fraction.
inline double square_test_area_fraction(const TestPreprocConfig& cfg) {
  validate(cfg);
  const double crop = static_cast<double>(cfg.k_test) / cfg.k_test_image;
  return crop * crop;
}

enum class SnapMode { nearest, down, up };

inline std::string_view to_string(SnapMode m) {
  switch (m) {
    case SnapMode::down: return "down";
    case SnapMode::up: return "up";
    default: return "nearest";
  }
}

inline SnapMode parse_snap_mode(std::string_view s) {
  if (s == "nearest") return SnapMode::nearest;
  if (s == "down") return SnapMode::down;
  if (s == "up") return SnapMode::up;
  throw InvalidArgument("unknown snap mode '" + std::string(s) + "' (expected nearest|down|up)");
}

/// Rounds k to a positive multiple of `multiple`; never returns 0. Nearest
/// rounds halves up.
inline int snap_resolution(double k, int multiple, SnapMode mode = SnapMode::nearest) {
  detail::require(std::isfinite(k) && k > 0.0, "snap_resolution: k must be positive");
  detail::require(multiple >= 1, "snap_resolution: multiple must be >= 1");
  const double q = k / multiple;
  double steps = 0.0;
  switch (mode) {
    case SnapMode::nearest: steps = std::floor(q + 0.5); break;
    case SnapMode::down: steps = std::floor(q); break;
    case SnapMode::up: steps = std::ceil(q); break;
  }
  return static_cast<int>(std::max(1.0, steps)) * multiple;
}

struct ResolutionRecommendation {
  int k_train = 0;
  int k_test = 0;
  int k_test_image = 0;
  double raw_k_test = 0.0;
  int snap_multiple = 1;
  SnapMode snap_mode = SnapMode::nearest;
  double image_to_crop_ratio = 1.0;
  double expected_ratio = 0.0;
  double alpha_correction = 0.0;
};

/**
 * Test crop size that undoes the train/test apparent-size mismatch.
 *
 * The uncorrected pipeline uses K_test^image = ratio * K_train, which gives
 * E[r_test/r_train] = F * ratio. The crop side is scaled by the correction
 * alpha = 1 / E[...] and snapped; K_test^image follows from the preserved
 * image-to-crop ratio.
 */
inline ResolutionRecommendation recommend_test_resolution(int k_train, const AugmentConfig& cfg,
                                                          double image_to_crop_ratio = 1.15,
                                                          int snap_multiple = 32,
                                                          SnapMode mode = SnapMode::nearest) {
  detail::require(k_train >= 1, "recommend: k_train must be >= 1");
  detail::require(std::isfinite(image_to_crop_ratio) && image_to_crop_ratio >= 1.0,
                  "recommend: image-to-crop ratio must be >= 1");
  detail::require(snap_multiple >= 1, "recommend: snap multiple must be >= 1");
  const ApparentSizeReport rep = expected_ratio_for(cfg, image_to_crop_ratio);
  ResolutionRecommendation r;
  r.k_train = k_train;
  r.image_to_crop_ratio = image_to_crop_ratio;
  r.expected_ratio = rep.expected_ratio;
  r.alpha_correction = rep.alpha_correction;
  r.raw_k_test = k_train * rep.alpha_correction;
  r.snap_multiple = snap_multiple;
  r.snap_mode = mode;
  r.k_test = snap_resolution(r.raw_k_test, snap_multiple, mode);
  r.k_test_image = detail::round_half_up(image_to_crop_ratio * r.k_test);
  return r;
}

struct TrainResolutionRecommendation {
  int k_test = 0;
  int k_train = 0;
  double raw_k_train = 0.0;
  int snap_multiple = 1;
  SnapMode snap_mode = SnapMode::nearest;
  double expected_ratio = 0.0;
  // Only the forward direction (train -> test) has been validated
  // empirically; this inverse is always an extrapolation.
  bool extrapolated = true;
};

/// Inverse direction: train size whose calibrated test size is k_test.
inline TrainResolutionRecommendation recommend_train_resolution(int k_test, const AugmentConfig& cfg,
                                                                double image_to_crop_ratio = 1.15,
                                                                int snap_multiple = 32,
                                                                SnapMode mode = SnapMode::nearest) {
  detail::require(k_test >= 1, "recommend: k_test must be >= 1");
  detail::require(std::isfinite(image_to_crop_ratio) && image_to_crop_ratio >= 1.0,
                  "recommend: image-to-crop ratio must be >= 1");
  const ApparentSizeReport rep = expected_ratio_for(cfg, image_to_crop_ratio);
  TrainResolutionRecommendation r;
  r.k_test = k_test;
  r.expected_ratio = rep.expected_ratio;
  r.raw_k_train = k_test * rep.expected_ratio;
  r.snap_multiple = snap_multiple;
  r.snap_mode = mode;
  r.k_train = snap_resolution(r.raw_k_train, snap_multiple, mode);
  return r;
}

}  // namespace rescal

#endif  // RESCAL_SCALE_STATS_HPP_
