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

// Train-time random-resized-crop and test-time resize + center-crop
// pipelines, with the bilinear resampler both of them share.

#ifndef RESCAL_AUGMENT_HPP_
#define RESCAL_AUGMENT_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rescal/error.hpp"
#include "rescal/image.hpp"
#include "rescal/rng.hpp"

namespace rescal {

/**
 * Parameters of the train-time region sampler.
 *
 * The RoC linear scale is sigma with sigma^2 ~ U([sigma2_min, sigma2_max]),
 * so sigma^2 is the area fraction of the sampled region. The aspect ratio
 * alpha = H_RoC / W_RoC is log-uniform on [exp(log_alpha_min), exp(log_alpha_max)].
 * The default fixes alpha = 1.
 */
struct AugmentConfig {
  double sigma2_min = 0.0784;
  double sigma2_max = 1.0;
  double log_alpha_min = 0.0;
  double log_alpha_max = 0.0;
  int k_train = 224;
};

inline void validate(const AugmentConfig& cfg) {
  const bool finite = std::isfinite(cfg.sigma2_min) && std::isfinite(cfg.sigma2_max) &&
                      std::isfinite(cfg.log_alpha_min) && std::isfinite(cfg.log_alpha_max);
  detail::require(finite, "augment config: non-finite bound");
  detail::require(cfg.sigma2_min > 0.0 && cfg.sigma2_min <= cfg.sigma2_max &&
                      cfg.sigma2_max <= 1.0,
                  "augment config: need 0 < sigma2_min <= sigma2_max <= 1");
  detail::require(cfg.log_alpha_min <= cfg.log_alpha_max,
                  "augment config: need log_alpha_min <= log_alpha_max");
  detail::require(cfg.k_train >= 1, "augment config: k_train must be >= 1");
}

/// Test-time pipeline: shorter side resized to k_test_image, then a centered
/// k_test x k_test crop.
struct TestPreprocConfig {
  int k_test_image = 256;
  int k_test = 224;
};

inline void validate(const TestPreprocConfig& cfg) {
  detail::require(cfg.k_test >= 1 && cfg.k_test_image >= cfg.k_test,
                  "test preprocessing config: need k_test_image >= k_test >= 1");
}

/// Region of Classification, in input-image pixels.
struct RocRect {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  long long area() const noexcept { return static_cast<long long>(w) * h; }
  bool fits(const ImageDims& d) const noexcept {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && x + w <= d.width && y + h <= d.height;
  }
  friend bool operator==(const RocRect&, const RocRect&) = default;
};

namespace detail {

inline int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

inline constexpr int kPlacementAttempts = 10;

/// Largest centered rectangle whose aspect ratio h/w is the image's own ratio
/// clamped into [alpha_min, alpha_max].
inline RocRect fallback_roc(const ImageDims& dims, double alpha_min, double alpha_max) {
  const double image_alpha = static_cast<double>(dims.height) / dims.width;
  const double alpha = std::clamp(image_alpha, alpha_min, alpha_max);
  int w = dims.width, h = dims.height;
  if (alpha < image_alpha) {
    h = std::clamp(round_half_up(dims.width * alpha), 1, dims.height);
  } else if (alpha > image_alpha) {
    w = std::clamp(round_half_up(dims.height / alpha), 1, dims.width);
  }
  return {(dims.width - w) / 2, (dims.height - h) / 2, w, h};
}

}  // namespace detail

/**
 * Draws a RoC the way a random-resized-crop augmentation does.
 *
 * Up to ten (sigma, alpha) proposals are tried; the first whose rounded
 * extent fits in the image is placed uniformly at random. If none fits, the
 * result is the largest centered region with clamped aspect ratio.
 */
inline RocRect sample_roc(const ImageDims& dims, const AugmentConfig& cfg, RngState& rng) {
  validate(dims);
  validate(cfg);
  const double area = static_cast<double>(dims.area());
  for (int attempt = 0; attempt < detail::kPlacementAttempts; ++attempt) {
    const double sigma = std::sqrt(rng.uniform(cfg.sigma2_min, cfg.sigma2_max));
    const double alpha = std::exp(rng.uniform(cfg.log_alpha_min, cfg.log_alpha_max));
    const int h = detail::round_half_up(sigma * std::sqrt(alpha * area));
    const int w = detail::round_half_up(sigma * std::sqrt(area / alpha));
    if (h >= 1 && w >= 1 && h <= dims.height && w <= dims.width) {
      const auto y = static_cast<int>(rng.uniform_int(0, dims.height - h));
      const auto x = static_cast<int>(rng.uniform_int(0, dims.width - w));
      return {x, y, w, h};
    }
  }
  return detail::fallback_roc(dims, std::exp(cfg.log_alpha_min), std::exp(cfg.log_alpha_max));
}

namespace detail {

/// Output index o along one axis reads source coordinate
/// origin + (o + offset + 0.5) * scale - 0.5, clamped to [lo, hi].
struct AxisMap {
  int origin;
  double offset;
  double scale;
  int lo;
  int hi;
};

struct AxisTaps {
  std::vector<int> i0, i1;
  std::vector<double> t;
};

inline AxisTaps axis_taps(const AxisMap& m, int out) {
  AxisTaps taps;
  taps.i0.resize(out);
  taps.i1.resize(out);
  taps.t.resize(out);
  for (int o = 0; o < out; ++o) {
    double src = m.origin + (o + m.offset + 0.5) * m.scale - 0.5;
    src = std::clamp(src, static_cast<double>(m.lo), static_cast<double>(m.hi));
    const int i0 = static_cast<int>(std::floor(src));
    taps.i0[o] = i0;
    taps.i1[o] = std::min(i0 + 1, m.hi);
    taps.t[o] = src - i0;
  }
  return taps;
}

inline ImageBuffer resample(const ImageBuffer& src, const AxisMap& ymap, const AxisMap& xmap,
                            int out_h, int out_w) {
  ImageBuffer out({out_h, out_w}, src.channels());
  const AxisTaps ty = axis_taps(ymap, out_h), tx = axis_taps(xmap, out_w);
  for (int y = 0; y < out_h; ++y) {
    const double wy = ty.t[y];
    for (int x = 0; x < out_w; ++x) {
      const double wx = tx.t[x];
      for (int c = 0; c < src.channels(); ++c) {
        const double top = (1.0 - wx) * src.at(ty.i0[y], tx.i0[x], c) + wx * src.at(ty.i0[y], tx.i1[x], c);
        const double bot = (1.0 - wx) * src.at(ty.i1[y], tx.i0[x], c) + wx * src.at(ty.i1[y], tx.i1[x], c);
        out.at(y, x, c) = static_cast<float>((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Bilinear resize (half-pixel centers, edge clamping) to out_h x out_w.
inline ImageBuffer resize_bilinear(const ImageBuffer& image, int out_h, int out_w) {
  detail::require(out_h >= 1 && out_w >= 1, "resize_bilinear: output must be at least 1x1");
  const detail::AxisMap ymap{0, 0.0, static_cast<double>(image.height()) / out_h, 0, image.height() - 1};
  const detail::AxisMap xmap{0, 0.0, static_cast<double>(image.width()) / out_w, 0, image.width() - 1};
  return detail::resample(image, ymap, xmap, out_h, out_w);
}

/// Plain copy of the pixels under `roc`.
inline ImageBuffer crop(const ImageBuffer& image, const RocRect& roc) {
  detail::require(roc.fits(image.dims()), "crop: region outside image bounds");
  ImageBuffer out({roc.h, roc.w}, image.channels());
  for (int y = 0; y < roc.h; ++y)
    for (int x = 0; x < roc.w; ++x)
      for (int c = 0; c < image.channels(); ++c) out.at(y, x, c) = image.at(roc.y + y, roc.x + x, c);
  return out;
}

/// Resamples the RoC anisotropically to an out_side x out_side crop. Samples
/// never read outside the RoC.
inline ImageBuffer extract_resize(const ImageBuffer& image, const RocRect& roc, int out_side) {
  detail::require(roc.fits(image.dims()), "extract_resize: region outside image bounds");
  detail::require(out_side >= 1, "extract_resize: out_side must be >= 1");
  const detail::AxisMap ymap{roc.y, 0.0, static_cast<double>(roc.h) / out_side, roc.y, roc.y + roc.h - 1};
  const detail::AxisMap xmap{roc.x, 0.0, static_cast<double>(roc.w) / out_side, roc.x, roc.x + roc.w - 1};
  return detail::resample(image, ymap, xmap, out_side, out_side);
}

inline ImageBuffer random_resized_crop(const ImageBuffer& image, const AugmentConfig& cfg,
                                       RngState& rng) {
  return extract_resize(image, sample_roc(image.dims(), cfg, rng), cfg.k_train);
}

/// Dimensions after the isotropic shorter-side resize of the test pipeline.
inline ImageDims test_resized_dims(const ImageDims& dims, const TestPreprocConfig& cfg) {
  validate(dims);
  validate(cfg);
  if (dims.height <= dims.width) {
    return {cfg.k_test_image,
            detail::round_half_up(static_cast<double>(dims.width) * cfg.k_test_image / dims.height)};
  }
  return {detail::round_half_up(static_cast<double>(dims.height) * cfg.k_test_image / dims.width),
          cfg.k_test_image};
}

/// Crop placement in resized coordinates; fractional offsets round down.
inline RocRect test_crop_rect(const ImageDims& dims, const TestPreprocConfig& cfg) {
  const ImageDims r = test_resized_dims(dims, cfg);
  return {(r.width - cfg.k_test) / 2, (r.height - cfg.k_test) / 2, cfg.k_test, cfg.k_test};
}

/// Resize so the shorter side is k_test_image, then take the centered
/// k_test x k_test crop. Only the cropped pixels are computed; the result
/// equals a full resize followed by cropping.
inline ImageBuffer center_crop_pipeline(const ImageBuffer& image, const TestPreprocConfig& cfg) {
  const ImageDims r = test_resized_dims(image.dims(), cfg);
  const RocRect c = test_crop_rect(image.dims(), cfg);
  const detail::AxisMap ymap{0, static_cast<double>(c.y), static_cast<double>(image.height()) / r.height,
                             0, image.height() - 1};
  const detail::AxisMap xmap{0, static_cast<double>(c.x), static_cast<double>(image.width()) / r.width,
                             0, image.width() - 1};
  return detail::resample(image, ymap, xmap, cfg.k_test, cfg.k_test);
}

/// Geometric-mean scale from RoC to output crop: out_side / sqrt(w*h).
inline double scaling_factor(const ImageDims& dims, const RocRect& roc, int out_side) {
  detail::require(roc.fits(dims), "scaling_factor: region outside image bounds");
  return out_side / std::sqrt(static_cast<double>(roc.area()));
}

}  // namespace rescal

#endif  // RESCAL_AUGMENT_HPP_
