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

// Frechet model of pooled activations, its least-squares fit, and the
// affine maps that equalize activation statistics across resolutions.

#ifndef RESCAL_FRECHET_HPP_
#define RESCAL_FRECHET_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rescal/activation.hpp"
#include "rescal/ecdf.hpp"
#include "rescal/error.hpp"
#include "rescal/rng.hpp"

namespace rescal {

inline constexpr double kDefaultXi = 0.3;

/// Location mu, scale sigma > 0, shape xi > 0.
struct FrechetParams {
  double mu = 0.0;
  double sigma = 1.0;
  double xi = kDefaultXi;

  friend bool operator==(const FrechetParams&, const FrechetParams&) = default;
};

inline void validate(const FrechetParams& p) {
  detail::require(std::isfinite(p.mu) && std::isfinite(p.sigma) && std::isfinite(p.xi),
                  "frechet params must be finite");
  detail::require(p.sigma > 0.0, "frechet sigma must be > 0");
  detail::require(p.xi > 0.0, "frechet xi must be > 0");
}

/// exp(-(1 + xi (x - mu) / sigma)^(-1/xi)), and 0 below the support.
inline double frechet_cdf(double x, const FrechetParams& p) {
  const double t = 1.0 + p.xi / p.sigma * (x - p.mu);
  if (!(t > 0.0)) return 0.0;
  return std::exp(-std::pow(t, -1.0 / p.xi));
}

inline double frechet_quantile(double prob, const FrechetParams& p) {
  validate(p);
  detail::require(prob > 0.0 && prob < 1.0, "frechet_quantile: probability must lie in (0,1)");
  return p.mu + p.sigma / p.xi * (std::pow(-std::log(prob), -p.xi) - 1.0);
}

/// n inverse-CDF draws.
inline std::vector<double> frechet_sample(const FrechetParams& p, std::size_t n, RngState& rng) {
  validate(p);
  std::vector<double> out(n);
  for (auto& v : out) {
    // (k + 1/2) / 2^53 stays strictly inside (0, 1).
    const double u = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
    v = frechet_quantile(u, p);
  }
  return out;
}

struct FitOptions {
  double xi = kDefaultXi;
  int max_iterations = 200;
  double step_tolerance = 1e-8;
  std::size_t min_nonzero = 100;
};

struct FitReport {
  FrechetParams params;
  double residual = 0.0;     // RMS CDF error over the fitted points
  double ks_distance = 0.0;  // against the nonzero empirical CDF
  std::size_t n_used = 0;
  std::size_t n_excluded_zeros = 0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

struct FrechetObjective {
  std::span<const double> x;       // sorted nonzero samples
  std::span<const double> target;  // plotting positions (j + 1/2) / m
  double xi;

  double sse(double mu, double sigma) const {
    const FrechetParams p{mu, sigma, xi};
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double r = frechet_cdf(x[j], p) - target[j];
      s += r * r;
    }
    return s;
  }

  /// Gauss-Newton normal equations: A = J^T J, g = J^T r.
  void normal_equations(double mu, double sigma, double (&a)[3], double (&g)[2]) const {
    a[0] = a[1] = a[2] = g[0] = g[1] = 0.0;
    const double inv_xi = 1.0 / xi;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - mu;
      const double t = 1.0 + xi / sigma * d;
      double p = 0.0, dmu = 0.0, dsigma = 0.0;
      if (t > 0.0) {
        const double tp = std::pow(t, -inv_xi);
        p = std::exp(-tp);
        // dP/dt = P * t^(-1/xi - 1) / xi, with dt/dmu = -xi/sigma and
        // dt/dsigma = -xi d / sigma^2.
        const double k = p * tp / t;
        dmu = -k / sigma;
        dsigma = -k * d / (sigma * sigma);
      }
      const double r = p - target[j];
      a[0] += dmu * dmu;
      a[1] += dmu * dsigma;
      a[2] += dsigma * dsigma;
      g[0] += dmu * r;
      g[1] += dsigma * r;
    }
  }
};

}  // namespace detail

/**
 * Least-squares fit of (mu, sigma) at fixed xi to the empirical CDF of the
 * nonzero values. Zeros are excluded and counted.
 *
 * The seed matches the 25% and 75% quantiles exactly and is refined on a
 * coarse grid; Levenberg-damped Gauss-Newton then iterates until the step is
 * below step_tolerance relative to sigma, or max_iterations is reached, in
 * which case the best parameters so far are returned with converged = false.
 */
inline FitReport fit_frechet(std::span<const double> values, const FitOptions& opt = {}) {
  detail::require(std::isfinite(opt.xi) && opt.xi > 0.0, "fit_frechet: xi must be > 0");
  std::vector<double> x;
  x.reserve(values.size());
  for (double v : values) {
    detail::require(std::isfinite(v), "fit_frechet: non-finite sample");
    if (v != 0.0) x.push_back(v);
  }
  FitReport rep;
  rep.n_used = x.size();
  rep.n_excluded_zeros = values.size() - x.size();
  if (x.size() < opt.min_nonzero)
    throw InvalidArgument("fit_frechet: " + std::to_string(x.size()) + " nonzero samples, need at least " +
                          std::to_string(opt.min_nonzero));
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) throw InvalidArgument("fit_frechet: degenerate input (all nonzero samples equal)");

  const std::size_t m = x.size();
  std::vector<double> target(m);
  for (std::size_t j = 0; j < m; ++j) target[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
  const detail::FrechetObjective obj{x, target, opt.xi};

  auto sample_quantile = [&](double p) { return x[static_cast<std::size_t>(p * static_cast<double>(m - 1))]; };
  auto std_quantile = [&](double p) { return (std::pow(-std::log(p), -opt.xi) - 1.0) / opt.xi; };
  double sigma0 = (sample_quantile(0.75) - sample_quantile(0.25)) / (std_quantile(0.75) - std_quantile(0.25));
  if (!(sigma0 > 0.0)) sigma0 = (x.back() - x.front()) / 4.0;
  double mu0 = sample_quantile(0.25) - sigma0 * std_quantile(0.25);

  double mu = mu0, sigma = sigma0, sse = obj.sse(mu, sigma);
  for (int i = -4; i <= 4; ++i) {
    for (double f : {0.5, 0.7, 1.0, 1.4, 2.0}) {
      const double m_try = mu0 + 0.25 * i * sigma0, s_try = sigma0 * f;
      const double e = obj.sse(m_try, s_try);
      if (e < sse) mu = m_try, sigma = s_try, sse = e;
    }
  }

  double lambda = 1e-3;
  double a[3], g[2];
  obj.normal_equations(mu, sigma, a, g);
  for (rep.iterations = 0; rep.iterations < opt.max_iterations; ++rep.iterations) {
    const double a00 = a[0] * (1.0 + lambda) + 1e-300, a11 = a[2] * (1.0 + lambda) + 1e-300;
    const double det = a00 * a11 - a[1] * a[1];
    if (!(det > 0.0) || !std::isfinite(det)) {
      lambda *= 10.0;
      continue;
    }
    const double dmu = -(a11 * g[0] - a[1] * g[1]) / det;
    const double dsigma = -(a00 * g[1] - a[1] * g[0]) / det;
    const double new_sigma = sigma + dsigma;
    const double new_sse = new_sigma > 0.0 ? obj.sse(mu + dmu, new_sigma) : std::numeric_limits<double>::infinity();
    if (new_sse < sse) {
      mu += dmu;
      sigma = new_sigma;
      sse = new_sse;
      lambda = std::max(lambda * 0.1, 1e-12);
      if (std::abs(dmu) <= opt.step_tolerance * sigma && std::abs(dsigma) <= opt.step_tolerance * sigma) {
        rep.converged = true;
        ++rep.iterations;
        break;
      }
      obj.normal_equations(mu, sigma, a, g);
    } else {
      lambda *= 10.0;
      // No damped step lowers the objective any more: numerical minimum.
      if (lambda > 1e16) {
        rep.converged = true;
        ++rep.iterations;
        break;
      }
    }
  }

  rep.params = {mu, sigma, opt.xi};
  rep.residual = std::sqrt(sse / static_cast<double>(m));
  rep.ks_distance = EmpiricalCdf(std::move(x)).ks_distance([&](double v) { return frechet_cdf(v, rep.params); });
  return rep;
}

/// Fits the scalar distribution of every value in the sample set.
inline FitReport fit_frechet(const ActivationSamples& samples, const FitOptions& opt = {}) {
  const std::vector<double> v(samples.values().begin(), samples.values().end());
  return fit_frechet(std::span<const double>(v), opt);
}

inline void require_converged(const FitReport& rep) {
  if (!rep.converged)
    throw ConvergenceError("fit_frechet: no convergence after " + std::to_string(rep.iterations) + " iterations");
}

/// x -> a x + b on nonzero values, clamped at 0.
struct EqualizationMap {
  double a = 1.0;
  double b = 0.0;
  bool preserve_zeros = true;
};

/// The unique affine map taking Frechet(current) onto Frechet(reference) at
/// equal xi.
inline EqualizationMap derive_equalization(const FrechetParams& reference, const FrechetParams& current) {
  validate(reference);
  validate(current);
  if (std::abs(reference.xi - current.xi) > 1e-12 * std::max(1.0, reference.xi))
    throw InvalidArgument("derive_equalization: xi mismatch (" + std::to_string(reference.xi) + " vs " +
                          std::to_string(current.xi) + ")");
  EqualizationMap m;
  m.a = reference.sigma / current.sigma;
  m.b = reference.mu - m.a * current.mu;
  return m;
}

inline double equalize_value(double x, const EqualizationMap& map) {
  if (x == 0.0 && map.preserve_zeros) return x;
  return std::max(0.0, map.a * x + map.b);
}

inline ActivationSamples apply_equalization(const ActivationSamples& samples, const EqualizationMap& map) {
  detail::require(std::isfinite(map.a) && std::isfinite(map.b) && map.a > 0.0,
                  "apply_equalization: map scale must be finite and > 0");
  std::vector<float> out(samples.values().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<float>(equalize_value(samples.values()[i], map));
  return ActivationSamples(samples.n_samples(), samples.n_channels(), std::move(out), true);
}

struct ChannelAffine {
  double a = 1.0;
  double b = 0.0;
};

struct ChannelAffineSet {
  std::vector<ChannelAffine> channels;
  // Channels whose variance was zero on either side; they get a = 1 and a
  // pure mean shift.
  std::vector<std::size_t> degenerate;

  std::size_t size() const noexcept { return channels.size(); }
};

struct ChannelMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

inline ChannelMoments channel_moments(std::span<const double> v) {
  detail::require(v.size() >= 2, "channel moments need at least 2 samples");
  double s = 0.0;
  for (double x : v) s += x;
  ChannelMoments m;
  m.mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.variance = ss / static_cast<double>(v.size() - 1);
  return m;
}

/// Per-channel mean/variance matching of pre-ReLU activations: a_c, b_c such
/// that a_c * current + b_c has the reference moments.
inline ChannelAffineSet gaussian_channel_match(const ActivationSamples& reference, const ActivationSamples& current) {
  detail::require(reference.n_channels() == current.n_channels(),
                  "gaussian_channel_match: channel counts differ (" + std::to_string(reference.n_channels()) +
                      " vs " + std::to_string(current.n_channels()) + ")");
  detail::require(reference.n_samples() >= 2 && current.n_samples() >= 2,
                  "gaussian_channel_match: need at least 2 samples per channel");
  ChannelAffineSet set;
  set.channels.resize(current.n_channels());
  for (std::size_t c = 0; c < current.n_channels(); ++c) {
    const ChannelMoments ref = channel_moments(reference.channel(c));
    const ChannelMoments cur = channel_moments(current.channel(c));
    ChannelAffine& t = set.channels[c];
    if (cur.variance > 0.0 && ref.variance > 0.0) {
      t.a = std::sqrt(ref.variance / cur.variance);
    } else {
      t.a = 1.0;
      set.degenerate.push_back(c);
    }
    t.b = ref.mean - t.a * cur.mean;
  }
  return set;
}

/// Applies per-channel maps; the result is pre-ReLU (no clamping).
inline ActivationSamples apply_channel_affine(const ActivationSamples& samples, const ChannelAffineSet& set) {
  detail::require(set.size() == samples.n_channels(), "apply_channel_affine: channel count mismatch");
  std::vector<float> out(samples.values().size());
  for (std::size_t s = 0; s < samples.n_samples(); ++s)
    for (std::size_t c = 0; c < samples.n_channels(); ++c)
      out[s * samples.n_channels() + c] =
          static_cast<float>(set.channels[c].a * samples.at(s, c) + set.channels[c].b);
  return ActivationSamples(samples.n_samples(), samples.n_channels(), std::move(out), false);
}

}  // namespace rescal

#endif  // RESCAL_FRECHET_HPP_
