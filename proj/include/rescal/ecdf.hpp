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

#ifndef RESCAL_ECDF_HPP_
#define RESCAL_ECDF_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "rescal/error.hpp"

namespace rescal {

/// One step of a CDF: P(X <= value) = cdf.
struct CdfStep {
  double value;
  double cdf;
};

struct HistogramBin {
  double lo;
  double hi;
  std::size_t count;
};

/**
 * Right-continuous empirical CDF over a sorted sample, optionally weighted.
 *
 * Ties share a single step. Weights, when present, are aligned with the
 * sorted values and must be non-negative with a positive total.
 */
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;

  explicit EmpiricalCdf(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }

  EmpiricalCdf(std::vector<double> values, std::vector<double> weights) {
    detail::require(values.size() == weights.size(),
                    "EmpiricalCdf: values and weights differ in length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    values_.reserve(values.size());
    weights_.reserve(values.size());
    double total = 0.0;
    for (std::size_t i : order) {
      detail::require(weights[i] >= 0.0, "EmpiricalCdf: negative weight");
      values_.push_back(values[i]);
      weights_.push_back(weights[i]);
      total += weights[i];
    }
    detail::require(values_.empty() || total > 0.0, "EmpiricalCdf: zero total weight");
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  bool weighted() const noexcept { return !weights_.empty(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double min() const { return nonempty().values_.front(); }
  double max() const { return nonempty().values_.back(); }

  /// P(X <= x).
  double operator()(double x) const {
    nonempty();
    const auto k = static_cast<std::size_t>(
        std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
    if (!weighted()) return static_cast<double>(k) / static_cast<double>(size());
    double below = 0.0, total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      total += weights_[i];
      if (i < k) below += weights_[i];
    }
    return below / total;
  }

  /// Distinct values with the CDF height reached at each one.
  std::vector<CdfStep> steps() const {
    std::vector<CdfStep> out;
    const double total = total_weight();
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      acc += weight(i);
      if (i + 1 == size() || values_[i + 1] != values_[i]) {
        // The last step is exactly 1 regardless of summation error.
        out.push_back({values_[i], i + 1 == size() ? 1.0 : acc / total});
      }
    }
    return out;
  }

  double mean() const {
    nonempty();
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += weight(i) * values_[i];
    return s / total_weight();
  }

  /// Unbiased (n-1) variance; frequency weights.
  double variance() const {
    nonempty();
    const double m = mean(), total = total_weight();
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += weight(i) * (values_[i] - m) * (values_[i] - m);
    return total > 1.0 ? s / (total - 1.0) : 0.0;
  }

  /// Smallest sample value v with CDF(v) >= p (inverse of the step function).
  double quantile(double p) const {
    nonempty();
    detail::require(p >= 0.0 && p <= 1.0, "EmpiricalCdf::quantile: p outside [0,1]");
    const double target = p * total_weight();
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      acc += weight(i);
      if (acc >= target && acc > 0.0) return values_[i];
    }
    return values_.back();
  }

  double interquartile_range() const { return quantile(0.75) - quantile(0.25); }

  /**
   * Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)| against a continuous
   * reference CDF. Both one-sided gaps are checked at every step, so ties
   * and atoms are handled exactly.
   */
  template <typename Cdf>
  double ks_distance(Cdf&& reference) const {
    nonempty();
    const double total = total_weight();
    double below = 0.0, d = 0.0;
    std::size_t i = 0;
    while (i < size()) {
      std::size_t j = i;
      double w = 0.0;
      while (j < size() && values_[j] == values_[i]) w += weight(j++);
      const double f = reference(values_[i]);
      d = std::max(d, std::abs(f - below / total));
      below += w;
      d = std::max(d, std::abs(below / total - f));
      i = j;
    }
    return d;
  }

  /// KS distance against U([lo, hi]).
  double ks_uniform(double lo, double hi) const {
    detail::require(hi > lo, "ks_uniform: empty interval");
    return ks_distance([lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); });
  }

  /// Equal-width histogram over [lo, hi]; values outside are dropped and the
  /// top edge is inclusive.
  std::vector<HistogramBin> histogram(std::size_t bins, double lo, double hi) const {
    detail::require(bins >= 1 && hi > lo, "histogram: need bins >= 1 and hi > lo");
    std::vector<HistogramBin> out(bins);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      out[b].lo = lo + width * static_cast<double>(b);
      out[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
      out[b].count = 0;
    }
    for (double v : values_) {
      if (v < lo || v > hi) continue;
      auto b = static_cast<std::size_t>((v - lo) / width);
      if (b >= bins) b = bins - 1;
      ++out[b].count;
    }
    return out;
  }

  friend bool operator==(const EmpiricalCdf&, const EmpiricalCdf&) = default;

 private:
  const EmpiricalCdf& nonempty() const {
    detail::require(!empty(), "EmpiricalCdf: empty sample");
    return *this;
  }
  double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }
  double total_weight() const {
    if (weights_.empty()) return static_cast<double>(size());
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  std::vector<double> values_;
  std::vector<double> weights_;
};

}  // namespace rescal

#endif  // RESCAL_ECDF_HPP_
