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

#ifndef RESCAL_ACTIVATION_HPP_
#define RESCAL_ACTIVATION_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rescal/ecdf.hpp"
#include "rescal/error.hpp"
#include "rescal/parallel.hpp"
#include "rescal/rng.hpp"

namespace rescal {

/// Spatial extent of the final activation map that global pooling averages.
struct PoolGrid {
  int side = 1;
  int n = 1;
  bool exact = true;  // false when k was not a multiple of the stride
};

inline PoolGrid pool_grid_for(int k, int stride = 32) {
  detail::require(stride >= 1, "pool_grid_for: stride must be >= 1");
  detail::require(k >= stride, "pool_grid_for: crop size " + std::to_string(k) +
                                   " is smaller than the stride " + std::to_string(stride));
  const int side = k / stride;
  return {side, side * side, k % stride == 0};
}

inline PoolGrid pool_grid_of_side(int side) {
  detail::require(side >= 1, "pool grid side must be >= 1");
  return {side, side * side, true};
}

/// Dense [sample][channel] activation matrix.
class ActivationSamples {
 public:
  ActivationSamples() = default;

  ActivationSamples(std::size_t n_samples, std::size_t n_channels, std::vector<float> values,
                    bool post_relu)
      : n_samples_(n_samples), n_channels_(n_channels), values_(std::move(values)), post_relu_(post_relu) {
    detail::require(n_samples >= 1 && n_channels >= 1, "activation samples: counts must be >= 1");
    detail::require(values_.size() == n_samples * n_channels,
                    "activation samples: value count does not match n_samples * n_channels");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]))
        throw InvalidArgument("activation samples: non-finite value at sample " +
                              std::to_string(i / n_channels) + ", channel " + std::to_string(i % n_channels));
      if (post_relu && values_[i] < 0.0f)
        throw InvalidArgument("activation samples: negative post-ReLU value at sample " +
                              std::to_string(i / n_channels) + ", channel " + std::to_string(i % n_channels));
    }
  }

  std::size_t n_samples() const noexcept { return n_samples_; }
  std::size_t n_channels() const noexcept { return n_channels_; }
  bool post_relu() const noexcept { return post_relu_; }
  const std::vector<float>& values() const noexcept { return values_; }

  float at(std::size_t sample, std::size_t channel) const { return values_[sample * n_channels_ + channel]; }

  std::vector<double> channel(std::size_t c) const {
    detail::require(c < n_channels_, "activation samples: channel " + std::to_string(c) + " out of range");
    std::vector<double> out(n_samples_);
    for (std::size_t s = 0; s < n_samples_; ++s) out[s] = at(s, c);
    return out;
  }

  friend bool operator==(const ActivationSamples&, const ActivationSamples&) = default;

 private:
  std::size_t n_samples_ = 0;
  std::size_t n_channels_ = 0;
  std::vector<float> values_;
  bool post_relu_ = false;
};

/// Distribution of the pre-ReLU input; unit Gaussian after batch-norm by default.
struct PreActivationModel {
  double mean = 0.0;
  double sd = 1.0;
};

/**
 * Draws pooled activations under the independence model: every value is
 * (1/n) * sum_i max(0, mean + sd * g_i) with g_i i.i.d. standard normal and
 * n = grid.n. Sample ranges are split into plan.chunks chunks with derived
 * streams, so results do not depend on the thread count.
 */
inline ActivationSamples simulate_pooled(const PoolGrid& grid, std::size_t n_channels, std::size_t n_samples,
                                         const RngState& rng, const ChunkPlan& plan = {},
                                         const PreActivationModel& model = {}) {
  detail::require(grid.side >= 1 && grid.n == grid.side * grid.side, "simulate_pooled: invalid grid");
  detail::require(n_channels >= 1 && n_samples >= 1, "simulate_pooled: counts must be >= 1");
  detail::require(std::isfinite(model.mean) && std::isfinite(model.sd) && model.sd > 0.0,
                  "simulate_pooled: pre-activation sd must be positive");
  std::vector<float> values(n_samples * n_channels);
  const double inv_n = 1.0 / grid.n;
  detail::for_each_chunk(n_samples, plan, rng, [&](std::size_t, std::size_t b, std::size_t e, RngState& r) {
    for (std::size_t i = b * n_channels; i < e * n_channels; ++i) {
      double acc = 0.0;
      for (int k = 0; k < grid.n; ++k) acc += std::max(0.0, model.mean + model.sd * r.gaussian());
      values[i] = static_cast<float>(acc * inv_n);
    }
  });
  return ActivationSamples(n_samples, n_channels, std::move(values), true);
}

struct SparsityStats {
  double zero_rate = 0.0;
  double tail_fraction = 0.0;
  double tail_threshold = 0.0;
};

/// Fraction of exact zeros and of values strictly above the threshold.
inline SparsityStats sparsity_stats(const ActivationSamples& samples, double tail_threshold) {
  std::size_t zeros = 0, tail = 0;
  for (float v : samples.values()) {
    zeros += v == 0.0f;
    tail += v > tail_threshold;
  }
  const auto n = static_cast<double>(samples.values().size());
  detail::require(n > 0, "sparsity_stats: empty sample set");
  return {zeros / n, tail / n, tail_threshold};
}

/// CDF of one channel, or of every value when channel is empty.
inline EmpiricalCdf empirical_cdf(const ActivationSamples& samples, std::optional<std::size_t> channel = {}) {
  detail::require(!samples.values().empty(), "empirical_cdf: empty sample set");
  if (channel) return EmpiricalCdf(samples.channel(*channel));
  return EmpiricalCdf(std::vector<double>(samples.values().begin(), samples.values().end()));
}

}  // namespace rescal

#endif  // RESCAL_ACTIVATION_HPP_
