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

#ifndef RESCAL_RNG_HPP_
#define RESCAL_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <optional>

namespace rescal {

/**
 * Counter-based SplitMix64 stream.
 *
 * Every draw is a pure function of (seed, counter), so a stream is fully
 * described by two integers and streams can be split into independent
 * children without any shared state. The standard library distributions are
 * avoided on purpose: their output is implementation-defined, and results
 * here must be identical across toolchains.
 */
class RngState {
 public:
  static constexpr const char* kGaussianMethod = "marsaglia-polar";

  explicit RngState(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix(seed_ + counter_ * kGolden);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());
    // Rejection keeps the draw unbiased for spans that do not divide 2^64.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Standard normal draw (Marsaglia polar method, spare value cached).
  double gaussian() noexcept {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
  }

  /// Independent child stream; the parent is left untouched.
  RngState split(std::uint64_t stream) const noexcept {
    return RngState(mix(seed_ ^ mix(stream + 0x632BE59BD9B4E019ULL)));
  }

  friend bool operator==(const RngState&, const RngState&) = default;

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

}  // namespace rescal

#endif  // RESCAL_RNG_HPP_
