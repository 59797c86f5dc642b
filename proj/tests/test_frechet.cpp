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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rescal/activation.hpp"
#include "rescal/frechet.hpp"

using namespace rescal;

namespace {

// Bisection root of cdf(x) = p, independent of the closed-form quantile.
double quantile_by_bisection(double p, const FrechetParams& f) {
  double lo = f.mu - f.sigma / f.xi + 1e-300, hi = f.mu + f.sigma;
  while (frechet_cdf(hi, f) < p) hi = f.mu + 2 * (hi - f.mu);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (frechet_cdf(mid, f) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> draw(const FrechetParams& p, std::size_t n, std::uint64_t seed) {
  RngState rng(seed);
  return frechet_sample(p, n, rng);
}

ActivationSamples as_samples(const std::vector<double>& v) {
  return ActivationSamples(v.size(), 1, std::vector<float>(v.begin(), v.end()), true);
}

}  // namespace

TEST(FrechetCdf, ValueAtLocation) {
  const FrechetParams p{1.0, 0.2, 0.3};
  EXPECT_NEAR(frechet_cdf(1.0, p), std::exp(-1.0), 1e-15);
}

TEST(FrechetCdf, SupportBoundaryAndTail) {
  const FrechetParams p{1.0, 0.2, 0.3};
  const double lower = p.mu - p.sigma / p.xi;
  EXPECT_EQ(frechet_cdf(lower, p), 0.0);
  EXPECT_EQ(frechet_cdf(lower - 1.0, p), 0.0);
  EXPECT_GT(frechet_cdf(lower + 0.3, p), 0.0);
  EXPECT_GT(frechet_cdf(1e6, p), 1.0 - 1e-3);
}

TEST(FrechetQuantile, Median) {
  EXPECT_NEAR(frechet_quantile(0.5, {1.0, 0.2, 0.3}), 1.0774843897542066, 1e-12);
}

TEST(FrechetQuantile, AgreesWithRootFinding) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> mu(-2, 2), sg(0.05, 3), xi(0.05, 1.0), pr(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const FrechetParams f{mu(gen), sg(gen), xi(gen)};
    const double p = pr(gen);
    EXPECT_NEAR(frechet_quantile(p, f), quantile_by_bisection(p, f), 1e-9 * (1 + std::abs(frechet_quantile(p, f))));
  }
}

TEST(FrechetQuantile, RoundTrip) {
  const FrechetParams f{0.5, 0.3, 0.3};
  for (double p = 0.01; p < 1.0; p += 0.01) EXPECT_NEAR(frechet_cdf(frechet_quantile(p, f), f), p, 1e-10);
}

TEST(FrechetQuantile, RejectsOutOfRange) {
  const FrechetParams f{};
  EXPECT_THROW(frechet_quantile(0.0, f), InvalidArgument);
  EXPECT_THROW(frechet_quantile(1.0, f), InvalidArgument);
  EXPECT_THROW(frechet_quantile(0.5, {0.0, -1.0, 0.3}), InvalidArgument);
}

TEST(FrechetCdf, MonotoneForRandomParameters) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> mu(-5, 5), sg(0.01, 5), xi(0.01, 2), x(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    const FrechetParams f{mu(gen), sg(gen), xi(gen)};
    double a = x(gen), b = x(gen);
    if (a > b) std::swap(a, b);
    const double ca = frechet_cdf(a, f), cb = frechet_cdf(b, f);
    ASSERT_LE(ca, cb);
    ASSERT_GE(ca, 0.0);
    ASSERT_LE(cb, 1.0);
  }
}

TEST(FitFrechet, RecoversParameters) {
  const FrechetParams truth{1.0, 0.2, 0.3};
  const auto rep = fit_frechet(draw(truth, 100000, 1));
  EXPECT_TRUE(rep.converged);
  EXPECT_NEAR(rep.params.mu, truth.mu, 0.02 * truth.mu);
  EXPECT_NEAR(rep.params.sigma, truth.sigma, 0.02 * truth.sigma);
  EXPECT_EQ(rep.params.xi, 0.3);
  EXPECT_LT(rep.ks_distance, 0.01);
  EXPECT_EQ(rep.n_used, 100000u);
}

TEST(FitFrechet, ExcludesZeros) {
  auto v = draw({2.0, 0.3, 0.3}, 5000, 2);
  v.insert(v.end(), 1000, 0.0);
  const auto rep = fit_frechet(v);
  EXPECT_EQ(rep.n_excluded_zeros, 1000u);
  EXPECT_EQ(rep.n_used, 5000u);
  EXPECT_NEAR(rep.params.mu, 2.0, 0.05);
}

TEST(FitFrechet, ScaleCovariance) {
  const auto v = draw({1.0, 0.2, 0.3}, 20000, 3);
  std::vector<double> scaled(v);
  for (double& x : scaled) x *= 3.0;
  const auto a = fit_frechet(v), b = fit_frechet(scaled);
  EXPECT_NEAR(b.params.mu, 3 * a.params.mu, 1e-5);
  EXPECT_NEAR(b.params.sigma, 3 * a.params.sigma, 1e-5);
}

TEST(FitFrechet, DegenerateInputs) {
  EXPECT_THROW(fit_frechet(std::vector<double>(500, 0.7)), InvalidArgument);
  EXPECT_THROW(fit_frechet(std::vector<double>(50, 0.0)), InvalidArgument);
  EXPECT_THROW(fit_frechet(draw({1.0, 0.2, 0.3}, 50, 4)), InvalidArgument);
  std::vector<double> bad = draw({1.0, 0.2, 0.3}, 500, 4);
  bad[7] = std::nan("");
  EXPECT_THROW(fit_frechet(bad), InvalidArgument);
}

TEST(FitFrechet, IterationCapReportsNoConvergence) {
  FitOptions opt;
  opt.max_iterations = 0;
  const auto rep = fit_frechet(draw({1.0, 0.2, 0.3}, 1000, 5), opt);
  EXPECT_FALSE(rep.converged);
  EXPECT_THROW(require_converged(rep), ConvergenceError);
}

TEST(FitFrechet, PooledActivationFitIsReasonable) {
  // The independence model is not exactly Frechet; the fit is close but not exact.
  const auto s = simulate_pooled(pool_grid_of_side(2), 1, 20000, RngState(6));
  const auto rep = fit_frechet(s);
  EXPECT_TRUE(rep.converged);
  EXPECT_LT(rep.ks_distance, 0.1);
}

TEST(Equalization, IdentityForEqualFits) {
  const FrechetParams p{1.3, 0.4, 0.3};
  const auto m = derive_equalization(p, p);
  EXPECT_DOUBLE_EQ(m.a, 1.0);
  EXPECT_DOUBLE_EQ(m.b, 0.0);
}

TEST(Equalization, ScaledFit) {
  const auto m = derive_equalization({1.0, 0.2, 0.3}, {2.0, 0.4, 0.3});
  EXPECT_DOUBLE_EQ(m.a, 0.5);
  EXPECT_DOUBLE_EQ(m.b, 0.0);
}

TEST(Equalization, XiMismatchIsAnError) {
  EXPECT_THROW(derive_equalization({1.0, 0.2, 0.3}, {1.0, 0.2, 0.4}), InvalidArgument);
}

TEST(Equalization, MapsQuantilesOntoReference) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> mu(-2, 2), sg(0.05, 3);
  for (int i = 0; i < 100; ++i) {
    const FrechetParams ref{mu(gen), sg(gen), 0.3}, cur{mu(gen), sg(gen), 0.3};
    const auto m = derive_equalization(ref, cur);
    for (double p : {0.1, 0.5, 0.9})
      EXPECT_NEAR(m.a * frechet_quantile(p, cur) + m.b, frechet_quantile(p, ref), 1e-9);
  }
}

TEST(Equalization, ApplyExamples) {
  const EqualizationMap m{2.0, 0.1, true};
  const auto out = apply_equalization(ActivationSamples(3, 1, {0, 1, 2}, true), m);
  EXPECT_EQ(out.values()[0], 0.0f);
  EXPECT_FLOAT_EQ(out.values()[1], 2.1f);
  EXPECT_FLOAT_EQ(out.values()[2], 4.1f);

  const EqualizationMap shift_down{1.0, -0.5, true};
  EXPECT_EQ(equalize_value(0.2, shift_down), 0.0);
  const EqualizationMap shift_up{1.0, 0.5, false};
  EXPECT_EQ(equalize_value(0.0, shift_up), 0.5);
  EXPECT_THROW(apply_equalization(out, {-1.0, 0.0, true}), InvalidArgument);
}

TEST(Equalization, ApplyThenRefitMatchesReference) {
  const FrechetParams ref{1.0, 0.2, 0.3}, cur{1.6, 0.35, 0.3};
  const auto cur_fit = fit_frechet(draw(cur, 100000, 9));
  const auto map = derive_equalization(ref, cur_fit.params);
  const auto after = fit_frechet(apply_equalization(as_samples(draw(cur, 100000, 10)), map));
  EXPECT_NEAR(after.params.mu, ref.mu, 0.02 * ref.mu);
  EXPECT_NEAR(after.params.sigma, ref.sigma, 0.02 * ref.sigma);
}

TEST(ChannelMatch, SmallExample) {
  const ActivationSamples ref(2, 1, {0, 4}, false), cur(2, 1, {-1, 1}, false);
  const auto set = gaussian_channel_match(ref, cur);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_DOUBLE_EQ(set.channels[0].a, 2.0);
  EXPECT_DOUBLE_EQ(set.channels[0].b, 2.0);
  EXPECT_TRUE(set.degenerate.empty());
}

TEST(ChannelMatch, GaussianPair) {
  RngState r(11);
  const std::size_t n = 100000;
  std::vector<float> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<float>(0.5 + r.gaussian());       // reference N(0.5, 1)
    b[i] = static_cast<float>(0.5 * r.gaussian());       // current N(0, 0.25)
  }
  const auto set = gaussian_channel_match(ActivationSamples(n, 1, a, false), ActivationSamples(n, 1, b, false));
  EXPECT_NEAR(set.channels[0].a, 2.0, 0.02);
  EXPECT_NEAR(set.channels[0].b, 0.5, 0.02);
}

TEST(ChannelMatch, MatchedMomentsEqualReference) {
  RngState r(12);
  const std::size_t n = 1000, c = 3;
  std::vector<float> a(n * c), b(n * c);
  for (std::size_t i = 0; i < n * c; ++i) {
    a[i] = static_cast<float>(1.0 + 2.0 * r.gaussian());
    b[i] = static_cast<float>(-0.5 + 0.3 * r.gaussian());
  }
  const ActivationSamples ref(n, c, a, false), cur(n, c, b, false);
  const auto set = gaussian_channel_match(ref, cur);
  for (std::size_t ch = 0; ch < c; ++ch) {
    const auto rm = channel_moments(ref.channel(ch));
    auto mapped = cur.channel(ch);
    for (double& v : mapped) v = set.channels[ch].a * v + set.channels[ch].b;
    const auto mm = channel_moments(mapped);
    EXPECT_NEAR(mm.mean, rm.mean, 1e-12);
    EXPECT_NEAR(mm.variance, rm.variance, 1e-12 * rm.variance);
  }
  const auto applied = apply_channel_affine(cur, set);
  EXPECT_FALSE(applied.post_relu());
  EXPECT_NEAR(channel_moments(applied.channel(0)).mean, channel_moments(ref.channel(0)).mean, 1e-5);
}

TEST(ChannelMatch, DegenerateChannelGetsMeanShift) {
  const ActivationSamples ref(2, 2, {1, 3, 2, 3}, false), cur(2, 2, {0, 5, 2, 5}, false);
  const auto set = gaussian_channel_match(ref, cur);
  ASSERT_EQ(set.degenerate, std::vector<std::size_t>{1});
  EXPECT_DOUBLE_EQ(set.channels[1].a, 1.0);
  EXPECT_DOUBLE_EQ(set.channels[1].b, -2.0);
}

TEST(ChannelMatch, IdentityAndMismatch) {
  const ActivationSamples s(3, 2, {0, 1, 2, 3, 4, 9}, false);
  const auto set = gaussian_channel_match(s, s);
  for (const auto& t : set.channels) {
    EXPECT_DOUBLE_EQ(t.a, 1.0);
    EXPECT_NEAR(t.b, 0.0, 1e-15);
  }
  EXPECT_THROW(gaussian_channel_match(s, ActivationSamples(3, 1, {0, 1, 2}, false)), InvalidArgument);
}
