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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rescal/augment.hpp"
#include "rescal/ecdf.hpp"

using namespace rescal;

namespace {

AugmentConfig fixed_sigma(double sigma) {
  AugmentConfig cfg;
  cfg.sigma2_min = cfg.sigma2_max = sigma * sigma;
  return cfg;
}

ImageBuffer random_image(ImageDims d, int channels, std::mt19937_64& gen) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  ImageBuffer img(d, channels);
  for (auto& p : img.pixels()) p = u(gen);
  return img;
}

}  // namespace

// ---------------------------------------------------------------------------
// sample_roc

TEST(SampleRoc, HalfScaleSquare) {
  RngState rng(0);
  const RocRect r = sample_roc({224, 224}, fixed_sigma(0.5), rng);
  EXPECT_EQ(r.w, 112);
  EXPECT_EQ(r.h, 112);
  EXPECT_TRUE(r.fits({224, 224}));
}

TEST(SampleRoc, UnitScaleCoversSquareImage) {
  RngState rng(0);
  for (int n : {1, 7, 224, 500}) {
    const RocRect r = sample_roc({n, n}, fixed_sigma(1.0), rng);
    EXPECT_EQ(r, (RocRect{0, 0, n, n}));
  }
}

TEST(SampleRoc, FallbackIsLargestCenteredRegionWithClampedAspect) {
  RngState rng(0);
  // sqrt(400*100) = 200 exceeds the width, so no proposal fits.
  const RocRect r = sample_roc({400, 100}, fixed_sigma(1.0), rng);
  EXPECT_EQ(r, (RocRect{0, 150, 100, 100}));

  AugmentConfig wide = fixed_sigma(1.0);
  wide.log_alpha_min = std::log(0.5);
  wide.log_alpha_max = std::log(0.5);  // h/w = 1/2
  const RocRect w = sample_roc({100, 400}, wide, rng);
  EXPECT_EQ(w, (RocRect{100, 0, 200, 100}));
}

TEST(SampleRoc, AreaFractionIsUniformOnSigma2Range) {
  const AugmentConfig cfg;  // sigma^2 ~ U([0.0784, 1]), alpha = 1
  RngState rng(2024);
  std::vector<double> frac(1000000);
  for (auto& f : frac) f = sample_roc({1024, 1024}, cfg, rng).area() / (1024.0 * 1024.0);
  const EmpiricalCdf cdf(std::move(frac));
  EXPECT_LT(cdf.ks_uniform(0.0784, 1.0), 0.005);
}

TEST(SampleRoc, SmallImagesCarryAFullImageAtom) {
  // Every sigma^2 above (223.5/224)^2 rounds to the full image, so the KS
  // distance at 224 px cannot fall below that atom's mass.
  const AugmentConfig cfg;
  const double atom = (1.0 - (223.5 / 224) * (223.5 / 224)) / (1.0 - 0.0784);
  RngState rng(2024);
  std::vector<double> frac(1000000);
  for (auto& f : frac) f = sample_roc({224, 224}, cfg, rng).area() / (224.0 * 224.0);
  const EmpiricalCdf cdf(std::move(frac));
  EXPECT_NEAR(1.0 - cdf(1.0 - 1e-12), atom, 5 * std::sqrt(atom / 1e6));
  EXPECT_GE(cdf.ks_uniform(0.0784, 1.0), atom - 5 * std::sqrt(atom / 1e6));
  EXPECT_LT(cdf.ks_uniform(0.0784, 1.0), atom + 0.003);
}

TEST(SampleRoc, AreaFractionStaysWithinRoundingOfBounds) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    AugmentConfig cfg;
    cfg.sigma2_min = 0.02 + 0.5 * u(gen);
    cfg.sigma2_max = std::min(0.7, cfg.sigma2_min + 0.3 * u(gen));
    cfg.sigma2_max = std::max(cfg.sigma2_max, cfg.sigma2_min);
    cfg.log_alpha_max = 0.3 * u(gen);
    cfg.log_alpha_min = -0.3 * u(gen);
    const int n = 32 + static_cast<int>(480 * u(gen));
    const ImageDims d{n, n};
    const double eps = 2.0 / n;
    RngState rng(trial);
    for (int i = 0; i < 200; ++i) {
      const RocRect r = sample_roc(d, cfg, rng);
      ASSERT_TRUE(r.fits(d));
      const double f = static_cast<double>(r.area()) / d.area();
      ASSERT_GE(f, cfg.sigma2_min - eps) << "trial " << trial;
      ASSERT_LE(f, cfg.sigma2_max + eps) << "trial " << trial;
    }
  }
}

TEST(SampleRoc, DeterministicForEqualSeeds) {
  AugmentConfig cfg;
  cfg.log_alpha_min = std::log(3.0 / 4);
  cfg.log_alpha_max = std::log(4.0 / 3);
  RngState a(77), b(77);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample_roc({375, 500}, cfg, a), sample_roc({375, 500}, cfg, b));
}

TEST(SampleRoc, RejectsInvalidConfig) {
  RngState rng(0);
  auto bad = [&](AugmentConfig cfg) { EXPECT_THROW(sample_roc({100, 100}, cfg, rng), InvalidArgument); };
  AugmentConfig c;
  c.sigma2_min = 0.0;
  bad(c);
  c = {};
  c.sigma2_max = 1.5;
  bad(c);
  c = {};
  c.sigma2_min = 0.9;
  c.sigma2_max = 0.5;
  bad(c);
  c = {};
  c.sigma2_min = std::numeric_limits<double>::quiet_NaN();
  bad(c);
  c = {};
  c.log_alpha_min = 0.2;
  c.log_alpha_max = 0.1;
  bad(c);
  c = {};
  c.log_alpha_max = std::numeric_limits<double>::infinity();
  bad(c);
  c = {};
  c.k_train = 0;
  bad(c);
  EXPECT_THROW(sample_roc({0, 10}, AugmentConfig{}, rng), InvalidArgument);
}

// ---------------------------------------------------------------------------
// resampling

TEST(ExtractResize, ConstantImageStaysConstant) {
  const ImageBuffer img({50, 80}, 3, 0.7f);
  RngState rng(1);
  AugmentConfig cfg;
  cfg.log_alpha_min = -0.3;
  cfg.log_alpha_max = 0.3;
  for (int i = 0; i < 20; ++i) {
    const ImageBuffer out = extract_resize(img, sample_roc(img.dims(), cfg, rng), 37);
    for (float v : out.pixels()) ASSERT_EQ(v, 0.7f);
  }
}

TEST(ExtractResize, IdentitySizeIsExact) {
  std::mt19937_64 gen(3);
  const ImageBuffer img = random_image({40, 60}, 3, gen);
  const RocRect roc{13, 7, 25, 25};
  EXPECT_EQ(extract_resize(img, roc, 25), crop(img, roc));
}

TEST(ResizeBilinear, HalfPixelRowUpsample) {
  const ImageBuffer row({1, 2}, 1, std::vector<float>{0.0f, 1.0f});
  const ImageBuffer out = resize_bilinear(row, 1, 4);
  const std::vector<float> expected{0.0f, 0.25f, 0.75f, 1.0f};
  EXPECT_EQ(out.pixels(), expected);

  // Same data through the square RoC path: every output row is that row.
  const ImageBuffer sq = extract_resize(row, {0, 0, 2, 1}, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) EXPECT_EQ(sq.at(y, x), expected[x]);
}

TEST(ExtractResize, NoOvershootBeyondRocRange) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> side(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    const ImageDims d{side(gen) + 5, side(gen) + 5};
    const ImageBuffer img = random_image(d, 1, gen);
    const int w = std::uniform_int_distribution<int>(1, d.width)(gen);
    const int h = std::uniform_int_distribution<int>(1, d.height)(gen);
    const RocRect roc{std::uniform_int_distribution<int>(0, d.width - w)(gen),
                      std::uniform_int_distribution<int>(0, d.height - h)(gen), w, h};
    const ImageBuffer region = crop(img, roc);
    const auto [lo, hi] = std::minmax_element(region.pixels().begin(), region.pixels().end());
    const ImageBuffer out = extract_resize(img, roc, side(gen));
    for (float v : out.pixels()) {
      ASSERT_GE(v, *lo);
      ASSERT_LE(v, *hi);
    }
  }
}

TEST(ExtractResize, RejectsOutOfBoundsRoc) {
  const ImageBuffer img({10, 10}, 1);
  EXPECT_THROW(extract_resize(img, {5, 5, 6, 2}, 4), InvalidArgument);
  EXPECT_THROW(extract_resize(img, {-1, 0, 2, 2}, 4), InvalidArgument);
  EXPECT_THROW(extract_resize(img, {0, 0, 2, 2}, 0), InvalidArgument);
}

TEST(ImageBuffer, RejectsBadPixelData) {
  EXPECT_THROW(ImageBuffer({2, 2}, 1, std::vector<float>(3, 0.0f)), InvalidArgument);
  EXPECT_THROW(ImageBuffer({1, 1}, 1, std::vector<float>{1.5f}), InvalidArgument);
  EXPECT_THROW(ImageBuffer({1, 1}, 2), InvalidArgument);
}

// ---------------------------------------------------------------------------
// test-time pipeline

TEST(CenterCrop, SquareInputReadsCentralSquare) {
  std::mt19937_64 gen(8);
  const ImageBuffer img = random_image({512, 512}, 3, gen);
  const ImageBuffer out = center_crop_pipeline(img, {256, 224});
  EXPECT_EQ(out.height(), 224);
  EXPECT_EQ(out.width(), 224);
  // (224/256) * 512 = 448 pixels, offset (512 - 448) / 2 = 32.
  EXPECT_EQ(out, resize_bilinear(crop(img, {32, 32, 448, 448}), 224, 224));

  // Pixels outside the central square do not influence the result.
  ImageBuffer border = img;
  for (int y = 0; y < 512; ++y)
    for (int x = 0; x < 512; ++x)
      if (y < 32 || y >= 480 || x < 32 || x >= 480) border.at(y, x, 0) = 1.0f - border.at(y, x, 0);
  EXPECT_EQ(center_crop_pipeline(border, {256, 224}), out);
}

TEST(CenterCrop, EqualSizesIsPlainResize) {
  std::mt19937_64 gen(9);
  const ImageBuffer img = random_image({300, 300}, 1, gen);
  EXPECT_EQ(center_crop_pipeline(img, {200, 200}), resize_bilinear(img, 200, 200));
}

TEST(CenterCrop, NonSquareOffsetsRoundDown) {
  std::mt19937_64 gen(10);
  const ImageBuffer img = random_image({512, 256}, 1, gen);
  const TestPreprocConfig cfg{256, 224};
  EXPECT_EQ(test_resized_dims(img.dims(), cfg), (ImageDims{512, 256}));
  EXPECT_EQ(test_crop_rect(img.dims(), cfg), (RocRect{16, 144, 224, 224}));
  EXPECT_EQ(center_crop_pipeline(img, cfg), crop(img, {16, 144, 224, 224}));

  // Odd slack: (257 - 224) / 2 = 16.5 rounds down to 16.
  EXPECT_EQ(test_crop_rect({257, 512}, {257, 224}).y, 16);
}

TEST(CenterCrop, OutputSideIsAlwaysKTest) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> dim(1, 700), k(1, 300);
  for (int trial = 0; trial < 40; ++trial) {
    const int kt = k(gen);
    const TestPreprocConfig cfg{kt + k(gen) / 3, kt};
    const ImageBuffer img({dim(gen), dim(gen)}, 1, 0.5f);
    const ImageBuffer out = center_crop_pipeline(img, cfg);
    ASSERT_EQ(out.height(), kt);
    ASSERT_EQ(out.width(), kt);
  }
}

TEST(CenterCrop, RejectsInvalidConfig) {
  const ImageBuffer img({10, 10}, 1);
  EXPECT_THROW(center_crop_pipeline(img, {100, 224}), InvalidArgument);
  EXPECT_THROW(center_crop_pipeline(img, {10, 0}), InvalidArgument);
}

// ---------------------------------------------------------------------------

TEST(ScalingFactor, Examples) {
  EXPECT_DOUBLE_EQ(scaling_factor({224, 224}, {56, 56, 112, 112}, 224), 2.0);
  EXPECT_DOUBLE_EQ(scaling_factor({224, 224}, {0, 0, 224, 224}, 224), 1.0);
  EXPECT_DOUBLE_EQ(scaling_factor({500, 375}, {3, 4, 100, 100}, 100), 1.0);
}

TEST(ScalingFactor, MatchesClosedFormForSquareRocs) {
  // s = (1/sigma) K_train / sqrt(HW) whenever the rounded side is exact.
  RngState rng(4);
  for (double sigma : {0.25, 0.5, 0.75, 1.0}) {
    const RocRect r = sample_roc({400, 400}, fixed_sigma(sigma), rng);
    EXPECT_NEAR(scaling_factor({400, 400}, r, 224), 224.0 / (sigma * 400.0), 1e-12);
  }
}

TEST(RandomResizedCrop, ProducesTrainSizedCrop) {
  std::mt19937_64 gen(12);
  const ImageBuffer img = random_image({120, 90}, 3, gen);
  AugmentConfig cfg;
  cfg.k_train = 64;
  RngState rng(0);
  const ImageBuffer out = random_resized_crop(img, cfg, rng);
  EXPECT_EQ(out.dims(), (ImageDims{64, 64}));
  EXPECT_EQ(out.channels(), 3);
}
