// Copyright 2026 The irppg Authors
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "irppg/error.h"
#include "irppg/time_frequency.h"
#include "oracles.h"
#include "test_util.h"

namespace irppg {
namespace {

using testing::BestRidgeObjective;
using testing::MakeSpectrogram;
using testing::RidgeObjective;
using testing::Tone;

constexpr double kFs = 58.0;

std::size_t TotalVariation(const RidgeCurve& c) {
  std::size_t tv = 0;
  for (std::size_t t = 1; t < c.bin_indices.size(); ++t) {
    tv += c.bin_indices[t] > c.bin_indices[t - 1]
              ? c.bin_indices[t] - c.bin_indices[t - 1]
              : c.bin_indices[t - 1] - c.bin_indices[t];
  }
  return tv;
}

TEST(StftTest, ToneArgmaxAtToneFrequency) {
  const auto x = Tone(1.5, kFs, 3480);
  const Spectrogram s = Stft(x, kFs);
  s.Validate();
  const double df = s.bin_freqs_hz[1] - s.bin_freqs_hz[0];
  EXPECT_LE(df, 0.01 + 1e-15);
  for (std::size_t t = 5; t + 5 < s.frames(); ++t) {
    Eigen::Index arg = 0;
    s.magnitudes.row(static_cast<Eigen::Index>(t)).maxCoeff(&arg);
    EXPECT_NEAR(s.bin_freqs_hz[static_cast<std::size_t>(arg)], 1.5, df + 1e-12) << t;
  }
}

TEST(StftTest, AxesAndWindow) {
  const Spectrogram s = Stft(std::vector<double>(3480, 0.0), kFs);
  EXPECT_EQ(s.frames(), 60u);
  EXPECT_EQ(s.frame_times_s[7], 7.0);
  EXPECT_EQ(s.window.shape, "hann");
  EXPECT_EQ(s.window.length, 580u);
  EXPECT_EQ(s.window.hop, 58u);
  EXPECT_EQ(s.bin_freqs_hz[100], 1.0);
  EXPECT_EQ(s.bin_freqs_hz[150], 1.5);
  EXPECT_TRUE((s.magnitudes.array() == 0.0).all());
}

TEST(StftTest, ChirpTracksInstantaneousFrequency) {
  const std::size_t n = 3480;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / kFs;
    x[j] = std::sin(2.0 * std::numbers::pi * (t + t * t / 120.0));
  }
  const Spectrogram s = Stft(x, kFs);
  for (std::size_t t = 5; t + 5 < s.frames(); ++t) {
    Eigen::Index arg = 0;
    s.magnitudes.row(static_cast<Eigen::Index>(t)).maxCoeff(&arg);
    EXPECT_NEAR(s.bin_freqs_hz[static_cast<std::size_t>(arg)],
                1.0 + s.frame_times_s[t] / 60.0, 0.05);
  }
}

TEST(StftTest, SignFlipInvariant) {
  const auto x = testing::GaussianVector(2000, 5);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
  EXPECT_TRUE(Stft(x, kFs).magnitudes == Stft(y, kFs).magnitudes);
}

TEST(StftTest, CropAndErrors) {
  StftOptions o;
  o.max_freq_hz = 5.0;
  const Spectrogram s = Stft(Tone(1.0, kFs, 1200), kFs, o);
  EXPECT_LE(s.bin_freqs_hz.back(), 5.0);
  EXPECT_GT(s.bin_freqs_hz.back(), 4.98);
  EXPECT_THROW(Stft(Tone(1.0, kFs, 500), kFs), ValidationError);
  o.hop_s = 0.001;
  EXPECT_THROW(Stft(Tone(1.0, kFs, 1200), kFs, o), ValidationError);
  StftOptions per_sample;
  per_sample.hop_s = 1.0 / kFs;
  EXPECT_EQ(Stft(Tone(1.0, kFs, 600), kFs, per_sample).frames(), 600u);
}

TEST(ExtractRidgeTest, ZeroPenaltyIsPerFrameArgmax) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> m(12, std::vector<double>(9));
  for (auto& row : m) for (double& v : row) v = u(rng);
  const Spectrogram s = MakeSpectrogram(m);
  const RidgeCurve c = ExtractRidge(s, 0.0, 1.0, 2.0);
  for (std::size_t t = 0; t < m.size(); ++t) {
    const auto best = std::max_element(m[t].begin() + 2, m[t].begin() + 7);
    EXPECT_EQ(c.bin_indices[t], static_cast<std::size_t>(best - m[t].begin()));
  }
}

TEST(ExtractRidgeTest, HandBuiltFourByThree) {
  const Spectrogram s = MakeSpectrogram({{1.0, 5.0, 2.0},
                                         {4.0, 1.0, 3.0},
                                         {1.0, 2.0, 9.0},
                                         {6.0, 1.0, 1.0}});
  const RidgeCurve c = ExtractRidge(s, 1.0, 0.5, 1.0);
  EXPECT_EQ(RidgeObjective(s, c.bin_indices, 1.0, 0, 3), BestRidgeObjective(s, 1.0, 0, 3));
}

TEST(ExtractRidgeTest, HugePenaltyGivesBestConstantBin) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<std::vector<double>> m(10, std::vector<double>(6));
  for (auto& row : m) for (double& v : row) v = u(rng);
  const Spectrogram s = MakeSpectrogram(m);
  const RidgeCurve c = ExtractRidge(s, 1e9, 0.5, 1.75);
  std::size_t best = 0;
  double best_sum = -1e300;
  for (std::size_t b = 0; b < 6; ++b) {
    double sum = 0.0;
    for (const auto& row : m) sum += std::log(row[b]);
    if (sum > best_sum) {
      best_sum = sum;
      best = b;
    }
  }
  for (std::size_t bin : c.bin_indices) EXPECT_EQ(bin, best);
}

TEST(ExtractRidgeTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lambdas[] = {0.0, 0.3, 1.0, 2.5};
  for (int trial = 0; trial < 200; ++trial) {
    const int frames = dim(rng), bins = dim(rng);
    std::vector<std::vector<double>> m(frames, std::vector<double>(bins));
    for (auto& row : m) {
      for (double& v : row) v = u(rng) < 0.1 ? 0.0 : u(rng);
    }
    m[0][0] += 0.01;
    const Spectrogram s = MakeSpectrogram(m);
    const double lambda = lambdas[trial % 4];
    const RidgeCurve c = ExtractRidge(s, lambda, s.bin_freqs_hz.front(),
                                      s.bin_freqs_hz.back());
    ASSERT_EQ(c.bin_indices.size(), static_cast<std::size_t>(frames));
    EXPECT_EQ(RidgeObjective(s, c.bin_indices, lambda, 0, bins),
              BestRidgeObjective(s, lambda, 0, bins))
        << "trial " << trial;
  }
}

TEST(ExtractRidgeTest, VariationNonIncreasingInPenalty) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<double>> m(30, std::vector<double>(25));
    for (auto& row : m) for (double& v : row) v = u(rng);
    const Spectrogram s = MakeSpectrogram(m);
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (double lambda : {0.0, 0.1, 1.0, 10.0, 1e9}) {
      const std::size_t tv =
          TotalVariation(ExtractRidge(s, lambda, 0.5, s.bin_freqs_hz.back()));
      EXPECT_LE(tv, previous) << lambda;
      previous = tv;
    }
  }
}

TEST(ExtractRidgeTest, TiesGoToLowerBin) {
  const Spectrogram s = MakeSpectrogram({{2.0, 2.0, 2.0}, {2.0, 2.0, 2.0}});
  const RidgeCurve c = ExtractRidge(s, 0.5, 0.75, 1.0);
  EXPECT_EQ(c.bin_indices, (std::vector<std::size_t>{1, 1}));
}

TEST(ExtractRidgeTest, Errors) {
  const Spectrogram zero = MakeSpectrogram({{0.0, 0.0}, {0.0, 0.0}});
  EXPECT_THROW(ExtractRidge(zero, 1.0, 0.5, 0.75), NumericalError);
  const Spectrogram s = MakeSpectrogram({{1.0, 2.0}});
  EXPECT_THROW(ExtractRidge(s, 1.0, 0.1, 0.75), ValidationError);
  EXPECT_THROW(ExtractRidge(s, -1.0, 0.5, 0.75), ValidationError);
}

TEST(RidgeToIhrTest, BinFrequencyTimesSixty) {
  const Spectrogram s = Stft(Tone(1.0, kFs, 1200), kFs);
  RidgeCurve c;
  c.bin_indices.assign(s.frames(), 100);
  const IhrSeries sixty = RidgeToIhr(c, s);
  for (double b : sixty.bpm()) EXPECT_DOUBLE_EQ(b, 60.0);
  c.bin_indices.assign(s.frames(), 150);
  const IhrSeries ihr = RidgeToIhr(c, s);
  for (double b : ihr.bpm()) EXPECT_DOUBLE_EQ(b, 90.0);
  EXPECT_EQ(ihr.timestamps(), s.frame_times_s);
  c.bin_indices.pop_back();
  EXPECT_THROW(RidgeToIhr(c, s), ValidationError);
}

TEST(RidgeToIhrTest, ChirpRidgeIsMonotone) {
  const std::size_t n = 3480;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / kFs;
    x[j] = std::sin(2.0 * std::numbers::pi * (t + 0.5 * t * t / 120.0));
  }
  const Spectrogram s = Stft(x, kFs);
  const IhrSeries ihr = RidgeToIhr(ExtractRidge(s, 0.02, 40.0 / 60.0, 200.0 / 60.0), s);
  const double step = 60.0 * (s.bin_freqs_hz[1] - s.bin_freqs_hz[0]);
  // Frames within half a window of either end see the mirrored chirp.
  for (std::size_t t = 6; t + 5 < ihr.size(); ++t) {
    EXPECT_GE(ihr.bpm()[t], ihr.bpm()[t - 1] - step) << t;
  }
  EXPECT_NEAR(ihr.bpm()[30], 75.0, 1.0);
  EXPECT_NEAR(ihr.bpm()[5], 62.5, 1.0);
  EXPECT_NEAR(ihr.bpm()[55], 87.5, 1.0);
}

TEST(SpectrogramDumpTest, GridAndAxes) {
  const Spectrogram s = MakeSpectrogram({{1.0, 0.5}, {0.25, 2.0}});
  EXPECT_EQ(FormatSpectrogramGrid(s), "1,0.5\n0.25,2\n");
  EXPECT_EQ(FormatAxis(s.bin_freqs_hz), "0.5\n0.75\n");
}

}  // namespace
}  // namespace irppg
