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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "irppg/decomposition.h"
#include "irppg/error.h"
#include "irppg/reconstruction.h"
#include "test_util.h"

namespace irppg {
namespace {

using testing::GaussianVector;
using testing::Meta;
using testing::Tone;

constexpr double kFs = 58.0;

SourceDecomposition FromSources(const std::vector<std::vector<double>>& rows,
                                const std::vector<double>& sigmas) {
  SourceDecomposition d;
  const auto k = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(rows.front().size());
  d.right_vectors.resize(k, n);
  d.singular_values.resize(k);
  d.left_vectors = Matrix::Identity(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index t = 0; t < n; ++t) {
      d.right_vectors(i, t) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
    }
    d.singular_values(i) = sigmas[static_cast<std::size_t>(i)];
  }
  d.beta = 1.0;
  d.noise_sigma = 1.0;
  d.retained_rank = rows.size();
  return d;
}

std::vector<double> Add(const std::vector<double>& a, const std::vector<double>& b,
                        double scale = 1.0) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + scale * b[i];
  return out;
}

TEST(SqiTest, ImpulseHasFlatSpectrum) {
  std::vector<double> x(2048, 0.0);
  x[0] = 1.0;
  EXPECT_NEAR(Sqi(x, 1.2, kFs), 1.0 / 3.0, 1e-12);
}

TEST(SqiTest, WhiteNoiseNearOneThird) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EXPECT_NEAR(Sqi(GaussianVector(5800, seed), 1.2, kFs), 1.0 / 3.0, 0.05);
  }
}

TEST(SqiTest, ToneAtPulseFrequencyScoresHigh) {
  EXPECT_GT(Sqi(Tone(1.2, kFs, 5800), 1.2, kFs), 0.95);
  EXPECT_GT(Sqi(Tone(1.0, kFs, 3480, 1.0, 0.3), 1.0, kFs), 0.95);
}

TEST(SqiTest, ToneNearDoubleFrequencyScoresLow) {
  EXPECT_LT(Sqi(Tone(1.9 * 1.2, kFs, 5800), 1.2, kFs), 0.05);
}

TEST(SqiTest, ScaleInvariance) {
  const auto x = Add(Tone(1.1, kFs, 3000), GaussianVector(3000, 4), 0.5);
  const double q = Sqi(x, 1.2, kFs);
  for (double c : {-1.0, 2.0, 0.5, -4.0, 1024.0}) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * x[i];
    EXPECT_EQ(Sqi(y, 1.2, kFs), q) << c;
  }
  for (double c : {3.7, -0.013, 1e6}) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * x[i];
    EXPECT_NEAR(Sqi(y, 1.2, kFs), q, 1e-12 * q) << c;
  }
}

TEST(SqiTest, InUnitIntervalForRandomSignals) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> fp(0.7, 3.3);
  for (int i = 0; i < 50; ++i) {
    const auto x = GaussianVector(500 + static_cast<std::size_t>(i) * 37, i + 1);
    const double q = Sqi(x, fp(rng), kFs);
    EXPECT_GE(q, 0.0);
    EXPECT_LE(q, 1.0);
  }
}

TEST(SqiTest, Errors) {
  const auto x = Tone(1.2, kFs, 1000);
  EXPECT_THROW(Sqi(x, 0.0, kFs), ValidationError);
  EXPECT_THROW(Sqi(x, 14.5, kFs), ValidationError);
  EXPECT_THROW(Sqi(std::vector<double>(1000, 0.0), 1.2, kFs), NumericalError);
}

// Direct DFT magnitude at bin k.
double NaiveDftMagnitude(const std::vector<double>& x, std::size_t k) {
  std::complex<double> acc = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi *
                                      static_cast<double>(k * t % x.size()) / n);
  }
  return std::abs(acc);
}

TEST(EstimatePulseFreqTest, SingleTone) {
  const std::size_t n = 3480;
  const SourceDecomposition d = FromSources({Tone(1.2, kFs, n)}, {1.0});
  EXPECT_NEAR(EstimatePulseFreq(d, kFs), 1.2, kFs / static_cast<double>(n));
}

TEST(EstimatePulseFreqTest, DominantWeightWins) {
  const std::size_t n = 3480;
  const SourceDecomposition d =
      FromSources({Tone(1.0, kFs, n), Tone(2.0, kFs, n)}, {10.0, 1.0});
  EXPECT_NEAR(EstimatePulseFreq(d, kFs), 1.0, kFs / static_cast<double>(n));
}

TEST(EstimatePulseFreqTest, ChirpPeakMatchesDirectDft) {
  const std::size_t n = 1740;
  std::vector<double> x(n);
  const double duration = static_cast<double>(n) / kFs;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / kFs;
    x[j] = std::sin(2.0 * std::numbers::pi * (t + 0.5 * t * t / (2.0 * duration)));
  }
  const SourceDecomposition d = FromSources({x}, {3.0});
  const double got = EstimatePulseFreq(d, kFs);
  EXPECT_GE(got, 1.0);
  EXPECT_LE(got, 1.5);
  const double df = kFs / static_cast<double>(n);
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) * df;
    if (f < kPulseBandLowHz || f > kPulseBandHighHz) continue;
    const double m = NaiveDftMagnitude(x, k);
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  EXPECT_NEAR(got, static_cast<double>(best) * df, 1e-12);
}

TEST(EstimatePulseFreqTest, EmptyRetainedSetIsError) {
  SourceDecomposition d = FromSources({Tone(1.2, kFs, 600)}, {1.0});
  d.retained_rank = 0;
  EXPECT_THROW(EstimatePulseFreq(d, kFs), NumericalError);
}

TEST(RankAndAccumulateTest, SingleSource) {
  const auto v = Tone(1.2, kFs, 2000);
  const auto [ranked, ppg] =
      RankAndAccumulate(FromSources({v}, {1.0}), 1.2, Meta(kFs, 2000));
  EXPECT_EQ(ranked.cutoff, 1u);
  EXPECT_EQ(ppg.samples, v);
  EXPECT_EQ(ppg.quality, ranked.scores[0]);
}

TEST(RankAndAccumulateTest, NoiseIsNotAdded) {
  const std::size_t n = 3480;
  const auto tone = Tone(1.2, kFs, n, 0.02);
  const auto noise = GaussianVector(n, 3, 0.02);
  const auto [ranked, ppg] =
      RankAndAccumulate(FromSources({noise, tone}, {2.0, 1.0}), 1.2, Meta(kFs, n));
  EXPECT_EQ(ranked.permutation[0], 1u);
  EXPECT_GT(ranked.scores[1], ranked.scores[0]);
  EXPECT_EQ(ranked.cutoff, 1u);
  EXPECT_LT(ranked.cumulative_quality[1], ranked.cumulative_quality[0]);
  EXPECT_EQ(ppg.samples, tone);
}

TEST(RankAndAccumulateTest, SplitToneCopiesAreBothKept) {
  const std::size_t n = 3480;
  const auto half = Tone(1.2, kFs, n, 0.5);
  const auto a = Add(half, GaussianVector(n, 21, 0.4));
  const auto b = Add(half, GaussianVector(n, 22, 0.4));
  const auto [ranked, ppg] =
      RankAndAccumulate(FromSources({a, b}, {1.0, 1.0}), 1.2, Meta(kFs, n));
  EXPECT_EQ(ranked.cutoff, 2u);
  EXPECT_GT(ppg.quality, std::max(ranked.scores[0], ranked.scores[1]));

  std::vector<double> flipped(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) flipped[i] = -b[i];
  const auto [greedy, greedy_ppg] =
      RankAndAccumulate(FromSources({a, flipped}, {1.0, 1.0}), 1.2, Meta(kFs, n));
  EXPECT_EQ(greedy.cutoff, 2u);
  EXPECT_EQ(greedy.signs[1], -1);

  AccumulateOptions off;
  off.sign_mode = SignMode::kOff;
  const auto [plain, plain_ppg] = RankAndAccumulate(
      FromSources({a, flipped}, {1.0, 1.0}), 1.2, Meta(kFs, n), off);
  EXPECT_EQ(plain.signs[1], 1);
  EXPECT_EQ(plain.cutoff, 1u);
}

TEST(RankAndAccumulateTest, GreedyInvariantsOnRandomSources) {
  const std::size_t n = 1500;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  std::uniform_real_distribution<double> amp(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> rows;
    std::vector<double> sigmas;
    const int k = 2 + trial % 5;
    for (int i = 0; i < k; ++i) {
      rows.push_back(Add(Tone(freq(rng), kFs, n, amp(rng)),
                         GaussianVector(n, 1000 + trial * 10 + i, 0.3)));
      sigmas.push_back(static_cast<double>(k - i));
    }
    const SourceDecomposition d = FromSources(rows, sigmas);
    const auto [ranked, ppg] = RankAndAccumulate(d, 1.2, Meta(kFs, n));
    ASSERT_EQ(ranked.permutation.size(), rows.size());
    std::vector<bool> seen(rows.size(), false);
    for (std::size_t j = 0; j < ranked.permutation.size(); ++j) {
      seen[ranked.permutation[j]] = true;
      if (j > 0) {
        EXPECT_GE(ranked.scores[ranked.permutation[j - 1]],
                  ranked.scores[ranked.permutation[j]]);
      }
    }
    for (bool s : seen) EXPECT_TRUE(s);
    for (double q : ranked.scores) {
      EXPECT_GE(q, 0.0);
      EXPECT_LE(q, 1.0);
    }
    EXPECT_GE(ranked.cutoff, 1u);
    EXPECT_LE(ranked.cutoff, rows.size());
    for (double q : ranked.cumulative_quality) {
      EXPECT_GE(ranked.cumulative_quality[ranked.cutoff - 1], q);
    }
    std::vector<double> sum = rows[ranked.permutation[0]];
    for (std::size_t j = 1; j < rows.size(); ++j) {
      const auto& v = rows[ranked.permutation[j]];
      const double chosen = ranked.cumulative_quality[j];
      const double other = Sqi(Add(sum, v, -ranked.signs[j]), 1.2, kFs);
      EXPECT_GE(chosen, other);
      sum = Add(sum, v, ranked.signs[j]);
      EXPECT_EQ(Sqi(sum, 1.2, kFs), chosen);
    }
    EXPECT_EQ(Sqi(ppg.samples, 1.2, kFs), ppg.quality);
  }
}

TEST(RankAndAccumulateTest, WeightBySigmaScalesSources) {
  const std::size_t n = 1200;
  const auto v = Tone(1.2, kFs, n);
  AccumulateOptions weighted;
  weighted.weight_by_sigma = true;
  const auto [ranked, ppg] =
      RankAndAccumulate(FromSources({v}, {4.0}), 1.2, Meta(kFs, n), weighted);
  for (std::size_t t = 0; t < n; ++t) EXPECT_EQ(ppg.samples[t], 4.0 * v[t]);
}

TEST(RankAndAccumulateTest, AllUndefinedIsError) {
  const SourceDecomposition d =
      FromSources({std::vector<double>(800, 0.0), std::vector<double>(800, 0.0)},
                  {1.0, 1.0});
  EXPECT_THROW(RankAndAccumulate(d, 1.2, Meta(kFs, 800)), NumericalError);
}

TEST(SourceTableTest, MarksIncludedRows) {
  const std::size_t n = 3480;
  const auto tone = Tone(1.2, kFs, n, 0.02);
  const auto noise = GaussianVector(n, 3, 0.02);
  const auto result =
      RankAndAccumulate(FromSources({noise, tone}, {2.0, 1.0}), 1.2, Meta(kFs, n));
  const std::string table = FormatSourceTable(result.first);
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "rank,source,sqi,sign,cumulative_sqi,included");
  EXPECT_NE(table.find("\n1,2,"), std::string::npos);
  EXPECT_NE(table.find(",1\n2,1,"), std::string::npos);
}

}  // namespace
}  // namespace irppg
