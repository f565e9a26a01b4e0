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


// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "irppg/butterworth.h"
#include "irppg/decomposition.h"
#include "irppg/evaluation.h"
#include "irppg/ground_truth.h"
#include "irppg/marchenko_pastur.h"
#include "irppg/pipeline.h"
#include "irppg/reconstruction.h"
#include "irppg/synthetic.h"
#include "irppg/time_frequency.h"
#include "oracles.h"
#include "test_util.h"

namespace irppg {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

struct Ac1Run {
  SyntheticDataset dataset;
  PipelineResult result;
  double seconds = 0.0;
};

const Ac1Run& Ac1() {
  static const Ac1Run run = [] {
    const auto start = std::chrono::steady_clock::now();
    const MixtureSpec spec =
        ReadMixtureSpec(fs::path(IRPPG_TEST_DATA_DIR) / "ac1_mixture.spec");
    SyntheticDataset ds = Generate(spec);
    PipelineResult result = RunPipeline(ds.channels, PipelineConfig{});
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    return Ac1Run{std::move(ds), std::move(result), elapsed.count()};
  }();
  return run;
}

Outcome EndToEndRecovery() {
  const Ac1Run& run = Ac1();
  const ErrorReport r = Evaluate(run.result.ihr, *run.dataset.truth);
  const double rmse1 = r.rmse_bpm[0];
  const double rmse30 = r.rmse_bpm[2];
  const bool pass = rmse1 < 2.0 && rmse30 < 1.0 &&
                    r.relative_error_pct < 2.0 && run.seconds < 30.0;
  return {pass, Format("rmse_1s=%.3f bpm (<2.0) rmse_30s=%.3f bpm (<1.0) "
                       "relative_error=%.3f%% (<2) runtime=%.2f s (<30)",
                       rmse1, rmse30, r.relative_error_pct, run.seconds)};
}

Outcome RankReduction() {
  const SourceDecomposition& d = Ac1().result.decomposition;
  const std::size_t limit_base = std::min(d.rows(), d.cols());
  const double limit = 0.2 * static_cast<double>(limit_base);
  const std::size_t rank = d.retained_rank;
  return {static_cast<double>(rank) <= limit,
          Format("retained rank %zu of %zu (limit %.0f), noise sigma %.4f",
                 rank, limit_base, limit, d.noise_sigma)};
}

Outcome MpMedianOracle() {
  double worst = 0.0;
  for (double beta : {0.05, 0.25, 0.5, 1.0}) {
    worst = std::max(worst,
                     std::abs(MpMedian(beta) - testing::OracleMpMedian(beta)));
  }
  return {worst <= 1e-6,
          Format("max |median - oracle| = %.3e over 4 betas (<=1e-6)", worst)};
}

Outcome NoiseCalibration() {
  double lo = 1e300;
  double hi = -1e300;
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double s =
        Decompose(testing::GaussianMatrix(100, 1000, 7000 + seed)).noise_sigma;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    pass = pass && s >= 0.9 && s <= 1.1;
  }
  return {pass, Format("sigma in [%.4f, %.4f] over 20 seeds (each in [0.9, 1.1])",
                       lo, hi)};
}

Outcome RidgeOptimality() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  const double lambdas[] = {0.0, 0.1, 0.5, 1.0, 3.0};
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int frames = size(rng);
    const int bins = size(rng);
    std::vector<std::vector<double>> m(frames, std::vector<double>(bins));
    for (auto& row : m) for (double& v : row) v = mag(rng);
    const Spectrogram s = testing::MakeSpectrogram(m);
    const double lambda = lambdas[trial % 5];
    const auto width = static_cast<std::size_t>(bins);
    const RidgeCurve c = ExtractRidge(s, lambda, s.bin_freqs_hz.front(),
                                      s.bin_freqs_hz.back());
    if (testing::RidgeObjective(s, c.bin_indices, lambda, 0, width) !=
        testing::BestRidgeObjective(s, lambda, 0, width)) {
      ++mismatches;
    }
  }
  return {mismatches == 0,
          Format("%d of 200 random spectrograms differ from exhaustive search",
                 mismatches)};
}

Outcome FilterResponse() {
  const double fs_hz = 58.0;
  const FilterSpec spec;
  const FilterCoefficients f = DesignButterworthBandpass(spec, fs_hz);
  const double low = f.MagnitudeDb(0.4);
  const double high = f.MagnitudeDb(5.0);
  const double dc = 20.0 * std::log10(std::abs(f.Response(0.0)));
  const double oracle_low =
      20.0 * std::log10(testing::AnalyticBandpassGain(0.4, 0.4, 5.0, spec.order, fs_hz));
  const double oracle_high =
      20.0 * std::log10(testing::AnalyticBandpassGain(5.0, 0.4, 5.0, spec.order, fs_hz));
  const bool pass = std::abs(low + 3.0103) <= 0.1 &&
                    std::abs(high + 3.0103) <= 0.1 && dc < -60.0 &&
                    std::abs(low - oracle_low) < 1e-6 &&
                    std::abs(high - oracle_high) < 1e-6;
  return {pass, Format("0.4 Hz %.4f dB, 5.0 Hz %.4f dB (-3.01 +- 0.1), "
                       "DC %.1f dB (< -60), closed form %.4f / %.4f dB",
                       low, high, dc, oracle_low, oracle_high)};
}

Outcome SqiAnalytics() {
  const double fs_hz = 58.0;
  const double fp = 1.25;
  std::vector<double> impulse(3480, 0.0);
  impulse[0] = 1.0;
  const double flat = Sqi(impulse, fp, fs_hz);
  const double tone = Sqi(testing::Tone(fp, fs_hz, 3480), fp, fs_hz);
  std::vector<double> x = testing::GaussianVector(3480, 31, 0.5);
  const std::vector<double> t = testing::Tone(1.1, fs_hz, 3480);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += t[i];
  const double q = Sqi(x, fp, fs_hz);
  bool exact = true;
  for (double c : {-1.0, 2.0, 0.5, -4.0}) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * x[i];
    exact = exact && Sqi(y, fp, fs_hz) == q;
  }
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.7 * x[i];
  const double rel = std::abs(Sqi(y, fp, fs_hz) - q) / q;
  const bool pass = std::abs(flat - 1.0 / 3.0) <= 0.05 && tone > 0.95 &&
                    exact && rel <= 1e-12;
  return {pass, Format("flat %.6f (1/3 +- 0.05), tone %.6f (>0.95), "
                       "exact for c in {-1,2,0.5,-4}: %s, c=3.7 rel %.1e (<=1e-12)",
                       flat, tone, exact ? "yes" : "no", rel)};
}

Outcome MetricExamples() {
  const auto series = [](std::vector<double> bpm) {
    std::vector<double> t;
    for (std::size_t i = 0; i < bpm.size(); ++i) t.push_back(static_cast<double>(i));
    return IhrSeries(t, std::move(bpm));
  };
  const auto close = [](double got, double want) {
    return want == 0.0 ? got == 0.0 : std::abs(got - want) <= 1e-12 * want;
  };
  const IhrSeries wave = series({61.0, 64.5, 70.25, 66.0, 59.75});
  int failed = 0;
  const auto check = [&](double got, double want) { failed += close(got, want) ? 0 : 1; };
  check(Rmse(wave, wave), 0.0);
  check(Rmse(series({63.0, 63.0, 63.0}), series({60.0, 60.0, 60.0})), 3.0);
  check(Rmse(series({60.0, 70.0}), series({62.0, 66.0})), std::sqrt(10.0));
  check(RelativeErrorPct(wave, wave), 0.0);
  check(RelativeErrorPct(series({63.0, 63.0}), series({60.0, 60.0})), 5.0);
  check(RelativeErrorPct(series({66.0, 54.0}), series({60.0, 60.0})), 10.0);
  return {failed == 0, Format("%d of 6 worked examples outside 1e-12 relative", failed)};
}

Outcome Determinism() {
  const SyntheticDataset& ds = Ac1().dataset;
  PipelineConfig config;
  config.dump_spectrogram = true;
  testing::TempDir a;
  testing::TempDir b;
  WriteRunOutputs(a.path(), RunPipeline(ds.channels, config), config);
  WriteRunOutputs(b.path(), RunPipeline(ds.channels, config), config);
  int files = 0;
  int differing = 0;
  for (const auto& e : fs::directory_iterator(a.path())) {
    ++files;
    const fs::path other = b.path() / e.path().filename();
    if (!fs::exists(other) ||
        testing::ReadFile(e.path()) != testing::ReadFile(other)) {
      ++differing;
    }
  }
  const bool pass = files > 0 && differing == 0 &&
                    std::distance(fs::directory_iterator(b.path()),
                                  fs::directory_iterator{}) == files;
  return {pass, Format("%d output files, %d differ between two runs", files, differing)};
}

}  // namespace
}  // namespace irppg

int main() {
  const std::vector<std::pair<const char*, std::function<irppg::Outcome()>>> criteria = {
      {"AC-1", irppg::EndToEndRecovery}, {"AC-2", irppg::RankReduction},
      {"AC-3", irppg::MpMedianOracle},   {"AC-4", irppg::NoiseCalibration},
      {"AC-5", irppg::RidgeOptimality},  {"AC-6", irppg::FilterResponse},
      {"AC-7", irppg::SqiAnalytics},     {"AC-8", irppg::MetricExamples},
      {"AC-9", irppg::Determinism}};
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    irppg::Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s %s\n", name, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
