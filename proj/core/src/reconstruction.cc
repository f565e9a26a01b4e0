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

#include "irppg/reconstruction.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "irppg/error.h"
#include "irppg/fft.h"
#include "irppg/io.h"

namespace irppg {
namespace {

// Integral over [lo, hi] of the linear interpolant through (k * df, mag[k]).
double BandIntegral(std::span<const double> mag, double df, double lo,
                    double hi) {
  const auto value_at = [&](double f) {
    const double pos = f / df;
    const auto k = std::min(static_cast<std::size_t>(pos), mag.size() - 2);
    const double frac = pos - static_cast<double>(k);
    return mag[k] + frac * (mag[k + 1] - mag[k]);
  };
  const auto first = static_cast<std::size_t>(std::floor(lo / df));
  double total = 0.0;
  for (std::size_t k = first; k + 1 < mag.size(); ++k) {
    const double a = std::max(lo, static_cast<double>(k) * df);
    const double b = std::min(hi, static_cast<double>(k + 1) * df);
    if (b <= a) {
      if (static_cast<double>(k) * df >= hi) break;
      continue;
    }
    total += 0.5 * (b - a) * (value_at(a) + value_at(b));
  }
  return total;
}

std::vector<double> Row(const Matrix& m, Eigen::Index r, double scale = 1.0) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    out[static_cast<std::size_t>(c)] = scale * m(r, c);
  }
  return out;
}

}  // namespace

double Sqi(std::span<const double> x, double pulse_freq_hz,
           double sample_rate_hz) {
  if (!(pulse_freq_hz > 0.0)) {
    throw ValidationError("pulse frequency must be positive");
  }
  if (!(2.0 * pulse_freq_hz < sample_rate_hz / 2.0)) {
    throw ValidationError("twice the pulse frequency " +
                          FormatDouble(pulse_freq_hz) +
                          " Hz must lie below Nyquist");
  }
  if (x.size() < 4) {
    throw ValidationError("signal too short for a quality index");
  }
  const std::vector<double> mag = MagnitudeSpectrum(x);
  const double df = sample_rate_hz / static_cast<double>(x.size());
  const double numerator =
      BandIntegral(mag, df, 0.75 * pulse_freq_hz, 1.25 * pulse_freq_hz);
  const double denominator =
      BandIntegral(mag, df, 0.5 * pulse_freq_hz, 2.0 * pulse_freq_hz);
  if (!(denominator > 0.0)) {
    throw NumericalError("undefined quality index: no spectral energy in "
                         "the reference band");
  }
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

double EstimatePulseFreq(const SourceDecomposition& decomp,
                         double sample_rate_hz, double low_hz,
                         double high_hz) {
  if (decomp.retained_rank == 0) {
    throw NumericalError("no sources retained; cannot estimate pulse frequency");
  }
  if (!(low_hz > 0.0 && low_hz < high_hz)) {
    throw ValidationError("pulse search band must satisfy 0 < low < high");
  }
  const std::size_t n = decomp.cols();
  RealFft fft(n);
  const double df = sample_rate_hz / static_cast<double>(n);
  std::vector<double> aggregate(fft.bins(), 0.0);
  std::vector<double> mag;
  for (std::size_t i = 0; i < decomp.retained_rank; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    fft.Magnitude(Row(decomp.right_vectors, idx), mag);
    const double w = decomp.singular_values[idx];
    for (std::size_t k = 0; k < mag.size(); ++k) aggregate[k] += w * mag[k];
  }
  std::size_t best = 0;
  bool found = false;
  for (std::size_t k = 0; k < aggregate.size(); ++k) {
    const double f = static_cast<double>(k) * df;
    if (f < low_hz || f > high_hz) continue;
    if (!found || aggregate[k] > aggregate[best]) {
      best = k;
      found = true;
    }
  }
  if (!found) {
    throw ValidationError("pulse search band contains no frequency bin");
  }
  return static_cast<double>(best) * df;
}

std::pair<RankedSources, PpgSignal> RankAndAccumulate(
    const SourceDecomposition& decomp, double pulse_freq_hz,
    const AcquisitionMeta& meta, const AccumulateOptions& options) {
  const std::size_t count = decomp.retained_rank;
  if (count == 0) {
    throw NumericalError("no sources retained");
  }
  const double fs = meta.sample_rate_hz;
  std::vector<std::vector<double>> sources;
  RankedSources ranked;
  ranked.pulse_freq_hz = pulse_freq_hz;
  std::size_t undefined = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double w = options.weight_by_sigma ? decomp.singular_values[idx] : 1.0;
    sources.push_back(Row(decomp.right_vectors, idx, w));
    try {
      ranked.scores.push_back(Sqi(sources.back(), pulse_freq_hz, fs));
    } catch (const NumericalError&) {
      ranked.scores.push_back(0.0);
      ++undefined;
    }
  }
  if (undefined == count) {
    throw NumericalError("quality index undefined for every retained source");
  }

  ranked.permutation.resize(count);
  std::iota(ranked.permutation.begin(), ranked.permutation.end(), 0);
  std::stable_sort(ranked.permutation.begin(), ranked.permutation.end(),
                   [&](std::size_t a, std::size_t b) {
                     return ranked.scores[a] > ranked.scores[b];
                   });

  const auto quality = [&](const std::vector<double>& x) {
    try {
      return Sqi(x, pulse_freq_hz, fs);
    } catch (const NumericalError&) {
      return 0.0;
    }
  };

  std::vector<double> sum = sources[ranked.permutation[0]];
  ranked.signs.push_back(1);
  ranked.cumulative_quality.push_back(quality(sum));
  std::vector<double> plus(sum.size());
  std::vector<double> minus(sum.size());
  for (std::size_t j = 1; j < count; ++j) {
    const std::vector<double>& v = sources[ranked.permutation[j]];
    for (std::size_t t = 0; t < sum.size(); ++t) {
      plus[t] = sum[t] + v[t];
      minus[t] = sum[t] - v[t];
    }
    const double q_plus = quality(plus);
    if (options.sign_mode == SignMode::kGreedy) {
      const double q_minus = quality(minus);
      if (q_minus > q_plus) {
        ranked.signs.push_back(-1);
        ranked.cumulative_quality.push_back(q_minus);
        sum.swap(minus);
        continue;
      }
    }
    ranked.signs.push_back(1);
    ranked.cumulative_quality.push_back(q_plus);
    sum.swap(plus);
  }

  const auto best = std::max_element(ranked.cumulative_quality.begin(),
                                     ranked.cumulative_quality.end());
  ranked.cutoff =
      static_cast<std::size_t>(best - ranked.cumulative_quality.begin()) + 1;

  PpgSignal ppg;
  ppg.meta = meta;
  ppg.quality = *best;
  ppg.samples.assign(decomp.cols(), 0.0);
  for (std::size_t j = 0; j < ranked.cutoff; ++j) {
    const std::vector<double>& v = sources[ranked.permutation[j]];
    for (std::size_t t = 0; t < v.size(); ++t) {
      ppg.samples[t] += ranked.signs[j] * v[t];
    }
  }
  return {std::move(ranked), std::move(ppg)};
}

std::string FormatSourceTable(const RankedSources& ranked) {
  std::string out = "rank,source,sqi,sign,cumulative_sqi,included\n";
  for (std::size_t j = 0; j < ranked.permutation.size(); ++j) {
    const std::size_t src = ranked.permutation[j];
    out += std::to_string(j + 1) + "," + std::to_string(src + 1) + "," +
           FormatDouble(ranked.scores[src]) + "," +
           std::to_string(ranked.signs[j]) + "," +
           FormatDouble(ranked.cumulative_quality[j]) + "," +
           (j < ranked.cutoff ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace irppg
