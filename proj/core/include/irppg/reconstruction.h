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

// Spectral signal quality index and the greedy assembly of the non-contact
// PPG waveform from retained temporal singular vectors.

#ifndef IRPPG_RECONSTRUCTION_H_
#define IRPPG_RECONSTRUCTION_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irppg/decomposition.h"
#include "irppg/types.h"

namespace irppg {

// Default pulse search band, 40-200 bpm.
inline constexpr double kPulseBandLowHz = 40.0 / 60.0;
inline constexpr double kPulseBandHighHz = 200.0 / 60.0;

// Integral of |X(f)| over [3/4 f_p, 5/4 f_p] divided by the integral over
// [1/2 f_p, 2 f_p]. |X| is the DFT magnitude at the signal's own length,
// integrated as the piecewise-linear interpolant between bins, so band edges
// that fall between bins are handled exactly. Result is in [0, 1].
//
// Throws ValidationError unless 0 < f_p and 2 f_p < Nyquist, and
// NumericalError when the reference band holds no energy.
double Sqi(std::span<const double> x, double pulse_freq_hz,
           double sample_rate_hz);

// Peak of sum_i sigma_i |v_i(f)| over retained sources, restricted to
// [low_hz, high_hz]. Ties go to the lower frequency.
double EstimatePulseFreq(const SourceDecomposition& decomp,
                         double sample_rate_hz,
                         double low_hz = kPulseBandLowHz,
                         double high_hz = kPulseBandHighHz);

enum class SignMode { kGreedy, kOff };

struct AccumulateOptions {
  SignMode sign_mode = SignMode::kGreedy;
  // Accumulate sigma_i * v_i instead of v_i.
  bool weight_by_sigma = false;
};

struct RankedSources {
  std::vector<double> scores;             // Q(v_i) by source index
  std::vector<std::size_t> permutation;   // rank position -> source index
  std::vector<int> signs;                 // by rank position
  std::vector<double> cumulative_quality; // Q of the signed prefix sums
  std::size_t cutoff = 0;                 // J, number of sources summed
  double pulse_freq_hz = 0.0;
};

struct PpgSignal {
  std::vector<double> samples;
  AcquisitionMeta meta;
  double quality = 0.0;
};

// Ranks the retained sources by SQI (stable, descending), then walks the
// ranking adding each source with whichever sign gives the higher
// cumulative SQI (plus on ties). The output is the signed prefix sum whose
// SQI is largest; the first maximum wins.
std::pair<RankedSources, PpgSignal> RankAndAccumulate(
    const SourceDecomposition& decomp, double pulse_freq_hz,
    const AcquisitionMeta& meta, const AccumulateOptions& options = {});

// rank, source, Q, sign, cumulative Q, included flag.
std::string FormatSourceTable(const RankedSources& ranked);

}  // namespace irppg

#endif  // IRPPG_RECONSTRUCTION_H_
