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

// Butterworth bandpass design as cascaded second-order sections, and
// causal / forward-backward application.

#ifndef IRPPG_BUTTERWORTH_H_
#define IRPPG_BUTTERWORTH_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace irppg {

struct FilterSpec {
  int order = 5;
  double low_cut_bpm = 24.0;
  double high_cut_bpm = 300.0;
  bool zero_phase = true;

  // 0 < low < high < Nyquist (in bpm), order >= 1.
  void Validate(double sample_rate_hz) const;
};

// One biquad, a0 normalized to 1. Applied in transposed direct form II.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

struct FilterCoefficients {
  std::vector<Biquad> sections;
  std::vector<std::complex<double>> poles;  // z-plane, all 2 * order of them
  double sample_rate_hz = 0.0;

  std::complex<double> Response(double freq_hz) const;
  double MagnitudeDb(double freq_hz) const;
  // Samples until the slowest pole's envelope decays below 1e-3.
  std::size_t SettlingLength() const;
  // Edge padding used on each side before filtering: 3 * SettlingLength().
  std::size_t PaddingLength() const;
};

// Analog Butterworth prototype mapped lowpass -> bandpass and discretized
// with the bilinear transform, both cutoffs prewarped. Unity gain at the
// band center, 1/sqrt(2) at each cutoff.
FilterCoefficients DesignButterworthBandpass(const FilterSpec& spec,
                                             double sample_rate_hz);

// Causal cascade filtering from rest.
std::vector<double> FilterCausal(const FilterCoefficients& filter,
                                 std::span<const double> x);

// Odd-reflection pads PaddingLength() samples at both ends, starts each
// pass from the steady state of its first sample, and trims the padding.
// With `zero_phase` the padded signal is filtered forward then backward.
// Throws ValidationError when x is not longer than the padding.
std::vector<double> ApplyFilter(const FilterCoefficients& filter,
                                std::span<const double> x, bool zero_phase);

}  // namespace irppg

#endif  // IRPPG_BUTTERWORTH_H_
