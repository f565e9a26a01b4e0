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

// Short-time Fourier magnitude of the PPG waveform and the penalized
// dominant-curve (ridge) extraction that turns it into a heart-rate series.

#ifndef IRPPG_TIME_FREQUENCY_H_
#define IRPPG_TIME_FREQUENCY_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "irppg/reconstruction.h"
#include "irppg/types.h"

namespace irppg {

struct StftOptions {
  double window_s = 10.0;
  double hop_s = 1.0;
  // Frames are zero-padded to ceil(fs / max_bin_spacing_hz) samples (never
  // below the window length), so bins are at most this far apart.
  double max_bin_spacing_hz = 0.01;
  // Bins above this frequency are dropped from the result.
  double max_freq_hz = std::numeric_limits<double>::infinity();
};

struct WindowDescriptor {
  std::string shape = "hann";
  std::size_t length = 0;  // samples
  std::size_t hop = 0;     // samples
  std::size_t fft_size = 0;
};

struct Spectrogram {
  Matrix magnitudes;  // frames x bins, non-negative
  std::vector<double> frame_times_s;
  std::vector<double> bin_freqs_hz;
  WindowDescriptor window;

  std::size_t frames() const { return frame_times_s.size(); }
  std::size_t bins() const { return bin_freqs_hz.size(); }
  // Checks shape agreement, finiteness, non-negativity and monotone axes.
  void Validate() const;
};

// Symmetric Hann window frames centred every hop, starting at sample 0; the
// signal is mirror-padded (edge sample not repeated) by half a window at
// both ends.
Spectrogram Stft(std::span<const double> x, double sample_rate_hz,
                 const StftOptions& options = {});
Spectrogram Stft(const PpgSignal& ppg, const StftOptions& options = {});

struct RidgeCurve {
  std::vector<std::size_t> bin_indices;  // one spectrogram bin per frame
  double lambda = 0.0;
  double band_low_hz = 0.0;
  double band_high_hz = 0.0;
};

// Exact maximizer over integer bin paths inside [low_hz, high_hz] of
//   sum_t log|S(t, c(t))| - lambda * sum_t |c(t) - c(t-1)|
// by dynamic programming. Magnitudes below 1e-12 times the in-band maximum
// are floored there before the log. Ties resolve to the lower bin, both for
// the final bin and for each predecessor.
RidgeCurve ExtractRidge(const Spectrogram& spec, double lambda, double low_hz,
                        double high_hz);

// bpm(t) = 60 * bin frequency of the ridge at frame t.
IhrSeries RidgeToIhr(const RidgeCurve& curve, const Spectrogram& spec);

// Frames x bins grid, one line per frame, comma-separated.
std::string FormatSpectrogramGrid(const Spectrogram& spec);
std::string FormatAxis(std::span<const double> values);

}  // namespace irppg

#endif  // IRPPG_TIME_FREQUENCY_H_
