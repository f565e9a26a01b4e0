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

#include "irppg/time_frequency.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irppg/error.h"
#include "irppg/fft.h"
#include "irppg/io.h"

namespace irppg {

void Spectrogram::Validate() const {
  if (static_cast<std::size_t>(magnitudes.rows()) != frame_times_s.size() ||
      static_cast<std::size_t>(magnitudes.cols()) != bin_freqs_hz.size()) {
    throw ValidationError("spectrogram shape disagrees with its axes");
  }
  if (frame_times_s.empty() || bin_freqs_hz.empty()) {
    throw ValidationError("spectrogram is empty");
  }
  for (std::size_t i = 1; i < frame_times_s.size(); ++i) {
    if (!(frame_times_s[i] > frame_times_s[i - 1])) {
      throw ValidationError("spectrogram frame times not increasing");
    }
  }
  for (std::size_t i = 1; i < bin_freqs_hz.size(); ++i) {
    if (!(bin_freqs_hz[i] > bin_freqs_hz[i - 1])) {
      throw ValidationError("spectrogram bin frequencies not increasing");
    }
  }
  if (!magnitudes.allFinite() || (magnitudes.array() < 0.0).any()) {
    throw ValidationError("spectrogram magnitudes must be finite and >= 0");
  }
}

Spectrogram Stft(std::span<const double> x, double sample_rate_hz,
                 const StftOptions& options) {
  const std::size_t n = x.size();
  if (!(sample_rate_hz > 0.0)) {
    throw ValidationError("sample rate must be positive");
  }
  if (!(options.hop_s >= 1.0 / sample_rate_hz - 1e-12)) {
    throw ValidationError("STFT hop shorter than one sample");
  }
  const auto length =
      static_cast<std::size_t>(std::lround(options.window_s * sample_rate_hz));
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(options.hop_s * sample_rate_hz)));
  if (length < 2) {
    throw ValidationError("STFT window shorter than two samples");
  }
  if (length > n) {
    throw ValidationError("STFT window of " + std::to_string(length) +
                          " samples is longer than the " + std::to_string(n) +
                          "-sample signal");
  }
  const auto fft_size = std::max(
      length, static_cast<std::size_t>(std::ceil(
                  sample_rate_hz / options.max_bin_spacing_hz - 1e-9)));

  std::vector<double> window(length);
  for (std::size_t i = 0; i < length; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                     static_cast<double>(i) /
                                     static_cast<double>(length - 1));
  }

  // Mirror padding without repeating the edge sample.
  const std::size_t pad = length / 2;
  std::vector<double> padded(n + 2 * pad);
  for (std::size_t i = 0; i < padded.size(); ++i) {
    auto k = static_cast<long long>(i) - static_cast<long long>(pad);
    const auto last = static_cast<long long>(n) - 1;
    while (k < 0 || k > last) {
      k = k < 0 ? -k : 2 * last - k;
    }
    padded[i] = x[static_cast<std::size_t>(k)];
  }

  Spectrogram spec;
  spec.window = {"hann", length, hop, fft_size};
  const auto bin_freq = [&](std::size_t k) {
    return static_cast<double>(k) * sample_rate_hz /
           static_cast<double>(fft_size);
  };
  std::size_t bins = fft_size / 2 + 1;
  while (bins > 1 && bin_freq(bins - 1) > options.max_freq_hz) --bins;
  for (std::size_t k = 0; k < bins; ++k) {
    spec.bin_freqs_hz.push_back(bin_freq(k));
  }
  for (std::size_t c = 0; c < n; c += hop) {
    spec.frame_times_s.push_back(static_cast<double>(c) / sample_rate_hz);
  }
  spec.magnitudes.resize(static_cast<Eigen::Index>(spec.frame_times_s.size()),
                         static_cast<Eigen::Index>(bins));

  RealFft fft(fft_size);
  std::vector<double> frame(length);
  std::vector<double> mag;
  for (std::size_t f = 0; f < spec.frame_times_s.size(); ++f) {
    // Frame centred on sample f * hop starts there in padded coordinates.
    const std::size_t start = f * hop;
    for (std::size_t i = 0; i < length; ++i) {
      frame[i] = padded[start + i] * window[i];
    }
    fft.Magnitude(frame, mag);
    for (std::size_t k = 0; k < bins; ++k) {
      spec.magnitudes(static_cast<Eigen::Index>(f),
                      static_cast<Eigen::Index>(k)) = mag[k];
    }
  }
  return spec;
}

Spectrogram Stft(const PpgSignal& ppg, const StftOptions& options) {
  return Stft(ppg.samples, ppg.meta.sample_rate_hz, options);
}

RidgeCurve ExtractRidge(const Spectrogram& spec, double lambda, double low_hz,
                        double high_hz) {
  spec.Validate();
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("ridge penalty must be finite and non-negative");
  }
  if (!(low_hz <= high_hz) || low_hz < spec.bin_freqs_hz.front() ||
      high_hz > spec.bin_freqs_hz.back()) {
    throw ValidationError("ridge band [" + FormatDouble(low_hz) + ", " +
                          FormatDouble(high_hz) +
                          "] Hz outside the spectrogram's bin range");
  }
  const auto& freqs = spec.bin_freqs_hz;
  const auto first = static_cast<std::size_t>(
      std::lower_bound(freqs.begin(), freqs.end(), low_hz) - freqs.begin());
  const auto end = static_cast<std::size_t>(
      std::upper_bound(freqs.begin(), freqs.end(), high_hz) - freqs.begin());
  if (first >= end) {
    throw ValidationError("ridge band contains no frequency bin");
  }
  const std::size_t width = end - first;
  const std::size_t frames = spec.frames();

  const auto band = spec.magnitudes.middleCols(
      static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(width));
  const double peak = band.maxCoeff();
  if (!(peak > 0.0)) {
    throw NumericalError("spectrogram is zero throughout the ridge band");
  }
  const double floor = 1e-12 * peak;
  const auto score = [&](std::size_t t, std::size_t b) {
    return std::log(std::max(
        band(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(b)),
        floor));
  };

  std::vector<double> prev(width);
  std::vector<double> cur(width);
  std::vector<std::size_t> from(frames * width, 0);
  for (std::size_t b = 0; b < width; ++b) prev[b] = score(0, b);
  for (std::size_t t = 1; t < frames; ++t) {
    for (std::size_t b = 0; b < width; ++b) {
      std::size_t arg = 0;
      double best = prev[0] - lambda * static_cast<double>(b);
      for (std::size_t p = 1; p < width; ++p) {
        const double jump = p > b ? static_cast<double>(p - b)
                                  : static_cast<double>(b - p);
        const double candidate = prev[p] - lambda * jump;
        if (candidate > best) {
          best = candidate;
          arg = p;
        }
      }
      cur[b] = score(t, b) + best;
      from[t * width + b] = arg;
    }
    prev.swap(cur);
  }

  RidgeCurve curve;
  curve.lambda = lambda;
  curve.band_low_hz = low_hz;
  curve.band_high_hz = high_hz;
  curve.bin_indices.resize(frames);
  std::size_t b = static_cast<std::size_t>(
      std::max_element(prev.begin(), prev.end()) - prev.begin());
  for (std::size_t t = frames; t-- > 0;) {
    curve.bin_indices[t] = first + b;
    if (t > 0) b = from[t * width + b];
  }
  return curve;
}

IhrSeries RidgeToIhr(const RidgeCurve& curve, const Spectrogram& spec) {
  if (curve.bin_indices.size() != spec.frames()) {
    throw ValidationError("ridge length does not match spectrogram frames");
  }
  std::vector<double> bpm;
  bpm.reserve(curve.bin_indices.size());
  for (std::size_t b : curve.bin_indices) {
    if (b >= spec.bins()) {
      throw ValidationError("ridge bin index outside spectrogram");
    }
    bpm.push_back(60.0 * spec.bin_freqs_hz[b]);
  }
  return IhrSeries(spec.frame_times_s, std::move(bpm));
}

std::string FormatSpectrogramGrid(const Spectrogram& spec) {
  std::string out;
  for (Eigen::Index t = 0; t < spec.magnitudes.rows(); ++t) {
    for (Eigen::Index k = 0; k < spec.magnitudes.cols(); ++k) {
      if (k > 0) out += ',';
      out += FormatDouble(spec.magnitudes(t, k));
    }
    out += '\n';
  }
  return out;
}

std::string FormatAxis(std::span<const double> values) {
  std::string out;
  for (double v : values) {
    out += FormatDouble(v);
    out += '\n';
  }
  return out;
}

}  // namespace irppg
