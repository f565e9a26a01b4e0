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

#include "irppg/butterworth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "irppg/error.h"
#include "irppg/io.h"

namespace irppg {
namespace {

using Complex = std::complex<double>;

constexpr double kSettlingTolerance = 1e-3;

// Steady-state transposed-DF2 state of each section for a constant input of 1.
std::vector<std::array<double, 2>> SteadyState(const FilterCoefficients& f) {
  std::vector<std::array<double, 2>> states;
  double u = 1.0;
  for (const Biquad& s : f.sections) {
    const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    const double y = dc * u;
    const double z2 = s.b2 * u - s.a2 * y;
    const double z1 = s.b1 * u - s.a1 * y + z2;
    states.push_back({z1, z2});
    u = y;
  }
  return states;
}

void RunCascade(const FilterCoefficients& f,
                std::vector<std::array<double, 2>> state,
                std::vector<double>& x) {
  for (std::size_t k = 0; k < f.sections.size(); ++k) {
    const Biquad& s = f.sections[k];
    double z1 = state[k][0];
    double z2 = state[k][1];
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

void ScaledState(std::vector<std::array<double, 2>>& state,
                 const std::vector<std::array<double, 2>>& unit, double x0) {
  for (std::size_t k = 0; k < unit.size(); ++k) {
    state[k][0] = unit[k][0] * x0;
    state[k][1] = unit[k][1] * x0;
  }
}

}  // namespace

void FilterSpec::Validate(double sample_rate_hz) const {
  if (order < 1) {
    throw ValidationError("filter order must be at least 1");
  }
  const double nyquist_bpm = 60.0 * sample_rate_hz / 2.0;
  if (!(low_cut_bpm > 0.0 && low_cut_bpm < high_cut_bpm)) {
    throw ValidationError("filter cutoffs must satisfy 0 < low < high");
  }
  if (!(high_cut_bpm < nyquist_bpm)) {
    throw ValidationError("filter high cutoff " + FormatDouble(high_cut_bpm) +
                          " bpm at or beyond Nyquist " +
                          FormatDouble(nyquist_bpm) + " bpm");
  }
}

Complex FilterCoefficients::Response(double freq_hz) const {
  const Complex zinv =
      std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate_hz);
  const Complex zinv2 = zinv * zinv;
  Complex h = 1.0;
  for (const Biquad& s : sections) {
    h *= (s.b0 + s.b1 * zinv + s.b2 * zinv2) / (1.0 + s.a1 * zinv + s.a2 * zinv2);
  }
  return h;
}

double FilterCoefficients::MagnitudeDb(double freq_hz) const {
  return 20.0 * std::log10(std::abs(Response(freq_hz)));
}

std::size_t FilterCoefficients::SettlingLength() const {
  double radius = 0.0;
  for (const Complex& p : poles) radius = std::max(radius, std::abs(p));
  if (radius <= 0.0) return 1;
  return static_cast<std::size_t>(
      std::ceil(std::log(kSettlingTolerance) / std::log(radius)));
}

std::size_t FilterCoefficients::PaddingLength() const {
  return 3 * SettlingLength();
}

FilterCoefficients DesignButterworthBandpass(const FilterSpec& spec,
                                             double sample_rate_hz) {
  spec.Validate(sample_rate_hz);
  const double pi = std::numbers::pi;
  const double fs2 = 2.0 * sample_rate_hz;
  const double w1 = fs2 * std::tan(pi * spec.low_cut_bpm / 60.0 / sample_rate_hz);
  const double w2 = fs2 * std::tan(pi * spec.high_cut_bpm / 60.0 / sample_rate_hz);
  const double w0 = std::sqrt(w1 * w2);
  const double bw = w2 - w1;
  const int n = spec.order;

  FilterCoefficients f;
  f.sample_rate_hz = sample_rate_hz;
  for (int k = 0; k < n; ++k) {
    const Complex p = std::polar(1.0, pi * (2.0 * k + n + 1) / (2.0 * n));
    const Complex half = p * bw / 2.0;
    const Complex disc = std::sqrt(half * half - w0 * w0);
    for (const Complex s : {half + disc, half - disc}) {
      f.poles.push_back((fs2 + s) / (fs2 - s));
    }
  }

  // Pair conjugates; real poles pair with each other.
  const double eps = 1e-12;
  std::vector<Complex> upper;
  std::vector<double> real;
  for (const Complex& z : f.poles) {
    if (std::abs(z.imag()) <= eps) {
      real.push_back(z.real());
    } else if (z.imag() > 0) {
      upper.push_back(z);
    }
  }
  if (real.size() % 2 != 0 || upper.size() * 2 + real.size() != f.poles.size()) {
    throw NumericalError("bandpass pole set is not conjugate-symmetric");
  }
  std::sort(upper.begin(), upper.end(), [](const Complex& a, const Complex& b) {
    return std::abs(a) < std::abs(b);
  });
  std::sort(real.begin(), real.end());
  for (const Complex& z : upper) {
    Biquad s;
    s.b0 = 1.0;
    s.b1 = 0.0;
    s.b2 = -1.0;
    s.a1 = -2.0 * z.real();
    s.a2 = std::norm(z);
    f.sections.push_back(s);
  }
  for (std::size_t i = 0; i < real.size(); i += 2) {
    Biquad s;
    s.b0 = 1.0;
    s.b1 = 0.0;
    s.b2 = -1.0;
    s.a1 = -(real[i] + real[i + 1]);
    s.a2 = real[i] * real[i + 1];
    f.sections.push_back(s);
  }

  // Unity gain where the analog center frequency lands after warping.
  const double center_hz = sample_rate_hz / pi * std::atan(w0 / fs2);
  const double gain = 1.0 / std::abs(f.Response(center_hz));
  const double per_section = std::pow(gain, 1.0 / f.sections.size());
  for (Biquad& s : f.sections) {
    s.b0 *= per_section;
    s.b1 *= per_section;
    s.b2 *= per_section;
  }
  return f;
}

std::vector<double> FilterCausal(const FilterCoefficients& filter,
                                 std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  RunCascade(filter,
             std::vector<std::array<double, 2>>(filter.sections.size(), {0, 0}),
             y);
  return y;
}

std::vector<double> ApplyFilter(const FilterCoefficients& filter,
                                std::span<const double> x, bool zero_phase) {
  const std::size_t pad = filter.PaddingLength();
  const std::size_t n = x.size();
  if (n <= pad) {
    throw ValidationError("signal of " + std::to_string(n) +
                          " samples is shorter than 3x the filter warm-up (" +
                          std::to_string(pad) + " samples)");
  }
  std::vector<double> ext(n + 2 * pad);
  for (std::size_t k = 0; k < pad; ++k) {
    ext[pad - 1 - k] = 2.0 * x[0] - x[k + 1];
    ext[pad + n + k] = 2.0 * x[n - 1] - x[n - 2 - k];
  }
  std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(pad));

  const auto unit = SteadyState(filter);
  auto state = unit;
  ScaledState(state, unit, ext.front());
  RunCascade(filter, state, ext);
  if (zero_phase) {
    std::reverse(ext.begin(), ext.end());
    ScaledState(state, unit, ext.front());
    RunCascade(filter, state, ext);
    std::reverse(ext.begin(), ext.end());
  }
  return std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                             ext.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

}  // namespace irppg
