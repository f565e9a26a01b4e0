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

#include "irppg/fft.h"

#include <cmath>
#include <cstring>
#include <mutex>

#include <fftw3.h>

#include "irppg/error.h"

namespace irppg {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  if (size_ == 0) {
    throw ValidationError("FFT size must be positive");
  }
  std::lock_guard<std::mutex> lock(PlannerMutex());
  in_ = fftw_alloc_real(size_);
  auto* out = fftw_alloc_complex(size_ / 2 + 1);
  out_ = out;
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, out,
                               FFTW_ESTIMATE);
  if (in_ == nullptr || out == nullptr || plan_ == nullptr) {
    throw NumericalError("FFT plan creation failed for size " +
                         std::to_string(size_));
  }
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::Forward(std::span<const double> input,
                      std::vector<std::complex<double>>& out) {
  if (input.size() > size_) {
    throw ValidationError("FFT input longer than transform size");
  }
  std::memcpy(in_, input.data(), input.size() * sizeof(double));
  std::fill(in_ + input.size(), in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));
  const auto* spec = static_cast<const fftw_complex*>(out_);
  out.resize(bins());
  for (std::size_t k = 0; k < bins(); ++k) {
    out[k] = {spec[k][0], spec[k][1]};
  }
}

void RealFft::Magnitude(std::span<const double> input,
                        std::vector<double>& out) {
  if (input.size() > size_) {
    throw ValidationError("FFT input longer than transform size");
  }
  std::memcpy(in_, input.data(), input.size() * sizeof(double));
  std::fill(in_ + input.size(), in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));
  const auto* spec = static_cast<const fftw_complex*>(out_);
  out.resize(bins());
  for (std::size_t k = 0; k < bins(); ++k) {
    out[k] = std::hypot(spec[k][0], spec[k][1]);
  }
}

std::vector<double> MagnitudeSpectrum(std::span<const double> input) {
  RealFft fft(input.size());
  std::vector<double> out;
  fft.Magnitude(input, out);
  return out;
}

}  // namespace irppg
