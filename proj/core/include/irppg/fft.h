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

// Thin RAII wrapper over FFTW's real-to-complex transform.

#ifndef IRPPG_FFT_H_
#define IRPPG_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace irppg {

// Real-input forward DFT of fixed length, zero-padding shorter inputs.
// One instance is not safe for concurrent use; separate instances are.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // X[k], k = 0 .. size/2, of `input` zero-padded to size().
  void Forward(std::span<const double> input,
               std::vector<std::complex<double>>& out);
  // |X[k]| for k = 0 .. size/2.
  void Magnitude(std::span<const double> input, std::vector<double>& out);

 private:
  std::size_t size_;
  double* in_;
  void* out_;  // fftw_complex*
  void* plan_;  // fftw_plan
};

// Magnitude spectrum of `input` at its natural length.
std::vector<double> MagnitudeSpectrum(std::span<const double> input);

}  // namespace irppg

#endif  // IRPPG_FFT_H_
