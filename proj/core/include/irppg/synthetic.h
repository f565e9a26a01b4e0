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

// Seeded forward model Y = A X + sigma Z with known heart-rate ground truth.

#ifndef IRPPG_SYNTHETIC_H_
#define IRPPG_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irppg/types.h"

namespace irppg {

// Random stream identifier written to dataset sidecars. Datasets are
// byte-reproducible only with the same engine and standard library.
inline constexpr const char* kGeneratorId =
    "mt19937_64/std::normal_distribution";

enum class SourceKind { kHemodynamicChirp, kRespiration, kBaselineDrift,
                        kNoiseBurst };

std::string ToString(SourceKind kind);
SourceKind ParseSourceKind(std::string_view text);

struct SourceSpec {
  SourceKind kind = SourceKind::kHemodynamicChirp;
  double amplitude = 1.0;
  // hemodynamic-chirp: linear sweep of the fundamental, harmonic weights.
  double bpm_start = 60.0;
  double bpm_end = 90.0;
  std::vector<double> harmonics = {1.0, 0.4, 0.2};
  // respiration
  double bpm = 15.0;
  // baseline-drift
  double freq_hz = 0.03;
  // noise-burst: white Gaussian between start_s and start_s + length_s.
  double start_s = 0.0;
  double length_s = 1.0;

  void Validate() const;
};

struct MixtureSpec {
  std::vector<SourceSpec> sources;
  std::size_t n_regions = 0;
  std::uint64_t mixing_seed = 0;
  double noise_sigma = 1.0;
  AcquisitionMeta meta;

  void Validate() const;
};

struct SyntheticDataset {
  ChannelMatrix channels;         // unfiltered Y
  std::optional<IhrSeries> truth; // 60 x chirp frequency at each frame time
  Matrix sources;                 // X, n_s x n_t
  Matrix mixing;                  // A, n_r x n_s
};

// A and Z have i.i.d. standard normal entries drawn from one engine seeded
// with mixing_seed, after any noise-burst samples. Throws ValidationError
// when `require_truth` is set and there is no hemodynamic source.
SyntheticDataset Generate(const MixtureSpec& spec, bool require_truth = true);

// Key-value spec file; see docs/formats.md.
MixtureSpec ParseMixtureSpec(std::string_view text, const std::string& origin);
MixtureSpec ReadMixtureSpec(const std::filesystem::path& path);
std::string FormatMixtureSpec(const MixtureSpec& spec);

// Writes channels.txt (+ .meta), truth.spec and, when present,
// truth_ihr.csv into `dir`.
void WriteDataset(const std::filesystem::path& dir,
                  const SyntheticDataset& dataset, const MixtureSpec& spec);

}  // namespace irppg

#endif  // IRPPG_SYNTHETIC_H_
