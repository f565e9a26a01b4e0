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

#include "irppg/synthetic.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "irppg/error.h"
#include "irppg/io.h"

namespace irppg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> Tokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

SourceSpec ParseSource(std::string_view text, const std::string& where) {
  const auto tokens = Tokens(text);
  if (tokens.empty()) {
    throw ValidationError(where + ": empty source entry");
  }
  SourceSpec s;
  s.kind = ParseSourceKind(tokens[0]);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      throw ValidationError(where + ": expected name=value, got '" +
                            tokens[i] + "'");
    }
    const std::string name = tokens[i].substr(0, eq);
    const std::string value = tokens[i].substr(eq + 1);
    const std::string ctx = where + ": " + name;
    if (name == "amplitude") {
      s.amplitude = ParseDouble(value, ctx);
    } else if (name == "bpm_start") {
      s.bpm_start = ParseDouble(value, ctx);
    } else if (name == "bpm_end") {
      s.bpm_end = ParseDouble(value, ctx);
    } else if (name == "harmonics") {
      s.harmonics = ParseDoubleList(value, ctx);
    } else if (name == "bpm") {
      s.bpm = ParseDouble(value, ctx);
    } else if (name == "freq_hz") {
      s.freq_hz = ParseDouble(value, ctx);
    } else if (name == "start_s") {
      s.start_s = ParseDouble(value, ctx);
    } else if (name == "length_s") {
      s.length_s = ParseDouble(value, ctx);
    } else {
      throw ValidationError(where + ": unknown source parameter '" + name + "'");
    }
  }
  s.Validate();
  return s;
}

std::string FormatSource(const SourceSpec& s) {
  std::string out = ToString(s.kind) + " amplitude=" + FormatDouble(s.amplitude);
  switch (s.kind) {
    case SourceKind::kHemodynamicChirp: {
      out += " bpm_start=" + FormatDouble(s.bpm_start) +
             " bpm_end=" + FormatDouble(s.bpm_end) + " harmonics=";
      for (std::size_t i = 0; i < s.harmonics.size(); ++i) {
        if (i > 0) out += ',';
        out += FormatDouble(s.harmonics[i]);
      }
      break;
    }
    case SourceKind::kRespiration:
      out += " bpm=" + FormatDouble(s.bpm);
      break;
    case SourceKind::kBaselineDrift:
      out += " freq_hz=" + FormatDouble(s.freq_hz);
      break;
    case SourceKind::kNoiseBurst:
      out += " start_s=" + FormatDouble(s.start_s) +
             " length_s=" + FormatDouble(s.length_s);
      break;
  }
  return out;
}

}  // namespace

std::string ToString(SourceKind kind) {
  switch (kind) {
    case SourceKind::kHemodynamicChirp: return "hemodynamic-chirp";
    case SourceKind::kRespiration: return "respiration";
    case SourceKind::kBaselineDrift: return "baseline-drift";
    case SourceKind::kNoiseBurst: return "noise-burst";
  }
  return "unknown";
}

SourceKind ParseSourceKind(std::string_view text) {
  if (text == "hemodynamic-chirp") return SourceKind::kHemodynamicChirp;
  if (text == "respiration") return SourceKind::kRespiration;
  if (text == "baseline-drift") return SourceKind::kBaselineDrift;
  if (text == "noise-burst") return SourceKind::kNoiseBurst;
  throw ValidationError("unknown source kind '" + std::string(text) + "'");
}

void SourceSpec::Validate() const {
  if (!std::isfinite(amplitude)) {
    throw ValidationError("source amplitude must be finite");
  }
  switch (kind) {
    case SourceKind::kHemodynamicChirp:
      if (!(bpm_start > 0 && bpm_start < 300 && bpm_end > 0 && bpm_end < 300)) {
        throw ValidationError("chirp bpm range must lie within (0, 300)");
      }
      if (harmonics.empty()) {
        throw ValidationError("chirp needs at least one harmonic weight");
      }
      for (double h : harmonics) {
        if (!std::isfinite(h)) {
          throw ValidationError("chirp harmonic weights must be finite");
        }
      }
      break;
    case SourceKind::kRespiration:
      if (!(bpm > 0 && std::isfinite(bpm))) {
        throw ValidationError("respiration bpm must be positive");
      }
      break;
    case SourceKind::kBaselineDrift:
      if (!(freq_hz >= 0 && std::isfinite(freq_hz))) {
        throw ValidationError("drift frequency must be non-negative");
      }
      break;
    case SourceKind::kNoiseBurst:
      if (!(length_s > 0 && std::isfinite(start_s))) {
        throw ValidationError("noise burst needs a positive length");
      }
      break;
  }
}

void MixtureSpec::Validate() const {
  meta.Validate();
  if (n_regions == 0) {
    throw ValidationError("mixture needs at least one region");
  }
  if (!(noise_sigma >= 0.0 && std::isfinite(noise_sigma))) {
    throw ValidationError("noise_sigma must be finite and non-negative");
  }
  if (sources.size() > std::min(n_regions, meta.frame_count)) {
    throw ValidationError("more sources than min(n_regions, frame_count)");
  }
  std::size_t chirps = 0;
  for (const SourceSpec& s : sources) {
    s.Validate();
    if (s.kind == SourceKind::kHemodynamicChirp) ++chirps;
  }
  if (chirps > 1) {
    throw ValidationError("at most one hemodynamic source is supported");
  }
}

SyntheticDataset Generate(const MixtureSpec& spec, bool require_truth) {
  spec.Validate();
  const std::size_t n_t = spec.meta.frame_count;
  const std::size_t n_s = spec.sources.size();
  const double fs = spec.meta.sample_rate_hz;
  const double duration = spec.meta.duration_s;

  std::mt19937_64 engine(spec.mixing_seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(n_s),
                          static_cast<Eigen::Index>(n_t));
  std::optional<IhrSeries> truth;
  for (std::size_t i = 0; i < n_s; ++i) {
    const SourceSpec& s = spec.sources[i];
    auto row = x.row(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < n_t; ++j) {
      const double t = static_cast<double>(j) / fs;
      double v = 0.0;
      switch (s.kind) {
        case SourceKind::kHemodynamicChirp: {
          const double f0 = s.bpm_start / 60.0;
          const double f1 = s.bpm_end / 60.0;
          const double phase =
              kTwoPi * (f0 * t + (f1 - f0) * t * t / (2.0 * duration));
          for (std::size_t h = 0; h < s.harmonics.size(); ++h) {
            v += s.harmonics[h] * std::sin(static_cast<double>(h + 1) * phase);
          }
          break;
        }
        case SourceKind::kRespiration:
          v = std::sin(kTwoPi * s.bpm / 60.0 * t);
          break;
        case SourceKind::kBaselineDrift:
          v = std::sin(kTwoPi * s.freq_hz * t + std::numbers::pi / 3.0);
          break;
        case SourceKind::kNoiseBurst:
          if (t >= s.start_s && t < s.start_s + s.length_s) v = normal(engine);
          break;
      }
      row[static_cast<Eigen::Index>(j)] = s.amplitude * v;
    }
    if (s.kind == SourceKind::kHemodynamicChirp) {
      std::vector<double> times(n_t);
      std::vector<double> bpm(n_t);
      for (std::size_t j = 0; j < n_t; ++j) {
        times[j] = static_cast<double>(j) / fs;
        bpm[j] = s.bpm_start + (s.bpm_end - s.bpm_start) * times[j] / duration;
      }
      truth.emplace(std::move(times), std::move(bpm));
    }
  }
  if (require_truth && !truth) {
    throw ValidationError(
        "ground truth requested but the mixture has no hemodynamic source");
  }

  Matrix a(static_cast<Eigen::Index>(spec.n_regions),
           static_cast<Eigen::Index>(n_s));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = normal(engine);
  }
  Matrix y = a * x;
  if (n_s == 0) {
    y = Matrix::Zero(static_cast<Eigen::Index>(spec.n_regions),
                     static_cast<Eigen::Index>(n_t));
  }
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      y(r, c) += spec.noise_sigma * normal(engine);
    }
  }
  return SyntheticDataset{ChannelMatrix(std::move(y), spec.meta, false),
                          std::move(truth), std::move(x), std::move(a)};
}

MixtureSpec ParseMixtureSpec(std::string_view text, const std::string& origin) {
  MixtureSpec spec;
  double fs = 0.0;
  double duration = 0.0;
  std::string label = "synthetic";
  bool have_regions = false;
  for (const KeyValue& kv : ParseKeyValueText(text, origin)) {
    const std::string where = origin + ":" + std::to_string(kv.line);
    if (kv.key == "source") {
      spec.sources.push_back(ParseSource(kv.value, where));
    } else if (kv.key == "n_regions") {
      const long long n = ParseInteger(kv.value, where);
      if (n <= 0) throw ValidationError(where + ": n_regions must be positive");
      spec.n_regions = static_cast<std::size_t>(n);
      have_regions = true;
    } else if (kv.key == "sample_rate_hz") {
      fs = ParseDouble(kv.value, where);
    } else if (kv.key == "duration_s") {
      duration = ParseDouble(kv.value, where);
    } else if (kv.key == "noise_sigma") {
      spec.noise_sigma = ParseDouble(kv.value, where);
    } else if (kv.key == "mixing_seed") {
      const long long seed = ParseInteger(kv.value, where);
      if (seed < 0) throw ValidationError(where + ": seed must be >= 0");
      spec.mixing_seed = static_cast<std::uint64_t>(seed);
    } else if (kv.key == "source_label") {
      label = kv.value;
    } else {
      throw ValidationError(where + ": unknown key '" + kv.key + "'");
    }
  }
  if (!have_regions || fs <= 0.0 || duration <= 0.0) {
    throw ValidationError(origin + ": n_regions, sample_rate_hz and "
                          "duration_s are required");
  }
  spec.meta.sample_rate_hz = fs;
  spec.meta.duration_s = duration;
  spec.meta.frame_count =
      static_cast<std::size_t>(std::floor(duration * fs + 1e-9));
  spec.meta.source_label = label;
  spec.Validate();
  return spec;
}

MixtureSpec ReadMixtureSpec(const std::filesystem::path& path) {
  return ParseMixtureSpec(ReadTextFile(path), path.string());
}

std::string FormatMixtureSpec(const MixtureSpec& spec) {
  std::string out;
  out += "n_regions = " + std::to_string(spec.n_regions) + "\n";
  out += "sample_rate_hz = " + FormatDouble(spec.meta.sample_rate_hz) + "\n";
  out += "duration_s = " + FormatDouble(spec.meta.duration_s) + "\n";
  out += "noise_sigma = " + FormatDouble(spec.noise_sigma) + "\n";
  out += "mixing_seed = " + std::to_string(spec.mixing_seed) + "\n";
  out += "source_label = " + spec.meta.source_label + "\n";
  for (const SourceSpec& s : spec.sources) {
    out += "source = " + FormatSource(s) + "\n";
  }
  return out;
}

void WriteDataset(const std::filesystem::path& dir,
                  const SyntheticDataset& dataset, const MixtureSpec& spec) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " +
                  ec.message());
  }
  WriteChannelMatrix(dir / "channels.txt", dataset.channels,
                     {{"generator", kGeneratorId},
                      {"mixing_seed", std::to_string(spec.mixing_seed)}});
  WriteTextFile(dir / "truth.spec",
                "# generator = " + std::string(kGeneratorId) + "\n" +
                    FormatMixtureSpec(spec));
  if (dataset.truth) {
    WriteIhr(dir / "truth_ihr.csv", *dataset.truth);
  }
}

}  // namespace irppg
