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

#include "irppg/pipeline.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "irppg/error.h"
#include "irppg/io.h"
#include "irppg/preprocess.h"

namespace irppg {
namespace {

[[noreturn]] void RethrowInStage(const Error& e, const std::string& stage) {
  const std::string what = stage + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::kIo: throw IoError(what);
    case ErrorKind::kValidation: throw ValidationError(what);
    case ErrorKind::kNumerical: throw NumericalError(what);
  }
  throw Error(e.kind(), what);
}

template <typename F>
auto InStage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    RethrowInStage(e, stage);
  }
}

std::string JoinDoubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatDouble(v[i]);
  }
  return out;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (filter.order < 1) {
    throw ValidationError("filter order must be at least 1");
  }
  if (!(filter.low_cut_bpm > 0 && filter.low_cut_bpm < filter.high_cut_bpm)) {
    throw ValidationError("filter cutoffs must satisfy 0 < low < high");
  }
  if (pulse_freq_hz && !(*pulse_freq_hz > 0.0)) {
    throw ValidationError("pulse frequency override must be positive");
  }
  if (!(window_s > 0.0 && hop_s > 0.0)) {
    throw ValidationError("STFT window and hop must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be finite and non-negative");
  }
  if (!(band_low_bpm > 0.0 && band_low_bpm < band_high_bpm &&
        band_high_bpm <= 300.0)) {
    throw ValidationError("search band must satisfy 0 < low < high <= 300 bpm");
  }
  if (granularities_s.empty()) {
    throw ValidationError("at least one evaluation granularity is required");
  }
  for (double g : granularities_s) {
    if (!(g > 0.0)) throw ValidationError("granularities must be positive");
  }
  for (const std::string& g : groups) {
    if (!IsFacialArea(g)) {
      throw ValidationError("unknown facial area '" + g + "'");
    }
  }
}

PipelineConfig ParseConfig(std::string_view text, const std::string& origin,
                           PipelineConfig base) {
  PipelineConfig c = std::move(base);
  for (const auto& [key, value] :
       UniqueKeys(ParseKeyValueText(text, origin), origin)) {
    const std::string ctx = origin + ": " + key;
    if (key == "filter_order") {
      c.filter.order = static_cast<int>(ParseInteger(value, ctx));
    } else if (key == "low_cut_bpm") {
      c.filter.low_cut_bpm = ParseDouble(value, ctx);
    } else if (key == "high_cut_bpm") {
      c.filter.high_cut_bpm = ParseDouble(value, ctx);
    } else if (key == "zero_phase") {
      c.filter.zero_phase = ParseBool(value, ctx);
    } else if (key == "pulse_freq_hz") {
      if (value.empty() || value == "auto") {
        c.pulse_freq_hz.reset();
      } else {
        c.pulse_freq_hz = ParseDouble(value, ctx);
      }
    } else if (key == "use_shrinkage") {
      c.use_shrinkage = ParseBool(value, ctx);
    } else if (key == "sign_mode") {
      if (value == "greedy") {
        c.sign_mode = SignMode::kGreedy;
      } else if (value == "off") {
        c.sign_mode = SignMode::kOff;
      } else {
        throw ValidationError(ctx + ": expected 'greedy' or 'off'");
      }
    } else if (key == "weight_by_sigma") {
      c.weight_by_sigma = ParseBool(value, ctx);
    } else if (key == "window_s") {
      c.window_s = ParseDouble(value, ctx);
    } else if (key == "hop_s") {
      c.hop_s = ParseDouble(value, ctx);
    } else if (key == "lambda") {
      c.lambda = ParseDouble(value, ctx);
    } else if (key == "band_low_bpm") {
      c.band_low_bpm = ParseDouble(value, ctx);
    } else if (key == "band_high_bpm") {
      c.band_high_bpm = ParseDouble(value, ctx);
    } else if (key == "granularities_s") {
      c.granularities_s = ParseDoubleList(value, ctx);
    } else if (key == "lag_search") {
      c.lag_search = ParseBool(value, ctx);
    } else if (key == "dump_spectrogram") {
      c.dump_spectrogram = ParseBool(value, ctx);
    } else if (key == "groups") {
      c.groups = SplitList(value);
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else {
      throw ValidationError(origin + ": unknown config key '" + key + "'");
    }
  }
  c.Validate();
  return c;
}

PipelineConfig ReadConfig(const std::filesystem::path& path,
                          PipelineConfig base) {
  return ParseConfig(ReadTextFile(path), path.string(), std::move(base));
}

std::string FormatConfig(const PipelineConfig& c) {
  std::map<std::string, std::string> kv;
  kv["filter_order"] = std::to_string(c.filter.order);
  kv["low_cut_bpm"] = FormatDouble(c.filter.low_cut_bpm);
  kv["high_cut_bpm"] = FormatDouble(c.filter.high_cut_bpm);
  kv["zero_phase"] = c.filter.zero_phase ? "true" : "false";
  kv["pulse_freq_hz"] = c.pulse_freq_hz ? FormatDouble(*c.pulse_freq_hz) : "auto";
  kv["use_shrinkage"] = c.use_shrinkage ? "true" : "false";
  kv["sign_mode"] = c.sign_mode == SignMode::kGreedy ? "greedy" : "off";
  kv["weight_by_sigma"] = c.weight_by_sigma ? "true" : "false";
  kv["window_s"] = FormatDouble(c.window_s);
  kv["hop_s"] = FormatDouble(c.hop_s);
  kv["lambda"] = FormatDouble(c.lambda);
  kv["band_low_bpm"] = FormatDouble(c.band_low_bpm);
  kv["band_high_bpm"] = FormatDouble(c.band_high_bpm);
  kv["granularities_s"] = JoinDoubles(c.granularities_s);
  kv["lag_search"] = c.lag_search ? "true" : "false";
  kv["dump_spectrogram"] = c.dump_spectrogram ? "true" : "false";
  std::string groups;
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    if (i > 0) groups += ',';
    groups += c.groups[i];
  }
  kv["groups"] = groups;
  kv["output_dir"] = c.output_dir;
  return "# irppg pipeline configuration\n" + FormatKeyValues(kv);
}

PipelineResult RunPipeline(const ChannelMatrix& channels,
                           const PipelineConfig& config,
                           const RegionMesh* mesh) {
  config.Validate();
  const ChannelMatrix selected = InStage("select", [&] {
    if (config.groups.empty()) return channels;
    if (mesh == nullptr) {
      throw ValidationError("facial-area selection requires a region mesh");
    }
    if (mesh->size() != channels.regions()) {
      throw ValidationError("mesh has " + std::to_string(mesh->size()) +
                            " regions but the channel matrix has " +
                            std::to_string(channels.regions()) + " rows");
    }
    const auto rows = mesh->RowsInGroups(config.groups);
    if (rows.empty()) {
      throw ValidationError("no regions in the selected facial areas");
    }
    return channels.SelectRows(rows);
  });

  ChannelMatrix filtered = InStage("filter", [&] {
    return selected.filtered() ? selected : Bandpass(selected, config.filter);
  });

  SourceDecomposition decomp = InStage("decompose", [&] {
    SourceDecomposition d = Svd(filtered);
    if (d.retained_rank == 0) {
      throw NumericalError("no sources retained (noise sigma " +
                           FormatDouble(d.noise_sigma) + ")");
    }
    return config.use_shrinkage ? ShrinkSingularValues(d) : d;
  });

  const double fs = filtered.meta().sample_rate_hz;
  const double band_low_hz = config.band_low_bpm / 60.0;
  const double band_high_hz = config.band_high_bpm / 60.0;

  auto [ranked, ppg] = InStage("reconstruct", [&] {
    const double pulse = config.pulse_freq_hz
                             ? *config.pulse_freq_hz
                             : EstimatePulseFreq(decomp, fs, band_low_hz,
                                                 band_high_hz);
    AccumulateOptions options;
    options.sign_mode = config.sign_mode;
    options.weight_by_sigma = config.weight_by_sigma;
    return RankAndAccumulate(decomp, pulse, filtered.meta(), options);
  });

  Spectrogram spectrogram = InStage("stft", [&] {
    StftOptions options;
    options.window_s = config.window_s;
    options.hop_s = config.hop_s;
    options.max_freq_hz =
        std::max(band_high_hz, config.filter.high_cut_bpm / 60.0);
    return Stft(ppg, options);
  });

  RidgeCurve ridge = InStage("ridge", [&] {
    return ExtractRidge(spectrogram, config.lambda, band_low_hz, band_high_hz);
  });
  IhrSeries ihr = InStage("ridge", [&] { return RidgeToIhr(ridge, spectrogram); });

  return PipelineResult{std::move(filtered), std::move(decomp),
                        std::move(ranked),   std::move(ppg),
                        std::move(spectrogram), std::move(ridge),
                        std::move(ihr)};
}

void WriteRunOutputs(const std::filesystem::path& dir,
                     const PipelineResult& result,
                     const PipelineConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " +
                  ec.message());
  }
  const double fs = result.ppg.meta.sample_rate_hz;
  std::string ppg = "time_s,ppg\n";
  for (std::size_t j = 0; j < result.ppg.samples.size(); ++j) {
    ppg += FormatDouble(static_cast<double>(j) / fs) + "," +
           FormatDouble(result.ppg.samples[j]) + "\n";
  }
  WriteTextFile(dir / "ppg.csv", ppg);
  WriteIhr(dir / "ihr.csv", result.ihr);
  WriteTextFile(dir / "sources.csv", FormatSourceTable(result.ranked));
  WriteTextFile(dir / "singular_values.csv",
                FormatScree(result.decomposition));

  std::map<std::string, std::string> summary;
  summary["regions"] = std::to_string(result.filtered.regions());
  summary["frames"] = std::to_string(result.filtered.frames());
  summary["sample_rate_hz"] = FormatDouble(fs);
  summary["noise_sigma"] = FormatDouble(result.decomposition.noise_sigma);
  summary["beta"] = FormatDouble(result.decomposition.beta);
  summary["retained_rank"] =
      std::to_string(result.decomposition.retained_rank);
  summary["pulse_freq_hz"] = FormatDouble(result.ranked.pulse_freq_hz);
  summary["cutoff"] = std::to_string(result.ranked.cutoff);
  summary["ppg_quality"] = FormatDouble(result.ppg.quality);
  summary["stft_fft_size"] = std::to_string(result.spectrogram.window.fft_size);
  WriteTextFile(dir / "summary.txt", FormatKeyValues(summary));
  WriteTextFile(dir / "config.txt", FormatConfig(config));

  if (config.dump_spectrogram) {
    WriteTextFile(dir / "spectrogram.csv",
                  FormatSpectrogramGrid(result.spectrogram));
    WriteTextFile(dir / "spectrogram_times.txt",
                  FormatAxis(result.spectrogram.frame_times_s));
    WriteTextFile(dir / "spectrogram_freqs.txt",
                  FormatAxis(result.spectrogram.bin_freqs_hz));
  }
}

}  // namespace irppg
