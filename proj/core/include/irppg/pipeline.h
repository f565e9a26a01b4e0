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

// End-to-end composition: bandpass -> SVD / rank selection -> SQI-ranked
// accumulation -> STFT ridge -> iHR, plus the configuration file and the
// on-disk run outputs.

#ifndef IRPPG_PIPELINE_H_
#define IRPPG_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irppg/butterworth.h"
#include "irppg/decomposition.h"
#include "irppg/reconstruction.h"
#include "irppg/time_frequency.h"
#include "irppg/types.h"

namespace irppg {

struct PipelineConfig {
  FilterSpec filter;
  std::optional<double> pulse_freq_hz;  // estimated when unset
  bool use_shrinkage = false;
  SignMode sign_mode = SignMode::kGreedy;
  bool weight_by_sigma = false;
  double window_s = 10.0;
  double hop_s = 1.0;
  double lambda = 0.02;  // per bin step at 0.01 Hz bin spacing
  double band_low_bpm = 40.0;
  double band_high_bpm = 200.0;
  std::vector<double> granularities_s = {1.0, 10.0, 30.0};
  bool lag_search = false;
  bool dump_spectrogram = false;
  std::vector<std::string> groups;  // facial areas to keep; empty keeps all
  std::string output_dir = "irppg_out";

  void Validate() const;
};

// Applies the keys found in `text` on top of `base`. Unknown keys are errors.
PipelineConfig ParseConfig(std::string_view text, const std::string& origin,
                           PipelineConfig base = {});
PipelineConfig ReadConfig(const std::filesystem::path& path,
                          PipelineConfig base = {});
// Every field, in a form ParseConfig reads back to an identical config.
std::string FormatConfig(const PipelineConfig& config);

struct PipelineResult {
  ChannelMatrix filtered;
  SourceDecomposition decomposition;
  RankedSources ranked;
  PpgSignal ppg;
  Spectrogram spectrogram;
  RidgeCurve ridge;
  IhrSeries ihr;
};

// Failures are rethrown with the stage name prefixed, keeping their class.
// `mesh` is required when config.groups is non-empty.
PipelineResult RunPipeline(const ChannelMatrix& channels,
                           const PipelineConfig& config,
                           const RegionMesh* mesh = nullptr);

// ppg.csv, ihr.csv, sources.csv, singular_values.csv, summary.txt,
// config.txt and, if requested, spectrogram.csv with its two axis files.
void WriteRunOutputs(const std::filesystem::path& dir,
                     const PipelineResult& result,
                     const PipelineConfig& config);

}  // namespace irppg

#endif  // IRPPG_PIPELINE_H_
