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

// irppg: recover a PPG waveform and instantaneous heart rate from infrared
// face channel matrices.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "irppg/error.h"
#include "irppg/evaluation.h"
#include "irppg/ground_truth.h"
#include "irppg/io.h"
#include "irppg/pipeline.h"
#include "irppg/preprocess.h"
#include "irppg/synthetic.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidation = 4;
constexpr int kExitNumerical = 5;

constexpr double kRPeakGridStepS = 0.1;

int ExitCodeFor(irppg::ErrorKind kind) {
  switch (kind) {
    case irppg::ErrorKind::kIo: return kExitIo;
    case irppg::ErrorKind::kValidation: return kExitValidation;
    case irppg::ErrorKind::kNumerical: return kExitNumerical;
  }
  return kExitInternal;
}

// Config keys exposed as --key-name flags. Values go through the same parser
// as the config file.
const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "filter_order",   "low_cut_bpm",     "high_cut_bpm",  "zero_phase",
      "pulse_freq_hz",  "use_shrinkage",   "sign_mode",     "weight_by_sigma",
      "window_s",       "hop_s",           "lambda",        "band_low_bpm",
      "band_high_bpm",  "granularities_s", "lag_search",    "dump_spectrogram",
      "groups",         "output_dir"};
  return keys;
}

std::string FlagName(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "Key-value config file");
    for (const std::string& key : ConfigKeys()) {
      app->add_option(FlagName(key), values[key], "Override config '" + key + "'");
    }
  }

  // defaults < file < IRPPG_OUTPUT_DIR < flags
  irppg::PipelineConfig Resolve(const CLI::App* app) const {
    irppg::PipelineConfig config;
    if (!config_path.empty()) config = irppg::ReadConfig(config_path, config);
    if (const char* env = std::getenv("IRPPG_OUTPUT_DIR"); env && *env) {
      config.output_dir = env;
    }
    std::string overrides;
    for (const std::string& key : ConfigKeys()) {
      if (app->count(FlagName(key)) > 0) {
        overrides += key + " = " + values.at(key) + "\n";
      }
    }
    return irppg::ParseConfig(overrides, "command line", config);
  }
};

irppg::ChannelMatrix LoadFrames(const std::string& dir,
                                const irppg::RegionMesh& mesh, double fs,
                                const std::string& label) {
  const auto frames = irppg::ReadFrameDirectory(dir);
  return irppg::RegionMeans(frames, mesh, fs, label);
}

irppg::IhrSeries LoadTruth(const std::string& ihr_path,
                           const std::string& rpeaks_path) {
  if (!ihr_path.empty()) return irppg::ReadIhr(ihr_path);
  const auto peaks = irppg::ReadRPeaks(rpeaks_path);
  std::vector<double> grid;
  const double first = peaks.front();
  const double last = peaks.back();
  const auto steps =
      static_cast<std::size_t>(std::floor((last - first) / kRPeakGridStepS));
  for (std::size_t k = 0; k <= steps; ++k) {
    grid.push_back(first + static_cast<double>(k) * kRPeakGridStepS);
  }
  return irppg::RPeaksToIhr(peaks, grid);
}

void PrintRunSummary(const irppg::PipelineResult& result, const fs::path& dir) {
  std::cout << "regions " << result.filtered.regions() << ", frames "
            << result.filtered.frames() << "\n"
            << "noise sigma " << result.decomposition.noise_sigma
            << ", retained rank " << result.decomposition.retained_rank
            << "\n"
            << "pulse frequency " << result.ranked.pulse_freq_hz * 60.0
            << " bpm, accumulated sources " << result.ranked.cutoff << "\n"
            << "outputs in " << dir.string() << "\n";
}

struct BatchEntry {
  std::string label;
  std::string channels;
  std::string truth;
};

std::vector<BatchEntry> ReadBatchList(const fs::path& path) {
  std::vector<BatchEntry> entries;
  std::istringstream in(irppg::ReadTextFile(path));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    BatchEntry e;
    if (!(fields >> e.label)) continue;
    if (!(fields >> e.channels)) {
      throw irppg::ValidationError(path.string() + ":" + std::to_string(number) +
                                   ": expected 'label channels [truth]'");
    }
    fields >> e.truth;
    const fs::path base = path.parent_path();
    if (fs::path(e.channels).is_relative()) e.channels = (base / e.channels).string();
    if (!e.truth.empty() && fs::path(e.truth).is_relative()) {
      e.truth = (base / e.truth).string();
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) {
    throw irppg::ValidationError(path.string() + ": no datasets listed");
  }
  return entries;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infrared PPG and instantaneous heart-rate recovery"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "irppg 0.1.0");
  app.footer(
      "Exit codes: 0 success, 1 internal error, 2 usage, 3 I/O, "
      "4 validation, 5 numerical.");

  // run
  CLI::App* run = app.add_subcommand("run", "Run the full pipeline");
  std::string channels_path, frames_dir, mesh_path, run_truth, run_label;
  double frames_fs = 0.0;
  ConfigFlags run_flags;
  auto* channels_opt =
      run->add_option("--channels", channels_path, "Channel matrix file");
  auto* frames_opt =
      run->add_option("--frames", frames_dir, "Directory of PGM frames");
  channels_opt->excludes(frames_opt);
  run->add_option("--mesh", mesh_path, "Region mesh file");
  run->add_option("--fs", frames_fs, "Frame rate for --frames, Hz");
  run->add_option("--label", run_label, "Source label for --frames input");
  run->add_option("--truth", run_truth,
                  "Ground-truth iHR; writes report.csv next to the outputs");
  run_flags.Register(run);

  // synth
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::string spec_path, synth_out;
  bool no_truth = false;
  synth->add_option("spec", spec_path, "Mixture spec file")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_flag("--no-truth", no_truth,
                  "Allow mixtures without a hemodynamic source");

  // eval
  CLI::App* eval = app.add_subcommand("eval", "Score an iHR series");
  std::string eval_ihr, eval_truth, eval_rpeaks, eval_out, eval_label = "dataset";
  std::vector<double> eval_grans = {1.0, 10.0, 30.0};
  bool eval_lag = false;
  eval->add_option("--ihr", eval_ihr, "Recovered iHR file")->required();
  auto* truth_opt = eval->add_option("--truth", eval_truth, "Reference iHR file");
  auto* rpeaks_opt = eval->add_option("--rpeaks", eval_rpeaks, "R-peak times file");
  truth_opt->excludes(rpeaks_opt);
  eval->add_option("--granularities", eval_grans, "Granularities in seconds")
      ->delimiter(',');
  eval->add_option("--label", eval_label, "Dataset label");
  eval->add_option("--out", eval_out, "Report file (default stdout)");
  eval->add_flag("--lag-search", eval_lag, "Search a +-1 s clock offset");

  // batch
  CLI::App* batch = app.add_subcommand("batch", "Run and score many datasets");
  std::string list_path, batch_out;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  ConfigFlags batch_flags;
  batch->add_option("--list", list_path,
                    "File of 'label channels [truth]' lines")->required();
  batch->add_option("--jobs", jobs, "Concurrent datasets")
      ->check(CLI::PositiveNumber);
  batch_flags.Register(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      const irppg::PipelineConfig config = run_flags.Resolve(run);
      std::optional<irppg::RegionMesh> mesh;
      if (!mesh_path.empty()) mesh = irppg::ReadRegionMesh(mesh_path);
      std::optional<irppg::ChannelMatrix> channels;
      if (!channels_path.empty()) {
        channels = irppg::ReadChannelMatrix(channels_path);
      } else if (!frames_dir.empty()) {
        if (!mesh || !(frames_fs > 0.0)) {
          throw irppg::ValidationError("--frames requires --mesh and --fs");
        }
        channels = LoadFrames(frames_dir, *mesh, frames_fs,
                              run_label.empty() ? frames_dir : run_label);
      } else {
        throw irppg::ValidationError("one of --channels or --frames is required");
      }
      const auto result =
          irppg::RunPipeline(*channels, config, mesh ? &*mesh : nullptr);
      const fs::path out = config.output_dir;
      irppg::WriteRunOutputs(out, result, config);
      if (!run_truth.empty()) {
        irppg::EvaluationOptions options;
        options.granularities_s = config.granularities_s;
        options.lag_search = config.lag_search;
        const std::vector<irppg::ErrorReport> reports = {irppg::Evaluate(
            result.ihr, irppg::ReadIhr(run_truth), options,
            channels->meta().source_label.empty()
                ? std::string("dataset")
                : channels->meta().source_label)};
        irppg::WriteTextFile(out / "report.csv", irppg::FormatReport(reports));
      }
      PrintRunSummary(result, out);
    } else if (*synth) {
      const irppg::MixtureSpec spec = irppg::ReadMixtureSpec(spec_path);
      const irppg::SyntheticDataset ds = irppg::Generate(spec, !no_truth);
      irppg::WriteDataset(synth_out, ds, spec);
      std::cout << "wrote " << ds.channels.regions() << "x"
                << ds.channels.frames() << " dataset to " << synth_out << "\n";
    } else if (*eval) {
      if (eval_truth.empty() && eval_rpeaks.empty()) {
        throw irppg::ValidationError("one of --truth or --rpeaks is required");
      }
      irppg::EvaluationOptions options;
      options.granularities_s = eval_grans;
      options.lag_search = eval_lag;
      const std::vector<irppg::ErrorReport> reports = {
          irppg::Evaluate(irppg::ReadIhr(eval_ihr),
                          LoadTruth(eval_truth, eval_rpeaks), options,
                          eval_label)};
      const std::string text = irppg::FormatReport(reports);
      if (eval_out.empty()) {
        std::cout << text;
      } else {
        irppg::WriteTextFile(eval_out, text);
      }
    } else if (*batch) {
      const irppg::PipelineConfig config = batch_flags.Resolve(batch);
      const auto entries = ReadBatchList(list_path);
      const fs::path out = config.output_dir;
      std::vector<std::optional<irppg::ErrorReport>> reports(entries.size());
      std::vector<std::string> failures(entries.size());
      std::vector<int> codes(entries.size(), kExitOk);
      std::atomic<std::size_t> next{0};
      {
        std::vector<std::jthread> workers;
        const std::size_t n = std::min<std::size_t>(jobs, entries.size());
        for (std::size_t w = 0; w < n; ++w) {
          workers.emplace_back([&] {
            for (std::size_t i = next++; i < entries.size(); i = next++) {
              const BatchEntry& e = entries[i];
              try {
                irppg::PipelineConfig local = config;
                local.output_dir = (out / e.label).string();
                const auto result = irppg::RunPipeline(
                    irppg::ReadChannelMatrix(e.channels), local);
                irppg::WriteRunOutputs(local.output_dir, result, local);
                if (!e.truth.empty()) {
                  irppg::EvaluationOptions options;
                  options.granularities_s = local.granularities_s;
                  options.lag_search = local.lag_search;
                  reports[i] = irppg::Evaluate(
                      result.ihr, irppg::ReadIhr(e.truth), options, e.label);
                }
              } catch (const irppg::Error& err) {
                failures[i] = err.what();
                codes[i] = ExitCodeFor(err.kind());
              } catch (const std::exception& err) {
                failures[i] = err.what();
                codes[i] = kExitInternal;
              }
            }
          });
        }
      }
      std::vector<irppg::ErrorReport> scored;
      for (const auto& r : reports) {
        if (r) scored.push_back(*r);
      }
      if (!scored.empty()) {
        irppg::WriteTextFile(out / "report.csv", irppg::FormatReport(scored));
      }
      int status = kExitOk;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (codes[i] != kExitOk) {
          std::cerr << "irppg: " << entries[i].label << ": " << failures[i]
                    << "\n";
          if (status == kExitOk) status = codes[i];
        } else {
          std::cout << entries[i].label << ": ok\n";
        }
      }
      return status;
    }
  } catch (const irppg::Error& e) {
    std::cerr << "irppg: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "irppg: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
