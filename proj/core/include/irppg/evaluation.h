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

// Error measures between a recovered heart-rate series and a reference,
// reported at several averaging granularities.

#ifndef IRPPG_EVALUATION_H_
#define IRPPG_EVALUATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "irppg/types.h"

namespace irppg {

// Non-overlapping window means. Windows start at the first timestamp; each
// covers [start + k g, start + (k + 1) g) and is stamped at its centre. The
// series is taken to extend one median sample step past its last timestamp,
// and a trailing window that is not fully covered is dropped. Windows
// without samples are skipped.
IhrSeries ResampleMean(const IhrSeries& series, double granularity_s);

// Both series on common evaluation times: the points of whichever series has
// fewer samples inside the overlap of their supports (the union when equal),
// with the other series linearly interpolated there.
struct AlignedSeries {
  std::vector<double> times;
  std::vector<double> a;
  std::vector<double> b;
};
AlignedSeries Align(const IhrSeries& a, const IhrSeries& b);

double Rmse(const IhrSeries& a, const IhrSeries& b);
// Mean of |a - truth| / truth, in percent.
double RelativeErrorPct(const IhrSeries& a, const IhrSeries& truth);

struct EvaluationOptions {
  std::vector<double> granularities_s = {1.0, 10.0, 30.0};
  // Shift the recovered series by up to max_lag_s (in lag_step_s steps) to
  // minimise the finest-granularity RMSE before scoring.
  bool lag_search = false;
  double max_lag_s = 1.0;
  double lag_step_s = 0.1;
};

struct ErrorReport {
  std::string label;
  std::vector<double> granularities_s;
  std::vector<double> rmse_bpm;        // per granularity
  std::vector<std::size_t> n_points;   // per granularity
  double relative_error_pct = 0.0;     // at the coarsest granularity
  double lag_s = 0.0;
};

// Interpolates both series onto a shared uniform grid at the finest
// granularity over their overlap, then window-averages each at every
// granularity before scoring.
ErrorReport Evaluate(const IhrSeries& recovered, const IhrSeries& truth,
                     const EvaluationOptions& options = {},
                     std::string label = "");

// Comma-separated table: dataset, one RMSE column per granularity, relative
// error at the coarsest granularity.
std::string FormatReport(std::span<const ErrorReport> reports);

}  // namespace irppg

#endif  // IRPPG_EVALUATION_H_
