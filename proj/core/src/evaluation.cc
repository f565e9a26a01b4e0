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

#include "irppg/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "irppg/error.h"
#include "irppg/interpolate.h"
#include "irppg/io.h"

namespace irppg {
namespace {

double MedianStep(const std::vector<double>& t) {
  std::vector<double> steps;
  for (std::size_t i = 1; i < t.size(); ++i) steps.push_back(t[i] - t[i - 1]);
  std::nth_element(steps.begin(), steps.begin() + steps.size() / 2,
                   steps.end());
  return steps[steps.size() / 2];
}

IhrSeries Shifted(const IhrSeries& s, double lag) {
  std::vector<double> t = s.timestamps();
  for (double& v : t) v += lag;
  return IhrSeries(std::move(t), s.bpm());
}

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

IhrSeries ResampleMean(const IhrSeries& series, double granularity_s) {
  if (!(granularity_s > 0.0)) {
    throw ValidationError("granularity must be positive");
  }
  if (series.size() < 2) {
    throw ValidationError("need at least two samples to resample");
  }
  const auto& t = series.timestamps();
  const auto& v = series.bpm();
  const double start = t.front();
  const double end = t.back() + MedianStep(t);
  const double slack = 1e-9 * granularity_s;
  std::vector<double> out_t;
  std::vector<double> out_v;
  std::size_t i = 0;
  for (std::size_t k = 0;; ++k) {
    const double lo = start + static_cast<double>(k) * granularity_s;
    const double hi = lo + granularity_s;
    if (hi > end + slack) break;
    double sum = 0.0;
    std::size_t count = 0;
    while (i < t.size() && t[i] < hi - slack) {
      sum += v[i];
      ++count;
      ++i;
    }
    if (count > 0) {
      out_t.push_back(lo + 0.5 * granularity_s);
      out_v.push_back(sum / static_cast<double>(count));
    }
  }
  if (out_t.empty()) {
    throw ValidationError("series shorter than one " +
                          FormatDouble(granularity_s) + " s window");
  }
  return IhrSeries(std::move(out_t), std::move(out_v));
}

AlignedSeries Align(const IhrSeries& a, const IhrSeries& b) {
  if (a.empty() || b.empty()) {
    throw ValidationError("cannot align an empty series");
  }
  const double lo = std::max(a.timestamps().front(), b.timestamps().front());
  const double hi = std::min(a.timestamps().back(), b.timestamps().back());
  if (lo > hi) {
    throw ValidationError("series have no temporal overlap");
  }
  const auto inside = [&](const IhrSeries& s) {
    std::vector<double> out;
    for (double t : s.timestamps()) {
      if (t >= lo && t <= hi) out.push_back(t);
    }
    return out;
  };
  const std::vector<double> ta = inside(a);
  const std::vector<double> tb = inside(b);
  AlignedSeries out;
  if (ta.size() < tb.size()) {
    out.times = ta;
  } else if (tb.size() < ta.size()) {
    out.times = tb;
  } else {
    std::set_union(ta.begin(), ta.end(), tb.begin(), tb.end(),
                   std::back_inserter(out.times));
  }
  if (out.times.empty()) {
    throw ValidationError("series have no samples in their common support");
  }
  out.a = InterpolateLinear(a.timestamps(), a.bpm(), out.times);
  out.b = InterpolateLinear(b.timestamps(), b.bpm(), out.times);
  return out;
}

double Rmse(const IhrSeries& a, const IhrSeries& b) {
  const AlignedSeries s = Align(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double d = s.a[i] - s.b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(s.times.size()));
}

double RelativeErrorPct(const IhrSeries& a, const IhrSeries& truth) {
  const AlignedSeries s = Align(a, truth);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (s.b[i] == 0.0) {
      throw ValidationError("reference heart rate is zero");
    }
    sum += std::abs(s.a[i] - s.b[i]) / s.b[i];
  }
  return 100.0 * sum / static_cast<double>(s.times.size());
}

ErrorReport Evaluate(const IhrSeries& recovered, const IhrSeries& truth,
                     const EvaluationOptions& options, std::string label) {
  if (options.granularities_s.empty()) {
    throw ValidationError("no evaluation granularities");
  }
  for (double g : options.granularities_s) {
    if (!(g > 0.0)) throw ValidationError("granularity must be positive");
  }
  const double finest = *std::min_element(options.granularities_s.begin(),
                                          options.granularities_s.end());
  const double coarsest = *std::max_element(options.granularities_s.begin(),
                                            options.granularities_s.end());

  const auto on_grid = [&](const IhrSeries& rec) {
    const double lo =
        std::max(rec.timestamps().front(), truth.timestamps().front());
    const double hi =
        std::min(rec.timestamps().back(), truth.timestamps().back());
    if (lo > hi) {
      throw ValidationError("recovered and reference series do not overlap");
    }
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
      const double t = lo + static_cast<double>(k) * finest;
      if (t > hi + 1e-9 * finest) break;
      grid.push_back(t);
    }
    return std::pair{
        IhrSeries(grid, InterpolateLinear(rec.timestamps(), rec.bpm(), grid)),
        IhrSeries(grid,
                  InterpolateLinear(truth.timestamps(), truth.bpm(), grid))};
  };

  double lag = 0.0;
  if (options.lag_search) {
    double best = std::numeric_limits<double>::infinity();
    const auto steps = static_cast<int>(
        std::lround(options.max_lag_s / options.lag_step_s));
    for (int k = -steps; k <= steps; ++k) {
      const double candidate = k * options.lag_step_s;
      try {
        const auto [r, g] = on_grid(Shifted(recovered, candidate));
        const double e =
            Rmse(ResampleMean(r, finest), ResampleMean(g, finest));
        if (e < best) {
          best = e;
          lag = candidate;
        }
      } catch (const ValidationError&) {
        // Shift leaves too little overlap; skip it.
      }
    }
  }

  const auto [rec_grid, truth_grid] = on_grid(Shifted(recovered, lag));
  ErrorReport report;
  report.label = std::move(label);
  report.lag_s = lag;
  report.granularities_s = options.granularities_s;
  for (double g : options.granularities_s) {
    const IhrSeries r = ResampleMean(rec_grid, g);
    const IhrSeries t = ResampleMean(truth_grid, g);
    report.rmse_bpm.push_back(Rmse(r, t));
    report.n_points.push_back(r.size());
    if (g == coarsest) {
      report.relative_error_pct = RelativeErrorPct(r, t);
    }
  }
  return report;
}

std::string FormatReport(std::span<const ErrorReport> reports) {
  if (reports.empty()) return "";
  const auto& grans = reports.front().granularities_s;
  const double coarsest = *std::max_element(grans.begin(), grans.end());
  std::string out = "dataset";
  for (double g : grans) out += ",rmse_" + FormatDouble(g) + "s_bpm";
  out += ",relative_error_" + FormatDouble(coarsest) + "s_pct\n";
  for (const ErrorReport& r : reports) {
    if (r.granularities_s != grans) {
      throw ValidationError("reports use different granularities");
    }
    out += r.label;
    for (double v : r.rmse_bpm) out += "," + Fixed(v);
    out += "," + Fixed(r.relative_error_pct) + "\n";
  }
  return out;
}

}  // namespace irppg
