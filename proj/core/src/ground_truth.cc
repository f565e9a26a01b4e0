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

#include "irppg/ground_truth.h"

#include <vector>

#include "irppg/error.h"
#include "irppg/interpolate.h"
#include "irppg/io.h"

namespace irppg {

IhrSeries RPeaksToIhr(std::span<const double> peaks_s,
                      std::span<const double> grid_s) {
  if (peaks_s.size() < 2) {
    throw ValidationError("need at least 2 R-peaks to derive heart rate");
  }
  std::vector<double> midpoints;
  std::vector<double> rr;
  for (std::size_t i = 1; i < peaks_s.size(); ++i) {
    const double interval = peaks_s[i] - peaks_s[i - 1];
    if (!(interval > 0.0)) {
      throw ValidationError("R-peak times not strictly increasing at index " +
                            std::to_string(i));
    }
    midpoints.push_back(0.5 * (peaks_s[i] + peaks_s[i - 1]));
    rr.push_back(interval);
  }
  std::vector<double> t;
  std::vector<double> bpm;
  t.reserve(grid_s.size());
  bpm.reserve(grid_s.size());
  for (double g : grid_s) {
    if (g < peaks_s.front() || g > peaks_s.back()) {
      throw ValidationError("grid time " + FormatDouble(g) +
                            " outside R-peak support [" +
                            FormatDouble(peaks_s.front()) + ", " +
                            FormatDouble(peaks_s.back()) + "]");
    }
    t.push_back(g);
    bpm.push_back(60.0 / InterpolateLinear(midpoints, rr, g));
  }
  return IhrSeries(std::move(t), std::move(bpm));
}

}  // namespace irppg
