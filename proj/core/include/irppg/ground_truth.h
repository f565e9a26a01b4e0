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

// ECG-derived reference heart rate from precomputed R-peak times.

#ifndef IRPPG_GROUND_TRUTH_H_
#define IRPPG_GROUND_TRUTH_H_

#include <span>

#include "irppg/types.h"

namespace irppg {

// Each RR interval is placed at its midpoint; the interval length is linearly
// interpolated between midpoints (held flat before the first and after the
// last) and reported as 60 / RR. Every grid point must lie within
// [first peak, last peak].
IhrSeries RPeaksToIhr(std::span<const double> peaks_s,
                      std::span<const double> grid_s);

}  // namespace irppg

#endif  // IRPPG_GROUND_TRUTH_H_
