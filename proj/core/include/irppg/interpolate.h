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

#ifndef IRPPG_INTERPOLATE_H_
#define IRPPG_INTERPOLATE_H_

#include <span>
#include <vector>

namespace irppg {

// Piecewise-linear interpolation of (xs, ys) at x. xs must be strictly
// increasing and non-empty; x outside [xs.front(), xs.back()] takes the
// nearest end value.
double InterpolateLinear(std::span<const double> xs, std::span<const double> ys,
                         double x);

std::vector<double> InterpolateLinear(std::span<const double> xs,
                                      std::span<const double> ys,
                                      std::span<const double> at);

}  // namespace irppg

#endif  // IRPPG_INTERPOLATE_H_
