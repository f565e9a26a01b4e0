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

#include "irppg/interpolate.h"

#include <algorithm>

namespace irppg {

double InterpolateLinear(std::span<const double> xs, std::span<const double> ys,
                         double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double frac = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + frac * (ys[hi] - ys[lo]);
}

std::vector<double> InterpolateLinear(std::span<const double> xs,
                                      std::span<const double> ys,
                                      std::span<const double> at) {
  std::vector<double> out;
  out.reserve(at.size());
  for (double x : at) out.push_back(InterpolateLinear(xs, ys, x));
  return out;
}

}  // namespace irppg
