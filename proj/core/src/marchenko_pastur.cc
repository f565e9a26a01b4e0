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

#include "irppg/marchenko_pastur.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "irppg/error.h"
#include "irppg/io.h"

namespace irppg {
namespace {

void CheckBeta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ValidationError("Marchenko-Pastur beta " + FormatDouble(beta) +
                          " outside (0, 1]");
  }
}

}  // namespace

double MpCdf(double x, double beta) {
  CheckBeta(beta);
  const double lo = std::pow(1.0 - std::sqrt(beta), 2);
  const double hi = std::pow(1.0 + std::sqrt(beta), 2);
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  // x = lo + (hi - lo)(1 - cos phi) / 2 removes both square-root edges.
  const double half_width = 0.5 * (hi - lo);
  const double phi_end = std::acos(1.0 - (x - lo) / half_width);
  const auto integrand = [&](double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    // With lo == 0, sin^2 / (1 - cos) = 1 + cos keeps phi = 0 finite.
    const double ratio = lo > 0.0 ? s * s / (lo + half_width * (1.0 - c))
                                  : (1.0 + c) / half_width;
    return half_width * half_width * ratio / (2.0 * std::numbers::pi * beta);
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          integrand, 0.0, phi_end, 20, 1e-14, &error);
  return std::clamp(value, 0.0, 1.0);
}

double MpMedian(double beta) {
  CheckBeta(beta);
  double lo = std::pow(1.0 - std::sqrt(beta), 2);
  double hi = std::pow(1.0 + std::sqrt(beta), 2);
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (MpCdf(mid, beta) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace irppg
