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

#ifndef IRPPG_MARCHENKO_PASTUR_H_
#define IRPPG_MARCHENKO_PASTUR_H_

namespace irppg {

// Marchenko-Pastur law with aspect ratio beta in (0, 1], support
// [(1 - sqrt(beta))^2, (1 + sqrt(beta))^2] and density
// sqrt((hi - x)(x - lo)) / (2 pi beta x).
double MpCdf(double x, double beta);

// Median of the law, found by bisection on the quadrature CDF to 1e-9.
double MpMedian(double beta);

}  // namespace irppg

#endif  // IRPPG_MARCHENKO_PASTUR_H_
