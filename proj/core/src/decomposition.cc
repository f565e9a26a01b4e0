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

#include "irppg/decomposition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "irppg/error.h"
#include "irppg/io.h"
#include "irppg/marchenko_pastur.h"

namespace irppg {

double SourceDecomposition::Scale() const {
  return noise_sigma *
         std::sqrt(static_cast<double>(std::max(rows(), cols())));
}

double SourceDecomposition::Threshold() const {
  return (1.0 + std::sqrt(beta)) * Scale();
}

Matrix SourceDecomposition::Reconstruct() const {
  return left_vectors * singular_values.asDiagonal() * right_vectors;
}

SourceDecomposition Decompose(const Matrix& y) {
  if (y.rows() == 0 || y.cols() == 0) {
    throw ValidationError("cannot decompose an empty matrix");
  }
  if (!y.allFinite()) {
    throw ValidationError("matrix has non-finite entries");
  }
  const Eigen::MatrixXd dense = y;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  SourceDecomposition d;
  d.left_vectors = svd.matrixU();
  d.singular_values = svd.singularValues();
  d.right_vectors = svd.matrixV().transpose();
  if (!d.left_vectors.allFinite() || !d.right_vectors.allFinite() ||
      !d.singular_values.allFinite()) {
    throw NumericalError("SVD did not converge");
  }
  for (Eigen::Index i = 0; i < d.left_vectors.cols(); ++i) {
    for (Eigen::Index r = 0; r < d.left_vectors.rows(); ++r) {
      const double v = d.left_vectors(r, i);
      if (std::abs(v) > 1e-12) {
        if (v < 0) {
          d.left_vectors.col(i) *= -1.0;
          d.right_vectors.row(i) *= -1.0;
        }
        break;
      }
    }
  }
  const auto small = static_cast<double>(std::min(y.rows(), y.cols()));
  const auto large = static_cast<double>(std::max(y.rows(), y.cols()));
  d.beta = small / large;
  const NoiseEstimate noise = EstimateNoise(d);
  d.noise_sigma = noise.sigma;
  d.degenerate = noise.degenerate;
  d.retained_rank = SelectRank(d);
  return d;
}

SourceDecomposition Svd(const ChannelMatrix& channels) {
  if (!channels.filtered()) {
    throw ValidationError("decomposition expects a filtered channel matrix");
  }
  return Decompose(channels.values());
}

NoiseEstimate EstimateNoise(const SourceDecomposition& decomp) {
  const Vector& s = decomp.singular_values;
  if (s.size() == 0 || s.maxCoeff() == 0.0) {
    return {0.0, true};
  }
  std::vector<double> sorted(s.data(), s.data() + s.size());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double large =
      static_cast<double>(std::max(decomp.rows(), decomp.cols()));
  return {median / (std::sqrt(MpMedian(decomp.beta)) * std::sqrt(large)),
          false};
}

std::size_t SelectRank(const SourceDecomposition& decomp) {
  const Vector& s = decomp.singular_values;
  if (s.size() == 0) return 0;
  double threshold = decomp.Threshold();
  if (decomp.noise_sigma == 0.0) {
    // Noise-free: keep the numerically nonzero values.
    threshold = std::numeric_limits<double>::epsilon() *
                static_cast<double>(std::max(decomp.rows(), decomp.cols())) *
                s.maxCoeff();
  }
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > threshold) ++count;
  }
  return count;
}

double OptimalShrinker(double y, double beta) {
  if (!(y > 1.0 + std::sqrt(beta))) return 0.0;
  const double t = y * y - beta - 1.0;
  return std::sqrt(std::max(0.0, t * t - 4.0 * beta)) / y;
}

SourceDecomposition ShrinkSingularValues(const SourceDecomposition& decomp) {
  SourceDecomposition out = decomp;
  if (decomp.noise_sigma == 0.0) return out;
  const double scale = decomp.Scale();
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    const bool kept = static_cast<std::size_t>(i) < decomp.retained_rank;
    out.singular_values[i] =
        kept ? scale * OptimalShrinker(decomp.singular_values[i] / scale,
                                       decomp.beta)
             : 0.0;
  }
  return out;
}

ShrinkResult OptimalShrink(const SourceDecomposition& decomp) {
  if (decomp.noise_sigma == 0.0) {
    return {decomp.Reconstruct(), true};
  }
  const SourceDecomposition shrunk = ShrinkSingularValues(decomp);
  const auto k = static_cast<Eigen::Index>(decomp.retained_rank);
  Matrix out = shrunk.left_vectors.leftCols(k) *
               shrunk.singular_values.head(k).asDiagonal() *
               shrunk.right_vectors.topRows(k);
  return {std::move(out), false};
}

std::string FormatScree(const SourceDecomposition& decomp) {
  std::string out = "index,singular_value,threshold,retained\n";
  const std::string threshold = FormatDouble(decomp.Threshold());
  for (Eigen::Index i = 0; i < decomp.singular_values.size(); ++i) {
    out += std::to_string(i + 1) + "," +
           FormatDouble(decomp.singular_values[i]) + "," + threshold + "," +
           (static_cast<std::size_t>(i) < decomp.retained_rank ? "1" : "0") +
           "\n";
  }
  return out;
}

}  // namespace irppg
