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

// Low-rank analysis of the filtered channel matrix: thin SVD, noise level
// from the Marchenko-Pastur median, hard rank selection at the bulk edge and
// optional Frobenius-optimal singular value shrinkage.
//
// Singular values of an n_r x n_t noise matrix with entry deviation sigma
// sit near sigma * sqrt(max(n_r, n_t)) times the square root of a
// Marchenko-Pastur variate. Every threshold below is therefore expressed in
// units of noise_sigma * sqrt(max(n_r, n_t)) (see Scale()).

#ifndef IRPPG_DECOMPOSITION_H_
#define IRPPG_DECOMPOSITION_H_

#include <cstddef>
#include <string>

#include "irppg/types.h"

namespace irppg {

struct SourceDecomposition {
  Matrix left_vectors;     // n_r x k, column i is u_i
  Vector singular_values;  // k = min(n_r, n_t), non-increasing
  Matrix right_vectors;    // k x n_t, row i is v_i
  double noise_sigma = 0.0;
  double beta = 0.0;  // min(n_r, n_t) / max(n_r, n_t)
  std::size_t retained_rank = 0;
  bool degenerate = false;  // every singular value is zero

  std::size_t rows() const { return static_cast<std::size_t>(left_vectors.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(right_vectors.cols()); }
  std::size_t rank() const { return static_cast<std::size_t>(singular_values.size()); }

  // noise_sigma * sqrt(max(n_r, n_t)).
  double Scale() const;
  // Singular values above this are retained: (1 + sqrt(beta)) * Scale().
  double Threshold() const;
  Matrix Reconstruct() const;
};

// Thin SVD plus noise estimate and retained rank. Each (u_i, v_i) pair is
// sign-flipped so the first entry of u_i with magnitude above 1e-12 is
// positive.
SourceDecomposition Decompose(const Matrix& y);
// Requires a filtered matrix.
SourceDecomposition Svd(const ChannelMatrix& channels);

struct NoiseEstimate {
  double sigma = 0.0;
  bool degenerate = false;
};
NoiseEstimate EstimateNoise(const SourceDecomposition& decomp);

std::size_t SelectRank(const SourceDecomposition& decomp);

// Frobenius-optimal shrinker for a spike observed at normalized singular
// value y: sqrt((y^2 - beta - 1)^2 - 4 beta) / y above 1 + sqrt(beta), else 0.
double OptimalShrinker(double y, double beta);

struct ShrinkResult {
  Matrix denoised;
  bool degenerate = false;  // noise_sigma == 0; input returned unchanged
};
ShrinkResult OptimalShrink(const SourceDecomposition& decomp);

// Same vectors, retained singular values replaced by their shrunken values.
SourceDecomposition ShrinkSingularValues(const SourceDecomposition& decomp);

// index, singular value, threshold, retained flag; one line per value.
std::string FormatScree(const SourceDecomposition& decomp);

}  // namespace irppg

#endif  // IRPPG_DECOMPOSITION_H_
