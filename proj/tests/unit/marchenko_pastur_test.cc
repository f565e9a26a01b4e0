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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "irppg/error.h"
#include "irppg/marchenko_pastur.h"
#include "oracles.h"

namespace irppg {
namespace {

using testing::OracleMpCdf;
using testing::OracleMpMedian;

TEST(MpOracleTest, OracleIntegratesToOne) {
  for (double beta : {0.05, 0.5, 1.0}) {
    EXPECT_NEAR(OracleMpCdf(std::pow(1.0 + std::sqrt(beta), 2) - 1e-15, beta),
                1.0, 1e-9);
  }
}

TEST(MpMedianTest, MatchesOracle) {
  for (double beta : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    EXPECT_NEAR(MpMedian(beta), OracleMpMedian(beta), 1e-6) << beta;
  }
}

TEST(MpMedianTest, SmallBetaConcentratesAtOne) {
  EXPECT_NEAR(MpMedian(1e-4), 1.0, 0.05);
}

TEST(MpMedianTest, SelfConsistentUnderOracleCdf) {
  EXPECT_NEAR(OracleMpCdf(MpMedian(0.25), 0.25), 0.5, 1e-8);
}

TEST(MpCdfTest, AgreesWithOracleAcrossSupport) {
  for (double beta : {0.05, 0.3, 1.0}) {
    const double lo = std::pow(1.0 - std::sqrt(beta), 2);
    const double hi = std::pow(1.0 + std::sqrt(beta), 2);
    for (int k = 0; k <= 20; ++k) {
      const double x = lo + (hi - lo) * k / 20.0;
      EXPECT_NEAR(MpCdf(x, beta), OracleMpCdf(x, beta), 1e-9) << beta << " " << x;
    }
    EXPECT_EQ(MpCdf(lo - 1.0, beta), 0.0);
    EXPECT_EQ(MpCdf(hi + 1.0, beta), 1.0);
  }
}

TEST(MpMedianTest, RejectsBetaOutsideUnitInterval) {
  EXPECT_THROW(MpMedian(0.0), ValidationError);
  EXPECT_THROW(MpMedian(1.5), ValidationError);
  EXPECT_THROW(MpMedian(-0.2), ValidationError);
  EXPECT_THROW(MpMedian(std::nan("")), ValidationError);
}

}  // namespace
}  // namespace irppg
