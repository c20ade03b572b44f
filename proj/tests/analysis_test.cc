// Copyright 2026 The adaptlin Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adaptlin/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "adaptlin/errors.hpp"
#include "test_support.hpp"

namespace adaptlin {
namespace {

using testing::brute_jdagger;
using testing::brute_jstar;
using testing::harmonic_spectrum;
using testing::jdagger_rhs;
using testing::jstar_lhs;
using testing::unit_spectrum;

const ConeParams kCone(2.0, 0.5);

Problem harmonic_problem() { return Problem{harmonic_spectrum(), Partition::geometric(1), kCone}; }

// compute_R ------------------------------------------------------------------

TEST(ComputeR, AlgebraicOnDoublingPartition) {
  for (Index n0 : {1u, 3u, 5u}) {
    const Problem p{SingularSpectrum::algebraic(1.7, 2.0), Partition::geometric(n0), kCone};
    const auto r = compute_R(p, 20);
    EXPECT_NEAR(r.value, 4.0, 1e-12) << "n0=" << n0;
    EXPECT_FALSE(r.still_increasing);
    EXPECT_EQ(r.first_k, 1u);
  }
}

TEST(ComputeR, ConstantSpectrum) {
  const Problem p{unit_spectrum(), Partition::geometric(2), kCone};
  const auto r = compute_R(p, 10);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_FALSE(r.still_increasing);
}

TEST(ComputeR, GeometricSpectrumFlagged) {
  const Problem p{SingularSpectrum::geometric(1.0, 1.5), Partition::geometric(1), kCone};
  EXPECT_TRUE(compute_R(p, 8).still_increasing);
}

TEST(ComputeR, SkipsUndefinedLambdaZero) {
  const Problem p{SingularSpectrum::algebraic(1.0, 1.0), Partition::doubling(0, 4), kCone};
  const auto r = compute_R(p, 10);
  EXPECT_EQ(r.first_k, 2u);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

// omega ------------------------------------------------------------------------

TEST(ComputeOmega, PlugIn) {
  EXPECT_NEAR(compute_omega(kCone, 4.0), std::sqrt(0.75 / (336.0 * 145.0)), 1e-15);
  EXPECT_NEAR(compute_omega(kCone, 4.0), 3.9235e-3, 1e-7);
  // R = 1: bracket (a+1)^2/(a-1)^2 + 1 = 10.
  EXPECT_NEAR(compute_omega(kCone, 1.0), std::sqrt(0.75 / (21.0 * 10.0)), 1e-15);
  EXPECT_NEAR(compute_omega(kCone, 1.0), 5.9761e-2, 1e-6);
}

TEST(ComputeOmega, AlwaysInUnitInterval) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConeParams cone(1.0 + 1e-3 + 20.0 * unit(rng), 1e-3 + 0.998 * unit(rng));
    const double R = 1.0 + 100.0 * unit(rng);
    const double omega = compute_omega(cone, R);
    EXPECT_GT(omega, 0.0);
    EXPECT_LT(omega, 1.0);
    EXPECT_NO_THROW(ConeComplexityConstants::make(cone, R, 0.5));
  }
  EXPECT_THROW(compute_omega(kCone, 0.5), InvalidArgument);
}

// j-dagger family -----------------------------------------------------------------

TEST(JDagger, FirstBlockSuffices) {
  const Problem p = harmonic_problem();
  // lambda_{n0+1} = 1/2; j = 1 whenever rho/eps <= sqrt(3/4)/(2*0.5*0.5) = sqrt(3).
  EXPECT_EQ(jdagger_bound(p, 1.0, 1.7), 1u);
  EXPECT_EQ(jdagger_rough(p, 1.0, 1.0), 1u);
}

TEST(JDagger, HarmonicRatioTenMatchesBruteForce) {
  const Problem p = harmonic_problem();
  const Index j = jdagger_bound(p, 0.1, 1.0);
  EXPECT_EQ(j, brute_jdagger(p, 0.1, 1.0));
  EXPECT_LE(j, jdagger_rough(p, 0.1, 1.0));
}

TEST(JDagger, BoundaryCorrectnessOnRandomProblems) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    auto c = testing::random_cone_case(rng);
    const double ratio = std::pow(10.0, 5.0 * unit(rng));
    Index j = 0;
    try {
      j = jdagger_rough(c.problem, 1.0, ratio);
    } catch (const NonTermination&) {
      continue;  // slow spectrum on short blocks: past the guard
    }
    j = jdagger_bound(c.problem, 1.0, ratio);
    const double target = ratio * ratio;
    EXPECT_LE(target, jdagger_rhs(c.problem, j) * (1 + 1e-12)) << c.description;
    if (j > 1) {
      EXPECT_GT(target, jdagger_rhs(c.problem, j - 1) * (1 - 1e-12)) << c.description;
    }
    EXPECT_LE(j, jdagger_rough(c.problem, 1.0, ratio));
  }
}

TEST(JDagger, RoughExamplesAndMonotonicity) {
  const Problem p = harmonic_problem();
  Index previous = 0;
  for (double ratio = 1.0; ratio < 1e6; ratio *= 1.7) {
    const Index j = jdagger_rough(p, 1.0, ratio);
    EXPECT_GE(j, previous);
    // Boundary: lambda_{n_{j-1}+1} <= threshold < lambda_{n_{j-2}+1}.
    const double threshold = std::sqrt(0.75) / (2.0 * 0.5 * ratio);
    EXPECT_LE(p.spectrum(p.partition[j - 1] + 1), threshold);
    if (j > 1) {
      EXPECT_GT(p.spectrum(p.partition[j - 2] + 1), threshold);
    }
    previous = j;
  }
}

TEST(JDagger, RoughMatchesGeometricCeilingWhenTight) {
  // lambda_i = 2^{-i} on n = (0, 1, 2, ...): lambda_{n_{j-1}+1} = 2^{-j} exactly.
  const Problem p{SingularSpectrum::geometric(1.0, 2.0), Partition::arithmetic(0, 1), kCone};
  for (double ratio = 1.3; ratio < 1e8; ratio *= 2.9) {
    EXPECT_EQ(jdagger_rough(p, 1.0, ratio), jdagger_geometric(1.0, 0.5, kCone, 1.0, ratio)) << ratio;
    EXPECT_LE(jdagger_bound(p, 1.0, ratio), jdagger_geometric(1.0, 0.5, kCone, 1.0, ratio));
  }
}

TEST(JDagger, FirstTermPlugIn) {
  const Problem p{unit_spectrum(), Partition::geometric(1), kCone};
  EXPECT_EQ(jdagger_first(p, 0.1, 1.0), 6u);
  EXPECT_EQ(jdagger_first(p, 1e6, 1.0), 1u);
}

TEST(JDagger, FirstTermDoublingStep) {
  const Problem p{harmonic_spectrum(), Partition::geometric(3), ConeParams(3.0, 0.3)};
  const Index step = static_cast<Index>(std::ceil(1.0 / std::log2(1.0 / 0.3)));
  for (double ratio = 1.0; ratio < 1e8; ratio *= 3.1) {
    const Index a = jdagger_first(p, 1.0, ratio);
    const Index b = jdagger_first(p, 1.0, 2.0 * ratio);
    EXPECT_GE(b, a);
    EXPECT_LE(b - a, step);
  }
}

TEST(JDagger, GeometricPlugIn) {
  EXPECT_EQ(jdagger_geometric(1.0, 0.5, kCone, 0.1, 1.0), 4u);
  EXPECT_EQ(jdagger_geometric(1.0, 0.5, kCone, 100.0, 1.0), 1u);
}

TEST(JDagger, GuardSurfaces) {
  const Problem p{unit_spectrum(), Partition::geometric(1), kCone};
  EXPECT_THROW(jdagger_rough(p, 1.0, 10.0, 8), NonTermination);
}

// j-star --------------------------------------------------------------------------

TEST(JStar, BelowFirstThresholdIsZero) {
  const Problem p = harmonic_problem();
  EXPECT_EQ(jstar_lower_bound(p, 2.0, 1.0, 1.0), 0u);
}

TEST(JStar, HarmonicRatioTenThousand) {
  const Problem p = harmonic_problem();
  const double R = compute_R(p, 30).value;
  const Index j = jstar_lower_bound(p, R, 1e-4, 1.0);
  EXPECT_EQ(j, brute_jstar(p, R, 1e-4, 1.0));
  EXPECT_GE(j, 1u);
  EXPECT_LT(jstar_lhs(p, R, j), 1e8);
  EXPECT_GE(jstar_lhs(p, R, j + 1), 1e8);
}

TEST(JStar, MatchesBruteForceOnRandomProblems) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto c = testing::random_cone_case(rng);
    if (c.problem.partition[0] == 0) continue;
    const auto R = compute_R(c.problem, 20);
    const double ratio = std::pow(10.0, 6.0 * unit(rng));
    const Index j = jstar_lower_bound(c.problem, R.value, 1.0, ratio);
    if (j + 1 < 64) {
      EXPECT_GE(jstar_lhs(c.problem, R.value, j + 1), ratio * ratio * (1 - 1e-12)) << c.description;
    }
    if (j >= 1) {
      EXPECT_LT(jstar_lhs(c.problem, R.value, j), ratio * ratio * (1 + 1e-12)) << c.description;
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(JStar, NeedsPositiveFirstPartitionIndex) {
  const Problem p{harmonic_spectrum(), Partition::doubling(0, 16), kCone};
  EXPECT_THROW(jstar_lower_bound(p, 2.0, 1e-3, 1.0), UnsupportedPartition);
}

// Bound chains -----------------------------------------------------------------

TEST(Chains, UpperBoundBelowLowerBoundAtShrunkTolerance) {
  for (double power : {1.0, 2.0}) {
    const Problem p{SingularSpectrum::algebraic(1.0, power), Partition::geometric(1), kCone};
    const double R = std::pow(2.0, power);
    const double omega = compute_omega(kCone, R);
    const auto report = essentially_no_worse(adaptive_cost_bound_curve(p), cone_complexity_lower_curve(p, R), omega,
                                             log_grid(1e-4, 1.0, 20, 1.0, 1e4, 20));
    EXPECT_TRUE(report.holds) << "p=" << power << " violations=" << report.violations.size();
    EXPECT_EQ(report.grid_points, 400u);
  }
}

TEST(Chains, AdaptiveStopBlockWithinUpperBound) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    auto c = testing::random_cone_case(rng);
    const double rho = input_norm(c.source());
    const auto out = adaptive_algorithm(c.problem, c.source(), c.epsilon);
    EXPECT_LE(*out.stop_block, jdagger_bound(c.problem, c.epsilon, rho)) << c.description;
  }
}

TEST(Chains, UpperBoundBelowBallCostWithDecayConstant) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto c = testing::random_cone_case(rng);
    const auto& p = c.problem;
    const double c_lambda = compute_c_lambda(p, 30);
    const double ratio = std::pow(10.0, 4.0 * unit(rng));
    Index rough = 0;
    try {
      rough = jdagger_rough(p, 1.0, ratio);
    } catch (const NonTermination&) {
      continue;
    }
    if (rough < 2) continue;
    const double shrink = c_lambda * c_lambda * std::sqrt(1 - p.cone.b() * p.cone.b()) / (p.cone.a() * p.cone.b());
    const Index ball = ball_cost(p.spectrum, shrink / ratio);
    EXPECT_LT(p.partition[rough], ball) << c.description;
    EXPECT_LT(p.partition[jdagger_bound(p, 1.0, ratio)], ball) << c.description;
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

// Grids and no-worse relation ---------------------------------------------------------------

TEST(LogGrid, EndpointsAndOrder) {
  const auto grid = log_grid(1e-3, 1.0, 4, 2.0, 8.0, 3);
  ASSERT_EQ(grid.size(), 12u);
  EXPECT_EQ(grid.front().epsilon, 1e-3);
  EXPECT_EQ(grid.front().rho, 2.0);
  EXPECT_EQ(grid.back().epsilon, 1.0);
  EXPECT_EQ(grid.back().rho, 8.0);
  EXPECT_NEAR(grid[1].rho, 4.0, 1e-12);
}

TEST(NoWorse, Reflexive) {
  const auto curve = ball_cost_curve(harmonic_spectrum());
  EXPECT_TRUE(essentially_no_worse(curve, curve, 1.0, log_grid(1e-3, 1.0, 10, 1.0, 10.0, 5)).holds);
}

TEST(NoWorse, CostCurvesAreMonotone) {
  const Problem p = harmonic_problem();
  for (const auto& curve : {ball_cost_curve(p.spectrum), adaptive_cost_bound_curve(p),
                            partitioned_ball_cost_curve(p.spectrum, p.partition)}) {
    for (double rho : {1.0, 10.0}) {
      Index previous = ~Index{0};
      for (double eps = 1e-4; eps < 1.0; eps *= 1.5) {
        const Index cost = curve.cost(eps, rho);
        EXPECT_LE(cost, previous) << curve.label;
        previous = cost;
      }
    }
  }
}

TEST(NoWorse, AlgebraicPartitionedBallHolds) {
  for (double power : {1.0, 2.0, 3.0}) {
    const auto s = SingularSpectrum::algebraic(1.0, power);
    const auto report = essentially_no_worse(partitioned_ball_cost_curve(s, Partition::geometric(1)),
                                             ball_cost_curve(s), std::pow(3.0, -power),
                                             log_grid(1e-7, 1e-1, 60, 1.0, 1.0, 1));
    EXPECT_TRUE(report.holds) << "p=" << power;
  }
}

TEST(NoWorse, GeometricPartitionedBallFails) {
  const auto s = SingularSpectrum::geometric(1.0, 2.0);
  const auto report = essentially_no_worse(partitioned_ball_cost_curve(s, Partition::geometric(1)),
                                           ball_cost_curve(s), 1e-3, log_grid(1e-15, 1e-1, 200, 1.0, 1.0, 1));
  EXPECT_FALSE(report.holds);
  ASSERT_FALSE(report.violations.empty());
  // The failing points sit where the partition overshoots the ball cost by nearly 2x.
  bool near_double = false;
  for (const auto& v : report.violations) {
    const double ball = static_cast<double>(ball_cost(s, v.epsilon / v.rho));
    if (static_cast<double>(v.candidate) > 1.5 * ball) near_double = true;
  }
  EXPECT_TRUE(near_double);
}

// Table brackets --------------------------------------------------------------------------------

TEST(TableCheck, Examples) {
  const auto algebraic = table_cost_bounds_check({SpectrumFamily::kAlgebraic, 1.0, 2.0}, 0.01, 1.0);
  EXPECT_EQ(algebraic.cost, 9u);
  EXPECT_TRUE(algebraic.within);
  const auto saturated = table_cost_bounds_check({SpectrumFamily::kGeometric, 1.0, 2.0}, 2.0, 1.0);
  EXPECT_EQ(saturated.cost, 0u);
  EXPECT_FALSE(saturated.applicable);
  const auto geometric = table_cost_bounds_check({SpectrumFamily::kGeometric, 1.0, 2.0}, 1.0 / 1024.0, 1.0);
  EXPECT_EQ(geometric.cost, 9u);
  EXPECT_TRUE(geometric.within);
}

TEST(TableCheck, ScanOracleAgrees) {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const bool algebraic = trial % 2 == 0;
    const FamilySpec spec{algebraic ? SpectrumFamily::kAlgebraic : SpectrumFamily::kGeometric, 0.5 + unit(rng),
                          algebraic ? 0.5 + 3.0 * unit(rng) : 1.1 + 2.0 * unit(rng)};
    const double ratio = std::pow(10.0, 4.0 * unit(rng));
    const auto check = table_cost_bounds_check(spec, 1.0, ratio);
    EXPECT_EQ(check.cost, testing::linear_scan_ball_cost(make_spectrum(spec), 1.0 / ratio));
    if (check.applicable) {
      EXPECT_TRUE(check.within) << "ratio=" << ratio;
    }
  }
}

}  // namespace
}  // namespace adaptlin
