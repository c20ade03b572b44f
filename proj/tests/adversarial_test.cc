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

#include "adaptlin/adversarial.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "adaptlin/algorithm.hpp"
#include "adaptlin/analysis.hpp"
#include "adaptlin/errors.hpp"
#include "adaptlin/problems.hpp"
#include "test_support.hpp"

namespace adaptlin {
namespace {

using testing::unit_spectrum;

const ConeParams kCone(2.0, 0.5);

Problem unit_problem() { return Problem{unit_spectrum(), Partition::geometric(1), kCone}; }

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) sum += x[i] * y[i];
  return sum;
}

// Random problems with n_0 >= 1 and a finite R.
struct Setup {
  Problem problem;
  double R;
  double rho;
  Index j;
};

Setup random_setup(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    auto c = testing::random_cone_case(rng);
    if (c.problem.partition[0] == 0) {
      c.problem.partition = Partition::arithmetic(1 + static_cast<Index>(3 * unit(rng)), 2 + static_cast<Index>(5 * unit(rng)));
    }
    const auto R = compute_R(c.problem, 20);
    if (R.still_increasing || !std::isfinite(R.value)) continue;
    return Setup{c.problem, R.value, std::pow(10.0, -2.0 + 4.0 * unit(rng)), 1 + static_cast<Index>(8 * unit(rng))};
  }
}

// make_fooling_f -----------------------------------------------------------------

TEST(FoolingF, UnitSpectrumPlugIn) {
  const Problem p = unit_problem();
  const double c = fooling_scale(p, 1.0, 1.0, 2);
  EXPECT_NEAR(c * c, 9.0 / 210.0, 1e-15);
  const auto f = make_fooling_f(p, 1.0, 1.0, 2).materialize();
  ASSERT_EQ(f.size(), 4u);
  EXPECT_NEAR(f[1], 2.0 * c, 1e-15);  // k = 1: c b^{-1}
  EXPECT_NEAR(f[3], c, 1e-15);
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[2], 0.0);
}

TEST(FoolingF, NeedsPositiveFirstPartitionIndex) {
  const Problem p{unit_spectrum(), Partition::doubling(0, 4), kCone};
  EXPECT_THROW(make_fooling_f(p, 1.0, 1.0, 2), UnsupportedPartition);
  EXPECT_THROW(make_fooling_f(unit_problem(), 1.0, 1.0, 0), InvalidArgument);
  EXPECT_THROW(make_fooling_f(unit_problem(), 0.5, 1.0, 1), InvalidArgument);
}

TEST(FoolingF, ProfileNormAndMembership) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_setup(rng);
    const auto f = make_fooling_f(s.problem, s.R, s.rho, s.j);
    const double c = fooling_scale(s.problem, s.R, s.rho, s.j);
    const double b = s.problem.cone.b();
    for (Index k = 1; k <= s.j + 2; ++k) {
      const double expect = k <= s.j ? c * std::pow(b, static_cast<double>(k) - static_cast<double>(s.j)) : 0.0;
      EXPECT_NEAR(sigma(s.problem, f, k), expect, 1e-10 * expect);
    }
    EXPECT_LE(input_norm(f), s.rho * (1 + 1e-10));
    const auto report = cone_membership(s.problem, f);
    EXPECT_TRUE(report.member);
    // Ratios are exactly b^r; measured against a b^r that is 1/a.
    EXPECT_NEAR(report.worst_ratio, s.j >= 2 ? 1.0 / s.problem.cone.a() : 0.0, 1e-10);
  }
}

// make_fooling_pair ----------------------------------------------------------------

TEST(FoolingPair, EmptyZeroedFirstBlock) {
  const Problem p = unit_problem();
  const auto pair = make_fooling_pair(p, 1.0, 1.0, 1, {});
  ASSERT_EQ(pair.bump.size(), 2u);
  EXPECT_NE(pair.bump[0], 0.0);
  EXPECT_EQ(pair.bump[1], 0.0);
  EXPECT_EQ(dot(pair.bump, pair.base.materialize()), 0.0);
  EXPECT_DOUBLE_EQ(*std::max_element(pair.block_norms.begin(), pair.block_norms.end()), 1.0);
}

TEST(FoolingPair, FallsBackToSupportCombination) {
  // n = (1, 2, 4): zero every index off the support of f, leaving {2, 4}.
  const Problem p = unit_problem();
  const auto pair = make_fooling_pair(p, 1.0, 1.0, 2, {1, 3});
  const auto base = pair.base.materialize();
  EXPECT_NE(pair.bump[1], 0.0);
  EXPECT_NE(pair.bump[3], 0.0);
  EXPECT_EQ(pair.bump[0], 0.0);
  EXPECT_EQ(pair.bump[2], 0.0);
  EXPECT_NEAR(dot(pair.bump, base), 0.0, 1e-15);
  EXPECT_TRUE(cone_membership(p, pair.plus).member);
  EXPECT_TRUE(cone_membership(p, pair.minus).member);
}

TEST(FoolingPair, Infeasible) {
  const Problem p = unit_problem();
  EXPECT_THROW(make_fooling_pair(p, 1.0, 1.0, 1, {1}), InfeasibleConstraints);
  EXPECT_THROW(make_fooling_pair(p, 1.0, 1.0, 2, {1, 2, 3}), InfeasibleConstraints);
  // Duplicates and out-of-range entries do not count.
  EXPECT_NO_THROW(make_fooling_pair(p, 1.0, 1.0, 2, {1, 1, 1, 99}));
}

TEST(FoolingPair, Invariants) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_setup(rng);
    const Index n_j = s.problem.partition[s.j];
    std::vector<Index> zeroed;
    for (Index i = 1; i <= n_j; ++i) {
      if (unit(rng) < 0.5 && zeroed.size() + 2 < n_j) zeroed.push_back(i);
    }
    const auto pair = make_fooling_pair(s.problem, s.R, s.rho, s.j, zeroed);
    const auto base = pair.base.materialize();
    const auto plus = pair.plus.materialize();
    const auto minus = pair.minus.materialize();
    const double a = s.problem.cone.a();
    const double b = s.problem.cone.b();

    EXPECT_NEAR(a * (pair.c - pair.eta * s.R), pair.c + pair.eta * s.R, 1e-12 * (pair.c + pair.eta * s.R));
    EXPECT_NEAR(*std::max_element(pair.block_norms.begin(), pair.block_norms.end()), 1.0, 1e-15);
    const double scale = std::sqrt(std::inner_product(base.begin(), base.end(), base.begin(), 0.0)) *
                         testing::l2(pair.bump);
    EXPECT_NEAR(dot(pair.bump, base), 0.0, 1e-13 * scale);
    for (Index z : zeroed) {
      EXPECT_EQ(pair.bump[z - 1], 0.0);
      EXPECT_EQ(plus[z - 1], base[z - 1]);
      EXPECT_EQ(minus[z - 1], base[z - 1]);
    }
    for (const auto* g : {&pair.base, &pair.plus, &pair.minus}) {
      EXPECT_TRUE(cone_membership(s.problem, *g).member) << s.problem.spectrum.label();
      EXPECT_LE(input_norm(*g), s.rho * (1 + 1e-10));
    }
    for (Index k = 1; k <= s.j; ++k) {
      const double w = std::pow(b, static_cast<double>(k) - static_cast<double>(s.j));
      for (const auto* g : {&pair.plus, &pair.minus}) {
        const double sk = sigma(s.problem, *g, k);
        EXPECT_GE(sk, w * (pair.c - pair.eta * s.R) * (1 - 1e-12));
        EXPECT_LE(sk, w * (pair.c + pair.eta * s.R) * (1 + 1e-12));
      }
    }
    std::vector<double> difference(n_j);
    for (Index i = 0; i < n_j; ++i) difference[i] = plus[i] - minus[i];
    const double separation = solution_norm(s.problem.spectrum, difference);
    EXPECT_NEAR(separation, pair.separation, 1e-12 * pair.separation);
    EXPECT_GE(separation, 2.0 * pair.eta * (1 - 1e-12));
  }
}

TEST(FoolingPair, AdaptiveRunCannotTellThemApart) {
  std::mt19937_64 rng(53);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_setup(rng);
    s.j = std::max<Index>(s.j, 4);
    const auto& p = s.problem;
    const auto f = make_fooling_f(p, s.R, s.rho, s.j);
    // Tolerance that lets the run stop at block 2 while f still has mass later.
    const double eps = p.cone.tail_factor() * sigma(p, f, 2) * (1 + 1e-9);
    const auto run = adaptive_algorithm(p, f, eps);
    if (run.cost + 1 >= p.partition[s.j]) continue;
    std::vector<Index> sampled(run.cost);
    std::iota(sampled.begin(), sampled.end(), Index{1});
    const auto pair = make_fooling_pair(p, s.R, s.rho, s.j, sampled);
    const auto run_plus = adaptive_algorithm(p, pair.plus, eps);
    const auto run_minus = adaptive_algorithm(p, pair.minus, eps);
    ASSERT_EQ(run_plus.cost, run.cost);
    ASSERT_EQ(run_minus.cost, run.cost);
    EXPECT_EQ(run_plus.samples, run.samples);
    EXPECT_EQ(run_minus.samples, run.samples);
    EXPECT_EQ(run_plus.retained, run_minus.retained);
    // Same answer for inputs whose solutions are `separation` apart: one of the
    // two errors is at least half of it.
    const double worse = std::max(true_error(p, pair.plus, run_plus), true_error(p, pair.minus, run_minus));
    EXPECT_GE(worse, 0.5 * pair.separation * (1 - 1e-12));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

// Blind spots -----------------------------------------------------------------------------------

TEST(BlindSpot, Examples) {
  EXPECT_EQ(orthogonal_blind_spot({1}, 2), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(orthogonal_blind_spot({}, 1), (std::vector<double>{1.0}));
  const auto g = orthogonal_blind_spot({1, 3}, 4);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_GT(testing::l2(g), 0.0);
  EXPECT_THROW(orthogonal_blind_spot({1, 2}, 2), InfeasibleConstraints);
  EXPECT_THROW(orthogonal_blind_spot({}, 0), InvalidArgument);
}

TEST(BlindSpot, ArbitrarilyLargeErrorOnWholeSpace) {
  // A fixed-sample algorithm sees zero for every multiple of the blind spot.
  const Problem p{SingularSpectrum::algebraic(1.0, 1.0), Partition::geometric(1), kCone};
  const Index n = 8;
  std::vector<Index> sampled(n);
  std::iota(sampled.begin(), sampled.end(), Index{1});
  const auto g = orthogonal_blind_spot(sampled, n + 1);
  for (double scale : {1.0, 1e3, 1e6}) {
    std::vector<double> coefficients(g);
    for (double& x : coefficients) x *= scale;
    const auto f = CoefficientSource::from_vector(coefficients);
    const auto approx = interpolate(p, f, n);
    for (const auto& [i, value] : approx.retained) EXPECT_EQ(value, 0.0) << i;
    EXPECT_NEAR(true_error(p, f, approx), scale / 9.0, 1e-12 * scale);
  }
}

}  // namespace
}  // namespace adaptlin
