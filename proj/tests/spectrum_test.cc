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

#include "adaptlin/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "adaptlin/errors.hpp"
#include "test_support.hpp"

namespace adaptlin {
namespace {

using testing::direct_block_norm;
using testing::harmonic_spectrum;
using testing::unit_spectrum;

Problem unit_problem(Partition partition) { return Problem{unit_spectrum(), partition, ConeParams(2.0, 0.5)}; }

TEST(SingularSpectrum, ClosedFormValues) {
  const auto s = SingularSpectrum::algebraic(3.0, 2.0);
  EXPECT_DOUBLE_EQ(s(1), 3.0);
  EXPECT_DOUBLE_EQ(s(4), 3.0 / 16.0);
  const auto g = SingularSpectrum::geometric(1.0, 2.0);
  EXPECT_DOUBLE_EQ(g(3), 0.125);
  EXPECT_FALSE(s.length().has_value());
}

TEST(SingularSpectrum, ZeroIndexRejected) {
  EXPECT_THROW(SingularSpectrum::algebraic(1.0, 1.0)(0), IndexOutOfRange);
}

TEST(SingularSpectrum, ExplicitListBoundsAndValidation) {
  const auto s = SingularSpectrum::from_values({1.0, 0.5, 0.5, 0.1});
  EXPECT_EQ(s.length(), Index{4});
  EXPECT_DOUBLE_EQ(s(3), 0.5);
  EXPECT_THROW(s(5), IndexOutOfRange);
  EXPECT_THROW(SingularSpectrum::from_values({1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(SingularSpectrum::from_values({1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(SingularSpectrum::from_values({}), InvalidArgument);
}

TEST(SingularSpectrum, WitnessIsBelowDelta) {
  for (double p : {0.5, 1.0, 2.5}) {
    const auto s = SingularSpectrum::algebraic(2.0, p);
    for (double delta : {1.0, 1e-2, 1e-5}) {
      const auto w = s.witness_below(delta);
      ASSERT_TRUE(w.has_value());
      EXPECT_LT(s(*w), delta) << "p=" << p << " delta=" << delta;
    }
  }
  const auto g = SingularSpectrum::geometric(5.0, 1.5);
  const auto w = g.witness_below(1e-6);
  ASSERT_TRUE(w.has_value());
  EXPECT_LT(g(*w), 1e-6);
}

TEST(SingularSpectrum, ValidateCatchesIncreasingRule) {
  const auto bad = SingularSpectrum::from_rule([](Index i) { return i == 3 ? 2.0 : 1.0; }, "bump");
  EXPECT_THROW(bad.validate(5), InvalidArgument);
  EXPECT_NO_THROW(harmonic_spectrum().validate(100));
}

TEST(Partition, Sequences) {
  const auto g = Partition::geometric(1);
  EXPECT_EQ(g[0], 1u);
  EXPECT_EQ(g[1], 2u);
  EXPECT_EQ(g[5], 32u);
  const auto d = Partition::doubling(0, 16);
  EXPECT_EQ(d[0], 0u);
  EXPECT_EQ(d[1], 16u);
  EXPECT_EQ(d[3], 64u);
  const auto a = Partition::arithmetic(3, 5);
  EXPECT_EQ(a[0], 3u);
  EXPECT_EQ(a[4], 23u);
}

TEST(Partition, StrictlyIncreasing) {
  for (const auto& p : {Partition::geometric(3), Partition::doubling(0, 7), Partition::arithmetic(0, 1)}) {
    for (Index j = 0; j < 40; ++j) EXPECT_LT(p[j], p[j + 1]) << p.describe() << " j=" << j;
  }
}

TEST(Partition, ErrorPaths) {
  EXPECT_THROW(Partition::geometric(0), InvalidArgument);
  EXPECT_THROW(Partition::doubling(4, 4), InvalidArgument);
  EXPECT_THROW(Partition::arithmetic(0, 0), InvalidArgument);
  EXPECT_THROW(Partition::explicit_list({0, 2, 2}), InvalidArgument);
  const auto e = Partition::explicit_list({0, 2, 5});
  EXPECT_EQ(e[2], 5u);
  EXPECT_THROW(e[3], IndexOutOfRange);
  EXPECT_THROW(Partition::geometric(1)[200], IndexOutOfRange);
}

TEST(Partition, FirstBlockCovering) {
  const auto g = Partition::geometric(1);
  EXPECT_EQ(g.first_block_covering(0), 1u);
  EXPECT_EQ(g.first_block_covering(2), 1u);
  EXPECT_EQ(g.first_block_covering(3), 2u);
  EXPECT_EQ(g.first_block_covering(1000), 10u);
}

TEST(ConeParams, Validation) {
  EXPECT_THROW(ConeParams(1.0, 0.5), InvalidArgument);
  EXPECT_THROW(ConeParams(2.0, 0.0), InvalidArgument);
  EXPECT_THROW(ConeParams(2.0, 1.0), InvalidArgument);
  const ConeParams c(2.0, 0.5);
  EXPECT_NEAR(c.tail_factor(), 1.0 / std::sqrt(0.75), 1e-15);
  EXPECT_NEAR(c.stopping_threshold(0.1), 0.0866025403784, 1e-12);
}

TEST(CoefficientSource, SupportAndMaterialize) {
  const auto f = CoefficientSource::from_rule([](Index i) { return static_cast<double>(i); }, 3);
  EXPECT_EQ(f(2), 2.0);
  EXPECT_EQ(f(7), 0.0);
  EXPECT_EQ(f.materialize(), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(f.scaled(-2.0)(3), -6.0);
  EXPECT_EQ(CoefficientSource::zero()(9), 0.0);
  const auto open = CoefficientSource::from_rule([](Index) { return 1.0; });
  EXPECT_THROW(open.materialize(), UndecidableMembership);
}

// sigma ------------------------------------------------------------------

TEST(Sigma, ZeroInput) {
  EXPECT_EQ(sigma(unit_problem(Partition::geometric(1)), CoefficientSource::zero(), 3), 0.0);
}

TEST(Sigma, HalvingInputSecondBlock) {
  // Block 2 of (1, 2, 4, ...) is i = 3, 4: sqrt(2^-6 + 2^-8) = sqrt(5)/16.
  const auto f = CoefficientSource::from_rule([](Index i) { return std::ldexp(1.0, -static_cast<int>(i)); });
  EXPECT_NEAR(sigma(unit_problem(Partition::geometric(1)), f, 2), std::sqrt(5.0) / 16.0, 1e-15);
}

TEST(Sigma, HarmonicSecondBlock) {
  const Problem p{harmonic_spectrum(), Partition::arithmetic(0, 2), ConeParams(2.0, 0.5)};
  const auto f = CoefficientSource::from_vector({1.0, 1.0, 1.0, 1.0});
  EXPECT_NEAR(sigma(p, f, 2), 5.0 / 12.0, 1e-15);
}

TEST(Sigma, RejectsBlockZeroAndExhaustedPartition) {
  const auto f = CoefficientSource::from_vector({1.0, 1.0});
  EXPECT_THROW(sigma(unit_problem(Partition::geometric(1)), f, 0), InvalidArgument);
  EXPECT_THROW(sigma(unit_problem(Partition::explicit_list({0, 1, 2})), f, 3), IndexOutOfRange);
}

class SigmaProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{7};
};

TEST_F(SigmaProperties, PythagorasOverBlocks) {
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testing::random_cone_case(rng);
    const Index blocks = c.profile.size();
    double sum_sq = 0.0;
    for (Index j = 1; j <= blocks; ++j) {
      const double s = sigma(c.problem, c.source(), j);
      sum_sq += s * s;
    }
    const double total =
        direct_block_norm(c.problem.spectrum, c.coefficients, c.problem.partition[0] + 1, c.problem.partition[blocks]);
    EXPECT_NEAR(std::sqrt(sum_sq), total, 1e-12 * total) << c.description;
  }
}

TEST_F(SigmaProperties, SandwichBetweenMaxAndSumOfTerms) {
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testing::random_cone_case(rng);
    const auto& p = c.problem;
    for (Index j = 1; j <= c.profile.size(); ++j) {
      double largest = 0.0;
      double total = 0.0;
      for (Index i = p.partition[j - 1] + 1; i <= p.partition[j]; ++i) {
        const double t = std::abs(p.spectrum(i) * c.coefficients[i - 1]);
        largest = std::max(largest, t);
        total += t;
      }
      const double s = sigma(p, c.source(), j);
      EXPECT_LE(largest, s * (1 + 1e-14));
      EXPECT_LE(s, total * (1 + 1e-14));
      EXPECT_NEAR(s, c.profile[j - 1], 1e-12 * c.profile[j - 1]);
    }
  }
}

TEST_F(SigmaProperties, HomogeneousInInput) {
  std::uniform_real_distribution<double> scale(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = testing::random_cone_case(rng);
    const double t = scale(rng);
    for (Index j = 1; j <= c.profile.size(); ++j) {
      const double base = sigma(c.problem, c.source(), j);
      EXPECT_NEAR(sigma(c.problem, c.source().scaled(t), j), std::abs(t) * base, 1e-13 * std::abs(t) * base);
    }
  }
}

// Membership --------------------------------------------------------------

TEST(ConeMembership, ZeroIsMember) {
  const auto report = cone_membership(unit_problem(Partition::geometric(1)), CoefficientSource::zero());
  EXPECT_TRUE(report.member);
  EXPECT_EQ(report.worst_ratio, 0.0);
}

TEST(ConeMembership, GrowingBlockWitness) {
  // sigma = (0, 1, ...) on n = (0, 1, 2, 3): sigma_2 / sigma_1 = 0/1, sigma_3 / sigma_2 = inf.
  const Problem p = unit_problem(Partition::arithmetic(0, 1));
  const auto report = cone_membership(p, CoefficientSource::from_vector({1.0, 0.0, 1.0}));
  EXPECT_FALSE(report.member);
  ASSERT_TRUE(report.witness.has_value());
  EXPECT_EQ(report.witness->first, 1u);
  EXPECT_EQ(report.witness->second, 2u);
}

TEST(ConeMembership, UnboundedSupportIsUndecidable) {
  const auto f = CoefficientSource::from_rule([](Index) { return 1.0; });
  EXPECT_THROW(cone_membership(unit_problem(Partition::geometric(1)), f), UndecidableMembership);
}

TEST(ConeMembership, ConstructedCasesAreMembers) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto c = testing::random_cone_case(rng);
    const auto report = cone_membership(c.problem, c.source());
    EXPECT_TRUE(report.member) << c.description << " worst=" << report.worst_ratio;
  }
}

TEST(ConeMembership, ScaleInvariant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = testing::random_cone_case(rng);
    // Push the last block up so that the input leaves the cone.
    if (c.profile.size() >= 2) {
      const Index last = c.profile.size();
      for (Index i = c.problem.partition[last - 1] + 1; i <= c.problem.partition[last]; ++i) {
        c.coefficients[i - 1] *= 10.0 * c.problem.cone.a() / std::pow(c.problem.cone.b(), last);
      }
    }
    const bool member = cone_membership(c.problem, c.source()).member;
    for (double t : {-3.0, 1e-4, 250.0}) {
      EXPECT_EQ(cone_membership(c.problem, c.source().scaled(t)).member, member) << c.description;
    }
  }
}

// Tail oracle ----------------------------------------------------------------

TEST(TailNorm, Examples) {
  const Problem p{harmonic_spectrum(), Partition::geometric(1), ConeParams(2.0, 0.5)};
  const auto f = CoefficientSource::from_vector({1.0, 1.0, 1.0});
  EXPECT_NEAR(tail_norm_oracle(p, f, 1), std::sqrt(1.0 / 4 + 1.0 / 9), 1e-15);
  EXPECT_EQ(tail_norm_oracle(p, f, 3), 0.0);
  EXPECT_EQ(tail_norm_oracle(p, f, 10), 0.0);
  EXPECT_EQ(tail_norm_oracle(p, CoefficientSource::zero(), 0), 0.0);
  EXPECT_THROW(tail_norm_oracle(p, CoefficientSource::from_rule([](Index) { return 1.0; }), 0),
               UndecidableMembership);
}

TEST(TailNorm, MatchesSumOfLaterBlocks) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = testing::random_cone_case(rng);
    for (Index j = 0; j <= c.profile.size(); ++j) {
      double later = 0.0;
      for (Index k = j + 1; k <= c.profile.size(); ++k) later += c.profile[k - 1] * c.profile[k - 1];
      const double tail = tail_norm_oracle(c.problem, c.source(), c.problem.partition[j]);
      EXPECT_NEAR(tail, std::sqrt(later), 1e-12 * (1.0 + std::sqrt(later)));
    }
  }
}

TEST(InputNorm, Euclidean) {
  EXPECT_DOUBLE_EQ(input_norm(CoefficientSource::from_vector({3.0, 4.0})), 5.0);
  EXPECT_EQ(input_norm(CoefficientSource::zero()), 0.0);
}

}  // namespace
}  // namespace adaptlin
