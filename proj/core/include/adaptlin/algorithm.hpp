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

// Coefficient-sampling algorithms: the fixed-budget interpolant A_n, the
// optimal non-adaptive algorithm for a ball of known radius, and the adaptive
// cone algorithm that keeps doubling its sample until the data-driven error
// bound a b sigma_j / sqrt(1 - b^2) drops below the tolerance.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "adaptlin/spectrum.hpp"

namespace adaptlin {

inline constexpr Index kDefaultJMax = 64;
inline constexpr Index kDefaultNMax = Index{1} << 30;

struct Approximation {
  /// (i, lambda_i f_i) for i = 1..cost.
  std::vector<std::pair<Index, double>> retained;
  /// Sampled input coefficients f_1..f_cost, kept for diagnostics.
  std::vector<double> samples;
  /// Block at which the adaptive rule stopped; empty for fixed-budget runs.
  std::optional<Index> stop_block;
  /// Number of coefficient evaluations.
  Index cost = 0;
  std::optional<double> error_bound;
  std::optional<double> tolerance;
  /// sigma_1..sigma_{j*} as observed by the adaptive rule.
  std::vector<double> sigmas;
};

/// A_n(f): keeps the first n coefficients. Exactly n provider calls.
Approximation interpolate(const Problem& problem, const CoefficientSource& f, Index n);

/// min{ n >= 0 : lambda_{n+1} <= ratio }. Searches by doubling then bisection,
/// which relies only on lambda being non-increasing. Throws BudgetExceeded if
/// no n <= n_max qualifies.
Index ball_cost(const SingularSpectrum& spectrum, double ratio, Index n_max = kDefaultNMax);

/// Optimal algorithm for ||f|| <= rho: A_{n*} with n* = ball_cost(eps / rho).
Approximation ball_algorithm(const Problem& problem, const CoefficientSource& f, double epsilon, double rho,
                             Index n_max = kDefaultNMax);

struct AdaptiveOptions {
  Index j_max = kDefaultJMax;
  /// Upper limit on n_j; reaching it raises BudgetExceeded before sampling.
  Index n_max = kDefaultNMax;
};

/// Adaptive cone algorithm. For j = 1, 2, ... computes sigma_j(f) and stops
/// at the first j with sigma_j <= eps sqrt(1 - b^2) / (a b); returns A_{n_j}.
/// The guarantee ||S(f) - result|| <= eps holds whenever f lies in the cone.
/// Each coefficient is requested exactly once, so cost == n_{j*}.
/// Throws NonTermination once j exceeds options.j_max.
Approximation adaptive_algorithm(const Problem& problem, const CoefficientSource& f, double epsilon,
                                 AdaptiveOptions options = {});

/// Exact error of an approximation of a finite-support input.
double true_error(const Problem& problem, const CoefficientSource& f, const Approximation& approx);

}  // namespace adaptlin
