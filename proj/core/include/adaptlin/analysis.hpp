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

// Cost and complexity bounds for the adaptive cone algorithm, the lower bound
// on the complexity of the cone, and grid certificates of the
// "essentially no worse" relation between cost curves.
//
// Every block-index scan shares the J_max guard and throws NonTermination
// when it is exhausted.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adaptlin/algorithm.hpp"
#include "adaptlin/spectrum.hpp"

namespace adaptlin {

/// Finite-horizon estimate of R = sup_k lambda_{n_{k-1}} / lambda_{n_k}.
struct RatioEstimate {
  double value = 1.0;
  /// The last term (k = k_max) still raised the running maximum, so the
  /// supremum may not have been reached.
  bool still_increasing = false;
  /// First k used: lambda_0 does not exist, so terms start where n_{k-1} >= 1.
  Index first_k = 1;
  Index k_max = 0;
};

RatioEstimate compute_R(const Problem& problem, Index k_max);

/// omega = sqrt( (1 - b^2) / (a^4 (1 + b^2 R^2 + b^4 R^4))
///               / ((a + 1)^2 R^2 / (a - 1)^2 + 1) ).
double compute_omega(const ConeParams& cone, double R);

/// min over j = 0..j_max-1 of lambda_{n_{j+1}+1} / lambda_{n_j+1}: the largest
/// c_lambda with lambda_{n_{j+1}+1} >= c_lambda lambda_{n_j+1} on that range.
double compute_c_lambda(const Problem& problem, Index j_max);

struct ConeComplexityConstants {
  double R = 1.0;
  double c_lambda = 1.0;
  double omega = 0.0;

  /// Computes omega and checks 0 < omega < 1, R >= 1, 0 < c_lambda <= 1.
  static ConeComplexityConstants make(const ConeParams& cone, double R, double c_lambda);
};

/// Smallest j with rho^2 / eps^2 <= (1 - b^2) / (a^2 b^2) *
///   [ sum_{k=1}^{j-1} b^{2(k-j)} / (a^2 lambda^2_{n_{k-1}+1}) + 1 / lambda^2_{n_{j-1}+1} ].
/// The adaptive algorithm stops by block j for every cone member with norm <= rho.
Index jdagger_bound(const Problem& problem, double epsilon, double rho, Index j_max = kDefaultJMax);

/// Smallest j with lambda_{n_{j-1}+1} <= eps sqrt(1 - b^2) / (a b rho).
Index jdagger_rough(const Problem& problem, double epsilon, double rho, Index j_max = kDefaultJMax);

/// ceil( log(rho a^2 lambda_{n_0+1} / (eps sqrt(1 - b^2))) / log(1/b) ), at least 1.
Index jdagger_first(const Problem& problem, double epsilon, double rho);

/// ceil( log(rho alpha a b / (eps sqrt(1 - b^2))) / log(1/beta) ), at least 1;
/// valid when lambda_{n_{j-1}+1} <= alpha beta^j for all j.
Index jdagger_geometric(double alpha, double beta, const ConeParams& cone, double epsilon, double rho);

/// Largest j >= 1 with
///   ((a+1)^2 R^2 / (a-1)^2 + 1) sum_{k=0}^{j} b^{2(k-j)} / lambda^2_{n_k} < rho^2 / eps^2,
/// or 0 if j = 1 already fails. Then every algorithm that succeeds on the cone
/// needs at least n_j samples for some input of norm <= rho.
/// Requires n_0 >= 1 (throws UnsupportedPartition).
Index jstar_lower_bound(const Problem& problem, double R, double epsilon, double rho, Index j_max = kDefaultJMax);

// ---------------------------------------------------------------------------
// Cost curves

struct CostCurve {
  std::string label;
  std::function<Index(double epsilon, double rho)> cost;
};

struct GridPoint {
  double epsilon;
  double rho;
};

/// Cartesian log-spaced grid, epsilon outer, both ends included.
std::vector<GridPoint> log_grid(double eps_min, double eps_max, Index eps_count, double rho_min, double rho_max,
                                Index rho_count);

/// Cost of the optimal ball algorithm: min{ n : lambda_{n+1} <= eps / rho }.
CostCurve ball_cost_curve(const SingularSpectrum& spectrum, std::string label = "ball");
/// Ball algorithm restricted to partition sizes: n_j with
/// j = min{ j : lambda_{n_j+1} <= eps / rho }.
CostCurve partitioned_ball_cost_curve(const SingularSpectrum& spectrum, const Partition& partition,
                                      std::string label = "partitioned-ball", Index j_max = kDefaultJMax);
/// n_{j_dagger}: upper bound on the adaptive cost over the cone and ball.
CostCurve adaptive_cost_bound_curve(const Problem& problem, Index j_max = kDefaultJMax);
/// n_{j*}: lower bound on the complexity of the cone (0 when j* = 0).
CostCurve cone_complexity_lower_curve(const Problem& problem, double R, Index j_max = kDefaultJMax);

struct NoWorseViolation {
  double epsilon;
  double rho;
  Index candidate;
  Index reference;
};

struct NoWorseReport {
  bool holds = true;
  double omega = 1.0;
  Index grid_points = 0;
  std::vector<NoWorseViolation> violations;
};

/// Checks candidate(eps, rho) <= reference(omega eps, rho) on every grid
/// point. A certificate on the grid only.
NoWorseReport essentially_no_worse(const CostCurve& candidate, const CostCurve& reference, double omega,
                                   const std::vector<GridPoint>& grid);

// ---------------------------------------------------------------------------
// Closed-form cost brackets of the ball algorithm

enum class SpectrumFamily {
  kAlgebraic,  // lambda_i = C / i^p
  kGeometric,  // lambda_i = C / p^i
};

struct FamilySpec {
  SpectrumFamily family;
  double scale;  // C
  double power;  // p
};

SingularSpectrum make_spectrum(const FamilySpec& spec);

struct TableCheck {
  Index cost = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool applicable = true;  // geometric brackets need eps < C rho
  bool within = false;
};

/// Computes the ball cost directly and checks it against
///   algebraic: (C rho/eps)^{1/p} - 1 <= cost < (C rho/eps)^{1/p}
///   geometric: log(C rho/eps)/log p - 1 <= cost < log(C rho/eps)/log p.
/// Bracket comparisons allow a relative slack of 1e-12 for rounding in the
/// closed forms.
TableCheck table_cost_bounds_check(const FamilySpec& spec, double epsilon, double rho);

}  // namespace adaptlin
