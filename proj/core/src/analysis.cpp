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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "adaptlin/errors.hpp"

namespace adaptlin {

namespace {

constexpr double kBracketSlack = 1e-12;

void check_tolerance(double epsilon, double rho) {
  if (!(epsilon > 0.0) || !(rho > 0.0) || !std::isfinite(epsilon) || !std::isfinite(rho)) {
    throw InvalidArgument("epsilon and rho must be positive and finite");
  }
}

[[noreturn]] void guard_exceeded(const char* what, Index j_max) {
  throw NonTermination(std::string(what) + ": no block index <= J_max = " + std::to_string(j_max) + " qualifies");
}

Index clamped_ceil(double x) {
  if (!(x > 1.0)) return 1;
  if (x >= 9.0e15) throw InvalidArgument("block bound does not fit an index");
  return static_cast<Index>(std::ceil(x));
}

}  // namespace

RatioEstimate compute_R(const Problem& problem, Index k_max) {
  if (k_max == 0) throw InvalidArgument("compute_R needs k_max >= 1");
  RatioEstimate out;
  out.k_max = k_max;
  out.first_k = problem.partition[0] >= 1 ? 1 : 2;
  double running = 0.0;
  bool any = false;
  for (Index k = out.first_k; k <= k_max; ++k) {
    const double numerator = problem.spectrum(problem.partition[k - 1]);
    const double denominator = problem.spectrum(problem.partition[k]);
    const double ratio = denominator > 0.0 ? numerator / denominator : std::numeric_limits<double>::infinity();
    const bool raised = !any || ratio > running * (1.0 + 1e-9);
    if (!any || ratio > running) running = ratio;
    any = true;
    out.still_increasing = (k == k_max) && raised && k > out.first_k;
    if (std::isinf(running)) {
      out.still_increasing = true;
      break;
    }
  }
  out.value = any ? running : 1.0;
  return out;
}

double compute_omega(const ConeParams& cone, double R) {
  if (!(R >= 1.0) || !std::isfinite(R)) throw InvalidArgument("compute_omega needs finite R >= 1");
  const double a = cone.a();
  const double b = cone.b();
  const double b2R2 = b * b * R * R;
  const double bracket = (a + 1.0) * (a + 1.0) * R * R / ((a - 1.0) * (a - 1.0)) + 1.0;
  const double a4 = a * a * a * a;
  return std::sqrt((1.0 - b * b) / (a4 * (1.0 + b2R2 + b2R2 * b2R2)) / bracket);
}

double compute_c_lambda(const Problem& problem, Index j_max) {
  double smallest = 1.0;
  for (Index j = 0; j < j_max; ++j) {
    const double now = problem.spectrum(problem.partition[j] + 1);
    const double next = problem.spectrum(problem.partition[j + 1] + 1);
    smallest = std::min(smallest, next / now);
  }
  return smallest;
}

ConeComplexityConstants ConeComplexityConstants::make(const ConeParams& cone, double R, double c_lambda) {
  if (!(c_lambda > 0.0) || c_lambda > 1.0) throw InvalidArgument("c_lambda must lie in (0, 1]");
  ConeComplexityConstants out;
  out.R = R;
  out.c_lambda = c_lambda;
  out.omega = compute_omega(cone, R);
  if (!(out.omega > 0.0 && out.omega < 1.0)) throw InvalidArgument("omega outside (0, 1)");
  return out;
}

Index jdagger_bound(const Problem& problem, double epsilon, double rho, Index j_max) {
  check_tolerance(epsilon, rho);
  const double a = problem.cone.a();
  const double b = problem.cone.b();
  const double target = (rho / epsilon) * (rho / epsilon);
  const double scale = (1.0 - b * b) / (a * a * b * b);
  // partial = sum_{k=1}^{j-1} b^{2(k-j)} / (a^2 lambda^2_{n_{k-1}+1})
  double partial = 0.0;
  for (Index j = 1; j <= j_max; ++j) {
    const double lambda = problem.spectrum(problem.partition[j - 1] + 1);
    const double inverse_square = 1.0 / (lambda * lambda);
    if (target <= scale * (partial + inverse_square)) return j;
    partial = (partial + inverse_square / (a * a)) / (b * b);
  }
  guard_exceeded("jdagger_bound", j_max);
}

Index jdagger_rough(const Problem& problem, double epsilon, double rho, Index j_max) {
  check_tolerance(epsilon, rho);
  const double a = problem.cone.a();
  const double b = problem.cone.b();
  const double threshold = epsilon * std::sqrt(1.0 - b * b) / (a * b * rho);
  for (Index j = 1; j <= j_max; ++j) {
    if (problem.spectrum(problem.partition[j - 1] + 1) <= threshold) return j;
  }
  guard_exceeded("jdagger_rough", j_max);
}

Index jdagger_first(const Problem& problem, double epsilon, double rho) {
  check_tolerance(epsilon, rho);
  const double a = problem.cone.a();
  const double b = problem.cone.b();
  const double lambda = problem.spectrum(problem.partition[0] + 1);
  const double argument = rho * a * a * lambda / (epsilon * std::sqrt(1.0 - b * b));
  return clamped_ceil(std::log(argument) / std::log(1.0 / b));
}

Index jdagger_geometric(double alpha, double beta, const ConeParams& cone, double epsilon, double rho) {
  check_tolerance(epsilon, rho);
  if (!(alpha > 0.0) || !(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidArgument("jdagger_geometric needs alpha > 0 and 0 < beta < 1");
  }
  const double a = cone.a();
  const double b = cone.b();
  const double argument = rho * alpha * a * b / (epsilon * std::sqrt(1.0 - b * b));
  return clamped_ceil(std::log(argument) / std::log(1.0 / beta));
}

Index jstar_lower_bound(const Problem& problem, double R, double epsilon, double rho, Index j_max) {
  check_tolerance(epsilon, rho);
  if (problem.partition[0] == 0) {
    throw UnsupportedPartition("the complexity lower bound uses lambda_{n_0} and needs n_0 >= 1");
  }
  const double a = problem.cone.a();
  const double b = problem.cone.b();
  const double factor = (a + 1.0) * (a + 1.0) * R * R / ((a - 1.0) * (a - 1.0)) + 1.0;
  const double target = (rho / epsilon) * (rho / epsilon);
  auto inverse_square = [&](Index k) {
    const double lambda = problem.spectrum(problem.partition[k]);
    return 1.0 / (lambda * lambda);
  };
  // sum_j = sum_{k=0}^{j} b^{2(k-j)} / lambda^2_{n_k} = sum_{j-1} / b^2 + 1 / lambda^2_{n_j}
  double sum = inverse_square(0);
  Index best = 0;
  for (Index j = 1; j <= j_max; ++j) {
    sum = sum / (b * b) + inverse_square(j);
    if (!(factor * sum < target)) return best;
    best = j;
  }
  guard_exceeded("jstar_lower_bound", j_max);
}

std::vector<GridPoint> log_grid(double eps_min, double eps_max, Index eps_count, double rho_min, double rho_max,
                                Index rho_count) {
  if (!(eps_min > 0.0) || !(eps_max >= eps_min) || !(rho_min > 0.0) || !(rho_max >= rho_min) || eps_count == 0 ||
      rho_count == 0) {
    throw InvalidArgument("log_grid needs positive ordered ranges and non-zero counts");
  }
  auto spaced = [](double lo, double hi, Index count) {
    std::vector<double> out(count);
    for (Index k = 0; k < count; ++k) {
      const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
      out[k] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    if (count > 1) out.back() = hi;
    out.front() = lo;
    return out;
  };
  const auto eps = spaced(eps_min, eps_max, eps_count);
  const auto rho = spaced(rho_min, rho_max, rho_count);
  std::vector<GridPoint> grid;
  grid.reserve(eps_count * rho_count);
  for (double e : eps) {
    for (double r : rho) grid.push_back({e, r});
  }
  return grid;
}

CostCurve ball_cost_curve(const SingularSpectrum& spectrum, std::string label) {
  return {std::move(label), [spectrum](double epsilon, double rho) {
            check_tolerance(epsilon, rho);
            return ball_cost(spectrum, epsilon / rho);
          }};
}

CostCurve partitioned_ball_cost_curve(const SingularSpectrum& spectrum, const Partition& partition, std::string label,
                                      Index j_max) {
  return {std::move(label), [spectrum, partition, j_max](double epsilon, double rho) {
            check_tolerance(epsilon, rho);
            for (Index j = 0; j <= j_max; ++j) {
              if (spectrum(partition[j] + 1) <= epsilon / rho) return partition[j];
            }
            guard_exceeded("partitioned ball cost", j_max);
          }};
}

CostCurve adaptive_cost_bound_curve(const Problem& problem, Index j_max) {
  return {"adaptive-upper", [problem, j_max](double epsilon, double rho) {
            return problem.partition[jdagger_bound(problem, epsilon, rho, j_max)];
          }};
}

CostCurve cone_complexity_lower_curve(const Problem& problem, double R, Index j_max) {
  return {"cone-lower", [problem, R, j_max](double epsilon, double rho) -> Index {
            const Index j = jstar_lower_bound(problem, R, epsilon, rho, j_max);
            return j == 0 ? 0 : problem.partition[j];
          }};
}

NoWorseReport essentially_no_worse(const CostCurve& candidate, const CostCurve& reference, double omega,
                                   const std::vector<GridPoint>& grid) {
  if (grid.empty()) throw InvalidArgument("essentially_no_worse needs a non-empty grid");
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  NoWorseReport report;
  report.omega = omega;
  report.grid_points = grid.size();
  for (const auto& point : grid) {
    const Index lhs = candidate.cost(point.epsilon, point.rho);
    const Index rhs = reference.cost(omega * point.epsilon, point.rho);
    if (lhs > rhs) report.violations.push_back({point.epsilon, point.rho, lhs, rhs});
  }
  report.holds = report.violations.empty();
  return report;
}

SingularSpectrum make_spectrum(const FamilySpec& spec) {
  return spec.family == SpectrumFamily::kAlgebraic ? SingularSpectrum::algebraic(spec.scale, spec.power)
                                                   : SingularSpectrum::geometric(spec.scale, spec.power);
}

TableCheck table_cost_bounds_check(const FamilySpec& spec, double epsilon, double rho) {
  check_tolerance(epsilon, rho);
  TableCheck out;
  out.cost = ball_cost(make_spectrum(spec), epsilon / rho);
  const double q = spec.scale * rho / epsilon;
  if (spec.family == SpectrumFamily::kAlgebraic) {
    out.upper = std::pow(q, 1.0 / spec.power);
  } else {
    out.applicable = q > 1.0;
    out.upper = std::log(q) / std::log(spec.power);
  }
  out.lower = out.upper - 1.0;
  const double cost = static_cast<double>(out.cost);
  const double slack = kBracketSlack * std::max(1.0, std::abs(out.upper));
  out.within = out.applicable && cost >= out.lower - slack && cost < out.upper + slack;
  return out;
}

}  // namespace adaptlin
