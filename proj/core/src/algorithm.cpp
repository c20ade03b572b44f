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

#include "adaptlin/algorithm.hpp"

#include <cmath>
#include <string>

#include "adaptlin/errors.hpp"

namespace adaptlin {

namespace {

double solution_coefficient(const SingularSpectrum& spectrum, Index i, double coefficient) {
  // Zero inputs need no singular value; explicit spectra may end at the support.
  return coefficient == 0.0 ? 0.0 : spectrum(i) * coefficient;
}

void check_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

Approximation interpolate(const Problem& problem, const CoefficientSource& f, Index n) {
  Approximation out;
  out.cost = n;
  out.samples.reserve(n);
  out.retained.reserve(n);
  for (Index i = 1; i <= n; ++i) {
    const double coefficient = f(i);
    out.samples.push_back(coefficient);
    out.retained.emplace_back(i, solution_coefficient(problem.spectrum, i, coefficient));
  }
  return out;
}

Index ball_cost(const SingularSpectrum& spectrum, double ratio, Index n_max) {
  check_positive(ratio, "epsilon / rho");
  auto done = [&](Index n) { return spectrum(n + 1) <= ratio; };
  if (done(0)) return 0;
  // Invariant: done(low) is false; find some high with done(high) true.
  Index low = 0;
  Index high = 1;
  while (!done(high)) {
    if (high >= n_max) {
      throw BudgetExceeded("no n <= " + std::to_string(n_max) + " has lambda_{n+1} <= " + std::to_string(ratio));
    }
    low = high;
    high = std::min(n_max, 2 * high);
  }
  while (high - low > 1) {
    const Index mid = low + (high - low) / 2;
    if (done(mid)) {
      high = mid;
    } else {
      low = mid;
    }
  }
  return high;
}

Approximation ball_algorithm(const Problem& problem, const CoefficientSource& f, double epsilon, double rho,
                             Index n_max) {
  check_positive(epsilon, "epsilon");
  check_positive(rho, "rho");
  Approximation out = interpolate(problem, f, ball_cost(problem.spectrum, epsilon / rho, n_max));
  out.tolerance = epsilon;
  return out;
}

Approximation adaptive_algorithm(const Problem& problem, const CoefficientSource& f, double epsilon,
                                 AdaptiveOptions options) {
  check_positive(epsilon, "epsilon");
  const double factor = problem.cone.tail_factor();
  Approximation out;
  out.tolerance = epsilon;
  // samples[i - 1] holds f_i for the indices requested so far; the indices
  // 1..n_0 are outside every block and are requested when the run stops.
  const Index n0 = problem.partition[0];
  std::vector<double> block_samples;

  for (Index j = 1;; ++j) {
    if (j > options.j_max) {
      throw NonTermination("adaptive algorithm did not stop within " + std::to_string(options.j_max) +
                           " blocks (input outside the cone, or tolerance unreachable)");
    }
    const Index first = problem.partition[j - 1] + 1;
    const Index last = problem.partition[j];
    if (last > options.n_max) {
      throw BudgetExceeded("block " + std::to_string(j) + " ends at n = " + std::to_string(last) +
                           " beyond n_max = " + std::to_string(options.n_max));
    }
    long double sum = 0.0L;
    for (Index i = first; i <= last; ++i) {
      const double coefficient = f(i);
      block_samples.push_back(coefficient);
      if (coefficient == 0.0) continue;
      const long double term = static_cast<long double>(problem.spectrum(i)) * coefficient;
      sum += term * term;
    }
    const double block_sigma = static_cast<double>(std::sqrt(sum));
    out.sigmas.push_back(block_sigma);
    // Same test as sigma_j <= eps sqrt(1 - b^2) / (a b), phrased on the bound
    // itself so that error_bound <= eps holds in floating point too.
    const double bound = factor * block_sigma;
    if (bound <= epsilon) {
      out.stop_block = j;
      out.cost = last;
      out.error_bound = bound;
      break;
    }
  }

  out.samples.reserve(out.cost);
  for (Index i = 1; i <= n0; ++i) out.samples.push_back(f(i));
  out.samples.insert(out.samples.end(), block_samples.begin(), block_samples.end());
  out.retained.reserve(out.cost);
  for (Index i = 1; i <= out.cost; ++i) {
    out.retained.emplace_back(i, solution_coefficient(problem.spectrum, i, out.samples[i - 1]));
  }
  return out;
}

double true_error(const Problem& problem, const CoefficientSource& f, const Approximation& approx) {
  return tail_norm_oracle(problem, f, approx.cost);
}

}  // namespace adaptlin
