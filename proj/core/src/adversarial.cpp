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

#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "adaptlin/errors.hpp"

namespace adaptlin {

namespace {

void require_fooling_inputs(const Problem& problem, double R, double rho, Index j) {
  if (problem.partition[0] == 0) {
    throw UnsupportedPartition("fooling functions need n_0 >= 1 (lambda_{n_0} enters the construction)");
  }
  if (j == 0) throw InvalidArgument("fooling functions need j >= 1");
  if (!(R >= 1.0) || !std::isfinite(R)) throw InvalidArgument("fooling functions need finite R >= 1");
  if (!(rho > 0.0)) throw InvalidArgument("fooling functions need rho > 0");
}

std::set<Index> distinct_in_range(const std::vector<Index>& indices, Index last) {
  std::set<Index> out;
  for (Index i : indices) {
    if (i >= 1 && i <= last) out.insert(i);
  }
  return out;
}

}  // namespace

double fooling_scale(const Problem& problem, double R, double rho, Index j) {
  require_fooling_inputs(problem, R, rho, j);
  const double a = problem.cone.a();
  const double b = problem.cone.b();
  long double sum = 0.0L;
  for (Index k = 0; k <= j; ++k) {
    const long double lambda = problem.spectrum(problem.partition[k]);
    sum += std::pow(static_cast<long double>(b), 2.0L * (static_cast<long double>(k) - static_cast<long double>(j))) /
           (lambda * lambda);
  }
  const double shrink = 1.0 + (a - 1.0) * (a - 1.0) / ((a + 1.0) * (a + 1.0) * R * R);
  return rho / std::sqrt(shrink * static_cast<double>(sum));
}

double fooling_eta(const ConeParams& cone, double c, double R) {
  return (cone.a() - 1.0) * c / ((cone.a() + 1.0) * R);
}

CoefficientSource make_fooling_f(const Problem& problem, double R, double rho, Index j) {
  const double c = fooling_scale(problem, R, rho, j);
  const double b = problem.cone.b();
  std::vector<double> coefficients(problem.partition[j], 0.0);
  for (Index k = 1; k <= j; ++k) {
    const Index i = problem.partition[k];
    coefficients[i - 1] = c * std::pow(b, static_cast<double>(k) - static_cast<double>(j)) / problem.spectrum(i);
  }
  return CoefficientSource::from_vector(std::move(coefficients));
}

FoolingPair make_fooling_pair(const Problem& problem, double R, double rho, Index j,
                              const std::vector<Index>& zeroed_functionals) {
  require_fooling_inputs(problem, R, rho, j);
  const Index n_j = problem.partition[j];
  const std::set<Index> zeroed = distinct_in_range(zeroed_functionals, n_j);
  if (zeroed.size() + 1 >= n_j) {
    throw InfeasibleConstraints("fooling bump needs |zeroed functionals| + 1 < n_j; got " +
                                std::to_string(zeroed.size()) + " + 1 >= " + std::to_string(n_j));
  }

  const double b = problem.cone.b();
  // Block k of every index and its weight b^{k-j} / lambda_{n_k}.
  std::vector<Index> block_of(n_j + 1, 0);
  std::vector<double> weight(n_j + 1, 0.0);
  for (Index k = 0, i = 1; k <= j; ++k) {
    const Index end = problem.partition[k];
    const double w = std::pow(b, static_cast<double>(k) - static_cast<double>(j)) / problem.spectrum(end);
    for (; i <= end; ++i) {
      block_of[i] = k;
      weight[i] = w;
    }
  }
  std::vector<bool> on_support(n_j + 1, false);
  for (Index k = 1; k <= j; ++k) on_support[problem.partition[k]] = true;

  // raw[i] are the coordinates of u^(k) inside its block; u_i = weight[i] raw[i].
  std::vector<double> raw(n_j + 1, 0.0);
  std::optional<Index> single;
  double best = -1.0;
  for (Index i = 1; i <= n_j; ++i) {
    if (zeroed.count(i) || on_support[i]) continue;
    const double gain = problem.spectrum(i) * weight[i];
    if (gain > best) {
      best = gain;
      single = i;
    }
  }
  if (single) {
    raw[*single] = 1.0;
  } else {
    // Only coordinates n_k on the support of f are free; f_{n_k} = c weight,
    // so <u, f> = 0 reduces to w_p^2 x_p + w_q^2 x_q = 0.
    std::vector<Index> free_support;
    for (Index k = 1; k <= j; ++k) {
      if (!zeroed.count(problem.partition[k])) free_support.push_back(problem.partition[k]);
    }
    std::pair<Index, Index> chosen{0, 0};
    double chosen_x_p = 0.0;
    double chosen_x_q = 0.0;
    for (std::size_t s = 0; s < free_support.size(); ++s) {
      for (std::size_t t = s + 1; t < free_support.size(); ++t) {
        const Index p = free_support[s];
        const Index q = free_support[t];
        double x_p = weight[q] * weight[q];
        double x_q = -weight[p] * weight[p];
        const double scale = std::max(std::abs(x_p), std::abs(x_q));
        x_p /= scale;
        x_q /= scale;
        const double sp = problem.spectrum(p) * weight[p] * x_p;
        const double sq = problem.spectrum(q) * weight[q] * x_q;
        const double gain = std::sqrt(sp * sp + sq * sq);
        if (gain > best) {
          best = gain;
          chosen = {p, q};
          chosen_x_p = x_p;
          chosen_x_q = x_q;
        }
      }
    }
    if (chosen.first == 0) {
      throw InfeasibleConstraints("fooling bump: no feasible combination on the free coordinates");
    }
    raw[chosen.first] = chosen_x_p;
    raw[chosen.second] = chosen_x_q;
  }

  FoolingPair out;
  out.j = j;
  out.c = fooling_scale(problem, R, rho, j);
  out.eta = fooling_eta(problem.cone, out.c, R);
  out.base = make_fooling_f(problem, R, rho, j);
  out.bump.assign(n_j, 0.0);
  out.block_norms.assign(j + 1, 0.0);
  std::vector<long double> block_sq(j + 1, 0.0L);
  for (Index i = 1; i <= n_j; ++i) {
    out.bump[i - 1] = weight[i] * raw[i];
    block_sq[block_of[i]] += static_cast<long double>(raw[i]) * raw[i];
  }
  for (Index k = 0; k <= j; ++k) out.block_norms[k] = static_cast<double>(std::sqrt(block_sq[k]));

  const std::vector<double> base = out.base.materialize();
  std::vector<double> plus(n_j);
  std::vector<double> minus(n_j);
  for (Index i = 0; i < n_j; ++i) {
    plus[i] = base[i] + out.eta * out.bump[i];
    minus[i] = base[i] - out.eta * out.bump[i];
  }
  out.plus = CoefficientSource::from_vector(std::move(plus));
  out.minus = CoefficientSource::from_vector(std::move(minus));
  out.separation = 2.0 * out.eta * solution_norm(problem.spectrum, out.bump);
  return out;
}

std::vector<double> orthogonal_blind_spot(const std::vector<Index>& sampled_indices, Index dimension) {
  if (dimension == 0) throw InvalidArgument("blind spot needs dimension >= 1");
  const std::set<Index> sampled = distinct_in_range(sampled_indices, dimension);
  if (sampled.size() >= dimension) {
    throw InfeasibleConstraints("blind spot needs fewer sampled coordinates than the dimension (" +
                                std::to_string(sampled.size()) + " >= " + std::to_string(dimension) + ")");
  }
  std::vector<double> out(dimension, 0.0);
  for (Index i = 1; i <= dimension; ++i) {
    if (!sampled.count(i)) {
      out[i - 1] = 1.0;
      break;
    }
  }
  return out;
}

double solution_norm(const SingularSpectrum& spectrum, const std::vector<double>& coefficients) {
  long double sum = 0.0L;
  for (Index i = 1; i <= coefficients.size(); ++i) {
    if (coefficients[i - 1] == 0.0) continue;
    const long double term = static_cast<long double>(spectrum(i)) * coefficients[i - 1];
    sum += term * term;
  }
  return static_cast<double>(std::sqrt(sum));
}

}  // namespace adaptlin
