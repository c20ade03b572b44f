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

// Fooling functions behind the complexity lower bound on the cone.
//
// The base input f puts one coefficient at the end of each of the first j
// blocks, scaled so that sigma_k(f) = c b^{k-j}. The bump u lives on indices
// 1..n_j, vanishes on a given set of sampled coordinates and is orthogonal to
// f; f +- eta u then stay inside the cone and the ball of radius rho, agree
// with f on every sampled coordinate, and have solutions 2 eta ||S(u)|| >= 2 eta
// apart.

#pragma once

#include <vector>

#include "adaptlin/spectrum.hpp"

namespace adaptlin {

/// c with c^2 = rho^2 / [ (1 + (a-1)^2 / ((a+1)^2 R^2)) sum_{k=0}^{j} b^{2(k-j)} / lambda^2_{n_k} ].
double fooling_scale(const Problem& problem, double R, double rho, Index j);

/// eta = (a - 1) c / ((a + 1) R).
double fooling_eta(const ConeParams& cone, double c, double R);

/// f_i = c b^{k-j} / lambda_{n_k} at i = n_k (k = 1..j), zero elsewhere.
/// Support bound n_j. Throws UnsupportedPartition if n_0 == 0.
CoefficientSource make_fooling_f(const Problem& problem, double R, double rho, Index j);

struct FoolingPair {
  CoefficientSource base = CoefficientSource::zero();
  CoefficientSource plus = CoefficientSource::zero();
  CoefficientSource minus = CoefficientSource::zero();
  /// u_1..u_{n_j}.
  std::vector<double> bump;
  /// ||u^(k)|| for k = 0..j, where u = sum_k b^{k-j} u^(k) / lambda_{n_k}.
  std::vector<double> block_norms;
  double c = 0.0;
  double eta = 0.0;
  Index j = 0;
  /// ||S(f+) - S(f-)|| = 2 eta ||S(u)||.
  double separation = 0.0;
};

/// Builds f, u and f +- eta u. The bump is the feasible candidate with the
/// largest ||S(u)||: a single free coordinate outside the support of f when
/// one exists, otherwise a two-coordinate combination on the support of f
/// that cancels the inner product. Throws InfeasibleConstraints unless
/// |zeroed within 1..n_j| + 1 < n_j.
FoolingPair make_fooling_pair(const Problem& problem, double R, double rho, Index j,
                              const std::vector<Index>& zeroed_functionals);

/// A unit coordinate vector of length `dimension` vanishing on every sampled
/// index: an input that looks like zero to any algorithm sampling exactly
/// those coordinates. Throws InfeasibleConstraints if every index is sampled.
std::vector<double> orthogonal_blind_spot(const std::vector<Index>& sampled_indices, Index dimension);

/// ||S(g)|| = ||(lambda_i g_i)||_2 for g given by its first coefficients.
double solution_norm(const SingularSpectrum& spectrum, const std::vector<double>& coefficients);

}  // namespace adaptlin
