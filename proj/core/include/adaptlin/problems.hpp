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

// Two concrete problems.
//
// Periodic approximation on [0, 1]: lambda_i = 1 / max(1, floor(i/2))^r.
//
// First partial derivative in x_1 of periodic functions on [0, 1]^d with
// product weights gamma_j. For a multi-index k,
//
//   u_k(x) = prod_j 2^{(1 - delta(k_j))/2} cos(2 pi k_j x_j + [k_j < 0] pi/2)
//                   / max(1, gamma_j |k_j|)^4
//   v_k(x) = -sign(k_1) sin(2 pi k_1 x_1 + [k_1 < 0] pi/2)
//            * prod_{j >= 2} cos(2 pi k_j x_j + [k_j < 0] pi/2)
//   lambda(k) = 2 pi |k_1| prod_j 2^{(1 - delta(k_j))/2} / prod_j max(1, gamma_j |k_j|)^4
//
// so that d/dx_1 u_k = lambda(k) v_k. The weight denominator uses |k_j|; with
// a signed k_j negative indices would never decay. Multi-indices with
// k_1 = 0 have lambda(k) = 0 and are left out of the ordering.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adaptlin/algorithm.hpp"
#include "adaptlin/spectrum.hpp"

namespace adaptlin {

// ---------------------------------------------------------------------------
// Periodic approximation

class Example1Problem {
 public:
  explicit Example1Problem(double r);

  double r() const { return r_; }
  /// lambda_i = 1 / max(1, floor(i/2))^r.
  SingularSpectrum spectrum() const;

 private:
  double r_;
};

/// 2 ceil((rho/eps)^{1/r}) - 1 for eps < rho and 0 otherwise; equals the
/// ball cost.
Index example1_cost_closed_form(double r, double epsilon, double rho);

// ---------------------------------------------------------------------------
// Partial derivative on the d-cube

/// gamma_j = 2^{-(j-1)}, j = 1..d.
std::vector<double> halving_weights(Index d);

double multi_index_lambda(std::span<const int> k, std::span<const double> gamma);

/// Multi-indices of the box {-k_max..k_max}^d with k_1 != 0, sorted by
/// lambda(k) descending. Ties are broken lexicographically on
/// (|k_1|, sign k_1, |k_2|, sign k_2, ...) with the positive sign first.
class MultiIndexSpectrum {
 public:
  Index dimension() const { return d_; }
  Index k_max() const { return k_max_; }
  const std::vector<double>& gamma() const { return gamma_; }
  Index size() const { return lambdas_.size(); }

  /// lambda_i, i = 1..size().
  double lambda(Index i) const { return lambdas_[i - 1]; }
  /// k for sorted position i = 1..size().
  std::span<const int> multi_index(Index i) const;
  /// Sorted position of k, or 0 if k is outside the box or has k_1 == 0.
  Index position_of(std::span<const int> k) const;

  SingularSpectrum spectrum() const;

 private:
  friend MultiIndexSpectrum enumerate_spectrum(Index d, Index k_max, std::vector<double> gamma, Index cap);

  Index d_ = 0;
  Index k_max_ = 0;
  std::vector<double> gamma_;
  std::vector<int> indices_;      // d entries per sorted position
  std::vector<double> lambdas_;
  std::vector<std::uint32_t> position_;  // dense over the box, 0 = absent
};

inline constexpr Index kDefaultEnumerationCap = 100'000'000;

/// Throws BudgetExceeded if (2 k_max + 1)^d exceeds `cap`.
MultiIndexSpectrum enumerate_spectrum(Index d, Index k_max, std::vector<double> gamma,
                                      Index cap = kDefaultEnumerationCap);

/// Fourier coefficients f(k), k in {-K..K}^d, zero outside the box.
class RandomPeriodicInput {
 public:
  /// IID standard normal coefficients from mt19937_64 seeded with `seed`
  /// through a Box-Muller transform, drawn in lexicographic order of k
  /// (k_1 slowest, each coordinate ascending from -K).
  static RandomPeriodicInput generate(Index d, Index K, std::uint64_t seed);
  /// Explicit dense coefficients in the same lexicographic order.
  static RandomPeriodicInput from_coefficients(Index d, Index K, std::vector<double> coefficients);

  Index dimension() const { return d_; }
  Index box_radius() const { return K_; }
  std::uint64_t seed() const { return seed_; }
  /// (2K + 1)^d.
  Index support_size() const { return coefficients_.size(); }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// f(k), 0 outside the box.
  double coefficient(std::span<const int> k) const;

 private:
  Index d_ = 0;
  Index K_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> coefficients_;
};

inline constexpr const char* kGeneratorId = "mt19937_64+box-muller";

/// f_i = f(k_i) for the i-th multi-index of the ordering. The support bound is
/// the last position whose multi-index lies in the input box.
CoefficientSource derivative_coefficients(const MultiIndexSpectrum& spectrum, const RandomPeriodicInput& input);

/// f(x) = sum_k f(k) u_k(x) over the input box.
double evaluate_input(const RandomPeriodicInput& input, std::span<const double> gamma, std::span<const double> x);

/// sum over retained (i, g_i) of g_i v_{k_i}(x).
double evaluate_solution(const Approximation& approx, const MultiIndexSpectrum& spectrum, std::span<const double> x);

/// Points x = (s, t, fixed...) with s, t on a uniform grid of `count` points
/// in [0, 1), row-major in t then s. Remaining coordinates set to `fixed`.
std::vector<std::vector<double>> slice_grid(Index d, Index count, double fixed = 0.0);

}  // namespace adaptlin
