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

// Problem definitions for diagonal linear problems S(f) = sum_i lambda_i f_i v_i:
// the singular values, the block partition of coefficient indices, the cone
// parameters, and the block partial sums sigma_j(f) with a finite-support
// cone-membership check.
//
// Indices follow the mathematical convention: coefficients and singular values
// are numbered from 1, partition entries n_j from 0.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adaptlin {

using Index = std::size_t;

/// Non-increasing positive sequence lambda_1 >= lambda_2 >= ... -> 0.
///
/// Either a closed-form rule (evaluated on demand, no storage) or an explicit
/// finite list; querying an explicit list past its end throws IndexOutOfRange.
/// Instances are immutable and cheap to copy.
class SingularSpectrum {
 public:
  using Rule = std::function<double(Index)>;
  /// Returns some index i with lambda_i < delta, or nullopt if unknown.
  using Witness = std::function<std::optional<Index>(double)>;

  /// lambda_i = scale / i^power.
  static SingularSpectrum algebraic(double scale, double power);
  /// lambda_i = scale / base^i, base > 1.
  static SingularSpectrum geometric(double scale, double base);
  /// Arbitrary rule; monotonicity is the caller's promise (see validate()).
  static SingularSpectrum from_rule(Rule rule, std::string label, Witness witness = {});
  /// Explicit list lambda_1..lambda_m; checked positive and non-increasing.
  static SingularSpectrum from_values(std::vector<double> values, std::string label = "explicit");

  /// lambda_i for i >= 1.
  double operator()(Index i) const;

  /// Number of stored values for explicit lists, nullopt for rules.
  std::optional<Index> length() const;

  std::optional<Index> witness_below(double delta) const;

  /// Checks lambda_i > 0 and lambda_i >= lambda_{i+1} for i = 1..count;
  /// throws InvalidArgument naming the first offending index.
  void validate(Index count) const;

  const std::string& label() const { return label_; }

 private:
  SingularSpectrum(Rule rule, std::shared_ptr<const std::vector<double>> values, std::string label,
                   Witness witness);

  Rule rule_;
  std::shared_ptr<const std::vector<double>> values_;
  std::string label_;
  Witness witness_;
};

/// Strictly increasing unbounded sequence n_0 < n_1 < ... of block boundaries.
/// Block j (j >= 1) holds the coefficient indices n_{j-1}+1 .. n_j.
class Partition {
 public:
  enum class Kind { kGeometric, kArithmetic, kExplicit };

  /// n_j = 2^j * n0, n0 >= 1.
  static Partition geometric(Index n0);
  /// n_0 = n0, n_j = n1 * 2^(j-1) for j >= 1; requires n1 > n0. Covers the
  /// (0, 16, 32, 64, ...) layout.
  static Partition doubling(Index n0, Index n1);
  /// n_j = n0 + j * step, step >= 1.
  static Partition arithmetic(Index n0, Index step);
  /// Finite explicit prefix; must be strictly increasing.
  static Partition explicit_list(std::vector<Index> values);

  /// n_j. Throws IndexOutOfRange past an explicit list or on integer overflow.
  Index operator[](Index j) const;

  Kind kind() const { return kind_; }
  std::optional<Index> length() const;

  /// Smallest J >= 1 with n_J >= bound.
  Index first_block_covering(Index bound) const;

  std::string describe() const;

 private:
  Partition(Kind kind, Index n0, Index n1, Index step, std::shared_ptr<const std::vector<Index>> values);

  Kind kind_;
  Index n0_;
  Index n1_;
  Index step_;
  std::shared_ptr<const std::vector<Index>> values_;
};

/// Inflation factor a > 1 and decay rate 0 < b < 1 of the cone
/// { f : sigma_{j+r}(f) <= a b^r sigma_j(f) for all j, r >= 1 }.
class ConeParams {
 public:
  ConeParams(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }

  /// a b / sqrt(1 - b^2): the factor turning sigma_j into a bound on the tail
  /// beyond block j.
  double tail_factor() const;
  /// epsilon sqrt(1 - b^2) / (a b).
  double stopping_threshold(double epsilon) const;

 private:
  double a_;
  double b_;
};

/// Deterministic on-demand provider of the series coefficients f_i (i >= 1).
class CoefficientSource {
 public:
  using Provider = std::function<double(Index)>;

  /// The provider is called for every query; with a support bound N it must
  /// return 0 for i > N (from_rule enforces this).
  CoefficientSource(Provider provider, std::optional<Index> support_bound);

  static CoefficientSource zero();
  /// f_i = coefficients[i - 1]; support bound = coefficients.size().
  static CoefficientSource from_vector(std::vector<double> coefficients);
  /// Wraps a rule and zeroes it beyond the optional support bound.
  static CoefficientSource from_rule(Provider rule, std::optional<Index> support_bound = std::nullopt);

  double operator()(Index i) const { return provider_(i); }
  std::optional<Index> support_bound() const { return support_bound_; }

  /// c * f with the same support.
  CoefficientSource scaled(double c) const;

  /// f_1..f_N; throws UndecidableMembership without a support bound.
  std::vector<double> materialize() const;

 private:
  Provider provider_;
  std::optional<Index> support_bound_;
};

struct Problem {
  SingularSpectrum spectrum;
  Partition partition;
  ConeParams cone;
};

/// sigma_j(f) = || (lambda_i f_i) for i = n_{j-1}+1 .. n_j ||_2, j >= 1.
/// Accumulates in ascending index order in extended precision. Coefficients
/// equal to zero are skipped without looking up lambda_i, so explicit spectra
/// only need to cover the support of f.
double sigma(const Problem& problem, const CoefficientSource& f, Index j);

/// sigma_1 .. sigma_count.
std::vector<double> block_sigmas(const Problem& problem, const CoefficientSource& f, Index count);

struct MembershipReport {
  bool member = true;
  /// max sigma_{j+r} / (a b^r sigma_j); 0/0 counts as 0 and x/0 as +inf.
  double worst_ratio = 0.0;
  /// First violating (j, r) in lexicographic order.
  std::optional<std::pair<Index, Index>> witness;
  /// Blocks inspected: 1..blocks, the last one reaching the support bound.
  Index blocks = 0;
  std::vector<double> sigmas;
};

/// Relative slack on the member/non-member verdict; the raw ratio is reported.
inline constexpr double kMembershipSlack = 1e-9;

/// Checks sigma_{j+r} <= a b^r sigma_j for 1 <= j < j + r <= J, where J is the
/// first block with n_J >= support bound. Requires a support bound.
MembershipReport cone_membership(const Problem& problem, const CoefficientSource& f);

/// || (lambda_i f_i) for i = n+1 .. N ||_2 by direct summation: the exact error
/// of keeping the first n coefficients of a finite-support input.
double tail_norm_oracle(const Problem& problem, const CoefficientSource& f, Index n);

/// ||f||_F = ||(f_i)||_2 over the declared support.
double input_norm(const CoefficientSource& f);

}  // namespace adaptlin
