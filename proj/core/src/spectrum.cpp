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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adaptlin/errors.hpp"

namespace adaptlin {

namespace {

std::optional<Index> index_above(double x) {
  if (!std::isfinite(x) || x >= 9.0e15) return std::nullopt;
  return static_cast<Index>(std::floor(std::max(x, 0.0))) + 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// SingularSpectrum

SingularSpectrum::SingularSpectrum(Rule rule, std::shared_ptr<const std::vector<double>> values,
                                   std::string label, Witness witness)
    : rule_(std::move(rule)),
      values_(std::move(values)),
      label_(std::move(label)),
      witness_(std::move(witness)) {}

SingularSpectrum SingularSpectrum::algebraic(double scale, double power) {
  if (!(scale > 0.0) || !(power > 0.0)) {
    throw InvalidArgument("algebraic spectrum needs scale > 0 and power > 0");
  }
  std::ostringstream label;
  label << "algebraic(C=" << scale << ",p=" << power << ")";
  return from_rule([scale, power](Index i) { return scale / std::pow(static_cast<double>(i), power); },
                   label.str(),
                   [scale, power](double delta) { return index_above(std::pow(scale / delta, 1.0 / power)); });
}

SingularSpectrum SingularSpectrum::geometric(double scale, double base) {
  if (!(scale > 0.0) || !(base > 1.0)) {
    throw InvalidArgument("geometric spectrum needs scale > 0 and base > 1");
  }
  std::ostringstream label;
  label << "geometric(C=" << scale << ",p=" << base << ")";
  return from_rule([scale, base](Index i) { return scale / std::pow(base, static_cast<double>(i)); },
                   label.str(),
                   [scale, base](double delta) { return index_above(std::log(scale / delta) / std::log(base)); });
}

SingularSpectrum SingularSpectrum::from_rule(Rule rule, std::string label, Witness witness) {
  if (!rule) throw InvalidArgument("spectrum rule is empty");
  return SingularSpectrum(std::move(rule), nullptr, std::move(label), std::move(witness));
}

SingularSpectrum SingularSpectrum::from_values(std::vector<double> values, std::string label) {
  if (values.empty()) throw InvalidArgument("explicit spectrum is empty");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] > 0.0)) {
      throw InvalidArgument("explicit spectrum: lambda_" + std::to_string(k + 1) + " is not positive");
    }
    if (k > 0 && values[k] > values[k - 1]) {
      throw InvalidArgument("explicit spectrum: lambda_" + std::to_string(k + 1) + " exceeds its predecessor");
    }
  }
  auto stored = std::make_shared<const std::vector<double>>(std::move(values));
  Witness witness = [stored](double delta) -> std::optional<Index> {
    // Sorted descending: the first entry below delta.
    auto it = std::partition_point(stored->begin(), stored->end(), [delta](double v) { return v >= delta; });
    if (it == stored->end()) return std::nullopt;
    return static_cast<Index>(it - stored->begin()) + 1;
  };
  return SingularSpectrum(nullptr, std::move(stored), std::move(label), std::move(witness));
}

double SingularSpectrum::operator()(Index i) const {
  if (i == 0) throw IndexOutOfRange("singular values are indexed from 1");
  if (values_) {
    if (i > values_->size()) {
      throw IndexOutOfRange("spectrum '" + label_ + "' has " + std::to_string(values_->size()) +
                            " values; lambda_" + std::to_string(i) + " requested");
    }
    return (*values_)[i - 1];
  }
  return rule_(i);
}

std::optional<Index> SingularSpectrum::length() const {
  if (values_) return values_->size();
  return std::nullopt;
}

std::optional<Index> SingularSpectrum::witness_below(double delta) const {
  if (!witness_ || !(delta > 0.0)) return std::nullopt;
  auto i = witness_(delta);
  if (!i) return std::nullopt;
  // Closed-form witnesses go through pow/log and may land on lambda_i == delta.
  for (int step = 0; step < 64; ++step, ++*i) {
    if (length() && *i > *length()) return std::nullopt;
    if ((*this)(*i) < delta) return i;
  }
  return std::nullopt;
}

void SingularSpectrum::validate(Index count) const {
  double previous = std::numeric_limits<double>::infinity();
  for (Index i = 1; i <= count; ++i) {
    const double value = (*this)(i);
    if (!(value > 0.0)) {
      throw InvalidArgument("spectrum '" + label_ + "': lambda_" + std::to_string(i) + " is not positive");
    }
    if (value > previous) {
      throw InvalidArgument("spectrum '" + label_ + "': lambda_" + std::to_string(i) + " exceeds lambda_" +
                            std::to_string(i - 1));
    }
    previous = value;
  }
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(Kind kind, Index n0, Index n1, Index step, std::shared_ptr<const std::vector<Index>> values)
    : kind_(kind), n0_(n0), n1_(n1), step_(step), values_(std::move(values)) {}

Partition Partition::geometric(Index n0) {
  if (n0 == 0) throw InvalidArgument("geometric partition needs n0 >= 1");
  return Partition(Kind::kGeometric, n0, 2 * n0, 0, nullptr);
}

Partition Partition::doubling(Index n0, Index n1) {
  if (n1 <= n0) throw InvalidArgument("doubling partition needs n1 > n0");
  return Partition(Kind::kGeometric, n0, n1, 0, nullptr);
}

Partition Partition::arithmetic(Index n0, Index step) {
  if (step == 0) throw InvalidArgument("arithmetic partition needs step >= 1");
  return Partition(Kind::kArithmetic, n0, n0 + step, step, nullptr);
}

Partition Partition::explicit_list(std::vector<Index> values) {
  if (values.empty()) throw InvalidArgument("explicit partition is empty");
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] <= values[k - 1]) {
      throw InvalidArgument("explicit partition is not strictly increasing at j = " + std::to_string(k));
    }
  }
  const Index n0 = values.front();
  return Partition(Kind::kExplicit, n0, 0, 0, std::make_shared<const std::vector<Index>>(std::move(values)));
}

Index Partition::operator[](Index j) const {
  constexpr Index kMax = std::numeric_limits<Index>::max();
  switch (kind_) {
    case Kind::kExplicit:
      if (j >= values_->size()) {
        throw IndexOutOfRange("explicit partition has " + std::to_string(values_->size()) + " entries; n_" +
                              std::to_string(j) + " requested");
      }
      return (*values_)[j];
    case Kind::kArithmetic:
      if (j > (kMax - n0_) / step_) throw IndexOutOfRange("arithmetic partition overflows at j = " + std::to_string(j));
      return n0_ + j * step_;
    case Kind::kGeometric:
      if (j == 0) return n0_;
      if (j - 1 >= 63 || n1_ > (kMax >> (j - 1))) {
        throw IndexOutOfRange("doubling partition overflows at j = " + std::to_string(j));
      }
      return n1_ << (j - 1);
  }
  return 0;
}

std::optional<Index> Partition::length() const {
  if (values_) return values_->size();
  return std::nullopt;
}

Index Partition::first_block_covering(Index bound) const {
  Index j = 1;
  while ((*this)[j] < bound) ++j;
  return j;
}

std::string Partition::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kGeometric:
      out << "doubling(n0=" << n0_ << ",n1=" << n1_ << ")";
      break;
    case Kind::kArithmetic:
      out << "arithmetic(n0=" << n0_ << ",step=" << step_ << ")";
      break;
    case Kind::kExplicit:
      out << "explicit(" << values_->size() << " entries)";
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// ConeParams

ConeParams::ConeParams(double a, double b) : a_(a), b_(b) {
  if (!(a > 1.0) || !std::isfinite(a)) throw InvalidArgument("cone needs a > 1");
  if (!(b > 0.0) || !(b < 1.0)) throw InvalidArgument("cone needs 0 < b < 1");
}

double ConeParams::tail_factor() const { return a_ * b_ / std::sqrt(1.0 - b_ * b_); }

double ConeParams::stopping_threshold(double epsilon) const {
  return epsilon * std::sqrt(1.0 - b_ * b_) / (a_ * b_);
}

// ---------------------------------------------------------------------------
// CoefficientSource

CoefficientSource::CoefficientSource(Provider provider, std::optional<Index> support_bound)
    : provider_(std::move(provider)), support_bound_(support_bound) {
  if (!provider_) throw InvalidArgument("coefficient provider is empty");
}

CoefficientSource CoefficientSource::zero() {
  return CoefficientSource([](Index) { return 0.0; }, Index{0});
}

CoefficientSource CoefficientSource::from_vector(std::vector<double> coefficients) {
  auto stored = std::make_shared<const std::vector<double>>(std::move(coefficients));
  const Index n = stored->size();
  return CoefficientSource(
      [stored](Index i) { return (i >= 1 && i <= stored->size()) ? (*stored)[i - 1] : 0.0; }, n);
}

CoefficientSource CoefficientSource::from_rule(Provider rule, std::optional<Index> support_bound) {
  if (!rule) throw InvalidArgument("coefficient rule is empty");
  if (!support_bound) return CoefficientSource(std::move(rule), std::nullopt);
  const Index n = *support_bound;
  return CoefficientSource([rule = std::move(rule), n](Index i) { return i <= n ? rule(i) : 0.0; }, n);
}

CoefficientSource CoefficientSource::scaled(double c) const {
  return CoefficientSource([inner = provider_, c](Index i) { return c * inner(i); }, support_bound_);
}

std::vector<double> CoefficientSource::materialize() const {
  if (!support_bound_) throw UndecidableMembership("materialize needs a declared support bound");
  std::vector<double> out(*support_bound_);
  for (Index i = 1; i <= *support_bound_; ++i) out[i - 1] = provider_(i);
  return out;
}

// ---------------------------------------------------------------------------
// Block sums

double sigma(const Problem& problem, const CoefficientSource& f, Index j) {
  if (j == 0) throw InvalidArgument("sigma is defined for j >= 1");
  const Index first = problem.partition[j - 1] + 1;
  Index last = problem.partition[j];
  if (auto n = f.support_bound()) last = std::min(last, *n);
  long double sum = 0.0L;
  for (Index i = first; i <= last; ++i) {
    const double coefficient = f(i);
    if (coefficient == 0.0) continue;
    const long double term = static_cast<long double>(problem.spectrum(i)) * coefficient;
    sum += term * term;
  }
  return static_cast<double>(std::sqrt(sum));
}

std::vector<double> block_sigmas(const Problem& problem, const CoefficientSource& f, Index count) {
  std::vector<double> out;
  out.reserve(count);
  for (Index j = 1; j <= count; ++j) out.push_back(sigma(problem, f, j));
  return out;
}

MembershipReport cone_membership(const Problem& problem, const CoefficientSource& f) {
  const auto support = f.support_bound();
  if (!support) {
    throw UndecidableMembership("cone membership is only decidable for inputs with a declared support bound");
  }
  MembershipReport report;
  report.blocks = problem.partition.first_block_covering(*support);
  report.sigmas = block_sigmas(problem, f, report.blocks);

  const double a = problem.cone.a();
  const double b = problem.cone.b();
  for (Index j = 1; j < report.blocks; ++j) {
    const double base = report.sigmas[j - 1];
    double decay = b;
    for (Index r = 1; j + r <= report.blocks; ++r, decay *= b) {
      const double later = report.sigmas[j + r - 1];
      double ratio = 0.0;
      if (later > 0.0) {
        const double allowed = a * decay * base;
        ratio = allowed > 0.0 ? later / allowed : std::numeric_limits<double>::infinity();
      }
      report.worst_ratio = std::max(report.worst_ratio, ratio);
      if (ratio > 1.0 + kMembershipSlack && !report.witness) report.witness = std::make_pair(j, r);
    }
  }
  report.member = !report.witness.has_value();
  return report;
}

double tail_norm_oracle(const Problem& problem, const CoefficientSource& f, Index n) {
  const auto support = f.support_bound();
  if (!support) throw UndecidableMembership("tail norm needs a declared support bound");
  long double sum = 0.0L;
  for (Index i = n + 1; i <= *support; ++i) {
    const double coefficient = f(i);
    if (coefficient == 0.0) continue;
    const long double term = static_cast<long double>(problem.spectrum(i)) * coefficient;
    sum += term * term;
  }
  return static_cast<double>(std::sqrt(sum));
}

double input_norm(const CoefficientSource& f) {
  const auto support = f.support_bound();
  if (!support) throw UndecidableMembership("input norm needs a declared support bound");
  long double sum = 0.0L;
  for (Index i = 1; i <= *support; ++i) {
    const long double c = f(i);
    sum += c * c;
  }
  return static_cast<double>(std::sqrt(sum));
}

}  // namespace adaptlin
