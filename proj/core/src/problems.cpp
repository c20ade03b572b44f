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

#include "adaptlin/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "adaptlin/errors.hpp"

namespace adaptlin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double index_power(Index i, double r) {
  const Index half = std::max<Index>(1, i / 2);
  return std::pow(static_cast<double>(half), r);
}

Index box_volume(Index d, Index k_max, Index cap) {
  const Index side = 2 * k_max + 1;
  Index volume = 1;
  for (Index j = 0; j < d; ++j) {
    if (volume > cap / side) {
      throw BudgetExceeded("multi-index box {-" + std::to_string(k_max) + ".." + std::to_string(k_max) + "}^" +
                           std::to_string(d) + " exceeds the enumeration cap " + std::to_string(cap));
    }
    volume *= side;
  }
  return volume;
}

/// Dense offset of k in {-K..K}^d, k_1 slowest; npos if outside.
Index box_offset(std::span<const int> k, Index K) {
  const long long side = 2 * static_cast<long long>(K) + 1;
  long long offset = 0;
  for (int component : k) {
    if (std::abs(component) > static_cast<long long>(K)) return std::numeric_limits<Index>::max();
    offset = offset * side + (component + static_cast<long long>(K));
  }
  return static_cast<Index>(offset);
}

/// Inverse of box_offset.
void box_index(Index offset, Index d, Index K, int* k) {
  const Index side = 2 * K + 1;
  for (Index j = d; j-- > 0;) {
    k[j] = static_cast<int>(offset % side) - static_cast<int>(K);
    offset /= side;
  }
}

/// cos(2 pi k x + [k < 0] pi/2) for k = -K..K, stored at k + K.
std::vector<double> cosine_table(double x, Index K) {
  std::vector<double> out(2 * K + 1);
  for (Index m = 0; m < out.size(); ++m) {
    const int k = static_cast<int>(m) - static_cast<int>(K);
    out[m] = std::cos(kTwoPi * k * x + (k < 0 ? std::numbers::pi / 2.0 : 0.0));
  }
  return out;
}

void check_point(std::span<const double> x, Index d) {
  if (x.size() != d) {
    throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(d));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Periodic approximation

Example1Problem::Example1Problem(double r) : r_(r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("smoothness r must be finite and non-negative");
}

SingularSpectrum Example1Problem::spectrum() const {
  const double r = r_;
  std::ostringstream label;
  label << "example1(r=" << r << ")";
  return SingularSpectrum::from_rule(
      [r](Index i) { return 1.0 / index_power(i, r); }, label.str(),
      [r](double delta) -> std::optional<Index> {
        if (r == 0.0) return delta > 1.0 ? std::optional<Index>(1) : std::nullopt;
        if (delta > 1.0) return Index{1};
        const double half = std::floor(std::pow(delta, -1.0 / r)) + 1.0;
        if (!(half < 4.0e15)) return std::nullopt;
        return 2 * static_cast<Index>(half);
      });
}

Index example1_cost_closed_form(double r, double epsilon, double rho) {
  if (!(r > 0.0) || !(epsilon > 0.0) || !(rho > 0.0)) {
    throw InvalidArgument("closed form needs r, epsilon, rho > 0");
  }
  // lambda_1 = 1 already meets the target.
  if (epsilon >= rho) return 0;
  const double root = std::ceil(std::pow(rho / epsilon, 1.0 / r));
  return 2 * static_cast<Index>(root) - 1;
}

// ---------------------------------------------------------------------------
// Multi-index spectrum

std::vector<double> halving_weights(Index d) {
  std::vector<double> gamma(d);
  for (Index j = 0; j < d; ++j) gamma[j] = std::ldexp(1.0, -static_cast<int>(j));
  return gamma;
}

double multi_index_lambda(std::span<const int> k, std::span<const double> gamma) {
  if (k.size() != gamma.size() || k.empty()) throw InvalidArgument("multi-index and weights differ in length");
  if (k[0] == 0) return 0.0;
  double numerator = kTwoPi * std::abs(k[0]);
  double denominator = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] != 0) numerator *= std::numbers::sqrt2;
    const double damp = std::max(1.0, gamma[j] * std::abs(k[j]));
    const double damp2 = damp * damp;
    denominator *= damp2 * damp2;
  }
  return numerator / denominator;
}

std::span<const int> MultiIndexSpectrum::multi_index(Index i) const {
  if (i == 0 || i > size()) throw IndexOutOfRange("multi-index position " + std::to_string(i) + " out of range");
  return {indices_.data() + (i - 1) * d_, d_};
}

Index MultiIndexSpectrum::position_of(std::span<const int> k) const {
  if (k.size() != d_) return 0;
  const Index offset = box_offset(k, k_max_);
  if (offset >= position_.size()) return 0;
  return position_[offset];
}

SingularSpectrum MultiIndexSpectrum::spectrum() const {
  std::ostringstream label;
  label << "derivative(d=" << d_ << ",k_max=" << k_max_ << ")";
  return SingularSpectrum::from_values(lambdas_, label.str());
}

MultiIndexSpectrum enumerate_spectrum(Index d, Index k_max, std::vector<double> gamma, Index cap) {
  if (d == 0 || k_max == 0) throw InvalidArgument("enumeration needs d >= 1 and k_max >= 1");
  if (gamma.size() != d) throw InvalidArgument("weight vector length differs from the dimension");
  const Index volume = box_volume(d, k_max, cap);
  if (volume > std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("box too large for position table");

  std::vector<int> all(volume * d);
  std::vector<double> all_lambda(volume);
  std::vector<Index> kept;
  kept.reserve(volume);
  for (Index offset = 0; offset < volume; ++offset) {
    int* k = all.data() + offset * d;
    box_index(offset, d, k_max, k);
    if (k[0] == 0) continue;
    all_lambda[offset] = multi_index_lambda({k, d}, gamma);
    kept.push_back(offset);
  }

  auto tie_less = [&](Index lhs, Index rhs) {
    const int* x = all.data() + lhs * d;
    const int* y = all.data() + rhs * d;
    for (Index j = 0; j < d; ++j) {
      if (std::abs(x[j]) != std::abs(y[j])) return std::abs(x[j]) < std::abs(y[j]);
      if (x[j] != y[j]) return x[j] > y[j];  // positive first
    }
    return false;
  };
  std::sort(kept.begin(), kept.end(), [&](Index lhs, Index rhs) {
    if (all_lambda[lhs] != all_lambda[rhs]) return all_lambda[lhs] > all_lambda[rhs];
    return tie_less(lhs, rhs);
  });

  MultiIndexSpectrum out;
  out.d_ = d;
  out.k_max_ = k_max;
  out.gamma_ = std::move(gamma);
  out.indices_.resize(kept.size() * d);
  out.lambdas_.resize(kept.size());
  out.position_.assign(volume, 0);
  for (Index pos = 0; pos < kept.size(); ++pos) {
    const Index offset = kept[pos];
    std::copy_n(all.data() + offset * d, d, out.indices_.data() + pos * d);
    out.lambdas_[pos] = all_lambda[offset];
    out.position_[offset] = static_cast<std::uint32_t>(pos + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random input

RandomPeriodicInput RandomPeriodicInput::generate(Index d, Index K, std::uint64_t seed) {
  const Index volume = box_volume(d, K, kDefaultEnumerationCap);
  std::mt19937_64 engine(seed);
  // 53 random bits in (0, 1]; std::normal_distribution is not portable
  // across standard libraries.
  auto uniform = [&engine]() { return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53; };
  std::vector<double> coefficients(volume);
  for (Index m = 0; m < volume; m += 2) {
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = kTwoPi * uniform();
    coefficients[m] = radius * std::cos(angle);
    if (m + 1 < volume) coefficients[m + 1] = radius * std::sin(angle);
  }
  RandomPeriodicInput out = from_coefficients(d, K, std::move(coefficients));
  out.seed_ = seed;
  return out;
}

RandomPeriodicInput RandomPeriodicInput::from_coefficients(Index d, Index K, std::vector<double> coefficients) {
  if (d == 0) throw InvalidArgument("input needs d >= 1");
  if (coefficients.size() != box_volume(d, K, kDefaultEnumerationCap)) {
    throw InvalidArgument("coefficient count differs from (2K + 1)^d");
  }
  RandomPeriodicInput out;
  out.d_ = d;
  out.K_ = K;
  out.coefficients_ = std::move(coefficients);
  return out;
}

double RandomPeriodicInput::coefficient(std::span<const int> k) const {
  if (k.size() != d_) throw InvalidArgument("multi-index length differs from the dimension");
  const Index offset = box_offset(k, K_);
  return offset < coefficients_.size() ? coefficients_[offset] : 0.0;
}

CoefficientSource derivative_coefficients(const MultiIndexSpectrum& spectrum, const RandomPeriodicInput& input) {
  if (spectrum.dimension() != input.dimension()) throw InvalidArgument("spectrum and input dimensions differ");
  std::vector<double> values(spectrum.size());
  Index last = 0;
  const Index K = input.box_radius();
  for (Index i = 1; i <= spectrum.size(); ++i) {
    const auto k = spectrum.multi_index(i);
    values[i - 1] = input.coefficient(k);
    const bool in_box = std::all_of(k.begin(), k.end(), [K](int c) { return std::abs(c) <= static_cast<int>(K); });
    if (in_box) last = i;
  }
  values.resize(last);
  return CoefficientSource::from_vector(std::move(values));
}

double evaluate_input(const RandomPeriodicInput& input, std::span<const double> gamma, std::span<const double> x) {
  const Index d = input.dimension();
  const Index K = input.box_radius();
  check_point(x, d);
  if (gamma.size() != d) throw InvalidArgument("weight vector length differs from the dimension");
  // Per-coordinate factors 2^{(1-delta)/2} cos(...) / max(1, gamma |k|)^4.
  std::vector<std::vector<double>> factor(d);
  for (Index j = 0; j < d; ++j) {
    factor[j] = cosine_table(x[j], K);
    for (Index m = 0; m < factor[j].size(); ++m) {
      const int k = static_cast<int>(m) - static_cast<int>(K);
      const double damp = std::max(1.0, gamma[j] * std::abs(k));
      const double damp2 = damp * damp;
      factor[j][m] *= (k != 0 ? std::numbers::sqrt2 : 1.0) / (damp2 * damp2);
    }
  }
  // Contract the last coordinate first: the dense box is k_1-slowest.
  std::vector<double> work = input.coefficients();
  const Index side = 2 * K + 1;
  for (Index j = d; j-- > 0;) {
    const Index outer = work.size() / side;
    std::vector<double> next(outer, 0.0);
    for (Index o = 0; o < outer; ++o) {
      double acc = 0.0;
      const double* row = work.data() + o * side;
      for (Index m = 0; m < side; ++m) acc += row[m] * factor[j][m];
      next[o] = acc;
    }
    work = std::move(next);
  }
  return work.front();
}

double evaluate_solution(const Approximation& approx, const MultiIndexSpectrum& spectrum, std::span<const double> x) {
  const Index d = spectrum.dimension();
  const Index K = spectrum.k_max();
  check_point(x, d);
  std::vector<std::vector<double>> table(d);
  for (Index j = 0; j < d; ++j) table[j] = cosine_table(x[j], K);
  // First coordinate: -sign(k) sin(2 pi k x + [k < 0] pi/2).
  for (Index m = 0; m < table[0].size(); ++m) {
    const int k = static_cast<int>(m) - static_cast<int>(K);
    const double phase = kTwoPi * k * x[0] + (k < 0 ? std::numbers::pi / 2.0 : 0.0);
    table[0][m] = k == 0 ? 0.0 : -(k > 0 ? 1.0 : -1.0) * std::sin(phase);
  }
  double sum = 0.0;
  for (const auto& [i, value] : approx.retained) {
    if (value == 0.0) continue;
    const auto k = spectrum.multi_index(i);
    double basis = 1.0;
    for (Index j = 0; j < d; ++j) basis *= table[j][static_cast<Index>(k[j] + static_cast<int>(K))];
    sum += value * basis;
  }
  return sum;
}

std::vector<std::vector<double>> slice_grid(Index d, Index count, double fixed) {
  if (d < 2 || count == 0) throw InvalidArgument("slice grid needs d >= 2 and count >= 1");
  std::vector<std::vector<double>> points;
  points.reserve(count * count);
  for (Index row = 0; row < count; ++row) {
    for (Index col = 0; col < count; ++col) {
      std::vector<double> x(d, fixed);
      x[0] = static_cast<double>(col) / static_cast<double>(count);
      x[1] = static_cast<double>(row) / static_cast<double>(count);
      points.push_back(std::move(x));
    }
  }
  return points;
}

}  // namespace adaptlin
