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

#include "adaptlin/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "adaptlin/errors.hpp"

namespace adaptlin::cli {

namespace {

using nlohmann::json;

void allow_only(const json& object, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!object.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& item : object.items()) {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

// Integers built in code are signed even when non-negative.
bool is_index(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::string path(std::string_view where, std::string_view key) {
  return where.empty() ? std::string(key) : std::string(where) + "." + std::string(key);
}

double read_real(const json& object, std::string_view where, const char* key, double fallback) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (!v.is_number()) throw ConfigError(path(where, key) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path(where, key) + ": must be finite");
  return x;
}

double read_positive(const json& object, std::string_view where, const char* key, double fallback) {
  const double x = read_real(object, where, key, fallback);
  if (!(x > 0.0)) throw ConfigError(path(where, key) + ": must be positive");
  return x;
}

Index read_index(const json& object, std::string_view where, const char* key, Index fallback) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (!is_index(v)) throw ConfigError(path(where, key) + ": expected a non-negative integer");
  return v.get<Index>();
}

std::string read_string(const json& object, std::string_view where, const char* key, std::string fallback,
                        std::initializer_list<std::string_view> choices) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (!v.is_string()) throw ConfigError(path(where, key) + ": expected a string");
  auto s = v.get<std::string>();
  if (std::find(choices.begin(), choices.end(), s) == choices.end()) {
    std::string list;
    for (auto c : choices) list += (list.empty() ? "" : ", ") + std::string(c);
    throw ConfigError(path(where, key) + ": '" + s + "' is not one of " + list);
  }
  return s;
}

std::vector<double> read_reals(const json& object, std::string_view where, const char* key) {
  const auto& v = object.at(key);
  if (!v.is_array()) throw ConfigError(path(where, key) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(path(where, key) + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<Index> read_indices(const json& object, std::string_view where, const char* key) {
  const auto& v = object.at(key);
  if (!v.is_array()) throw ConfigError(path(where, key) + ": expected an array of integers");
  std::vector<Index> out;
  for (const auto& x : v) {
    if (!is_index(x)) throw ConfigError(path(where, key) + ": expected an array of non-negative integers");
    out.push_back(x.get<Index>());
  }
  return out;
}

}  // namespace

RunConfig parse_config(const json& document) {
  allow_only(document, "config",
             {"spectrum", "partition", "cone", "input", "epsilons", "rho", "seed", "output", "j_max", "n_max",
              "r_kmax", "fooling", "grid", "example1"});
  RunConfig c;

  if (document.contains("spectrum")) {
    const auto& s = document.at("spectrum");
    allow_only(s, "spectrum", {"family", "C", "p", "r", "values", "d", "K"});
    c.spectrum.family =
        read_string(s, "spectrum", "family", c.spectrum.family, {"algebraic", "geometric", "example1", "explicit", "derivative"});
    c.spectrum.scale = read_positive(s, "spectrum", "C", c.spectrum.scale);
    c.spectrum.power = read_positive(s, "spectrum", "p", c.spectrum.power);
    c.spectrum.r = read_real(s, "spectrum", "r", c.spectrum.r);
    if (c.spectrum.r < 0.0) throw ConfigError("spectrum.r: must be non-negative");
    if (s.contains("values")) c.spectrum.values = read_reals(s, "spectrum", "values");
    c.spectrum.d = read_index(s, "spectrum", "d", c.spectrum.d);
    c.spectrum.K = read_index(s, "spectrum", "K", c.spectrum.K);
    if (c.spectrum.family == "explicit" && c.spectrum.values.empty()) {
      throw ConfigError("spectrum.values: required for the explicit family");
    }
    if (c.spectrum.family == "geometric" && !(c.spectrum.power > 1.0)) {
      throw ConfigError("spectrum.p: geometric family needs p > 1");
    }
    if (c.spectrum.family == "derivative" && (c.spectrum.d == 0 || c.spectrum.K == 0)) {
      throw ConfigError("spectrum.d, spectrum.K: must be at least 1");
    }
  }

  if (c.spectrum.family == "derivative") {
    // The demo partition unless overridden.
    c.partition.kind = "doubling";
    c.partition.n0 = 0;
    c.partition.n1 = 16;
    c.input.kind = "random_periodic";
  }
  if (document.contains("partition")) {
    const auto& p = document.at("partition");
    allow_only(p, "partition", {"kind", "n0", "n1", "step", "values"});
    c.partition.kind = read_string(p, "partition", "kind", c.partition.kind, {"geometric", "doubling", "arithmetic", "explicit"});
    c.partition.n0 = read_index(p, "partition", "n0", c.partition.n0);
    if (p.contains("n1")) c.partition.n1 = read_index(p, "partition", "n1", 0);
    c.partition.step = read_index(p, "partition", "step", c.partition.step);
    if (p.contains("values")) c.partition.values = read_indices(p, "partition", "values");
    if (c.partition.kind == "doubling" && !c.partition.n1) throw ConfigError("partition.n1: required for doubling");
  }

  if (document.contains("cone")) {
    const auto& k = document.at("cone");
    allow_only(k, "cone", {"a", "b"});
    c.a = read_real(k, "cone", "a", c.a);
    c.b = read_real(k, "cone", "b", c.b);
  }

  if (document.contains("input")) {
    const auto& in = document.at("input");
    allow_only(in, "input", {"kind", "coefficients", "scale", "power", "support"});
    c.input.kind = read_string(in, "input", "kind", c.input.kind, {"zero", "explicit", "decay", "random_periodic"});
    if (in.contains("coefficients")) c.input.coefficients = read_reals(in, "input", "coefficients");
    c.input.scale = read_real(in, "input", "scale", c.input.scale);
    c.input.power = read_real(in, "input", "power", c.input.power);
    c.input.support = read_index(in, "input", "support", c.input.support);
  }
  if (c.input.kind == "random_periodic" && c.spectrum.family != "derivative") {
    throw ConfigError("input.kind: random_periodic needs spectrum.family = derivative");
  }
  if (c.spectrum.family == "derivative" && c.input.kind != "random_periodic" && c.input.kind != "zero") {
    throw ConfigError("input.kind: the derivative family takes random_periodic or zero inputs");
  }

  if (document.contains("epsilons")) {
    c.epsilons = read_reals(document, "", "epsilons");
    if (c.epsilons.empty()) throw ConfigError("epsilons: must not be empty");
  }
  for (double e : c.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("epsilons: every tolerance must be positive");
  }
  if (document.contains("rho")) c.rho = read_positive(document, "", "rho", 1.0);
  if (document.contains("seed")) {
    if (!is_index(document.at("seed"))) throw ConfigError("seed: expected a non-negative integer");
    c.seed = document.at("seed").get<std::uint64_t>();
  }
  if (document.contains("output")) {
    if (!document.at("output").is_string()) throw ConfigError("output: expected a string");
    c.output = document.at("output").get<std::string>();
  }
  c.j_max = read_index(document, "", "j_max", c.j_max);
  c.n_max = read_index(document, "", "n_max", c.n_max);
  c.r_kmax = read_index(document, "", "r_kmax", c.r_kmax);
  if (c.j_max == 0 || c.r_kmax == 0) throw ConfigError("j_max, r_kmax: must be at least 1");

  if (document.contains("fooling")) {
    const auto& f = document.at("fooling");
    allow_only(f, "fooling", {"j", "zeroed"});
    c.fooling.j = read_index(f, "fooling", "j", c.fooling.j);
    if (f.contains("zeroed")) c.fooling.zeroed = read_indices(f, "fooling", "zeroed");
    if (c.fooling.j == 0) throw ConfigError("fooling.j: must be at least 1");
  }

  if (document.contains("grid")) {
    const auto& g = document.at("grid");
    allow_only(g, "grid", {"eps_min", "eps_max", "eps_count", "rho_min", "rho_max", "rho_count"});
    c.grid.eps_min = read_positive(g, "grid", "eps_min", c.grid.eps_min);
    c.grid.eps_max = read_positive(g, "grid", "eps_max", c.grid.eps_max);
    c.grid.eps_count = read_index(g, "grid", "eps_count", c.grid.eps_count);
    c.grid.rho_min = read_positive(g, "grid", "rho_min", c.grid.rho_min);
    c.grid.rho_max = read_positive(g, "grid", "rho_max", c.grid.rho_max);
    c.grid.rho_count = read_index(g, "grid", "rho_count", c.grid.rho_count);
    if (c.grid.eps_min > c.grid.eps_max || c.grid.rho_min > c.grid.rho_max || c.grid.eps_count == 0 ||
        c.grid.rho_count == 0) {
      throw ConfigError("grid: ranges must be ordered and counts positive");
    }
  }

  if (document.contains("example1")) {
    const auto& e = document.at("example1");
    allow_only(e, "example1", {"r", "count", "max_ratio"});
    if (e.contains("r")) c.example1.r = read_reals(e, "example1", "r");
    c.example1.count = read_index(e, "example1", "count", c.example1.count);
    c.example1.max_ratio = read_positive(e, "example1", "max_ratio", c.example1.max_ratio);
    for (double r : c.example1.r) {
      if (!(r > 0.0)) throw ConfigError("example1.r: every exponent must be positive");
    }
    if (c.example1.count == 0 || !(c.example1.max_ratio > 1.0)) {
      throw ConfigError("example1: count must be positive and max_ratio > 1");
    }
  }

  // Library-level invariants, reported as configuration errors.
  try {
    (void)ConeParams(c.a, c.b);
    (void)build_problem(c);
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid problem: ") + e.what());
  }
  return c;
}

nlohmann::json read_config_document(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config '" + file + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + file + "' is not valid JSON: " + e.what());
  }
}

RunConfig load_config(const std::string& file) { return parse_config(read_config_document(file)); }

nlohmann::json RunConfig::to_json() const {
  json s = {{"family", spectrum.family}};
  if (spectrum.family == "algebraic" || spectrum.family == "geometric") {
    s["C"] = spectrum.scale;
    s["p"] = spectrum.power;
  } else if (spectrum.family == "example1") {
    s["r"] = spectrum.r;
  } else if (spectrum.family == "explicit") {
    s["values"] = spectrum.values;
  } else {
    s["d"] = spectrum.d;
    s["K"] = spectrum.K;
  }
  json p = {{"kind", partition.kind}, {"n0", partition.n0}};
  if (partition.kind == "doubling") p["n1"] = *partition.n1;
  if (partition.kind == "arithmetic") p["step"] = partition.step;
  if (partition.kind == "explicit") {
    p.erase("n0");
    p["values"] = partition.values;
  }
  json in = {{"kind", input.kind}};
  if (input.kind == "explicit") in["coefficients"] = input.coefficients;
  if (input.kind == "decay") {
    in["scale"] = input.scale;
    in["power"] = input.power;
    in["support"] = input.support;
  }
  json out = {{"spectrum", s},
              {"partition", p},
              {"cone", {{"a", a}, {"b", b}}},
              {"input", in},
              {"epsilons", epsilons},
              {"seed", seed},
              {"output", output},
              {"j_max", j_max},
              {"n_max", n_max},
              {"r_kmax", r_kmax}};
  if (rho) out["rho"] = *rho;
  return out;
}

BuiltProblem build_problem(const RunConfig& c) {
  std::optional<MultiIndexSpectrum> multi;
  std::optional<RandomPeriodicInput> periodic;
  SingularSpectrum spectrum = SingularSpectrum::algebraic(1.0, 1.0);
  const auto& s = c.spectrum;
  if (s.family == "algebraic") {
    spectrum = SingularSpectrum::algebraic(s.scale, s.power);
  } else if (s.family == "geometric") {
    spectrum = SingularSpectrum::geometric(s.scale, s.power);
  } else if (s.family == "example1") {
    spectrum = Example1Problem(s.r).spectrum();
  } else if (s.family == "explicit") {
    spectrum = SingularSpectrum::from_values(s.values);
  } else {
    multi = enumerate_spectrum(s.d, s.K, halving_weights(s.d));
    spectrum = multi->spectrum();
  }

  Partition partition = Partition::geometric(1);
  const auto& p = c.partition;
  if (p.kind == "geometric") {
    partition = Partition::geometric(p.n0);
  } else if (p.kind == "doubling") {
    partition = Partition::doubling(p.n0, p.n1.value_or(0));
  } else if (p.kind == "arithmetic") {
    partition = Partition::arithmetic(p.n0, p.step);
  } else {
    partition = Partition::explicit_list(p.values);
  }

  BuiltProblem out{Problem{spectrum, partition, ConeParams(c.a, c.b)}, CoefficientSource::zero(), std::move(multi),
                   std::nullopt};
  const auto& in = c.input;
  if (in.kind == "explicit") {
    out.input = CoefficientSource::from_vector(in.coefficients);
  } else if (in.kind == "decay") {
    const double scale = in.scale;
    const double power = in.power;
    out.input = CoefficientSource::from_rule(
        [scale, power](Index i) { return scale * std::pow(static_cast<double>(i), -power); }, in.support);
  } else if (in.kind == "random_periodic") {
    out.periodic = RandomPeriodicInput::generate(s.d, s.K, c.seed);
    out.input = derivative_coefficients(*out.multi_index, *out.periodic);
  }
  return out;
}

}  // namespace adaptlin::cli
