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

// Run configuration: a single JSON document. Unknown keys are errors.
//
// {
//   "spectrum":  {"family": "algebraic" | "geometric" | "example1" | "explicit" | "derivative",
//                 "C": 1, "p": 2, "r": 2, "values": [...], "d": 3, "K": 30},
//   "partition": {"kind": "geometric" | "doubling" | "arithmetic" | "explicit",
//                 "n0": 1, "n1": 16, "step": 1, "values": [...]},
//   "cone":      {"a": 2, "b": 0.5},
//   "input":     {"kind": "zero" | "explicit" | "decay" | "random_periodic",
//                 "coefficients": [...], "scale": 1, "power": 2, "support": 1000},
//   "epsilons":  [0.1, 0.01],
//   "rho":       1,
//   "seed":      20250101,
//   "output":    "adaptlin-out",
//   "j_max":     64,
//   "n_max":     1073741824,
//   "r_kmax":    30,
//   "fooling":   {"j": 4, "zeroed": [...]},
//   "grid":      {"eps_min": 1e-4, "eps_max": 1, "eps_count": 20,
//                 "rho_min": 1, "rho_max": 1e4, "rho_count": 20},
//   "example1":  {"r": [1, 2, 4], "count": 50, "max_ratio": 1e6}
// }

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptlin/problems.hpp"
#include "adaptlin/spectrum.hpp"
#include "json.hpp"

namespace adaptlin::cli {

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumConfig {
  std::string family = "algebraic";
  double scale = 1.0;  // C
  double power = 2.0;  // p
  double r = 2.0;
  std::vector<double> values;
  Index d = 3;
  Index K = 30;
};

struct PartitionConfig {
  std::string kind = "geometric";
  Index n0 = 1;
  std::optional<Index> n1;
  Index step = 1;
  std::vector<Index> values;
};

struct InputConfig {
  std::string kind = "zero";
  std::vector<double> coefficients;
  double scale = 1.0;
  double power = 2.0;
  Index support = 1000;
};

struct GridConfig {
  double eps_min = 1e-4;
  double eps_max = 1.0;
  Index eps_count = 20;
  double rho_min = 1.0;
  double rho_max = 1e4;
  Index rho_count = 20;
};

struct FoolingConfig {
  Index j = 4;
  std::optional<std::vector<Index>> zeroed;
};

struct Example1Config {
  std::vector<double> r{1.0, 2.0, 4.0};
  Index count = 50;
  double max_ratio = 1e6;
};

struct RunConfig {
  SpectrumConfig spectrum;
  PartitionConfig partition;
  double a = 2.0;
  double b = 0.5;
  InputConfig input;
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
  std::optional<double> rho;
  std::uint64_t seed = 20250101;
  std::string output = "adaptlin-out";
  Index j_max = kDefaultJMax;
  Index n_max = kDefaultNMax;
  Index r_kmax = 30;
  FoolingConfig fooling;
  GridConfig grid;
  Example1Config example1;

  nlohmann::json to_json() const;
};

/// Parses and validates (cone, partition, positive tolerances). Throws
/// ConfigError with the offending key path.
RunConfig parse_config(const nlohmann::json& document);
/// Reads a JSON document; ConfigError when unreadable or malformed.
nlohmann::json read_config_document(const std::string& path);
RunConfig load_config(const std::string& path);

/// The problem, input and (for the derivative family) the enumerated spectrum
/// and periodic input a config describes.
struct BuiltProblem {
  Problem problem;
  CoefficientSource input = CoefficientSource::zero();
  std::optional<MultiIndexSpectrum> multi_index;
  std::optional<RandomPeriodicInput> periodic;
};

BuiltProblem build_problem(const RunConfig& config);

}  // namespace adaptlin::cli
