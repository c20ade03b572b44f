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

// Subcommands of the adaptlin executable. Each writes its files under the
// configured output directory and returns a process exit code.

#pragma once

#include <iosfwd>

#include "adaptlin/cli/config.hpp"

namespace adaptlin::cli {

enum ExitCode : int {
  kExitOk = 0,
  /// A checked guarantee or cross-check failed.
  kExitViolation = 1,
  /// Bad flags, bad config, or a construction the config makes impossible.
  kExitConfig = 2,
  /// An iteration or sample-budget guard fired.
  kExitGuard = 3,
};

struct CommandContext {
  RunConfig config;
  bool quiet = false;
  std::ostream* log = nullptr;
};

/// run.json and run.csv: one adaptive solve per tolerance, largest first.
int cmd_solve(const CommandContext& context);
/// bounds.csv and bounds.json over the configured (epsilon, rho) grid.
int cmd_bounds(const CommandContext& context);
/// adversarial.json: fooling input, its perturbed pair and the adaptive runs.
int cmd_adversarial(const CommandContext& context);
/// fig2.csv, fig1_*.csv, SVG plots and run.json for the fixed periodic
/// derivative setup. Only seed and output are taken from the config.
int cmd_demo_derivative(const CommandContext& context);
/// example1.csv: ball cost by scan against the closed form.
int cmd_example1(const CommandContext& context);

/// Full command line entry point. Argument errors return kExitConfig.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adaptlin::cli
