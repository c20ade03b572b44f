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

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adaptlin/cli/commands.hpp"
#include "adaptlin/errors.hpp"

namespace adaptlin::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive and fixed-budget solvers for linear problems on Hilbert spaces.", "adaptlin"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::vector<double> epsilons;
  std::optional<double> rho;
  std::optional<Index> j_max;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--output", output, "Output directory (overrides the config)");
  app.add_option("--seed", seed, "Random seed (overrides the config)");
  app.add_option("--epsilons", epsilons, "Comma-separated tolerances (overrides the config)")->delimiter(',');
  app.add_option("--rho", rho, "Input norm radius (overrides the config)");
  app.add_option("--jmax", j_max, "Block iteration guard (overrides the config)");
  app.add_flag("--quiet", quiet, "Suppress progress lines");

  const std::map<std::string, std::function<int(const CommandContext&)>> commands = {
      {"solve", cmd_solve},
      {"bounds", cmd_bounds},
      {"adversarial", cmd_adversarial},
      {"demo-derivative", cmd_demo_derivative},
      {"example1", cmd_example1},
  };
  const std::map<std::string, std::string> help = {
      {"solve", "Adaptive solve for each tolerance; writes run.json and run.csv"},
      {"bounds", "Cost bounds over an (epsilon, rho) grid; writes bounds.csv"},
      {"adversarial", "Fooling-input construction and check; writes adversarial.json"},
      {"demo-derivative", "Periodic partial-derivative sweep; writes fig1_*.csv, fig2.csv and plots"},
      {"example1", "Ball cost scan against its closed form; writes example1.csv"},
  };
  for (const auto& [name, text] : help) app.add_subcommand(name, text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  CommandContext context;
  context.quiet = quiet;
  context.log = &out;
  try {
    nlohmann::json document = config_path.empty() ? nlohmann::json::object() : read_config_document(config_path);
    if (!document.is_object()) throw ConfigError("config: expected an object");
    if (output) document["output"] = *output;
    if (seed) document["seed"] = *seed;
    if (!epsilons.empty()) document["epsilons"] = epsilons;
    if (rho) document["rho"] = *rho;
    if (j_max) document["j_max"] = *j_max;
    context.config = parse_config(document);
  } catch (const std::exception& e) {
    err << "adaptlin: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return commands.at(name)(context);
  } catch (const BudgetExceeded& e) {
    err << "adaptlin " << name << ": guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const NonTermination& e) {
    err << "adaptlin " << name << ": guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "adaptlin " << name << ": " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace adaptlin::cli
