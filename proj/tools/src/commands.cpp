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

#include "adaptlin/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adaptlin/adversarial.hpp"
#include "adaptlin/algorithm.hpp"
#include "adaptlin/analysis.hpp"
#include "adaptlin/cli/output.hpp"
#include "adaptlin/errors.hpp"
#include "adaptlin/problems.hpp"

#ifndef ADAPTLIN_VERSION
#define ADAPTLIN_VERSION "unknown"
#endif

namespace adaptlin::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Slack for comparisons against quantities that are themselves rounded.
constexpr double kRoundingSlack = 1e-12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::filesystem::path out_dir(const CommandContext& context) { return context.config.output; }

void note(const CommandContext& context, const std::string& line) {
  if (!context.quiet && context.log != nullptr) *context.log << line << '\n';
}

std::string num(double x) { return format_number(x); }
std::string num(Index x) { return format_number(static_cast<std::uint64_t>(x)); }

json stamp(double seconds) {
  return {{"seconds", seconds}, {"version", ADAPTLIN_VERSION}, {"generator", kGeneratorId}};
}

json membership_json(const MembershipReport& m) {
  json out = {{"member", m.member}, {"worst_ratio", m.worst_ratio}, {"blocks", m.blocks}};
  out["witness"] = m.witness ? json{{"j", m.witness->first}, {"r", m.witness->second}} : json(nullptr);
  return out;
}

/// Largest sigma_k / (a b^{k-j} sigma_j) over the blocks a run observed.
double observed_cone_ratio(const ConeParams& cone, const std::vector<double>& sigmas) {
  double worst = 0.0;
  for (std::size_t j = 0; j < sigmas.size(); ++j) {
    double decay = cone.b();
    for (std::size_t k = j + 1; k < sigmas.size(); ++k, decay *= cone.b()) {
      if (sigmas[k] == 0.0) continue;
      const double allowed = cone.a() * decay * sigmas[j];
      worst = std::max(worst, allowed > 0.0 ? sigmas[k] / allowed : HUGE_VAL);
    }
  }
  return worst;
}

std::vector<double> descending(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

json run_json(const Approximation& run) {
  json out = {{"cost", run.cost}, {"stop_block", run.stop_block ? json(*run.stop_block) : json(nullptr)}};
  out["error_bound"] = run.error_bound ? json(*run.error_bound) : json(nullptr);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

int cmd_solve(const CommandContext& context) {
  const auto start = Clock::now();
  const RunConfig& config = context.config;
  const BuiltProblem built = build_problem(config);
  const Problem& problem = built.problem;
  const AdaptiveOptions options{config.j_max, config.n_max};
  const bool bounded = built.input.support_bound().has_value();

  json membership = nullptr;
  std::optional<bool> member;
  if (bounded) {
    const auto report = cone_membership(problem, built.input);
    membership = membership_json(report);
    member = report.member;
  }

  CsvTable csv({"epsilon", "j_star", "cost", "error_bound", "true_error", "ratio_true_over_eps"});
  json rows = json::array();
  bool guard = false;
  bool violation = false;
  for (double eps : descending(config.epsilons)) {
    json row = {{"epsilon", eps}};
    Approximation run;
    try {
      run = adaptive_algorithm(problem, built.input, eps, options);
    } catch (const BudgetExceeded& e) {
      guard = true;
      row["guard"] = e.what();
    } catch (const NonTermination& e) {
      guard = true;
      row["guard"] = e.what();
    }
    if (row.contains("guard")) {
      csv.add_row({num(eps), "", "", "", "", ""});
      rows.push_back(row);
      continue;
    }
    const double bound = run.error_bound.value_or(HUGE_VAL);
    row["j_star"] = *run.stop_block;
    row["cost"] = run.cost;
    row["error_bound"] = bound;
    row["observed_cone_ratio"] = observed_cone_ratio(problem.cone, run.sigmas);
    row["worst_cone_ratio"] = membership.is_null() ? json(nullptr) : membership["worst_ratio"];
    if (!(bound <= eps)) violation = true;
    std::string err_cell;
    std::string ratio_cell;
    if (bounded) {
      const double err = true_error(problem, built.input, run);
      row["true_error"] = err;
      row["ratio_true_over_eps"] = err / eps;
      err_cell = num(err);
      ratio_cell = num(err / eps);
      // The guarantee covers cone members only.
      if (member.value_or(false) && !(err <= eps)) violation = true;
    } else {
      row["true_error"] = nullptr;
    }
    if (config.spectrum.family == "example1" && config.rho) {
      const Index scan = ball_cost(problem.spectrum, eps / *config.rho, config.n_max);
      const Index closed = example1_cost_closed_form(config.spectrum.r, eps, *config.rho);
      row["ball_cost"] = scan;
      row["ball_cost_closed_form"] = closed;
      row["ball_cost_match"] = scan == closed;
      if (scan != closed) violation = true;
    }
    csv.add_row({num(eps), num(*run.stop_block), num(run.cost), num(bound), err_cell, ratio_cell});
    rows.push_back(row);
  }

  json record = {{"config", config.to_json()},
                 {"problem",
                  {{"spectrum", problem.spectrum.label()},
                   {"partition", problem.partition.describe()},
                   {"tail_factor", problem.cone.tail_factor()}}},
                 {"membership", membership},
                 {"rows", rows},
                 {"guard_exceeded", guard},
                 {"violation", violation}};
  record.update(stamp(seconds_since(start)));
  if (built.periodic) record["seed"] = built.periodic->seed();
  csv.write(out_dir(context) / "run.csv");
  write_json(out_dir(context) / "run.json", record);
  note(context, "solve: " + std::to_string(rows.size()) + " tolerances -> " + (out_dir(context) / "run.csv").string());
  if (guard) return kExitGuard;
  return violation ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------------------------

int cmd_bounds(const CommandContext& context) {
  const auto start = Clock::now();
  const RunConfig& config = context.config;
  const Problem problem = build_problem(config).problem;
  const auto R = compute_R(problem, config.r_kmax);
  const double omega = compute_omega(problem.cone, R.value);
  GridConfig g = config.grid;
  if (config.rho) {
    g.rho_min = g.rho_max = *config.rho;
    g.rho_count = 1;
  }
  const auto grid = log_grid(g.eps_min, g.eps_max, g.eps_count, g.rho_min, g.rho_max, g.rho_count);

  CsvTable csv({"epsilon", "rho", "j_dagger", "j_dagger_rough", "j_dagger_first", "j_star_lower", "omega", "R",
                "j_star_lower_at_omega_eps", "chain_holds"});
  auto cost_of = [&](Index j) { return j == 0 ? Index{0} : problem.partition[j]; };
  Index violations = 0;
  Index guards = 0;
  for (const auto& point : grid) {
    const double eps = point.epsilon;
    const double rho = point.rho;
    try {
      const Index upper = jdagger_bound(problem, eps, rho, config.j_max);
      std::string rough;
      try {
        rough = num(jdagger_rough(problem, eps, rho, config.j_max));
      } catch (const NonTermination&) {
        ++guards;
      }
      const Index first = jdagger_first(problem, eps, rho);
      const Index lower = jstar_lower_bound(problem, R.value, eps, rho, config.j_max);
      const Index lower_shrunk = jstar_lower_bound(problem, R.value, omega * eps, rho, config.j_max);
      // Lower bound at eps below the adaptive cost bound, which in turn sits
      // below the lower bound at omega eps.
      const bool holds = cost_of(lower) <= cost_of(upper) && cost_of(upper) <= cost_of(lower_shrunk);
      if (!holds) ++violations;
      csv.add_row({num(eps), num(rho), num(upper), rough, num(first), num(lower), num(omega), num(R.value),
                   num(lower_shrunk), holds ? "true" : "false"});
    } catch (const NonTermination&) {
      ++guards;
      csv.add_row({num(eps), num(rho), "", "", "", "", num(omega), num(R.value), "", ""});
    }
  }

  const json summary = {{"config", config.to_json()},
                        {"grid_points", grid.size()},
                        {"R", {{"value", R.value}, {"still_increasing", R.still_increasing},
                               {"first_k", R.first_k}, {"k_max", R.k_max}}},
                        {"omega", omega},
                        {"chain_violations", violations},
                        {"guard_exceedances", guards}};
  csv.write(out_dir(context) / "bounds.csv");
  json record = summary;
  record.update(stamp(seconds_since(start)));
  write_json(out_dir(context) / "bounds.json", record);
  if (R.still_increasing) {
    note(context, "bounds: warning: R was still increasing at k = " + std::to_string(R.k_max) +
                      "; omega and the lower bounds may be unreliable");
  }
  note(context, "bounds: " + std::to_string(grid.size()) + " grid points, " + std::to_string(violations) +
                    " chain violations -> " + (out_dir(context) / "bounds.csv").string());
  if (guards > 0) return kExitGuard;
  return violations > 0 ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------------------------

int cmd_adversarial(const CommandContext& context) {
  const auto start = Clock::now();
  const RunConfig& config = context.config;
  const Problem problem = build_problem(config).problem;
  const double rho = config.rho.value_or(1.0);
  const double eps = descending(config.epsilons).front();
  const Index j = config.fooling.j;
  const AdaptiveOptions options{config.j_max, config.n_max};
  const auto R = compute_R(problem, config.r_kmax);

  const auto f = make_fooling_f(problem, R.value, rho, j);
  const auto run_f = adaptive_algorithm(problem, f, eps, options);
  std::vector<Index> zeroed;
  if (config.fooling.zeroed) {
    zeroed = *config.fooling.zeroed;
  } else {
    for (Index i = 1; i <= run_f.cost; ++i) zeroed.push_back(i);
  }
  const auto pair = make_fooling_pair(problem, R.value, rho, j, zeroed);
  const auto run_plus = adaptive_algorithm(problem, pair.plus, eps, options);
  const auto run_minus = adaptive_algorithm(problem, pair.minus, eps, options);

  auto describe = [&](const CoefficientSource& input, const Approximation& run) {
    const auto m = cone_membership(problem, input);
    json out = {{"norm", input_norm(input)}, {"membership", membership_json(m)}, {"run", run_json(run)}};
    out["run"]["true_error"] = true_error(problem, input, run);
    return std::make_pair(out, m.member);
  };
  const auto [base_json, base_member] = describe(pair.base, run_f);
  const auto [plus_json, plus_member] = describe(pair.plus, run_plus);
  const auto [minus_json, minus_member] = describe(pair.minus, run_minus);

  const bool members = base_member && plus_member && minus_member;
  const double limit = rho * (1.0 + kRoundingSlack);
  const bool norms = base_json["norm"].get<double>() <= limit && plus_json["norm"].get<double>() <= limit &&
                     minus_json["norm"].get<double>() <= limit;
  const bool separated = pair.separation >= 2.0 * pair.eta * (1.0 - kRoundingSlack);
  const bool same_data = run_plus.samples == run_minus.samples && run_plus.retained == run_minus.retained;
  const bool same_as_base = run_plus.samples == run_f.samples && run_minus.samples == run_f.samples;
  const double worse = std::max(plus_json["run"]["true_error"].get<double>(),
                                minus_json["run"]["true_error"].get<double>());
  // Identical output for two solutions `separation` apart: one error is at least half of it.
  const bool forced = !same_data || worse >= 0.5 * pair.separation * (1.0 - kRoundingSlack);
  const bool ok = members && norms && separated && forced;

  json record = {{"config", config.to_json()},
                 {"epsilon", eps},
                 {"rho", rho},
                 {"j", j},
                 {"R", R.value},
                 {"R_still_increasing", R.still_increasing},
                 {"c", pair.c},
                 {"eta", pair.eta},
                 {"separation", pair.separation},
                 {"zeroed", zeroed},
                 {"bump_block_norms", pair.block_norms},
                 {"base", base_json},
                 {"plus", plus_json},
                 {"minus", minus_json},
                 {"checks",
                  {{"all_members", members},
                   {"norms_within_rho", norms},
                   {"separation_at_least_2eta", separated},
                   {"indistinguishable", same_data},
                   {"same_data_as_base", same_as_base},
                   {"worse_error", worse},
                   {"worse_error_at_least_half_separation", forced},
                   {"ok", ok}}}};
  record.update(stamp(seconds_since(start)));
  write_json(out_dir(context) / "adversarial.json", record);
  note(context, std::string("adversarial: ") + (ok ? "all checks hold" : "CHECK FAILED") + ", separation " +
                    num(pair.separation) + " -> " + (out_dir(context) / "adversarial.json").string());
  return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------------------------

int cmd_demo_derivative(const CommandContext& context) {
  const auto start = Clock::now();
  constexpr Index kDimension = 3;
  constexpr Index kBox = 30;
  constexpr Index kFirstBlock = 16;
  constexpr Index kSlice = 64;
  constexpr int kTolerances = 10;
  const auto dir = out_dir(context);

  const auto spectrum = enumerate_spectrum(kDimension, kBox, halving_weights(kDimension));
  const auto input = RandomPeriodicInput::generate(kDimension, kBox, context.config.seed);
  const auto source = derivative_coefficients(spectrum, input);
  const Problem problem{spectrum.spectrum(), Partition::doubling(0, kFirstBlock), ConeParams(2.0, 0.5)};
  const AdaptiveOptions options{context.config.j_max, context.config.n_max};

  // Ten tolerances log-spaced over [0.1, 10], largest first.
  std::vector<double> tolerances;
  for (int m = kTolerances - 1; m >= 0; --m) tolerances.push_back(std::pow(10.0, -1.0 + 2.0 * m / (kTolerances - 1)));

  CsvTable fig2({"epsilon", "n_j_dagger", "true_error", "ratio"});
  json rows = json::array();
  PlotSeries cost_series{"n_j_dagger", {}, {}};
  PlotSeries error_series{"true error", {}, {}};
  PlotSeries tolerance_series{"tolerance", {}, {}};
  PlotSeries ratio_series{"true error / tolerance", {}, {}};
  bool violation = false;
  std::optional<Approximation> finest;
  for (double eps : tolerances) {
    auto run = adaptive_algorithm(problem, source, eps, options);
    const double err = true_error(problem, source, run);
    const double ratio = err / eps;
    const bool on_partition = run.cost >= kFirstBlock && run.cost % kFirstBlock == 0 &&
                              ((run.cost / kFirstBlock) & (run.cost / kFirstBlock - 1)) == 0;
    if (!(ratio <= 1.0) || !on_partition) violation = true;
    fig2.add_row({num(eps), num(run.cost), num(err), num(ratio)});
    rows.push_back({{"epsilon", eps},
                    {"j_star", *run.stop_block},
                    {"n_j_dagger", run.cost},
                    {"error_bound", *run.error_bound},
                    {"true_error", err},
                    {"ratio", ratio},
                    {"on_partition", on_partition}});
    cost_series.x.push_back(eps);
    cost_series.y.push_back(static_cast<double>(run.cost));
    error_series.x.push_back(eps);
    error_series.y.push_back(err);
    tolerance_series.x.push_back(eps);
    tolerance_series.y.push_back(eps);
    ratio_series.x.push_back(eps);
    ratio_series.y.push_back(ratio);
    finest = std::move(run);
  }
  fig2.write(dir / "fig2.csv");
  write_svg(dir / "fig2_cost.svg", {"Sample size against tolerance", "tolerance", "sample size", true, true},
            {cost_series});
  write_svg(dir / "fig2_error.svg", {"True error against tolerance", "tolerance", "error", true, true},
            {error_series, tolerance_series});
  write_svg(dir / "fig2_ratio.svg", {"True error over tolerance", "tolerance", "ratio", true, true}, {ratio_series});

  // Slice x3 = 0 at the smallest tolerance.
  const auto exact = interpolate(problem, source, *source.support_bound());
  const auto& gamma = spectrum.gamma();
  CsvTable input_csv({"x1", "x2", "value"});
  CsvTable true_csv({"x1", "x2", "value"});
  CsvTable approx_csv({"x1", "x2", "value"});
  CsvTable error_csv({"x1", "x2", "value"});
  double max_slice_error = 0.0;
  for (const auto& x : slice_grid(kDimension, kSlice, 0.0)) {
    const double f = evaluate_input(input, gamma, x);
    const double s = evaluate_solution(exact, spectrum, x);
    const double a = evaluate_solution(*finest, spectrum, x);
    const std::string x1 = num(x[0]);
    const std::string x2 = num(x[1]);
    input_csv.add_row({x1, x2, num(f)});
    true_csv.add_row({x1, x2, num(s)});
    approx_csv.add_row({x1, x2, num(a)});
    error_csv.add_row({x1, x2, num(s - a)});
    max_slice_error = std::max(max_slice_error, std::abs(s - a));
  }
  input_csv.write(dir / "fig1_input.csv");
  true_csv.write(dir / "fig1_true.csv");
  approx_csv.write(dir / "fig1_approx.csv");
  error_csv.write(dir / "fig1_error.csv");

  json record = {{"setup",
                  {{"d", kDimension},
                   {"K", kBox},
                   {"gamma", gamma},
                   {"partition", problem.partition.describe()},
                   {"cone", {{"a", 2.0}, {"b", 0.5}}},
                   {"multi_indices", spectrum.size()},
                   {"input_support", input.support_size()}}},
                 {"seed", context.config.seed},
                 {"rows", rows},
                 {"slice", {{"count", kSlice}, {"x3", 0.0}, {"epsilon", tolerances.back()},
                            {"max_abs_error", max_slice_error}}},
                 {"violation", violation}};
  record.update(stamp(seconds_since(start)));
  write_json(dir / "run.json", record);
  note(context, "demo-derivative: cost at eps = 0.1 is " + num(finest->cost) + (violation ? ", CHECK FAILED" : "") +
                    " -> " + (dir / "fig2.csv").string());
  return violation ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------------------------

int cmd_example1(const CommandContext& context) {
  const RunConfig& config = context.config;
  const auto& e = config.example1;
  CsvTable csv({"r", "rho_over_eps", "scan_cost", "closed_form", "match"});
  Index mismatches = 0;
  for (double r : e.r) {
    const auto spectrum = Example1Problem(r).spectrum();
    for (Index m = 0; m < e.count; ++m) {
      const double exponent = e.count == 1 ? 0.0 : static_cast<double>(m) / static_cast<double>(e.count - 1);
      const double ratio = std::pow(e.max_ratio, exponent);
      const double eps = 1.0 / ratio;
      const Index scan = ball_cost(spectrum, eps, config.n_max);
      const Index closed = example1_cost_closed_form(r, eps, 1.0);
      if (scan != closed) ++mismatches;
      csv.add_row({num(r), num(ratio), num(scan), num(closed), scan == closed ? "true" : "false"});
    }
  }
  csv.write(out_dir(context) / "example1.csv");
  note(context, "example1: " + std::to_string(csv.rows()) + " points, " + std::to_string(mismatches) +
                    " mismatches -> " + (out_dir(context) / "example1.csv").string());
  return mismatches > 0 ? kExitViolation : kExitOk;
}

}  // namespace adaptlin::cli
