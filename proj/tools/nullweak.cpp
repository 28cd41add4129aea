// Copyright 2026 The nullweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "nullweak/errors.hpp"
#include "nullweak/scenario_io.hpp"
#include "nullweak/setups.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;

std::string pair_line(double alpha, double phi) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "alpha=%.15g phi=%.15g\n", alpha, phi);
  return buf;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "nullweak: cannot write " << out_path << "\n";
    return kExitInput;
  }
  out << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nullweak;

  CLI::App app{"Weak values by exact evaluation and pointer-coupled evolution"};
  app.require_subcommand(1);

  std::string file, builtin_name, mode_name, output = "csv", out_path;
  bool analytic = false, serial = false;
  double g = 0.0;
  std::vector<double> sweep_args;

  auto* run_cmd = app.add_subcommand("run", "Evaluate every probe of a scenario");
  auto* file_opt = run_cmd->add_option("file", file, "Scenario file");
  auto* builtin_opt = run_cmd->add_option("--builtin", builtin_name, "three-path | nested-mzi");
  file_opt->excludes(builtin_opt);
  run_cmd->add_flag("--analytic", analytic, "Exact weak values without pointer simulation");
  run_cmd->add_option("--mode", mode_name, "Coupled regime")->check(CLI::IsMember({"weak", "strong", "exact"}));
  auto* g_opt = run_cmd->add_option("--g", g, "Coupling strength for every probe");
  auto* sweep_opt = run_cmd->add_option("--sweep", sweep_args, "Log-spaced sweep: MIN MAX N")->expected(3);
  g_opt->excludes(sweep_opt);
  run_cmd->add_option("--output", output, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--out", out_path, "Write results here instead of stdout");
  run_cmd->add_flag("--serial", serial, "Evaluate points on one thread");

  bool unit = false;
  double alpha = std::numbers::pi / 3.0;
  auto* solve_cmd = app.add_subcommand("solve-angles", "Print postselection angles");
  solve_cmd->add_flag("--unit-weak-values", unit, "Angles with Pi_E^w = 1 and Pi_F^w = -1");
  solve_cmd->add_option("--alpha", alpha, "Split angle for the postselection solver");

  auto* emit_cmd = app.add_subcommand("emit", "Write a scenario in explicit matrix form");
  std::string emit_file, emit_builtin;
  auto* emit_file_opt = emit_cmd->add_option("file", emit_file, "Scenario file");
  emit_cmd->add_option("--builtin", emit_builtin, "three-path | nested-mzi")->excludes(emit_file_opt);
  emit_cmd->add_option("--out", out_path, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve_cmd) {
      const auto angles = unit ? setups::solve_unit_weak_values()
                               : setups::AnglePair{alpha, setups::solve_postselection(alpha)};
      std::cout << pair_line(angles.alpha, angles.phi);
      return kExitOk;
    }

    auto scenario_from = [](const std::string& path, const std::string& name) {
      if (!name.empty()) return cli::parse_scenario("{\"builtin\": \"" + name + "\"}", "--builtin");
      if (path.empty()) throw ValidationError("need a scenario file or --builtin NAME");
      return cli::load(path);
    };

    if (*emit_cmd) return emit(cli::emit_scenario(scenario_from(emit_file, emit_builtin)), out_path);

    const auto scenario = scenario_from(file, builtin_name);
    cli::RunFlags flags;
    flags.analytic = analytic;
    flags.parallel = !serial;
    if (!mode_name.empty()) {
      flags.mode = mode_name == "weak" ? protocol::Mode::weak
                   : mode_name == "strong" ? protocol::Mode::strong
                                           : protocol::Mode::exact;
    }
    if (*g_opt) flags.g = g;
    if (*sweep_opt) {
      const double n = sweep_args[2];
      if (n < 1 || n != std::floor(n)) throw ValidationError("--sweep N must be a positive integer");
      flags.sweep = cli::SweepSpec{sweep_args[0], sweep_args[1], static_cast<std::size_t>(n)};
    }

    const auto rows = cli::run(scenario, flags);
    std::size_t failed = 0;
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        ++failed;
        std::cerr << "nullweak: " << r.probe << ": " << r.error << "\n";
      } else if (!analytic && r.fidelity && std::abs(*r.fidelity - 1.0) <= 1e-12) {
        std::cerr << "note: " << r.probe << ": pointer left untouched (fidelity 1 with its initial state)\n";
      }
    }
    const int code = emit(output == "json" ? cli::format_json(rows) : cli::format_csv(rows), out_path);
    if (code != kExitOk) return code;
    return !rows.empty() && failed == rows.size() ? kExitEngine : kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "nullweak: parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "nullweak: invalid scenario: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "nullweak: invalid argument: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "nullweak: " << e.what() << "\n";
    return kExitEngine;
  }
}
