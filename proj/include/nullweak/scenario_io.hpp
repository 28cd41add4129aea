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

#pragma once

// Scenario files (JSON), scenario execution and result emission.
//
// A file either names a builtin:
//   {"builtin": "three-path", "alpha": 1.1, "phi": 2.6, "gamma": {"D": 0.9}}
// or describes the interferometer. The authoring form gives the first slice
// basis and a list of named gates:
//   {"basis": {"paths": ["in", "v"], "spins": null},
//    "slice_names": ["t_i", "t_f"],
//    "stages": [{"gate": "bs50", "paths": ["in", "v"], "out": ["C", "E"]}],
//    "preselect": {"in": [1, 0]},
//    "postselect": [[0.7071067811865476, 0], [0, 0.7071067811865476]],
//    "probes": [{"label": "Pi_C", "slice": "t_f", "region": "C", "g": 0.01}]}
// The explicit form (what emit_scenario writes) lists every slice basis and
// every stage as a matrix. Complex numbers are always [re, im] pairs.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nullweak/protocol.hpp"
#include "nullweak/sweep.hpp"

namespace nullweak::cli {

/// Throws ParseError (syntax, wrong JSON types; message names line or
/// field) or ValidationError (violated invariant, message names it).
protocol::Scenario parse_scenario(std::string_view text, std::string_view origin = "<string>");
protocol::Scenario load(const std::filesystem::path& path);

/// Explicit-form JSON; parse_scenario(emit_scenario(s)) reproduces s exactly.
std::string emit_scenario(const protocol::Scenario& scenario);

struct SweepSpec {
  double g_min;
  double g_max;
  std::size_t n;
};

struct RunFlags {
  bool analytic = false;
  std::optional<protocol::Mode> mode;
  std::optional<double> g;
  std::optional<SweepSpec> sweep;
  bool parallel = true;
};

struct ResultRow {
  std::string probe;
  std::string slice;
  double g = 0.0;
  std::optional<protocol::Complex> weak_value;
  std::optional<double> shift;
  std::optional<double> prob;
  std::optional<double> fidelity;
  std::string regime;
  std::string error;  // non-empty for rows whose evaluation failed
};

/// One row per probe, or per (probe, g) with a sweep; probe declaration
/// order, then increasing g.
std::vector<ResultRow> run(const protocol::Scenario& scenario, const RunFlags& flags);

/// 12 significant digits, "undefined" for missing or non-finite values.
std::string format_number(std::optional<double> v);
std::string format_csv(const std::vector<ResultRow>& rows);
std::string format_json(const std::vector<ResultRow>& rows);

}  // namespace nullweak::cli
