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

// Batch evaluation of (probe, g) grids. `sweep` is the OpenMP kernel used by
// the CLI; `sweep_serial` is the reference loop it is tested against.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullweak/protocol.hpp"

namespace nullweak::protocol {

struct SweepRequest {
  bool analytic = false;
  Mode mode = Mode::exact;
  /// Empty: each probe runs once at its own g.
  std::vector<double> g_values;
};

struct SweepPoint {
  std::size_t probe_index = 0;
  double g = 0.0;
  std::optional<WeakReport> report;
  std::string error;  // engine error message when report is empty
};

/// n log-spaced couplings from g_min to g_max inclusive (n == 1 gives g_min).
std::vector<double> log_spaced(double g_min, double g_max, std::size_t n);

/// Points ordered by probe index, then by position in g_values.
std::vector<SweepPoint> sweep(const Scenario& scenario, const SweepRequest& request);
std::vector<SweepPoint> sweep_serial(const Scenario& scenario, const SweepRequest& request);

}  // namespace nullweak::protocol
