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

#include "nullweak/sweep.hpp"

#include <cmath>

namespace nullweak::protocol {

namespace {

std::size_t points_per_probe(const SweepRequest& req) {
  return req.g_values.empty() ? 1 : req.g_values.size();
}

SweepPoint evaluate(const Scenario& scenario, const SweepRequest& req, std::size_t flat) {
  const std::size_t per = points_per_probe(req);
  SweepPoint pt;
  pt.probe_index = flat / per;
  Probe probe = scenario.probes[pt.probe_index];
  if (!req.g_values.empty()) probe.g = req.g_values[flat % per];
  pt.g = probe.g;
  try {
    pt.report = req.analytic ? analytic_report(scenario, probe) : run_coupled(scenario, probe, req.mode);
  } catch (const std::exception& e) {
    pt.error = e.what();
  }
  return pt;
}

}  // namespace

std::vector<double> log_spaced(double g_min, double g_max, std::size_t n) {
  if (n == 0) throw DomainError("sweep needs at least one point");
  if (!(g_min > 0.0) || !(g_max > 0.0)) throw DomainError("log-spaced sweep needs positive bounds");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = g_min;
    return out;
  }
  const double lo = std::log(g_min);
  const double step = (std::log(g_max) - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(lo + step * static_cast<double>(i));
  out.front() = g_min;
  out.back() = g_max;
  return out;
}

std::vector<SweepPoint> sweep_serial(const Scenario& scenario, const SweepRequest& request) {
  const std::size_t total = scenario.probes.size() * points_per_probe(request);
  std::vector<SweepPoint> out;
  out.reserve(total);
  for (std::size_t i = 0; i < total; ++i) out.push_back(evaluate(scenario, request, i));
  return out;
}

std::vector<SweepPoint> sweep(const Scenario& scenario, const SweepRequest& request) {
  const auto total = static_cast<std::ptrdiff_t>(scenario.probes.size() * points_per_probe(request));
  std::vector<SweepPoint> out(static_cast<std::size_t>(total));
  // Each slot is written by exactly one iteration; the scenario is read-only.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    out[static_cast<std::size_t>(i)] = evaluate(scenario, request, static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace nullweak::protocol
