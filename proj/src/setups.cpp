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

#include "nullweak/setups.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "nullweak/gates.hpp"

namespace nullweak::setups {

using hilbert::Ket;
using hilbert::LinOp;
using hilbert::make_basis;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kScanPoints = 720;
constexpr double kBranchTol = 1e-9;

std::size_t spin_index(int m) {
  if (m < -1 || m > 1) throw DomainError("spin-1 projection outside {-1, 0, +1}");
  return static_cast<std::size_t>(1 - m);
}

template <class F>
double refine(F&& f, double lo, double hi, double f_lo, double f_hi) {
  boost::uintmax_t max_iter = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                  boost::math::tools::eps_tolerance<double>(52), max_iter);
  const double fa = std::abs(f(a));
  const double fb = std::abs(f(b));
  return fa <= fb ? a : b;
}

bool qualifies(double alpha, double phi) {
  const double lower0 = split_amplitude(0, alpha) * postselection_amplitude(0, alpha, phi);
  const double lower1 = split_amplitude(-1, alpha) * postselection_amplitude(-1, alpha, phi);
  double total = 0.0;
  for (int k = -1; k <= 1; ++k) total += split_amplitude(k, alpha) * postselection_amplitude(k, alpha, phi);
  return std::max(std::abs(lower0), std::abs(lower1)) > kBranchTol && std::abs(total) > protocol::kOrthogonalTol &&
         std::abs(postselection_residual(alpha, phi)) <= 1e-10;
}

std::optional<double> try_solve_postselection(double alpha) {
  auto f = [alpha](double phi) { return postselection_residual(alpha, phi); };
  const double step = 2.0 * kPi / static_cast<double>(kScanPoints);
  double prev_x = step * 1e-6;  // open interval: start just above 0
  double prev_f = f(prev_x);
  for (std::size_t j = 1; j <= kScanPoints; ++j) {
    const double x = j == kScanPoints ? 2.0 * kPi * (1.0 - 1e-12) : step * static_cast<double>(j);
    const double fx = f(x);
    std::optional<double> root;
    if (fx == 0.0) {
      root = x;
    } else if ((prev_f < 0.0) != (fx < 0.0) && prev_f != 0.0) {
      root = refine(f, prev_x, x, prev_f, fx);
    }
    if (root && qualifies(alpha, *root)) return root;
    prev_x = x;
    prev_f = fx;
  }
  return std::nullopt;
}

std::size_t named_slice(const protocol::Scenario& s, const std::string& name) {
  auto i = s.stages.slice_index(name);
  if (!i) throw IndexError("no slice named '" + name + "'");
  return *i;
}

}  // namespace

WignerD1::WignerD1(double beta) : beta_(beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta) / std::numbers::sqrt2;
  const double p = 0.5 * (1.0 + c);
  const double q = 0.5 * (1.0 - c);
  m_ = {{{p, -s, q}, {s, c, -s}, {q, s, p}}};
}

double WignerD1::operator()(int m, int m_prime) const { return m_[spin_index(m)][spin_index(m_prime)]; }

hilbert::Matrix WignerD1::as_matrix() const {
  hilbert::Matrix out(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return out;
}

WignerD1 wigner_d1(double beta) { return WignerD1(beta); }

double split_amplitude(int k, double alpha) { return wigner_d1(-alpha)(k, 0); }

double postselection_amplitude(int k, double alpha, double phi) { return wigner_d1(alpha - phi)(1, k); }

double postselection_residual(double alpha, double phi) {
  return split_amplitude(-1, alpha) * postselection_amplitude(-1, alpha, phi) +
         split_amplitude(0, alpha) * postselection_amplitude(0, alpha, phi);
}

double unit_weak_value_residual(double alpha, double phi) {
  return split_amplitude(0, alpha) * postselection_amplitude(0, alpha, phi) -
         split_amplitude(1, alpha) * postselection_amplitude(1, alpha, phi);
}

double solve_postselection(double alpha) {
  if (auto phi = try_solve_postselection(alpha)) return *phi;
  throw NoPostselectionError("no qualifying postselection axis for alpha = " + std::to_string(alpha));
}

AnglePair solve_unit_weak_values() {
  auto h = [](double alpha) -> std::optional<double> {
    auto phi = try_solve_postselection(alpha);
    if (!phi) return std::nullopt;
    return unit_weak_value_residual(alpha, *phi);
  };
  const double step = kPi / static_cast<double>(kScanPoints);
  std::optional<double> prev;
  double prev_x = 0.0;
  for (std::size_t i = 1; i < kScanPoints; ++i) {
    const double x = step * static_cast<double>(i);
    const auto hx = h(x);
    if (prev && hx && (*prev < 0.0) != (*hx < 0.0)) {
      auto f = [&](double a) {
        auto v = h(a);
        if (!v) throw NoSolutionError("postselection axis lost inside the bracket");
        return *v;
      };
      const double alpha = refine(f, prev_x, x, *prev, *hx);
      const double phi = solve_postselection(alpha);
      if (std::abs(postselection_residual(alpha, phi)) <= 1e-9 &&
          std::abs(unit_weak_value_residual(alpha, phi)) <= 1e-9) {
        return {alpha, phi};
      }
    }
    prev = hx;
    prev_x = x;
  }
  throw NoSolutionError("no angle pair gives unit projector weak values");
}

double gamma_overlap_factor(double delta, double wavepacket_sigma, double offset) {
  if (!(delta > 0.0) || !(wavepacket_sigma > 0.0)) throw DomainError("overlap widths must be positive");
  const double s1 = 0.5 * delta;  // density std-dev of the normalized profile
  const double s2 = wavepacket_sigma;
  const double sum = s1 * s1 + s2 * s2;
  return (2.0 * s1 * s2 / sum) * std::exp(-offset * offset / (2.0 * sum));
}

LinOp ThreePathScenario::projector(const std::string& region, const std::string& slice_name) const {
  const auto it = gamma_overlap.find(region);
  const double gamma = it == gamma_overlap.end() ? 1.0 : it->second;
  return LinOp::path_projector(scenario.stages.slice_basis(slice(slice_name)), region, gamma);
}

std::size_t ThreePathScenario::slice(const std::string& name) const { return named_slice(scenario, name); }

ThreePathScenario build_three_path(double alpha, double phi, const std::map<std::string, double>& overlaps,
                                   pointer::GaussianBase pointer, double g) {
  for (const auto& [region, gamma] : overlaps) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("overlap factor for " + region + " outside [0, 1]");
  }
  auto b0 = make_basis({"in", "v1", "v2"}, {1, 0, -1});
  const auto sg = spin_rotation(b0, -alpha);
  const auto s1 = sg.then(split(sg.to(), {"in", "v1", "v2"}, {{1}, {0}, {-1}}, {"D", "E", "F"}));
  const auto s2 = merge(s1.to(), {"E", "F"}, {{0}, {-1}}, {"O", "Z"});
  const auto s3 = split(s2.to(), {"O", "Z"}, {{0}, {-1}}, {"E'", "F'"});
  const auto s4 = merge(s3.to(), {"E'", "F'"}, {{0}, {-1}}, {"O'", "Z'"});
  const auto exit = merge(s4.to(), {"D", "O'"}, {{1}, {0, -1}}, {"out", "Zf"});
  const auto s5 = exit.then(spin_rotation(exit.to(), alpha - phi));

  hilbert::StageSequence seq({s1, s2, s3, s4, s5}, {"t_i", "t_1", "t_2", "t_3", "t_4", "t_f"});
  Ket pre = Ket::basis_state(b0, {"in", 0});
  Ket post = Ket::basis_state(s5.to(), {"out", 1});

  auto gamma = [&](const std::string& region) {
    auto it = overlaps.find(region);
    return it == overlaps.end() ? 1.0 : it->second;
  };
  const std::vector<std::pair<std::string, std::size_t>> placements = {
      {"E", 1}, {"F", 1}, {"D", 2}, {"O", 2}, {"E'", 3}, {"F'", 3}, {"O'", 4}};
  std::vector<protocol::Probe> probes;
  for (const auto& [region, slice] : placements) {
    probes.push_back({"Pi_" + region, slice,
                      LinOp::path_projector(seq.slice_basis(slice), region, gamma(region)), pointer, g});
  }
  protocol::Scenario sc("three-path", std::move(seq), std::move(pre), std::move(post), std::move(probes));
  return ThreePathScenario{alpha, phi, overlaps, std::move(sc)};
}

LinOp NestedMZIScenario::projector(const std::string& region, const std::string& slice_name) const {
  return LinOp::path_projector(scenario.stages.slice_basis(slice(slice_name)), region);
}

std::size_t NestedMZIScenario::slice(const std::string& name) const { return named_slice(scenario, name); }

NestedMZIScenario build_nested_mzi(pointer::GaussianBase pointer, double g) {
  constexpr double outer = 2.0 / 3.0;
  constexpr double inner = 0.5;
  constexpr double phase = 0.0;
  auto b0 = make_basis({"in", "v1", "v2"});
  const auto s1 = beamsplitter(b0, "in", "v1", "C", "E", outer);
  const auto s2 = beamsplitter(s1.to(), "E", "v2", "B", "A", inner);
  const auto ph = phase_shift(s2.to(), {"B"}, phase);
  const auto inner_exit = ph.then(beamsplitter(ph.to(), "B", "A", "E'", "L", inner));
  const auto s3 = inner_exit.then(relabel(inner_exit.to(), {{"C", "C'"}}));
  const auto s4 = beamsplitter(s3.to(), "C'", "E'", "D", "G", outer);

  hilbert::StageSequence seq({s1, s2, s3, s4}, {"t_i", "t_1", "t_2", "t_3", "t_f"});
  Ket pre = Ket::basis_state(b0, {"in", std::nullopt});
  Ket post = Ket::basis_state(s4.to(), {"D", std::nullopt});

  const std::vector<std::pair<std::string, std::size_t>> placements = {
      {"C", 1}, {"E", 1}, {"A", 2}, {"B", 2}, {"C'", 3}, {"E'", 3}};
  std::vector<protocol::Probe> probes;
  for (const auto& [region, slice] : placements) {
    probes.push_back({"Pi_" + region, slice, LinOp::path_projector(seq.slice_basis(slice), region), pointer, g});
  }
  protocol::Scenario sc("nested-mzi", std::move(seq), std::move(pre), std::move(post), std::move(probes));
  return NestedMZIScenario{outer, inner, phase, std::move(sc)};
}

protocol::Scenario builtin(const std::string& name) {
  if (name == "three-path") {
    const auto angles = solve_unit_weak_values();
    return build_three_path(angles.alpha, angles.phi).scenario;
  }
  if (name == "nested-mzi") return build_nested_mzi().scenario;
  throw ValidationError("unknown builtin scenario '" + name + "'");
}

}  // namespace nullweak::setups
