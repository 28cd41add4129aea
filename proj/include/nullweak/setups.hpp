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

// Builders for the two reference interferometers: the three-path spin-1
// interferometer with an inner loop (E, F recombining at O, reopening into
// E', F' and recombining at O'), and the nested Mach-Zehnder interferometer.

#include <array>
#include <map>
#include <string>

#include "nullweak/protocol.hpp"

namespace nullweak::setups {

/// Reduced Wigner matrix d^1(beta) = exp(-i beta J_y), rows and columns
/// ordered m = +1, 0, -1.
class WignerD1 {
 public:
  explicit WignerD1(double beta);

  double beta() const { return beta_; }
  /// Element d^1_{m, m'}(beta) for m, m' in {-1, 0, +1}.
  double operator()(int m, int m_prime) const;
  const std::array<std::array<double, 3>, 3>& matrix() const { return m_; }
  hilbert::Matrix as_matrix() const;

 private:
  double beta_;
  std::array<std::array<double, 3>, 3> m_;
};

WignerD1 wigner_d1(double beta);

/// Axes lie in one plane; <m_a | m_b> = d^1_{m_a, m_b}(b - a).
/// d_k(alpha) = <m_alpha = k | m_z = 0>.
double split_amplitude(int k, double alpha);
/// <m_f | m_alpha = k> with |m_f> = |m_phi = +1>.
double postselection_amplitude(int k, double alpha, double phi);
/// sum_{k = -1, 0} d_k(alpha) <m_f | m_alpha = k>; vanishes for a valid axis.
double postselection_residual(double alpha, double phi);
/// d_0 <m_f|0> - d_1 <m_f|+1>; vanishes when Pi_E^w = 1.
double unit_weak_value_residual(double alpha, double phi);

/// Smallest postselection angle in (0, 2 pi) zeroing postselection_residual,
/// found by a 720-point sign scan plus bracketing refinement. Only roots with
/// non-vanishing lower-loop branch amplitudes and <chi|psi> != 0 qualify
/// (phi = alpha always solves the condition trivially). Throws
/// NoPostselectionError.
double solve_postselection(double alpha);

struct AnglePair {
  double alpha;
  double phi;
};

/// Angles making Pi_E^w = 1, Pi_F^w = -1 exactly; smallest alpha in (0, pi).
/// Throws NoSolutionError.
AnglePair solve_unit_weak_values();

/// |<Gamma_X | xi>|^2 for the renormalized 1-D projector profile
/// exp(-(x - x_X)^2 / delta^2) and a wavepacket whose density has standard
/// deviation wavepacket_sigma, offset apart. Equals 1 for delta = 2 sigma,
/// offset 0. Throws DomainError.
double gamma_overlap_factor(double delta, double wavepacket_sigma, double offset);

struct ThreePathScenario {
  double alpha;
  double phi;
  std::map<std::string, double> gamma_overlap;  // region -> factor, default 1
  protocol::Scenario scenario;

  /// gamma_X * Pi_X on the named slice ("t_1" ... "t_4").
  hilbert::LinOp projector(const std::string& region, const std::string& slice) const;
  std::size_t slice(const std::string& name) const;
};

/// Slices t_i, t_1, t_2, t_3, t_4, t_f with probes Pi_E, Pi_F (t_1),
/// Pi_D, Pi_O (t_2), Pi_E', Pi_F' (t_3), Pi_O' (t_4).
ThreePathScenario build_three_path(double alpha, double phi,
                                   const std::map<std::string, double>& overlaps = {},
                                   pointer::GaussianBase pointer = pointer::GaussianBase{1.0},
                                   double g = 0.01);

struct NestedMZIScenario {
  double outer_reflectivity;
  double inner_reflectivity;
  double inner_phase;
  protocol::Scenario scenario;

  hilbert::LinOp projector(const std::string& region, const std::string& slice) const;
  std::size_t slice(const std::string& name) const;
};

/// Slices t_i, t_1, t_2, t_3, t_f with probes Pi_C, Pi_E (t_1), Pi_A, Pi_B
/// (t_2), Pi_C', Pi_E' (t_3); postselection on port D.
NestedMZIScenario build_nested_mzi(pointer::GaussianBase pointer = pointer::GaussianBase{1.0},
                                   double g = 0.01);

/// "three-path" (at solve_unit_weak_values angles) or "nested-mzi".
/// Throws ValidationError for unknown names.
protocol::Scenario builtin(const std::string& name);

}  // namespace nullweak::setups
