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

// Weak-measurement engine over a staged scenario: analytic weak values,
// transition amplitudes, and the exact pointer-coupled evolution followed
// by postselection.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullweak/hilbert.hpp"
#include "nullweak/pointer.hpp"

namespace nullweak::protocol {

using hilbert::Complex;
using hilbert::Ket;
using hilbert::LinOp;

/// Overlaps below this are treated as orthogonal pre/postselection.
inline constexpr double kOrthogonalTol = 1e-12;
inline constexpr double kWeakMaxRatio = 0.05;   // g / sigma
inline constexpr double kStrongMinRatio = 8.0;  // g / sigma

struct Probe {
  std::string label;
  std::size_t slice = 0;
  LinOp observable;
  pointer::GaussianBase pointer{1.0};
  double g = 0.01;
};

struct Scenario {
  /// Validates bases of the pre/postselected kets and every probe.
  Scenario(std::string name, hilbert::StageSequence stages, Ket preselect, Ket postselect,
           std::vector<Probe> probes = {});

  std::string name;
  hilbert::StageSequence stages;
  Ket preselect;   // on slice 0
  Ket postselect;  // on the last slice
  std::vector<Probe> probes;

  std::size_t final_slice() const { return stages.slice_count() - 1; }
  Ket forward_state(std::size_t slice) const;
  Ket backward_state(std::size_t slice) const;
  /// The probe with this label; throws IndexError.
  const Probe& probe(const std::string& label) const;
};

enum class Mode { weak, strong, exact };
enum class Regime { analytic, weak, exact_coupled, strong };

const char* to_string(Regime r);
const char* to_string(Mode m);

struct WeakReport {
  std::optional<Complex> weak_value;  // empty when <chi|psi> vanishes
  double postselect_prob = 0.0;
  std::optional<double> pointer_shift;  // empty when postselect_prob == 0
  Regime regime = Regime::analytic;
  double g = 0.0;
  /// Final (unnormalized) pointer state; the initial pointer for analytic reports.
  pointer::PointerState pointer_state{pointer::PointerState::initial(pointer::GaussianBase{})};
  /// |<initial pointer|final pointer>|^2 after normalization.
  std::optional<double> fidelity;
  /// Weak mode only: |shift/g - Re(A^w)| within 0.05 (1 + |A^w|^2) g / sigma.
  std::optional<bool> weak_limit_consistent;
};

/// <chi(t_w)| A |psi(t_w)>.
Complex transition_amplitude(const Scenario& scenario, const LinOp& observable, std::size_t slice);

/// Throws UndefinedWeakValueError when |<chi(t_w)|psi(t_w)>| <= kOrthogonalTol.
Complex weak_value(const Scenario& scenario, const LinOp& observable, std::size_t slice);

/// Analytic report: weak value, postselection probability without pointer,
/// predicted first-order shift g Re(A^w).
WeakReport analytic_report(const Scenario& scenario, const Probe& probe);

/// Orthogonal spectral branches of a normal observable with real spectrum;
/// degenerate eigenvalues (within 1e-10) merged. Throws SpectralError.
struct SpectralProjector {
  double eigenvalue;
  hilbert::Matrix projector;
};
std::vector<SpectralProjector> spectral_decomposition(const LinOp& observable);

/// Full entangled evolution, projection on the postselected ket, exact
/// pointer readout. Throws ModeError when g/sigma is outside the mode's range.
WeakReport run_coupled(const Scenario& scenario, const Probe& probe, Mode mode);

struct ExpectationTerm {
  double prob;
  std::optional<Complex> weak_value;  // empty for skipped outcomes
};

struct ExpectationDecomposition {
  Complex sum;
  std::vector<ExpectationTerm> terms;
};

/// sum_f |<chi_f|psi>|^2 A^w_f over an orthonormal complete basis.
/// Throws BasisError otherwise.
ExpectationDecomposition expectation_decomposition(const Ket& psi, const LinOp& a,
                                                   std::span<const Ket> postselection_basis);

/// Pi_X A Pi_X. Throws ProjectorError when pi_x is not idempotent.
LinOp localized_observable(const LinOp& pi_x, const LinOp& a);

}  // namespace nullweak::protocol
