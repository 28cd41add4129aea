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

#include "nullweak/protocol.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace nullweak::protocol {

using hilbert::Matrix;
using hilbert::same_basis;

namespace {

// Postselection probabilities below this are reported as exactly zero.
constexpr double kZeroProb = 1e-24;
constexpr double kDegenerateTol = 1e-10;

void check_slice(const Scenario& s, std::size_t slice) {
  if (slice >= s.stages.slice_count()) {
    throw DimensionError("slice " + std::to_string(slice) + " outside scenario with " +
                         std::to_string(s.stages.slice_count()) + " slices");
  }
}

void check_observable(const Scenario& s, const LinOp& a, std::size_t slice) {
  check_slice(s, slice);
  if (!same_basis(a.basis(), s.stages.slice_basis(slice))) {
    throw DimensionError("observable basis does not match slice " + s.stages.slice_name(slice));
  }
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::analytic: return "analytic";
    case Regime::weak: return "weak";
    case Regime::exact_coupled: return "exact-coupled";
    case Regime::strong: return "strong";
  }
  return "?";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::weak: return "weak";
    case Mode::strong: return "strong";
    case Mode::exact: return "exact";
  }
  return "?";
}

Scenario::Scenario(std::string name_, hilbert::StageSequence stages_, Ket preselect_, Ket postselect_,
                   std::vector<Probe> probes_)
    : name(std::move(name_)),
      stages(std::move(stages_)),
      preselect(std::move(preselect_)),
      postselect(std::move(postselect_)),
      probes(std::move(probes_)) {
  if (!same_basis(preselect.basis(), stages.slice_basis(0))) {
    throw DimensionError("preselected ket must live on the first slice");
  }
  if (!same_basis(postselect.basis(), stages.slice_basis(final_slice()))) {
    throw DimensionError("postselected ket must live on the last slice");
  }
  for (const auto& p : probes) check_observable(*this, p.observable, p.slice);
}

Ket Scenario::forward_state(std::size_t slice) const { return hilbert::evolve(stages, preselect, 0, slice); }

Ket Scenario::backward_state(std::size_t slice) const {
  return stages.evolve_backward(postselect, final_slice(), slice);
}

const Probe& Scenario::probe(const std::string& label) const {
  auto it = std::find_if(probes.begin(), probes.end(), [&](const Probe& p) { return p.label == label; });
  if (it == probes.end()) throw IndexError("no probe labelled '" + label + "'");
  return *it;
}

Complex transition_amplitude(const Scenario& scenario, const LinOp& observable, std::size_t slice) {
  check_observable(scenario, observable, slice);
  const Ket psi = scenario.forward_state(slice);
  const Ket chi = scenario.backward_state(slice);
  return hilbert::inner(chi, hilbert::apply(observable, psi));
}

Complex weak_value(const Scenario& scenario, const LinOp& observable, std::size_t slice) {
  check_observable(scenario, observable, slice);
  const Ket psi = scenario.forward_state(slice);
  const Ket chi = scenario.backward_state(slice);
  const Complex overlap = hilbert::inner(chi, psi);
  if (std::abs(overlap) <= kOrthogonalTol * psi.norm() * chi.norm()) {
    throw UndefinedWeakValueError("postselected state is orthogonal to the preselected one");
  }
  return hilbert::inner(chi, hilbert::apply(observable, psi)) / overlap;
}

WeakReport analytic_report(const Scenario& scenario, const Probe& probe) {
  check_observable(scenario, probe.observable, probe.slice);
  const Ket psi = scenario.forward_state(probe.slice).normalized();
  const Ket chi = scenario.backward_state(probe.slice).normalized();
  WeakReport r;
  r.regime = Regime::analytic;
  r.g = probe.g;
  r.pointer_state = pointer::PointerState::initial(probe.pointer);
  r.postselect_prob = std::norm(hilbert::inner(chi, psi));
  if (std::sqrt(r.postselect_prob) > kOrthogonalTol) {
    r.weak_value = weak_value(scenario, probe.observable, probe.slice);
    r.pointer_shift = probe.g * r.weak_value->real();
  }
  return r;
}

std::vector<SpectralProjector> spectral_decomposition(const LinOp& observable) {
  const Matrix& m = observable.matrix();
  const Eigen::Index n = m.rows();
  Eigen::VectorXd values(n);
  Matrix vectors(n, n);
  if (observable.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw SpectralError("hermitian eigensolver failed");
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  } else {
    if (!observable.is_normal()) throw SpectralError("observable is not normal; no orthonormal eigenbasis");
    Eigen::ComplexEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw SpectralError("eigensolver failed");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(es.eigenvalues()(i).imag()) > hilbert::kExactTol) {
        throw SpectralError("observable has a complex eigenvalue; no real pointer translation");
      }
      values(i) = es.eigenvalues()(i).real();
    }
    vectors = es.eigenvectors();
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values(a) < values(b); });

  std::vector<SpectralProjector> out;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values(order[j]) - values(order[i]) <= kDegenerateTol) ++j;
    Matrix block(n, static_cast<Eigen::Index>(j - i));
    double mean = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      block.col(static_cast<Eigen::Index>(k - i)) = vectors.col(order[k]);
      mean += values(order[k]);
    }
    // Eigenvectors of a degenerate normal eigenvalue need not come out
    // orthogonal from the general solver.
    Eigen::HouseholderQR<Matrix> qr(block);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, block.cols());
    out.push_back({mean / static_cast<double>(j - i), q * q.adjoint()});
    i = j;
  }
  return out;
}

WeakReport run_coupled(const Scenario& scenario, const Probe& probe, Mode mode) {
  check_observable(scenario, probe.observable, probe.slice);
  const double ratio = std::abs(probe.g) / probe.pointer.sigma();
  if (mode == Mode::weak && ratio > kWeakMaxRatio) {
    throw ModeError("weak mode requires g <= 0.05 sigma");
  }
  if (mode == Mode::strong && ratio < kStrongMinRatio) {
    throw ModeError("strong mode requires g >= 8 sigma");
  }

  const Ket psi = scenario.forward_state(probe.slice).normalized();
  const Ket chi = scenario.backward_state(probe.slice).normalized();

  std::vector<pointer::EigenBranch> branches;
  for (const auto& sp : spectral_decomposition(probe.observable)) {
    const Complex amp = chi.amplitudes().dot(sp.projector * psi.amplitudes());
    branches.push_back({amp, sp.eigenvalue});
  }

  WeakReport r;
  r.regime = mode == Mode::weak ? Regime::weak : mode == Mode::strong ? Regime::strong : Regime::exact_coupled;
  r.g = probe.g;
  r.pointer_state = pointer::couple(probe.pointer, branches, probe.g);

  const Complex overlap = hilbert::inner(chi, psi);
  if (std::abs(overlap) > kOrthogonalTol) {
    r.weak_value = hilbert::inner(chi, hilbert::apply(probe.observable, psi)) / overlap;
  }

  const double prob = pointer::norm2(r.pointer_state);
  if (prob <= kZeroProb) {
    r.postselect_prob = 0.0;
    return r;
  }
  r.postselect_prob = prob;
  r.fidelity = pointer::fidelity(pointer::PointerState::initial(probe.pointer), r.pointer_state);
  if (probe.g != 0.0) {
    r.pointer_shift = pointer::readout_shift(r.pointer_state, probe.g);
  } else {
    r.pointer_shift = -pointer::mean_position(r.pointer_state);
  }

  if (mode == Mode::weak && r.weak_value && probe.g != 0.0) {
    const double w2 = std::norm(*r.weak_value);
    const double err = std::abs(*r.pointer_shift / probe.g - r.weak_value->real());
    r.weak_limit_consistent = err <= 0.05 * (1.0 + w2) * ratio;
  }
  return r;
}

ExpectationDecomposition expectation_decomposition(const Ket& psi, const LinOp& a,
                                                   std::span<const Ket> postselection_basis) {
  if (!same_basis(psi.basis(), a.basis())) throw DimensionError("observable and state bases differ");
  const auto n = static_cast<Eigen::Index>(psi.dim());
  if (static_cast<Eigen::Index>(postselection_basis.size()) != n) {
    throw BasisError("postselection basis must have one ket per dimension");
  }
  Matrix resolution = Matrix::Zero(n, n);
  for (const auto& chi : postselection_basis) {
    if (!same_basis(chi.basis(), psi.basis())) throw DimensionError("postselection ket basis differs");
    resolution += chi.amplitudes() * chi.amplitudes().adjoint();
  }
  if ((resolution - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw BasisError("postselection basis is not orthonormal and complete");
  }

  const hilbert::Vector a_psi = a.matrix() * psi.amplitudes();
  ExpectationDecomposition out{0.0, {}};
  for (const auto& chi : postselection_basis) {
    const Complex amp = chi.amplitudes().dot(psi.amplitudes());
    if (std::abs(amp) <= kOrthogonalTol) {
      out.terms.push_back({0.0, std::nullopt});
      continue;
    }
    const Complex wv = chi.amplitudes().dot(a_psi) / amp;
    const double p = std::norm(amp);
    out.terms.push_back({p, wv});
    out.sum += p * wv;
  }
  return out;
}

LinOp localized_observable(const LinOp& pi_x, const LinOp& a) {
  if (!same_basis(pi_x.basis(), a.basis())) throw DimensionError("projector and observable bases differ");
  if (!pi_x.is_idempotent()) throw ProjectorError("localizing operator is not a projector");
  return LinOp(a.basis(), pi_x.matrix() * a.matrix() * pi_x.matrix());
}

}  // namespace nullweak::protocol
