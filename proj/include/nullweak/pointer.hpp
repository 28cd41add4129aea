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

// One-dimensional Gaussian pointer states. A pointer state is a finite
// superposition  sum_j c_j G(x + s_j)  of translated copies of one
// normalized Gaussian G with position variance sigma^2; every integral is
// evaluated in closed form.

#include <complex>
#include <span>
#include <vector>

#include "nullweak/errors.hpp"

namespace nullweak::pointer {

using Complex = std::complex<double>;

class GaussianBase {
 public:
  explicit GaussianBase(double sigma = 1.0);

  double sigma() const { return sigma_; }
  /// G(x) = (2 pi sigma^2)^(-1/4) exp(-x^2 / (4 sigma^2))
  double amplitude(double x) const;

  friend bool operator==(const GaussianBase&, const GaussianBase&) = default;

 private:
  double sigma_;
};

struct PointerTerm {
  Complex coeff;
  double shift;
};

class PointerState {
 public:
  /// Throws DomainError on an empty term list.
  PointerState(GaussianBase base, std::vector<PointerTerm> terms);

  static PointerState initial(GaussianBase base) { return PointerState(base, {{1.0, 0.0}}); }

  const GaussianBase& base() const { return base_; }
  const std::vector<PointerTerm>& terms() const { return terms_; }

  /// Wavefunction value at x.
  Complex operator()(double x) const;

  /// Terms with identical shift folded into one.
  PointerState merged() const;

 private:
  GaussianBase base_;
  std::vector<PointerTerm> terms_;
};

/// A spectral branch: <chi|P_a|psi> together with the eigenvalue a.
struct EigenBranch {
  Complex amplitude;
  double eigenvalue;
};

/// <G(. + a) | G(. + b)> = exp(-(a - b)^2 / (8 sigma^2))
double overlap(const GaussianBase& base, double shift_a, double shift_b);

Complex inner(const PointerState& a, const PointerState& b);
double norm2(const PointerState& state);

/// <x> of the normalized state. Throws ZeroNormError when the norm vanishes.
double mean_position(const PointerState& state);
double position_variance(const PointerState& state);

/// |<a|b>|^2 / (<a|a><b|b>)
double fidelity(const PointerState& a, const PointerState& b);

/// Diagonal branch weights |c_j|^2 / sum_k |c_k|^2 (cross terms ignored);
/// equal to the Born weights once branches are mutually orthogonal.
std::vector<double> branch_weights(const PointerState& state);

/// Largest |overlap| between two distinct terms.
double max_cross_overlap(const PointerState& state);

/// Exact action of exp(-i g A P): each branch translates G by g * a_k.
PointerState couple(const GaussianBase& base, std::span<const EigenBranch> branches, double g);

/// Pointer translation in weak-value units: +g Re(A^w) in the weak limit.
/// Equals -mean_position(state). Throws DomainError for g == 0 and
/// ZeroNormError for a null state.
double readout_shift(const PointerState& state, double g);

}  // namespace nullweak::pointer
