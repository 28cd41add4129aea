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

#include "nullweak/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nullweak::pointer {

GaussianBase::GaussianBase(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("pointer width must be positive");
}

double GaussianBase::amplitude(double x) const {
  const double s2 = sigma_ * sigma_;
  return std::pow(2.0 * std::numbers::pi * s2, -0.25) * std::exp(-x * x / (4.0 * s2));
}

PointerState::PointerState(GaussianBase base, std::vector<PointerTerm> terms)
    : base_(base), terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("pointer state needs at least one term");
}

Complex PointerState::operator()(double x) const {
  Complex v = 0.0;
  for (const auto& t : terms_) v += t.coeff * base_.amplitude(x + t.shift);
  return v;
}

PointerState PointerState::merged() const {
  std::vector<PointerTerm> out;
  for (const auto& t : terms_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PointerTerm& o) { return o.shift == t.shift; });
    if (it == out.end()) {
      out.push_back(t);
    } else {
      it->coeff += t.coeff;
    }
  }
  return PointerState(base_, std::move(out));
}

double overlap(const GaussianBase& base, double shift_a, double shift_b) {
  const double d = shift_a - shift_b;
  return std::exp(-d * d / (8.0 * base.sigma() * base.sigma()));
}

Complex inner(const PointerState& a, const PointerState& b) {
  if (!(a.base() == b.base())) throw DomainError("pointer states with different widths");
  Complex acc = 0.0;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      acc += std::conj(ta.coeff) * tb.coeff * overlap(a.base(), ta.shift, tb.shift);
    }
  }
  return acc;
}

double norm2(const PointerState& state) { return inner(state, state).real(); }

namespace {

// Moments of G(x + a) G(x + b): overlap(a, b) times a normal density with
// mean -(a + b)/2 and variance sigma^2.
struct Moments {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

Moments moments(const PointerState& state) {
  const auto& terms = state.terms();
  const double s2 = state.base().sigma() * state.base().sigma();
  Moments m;
  for (const auto& tj : terms) {
    for (const auto& tk : terms) {
      const double w = (std::conj(tj.coeff) * tk.coeff).real() * overlap(state.base(), tj.shift, tk.shift);
      const double centre = -0.5 * (tj.shift + tk.shift);
      m.m0 += w;
      m.m1 += w * centre;
      m.m2 += w * (s2 + centre * centre);
    }
  }
  return m;
}

}  // namespace

double mean_position(const PointerState& state) {
  const Moments m = moments(state);
  if (!(m.m0 > 0.0)) throw ZeroNormError("pointer state has zero norm");
  return m.m1 / m.m0;
}

double position_variance(const PointerState& state) {
  const Moments m = moments(state);
  if (!(m.m0 > 0.0)) throw ZeroNormError("pointer state has zero norm");
  const double mean = m.m1 / m.m0;
  return m.m2 / m.m0 - mean * mean;
}

double fidelity(const PointerState& a, const PointerState& b) {
  const double na = norm2(a);
  const double nb = norm2(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw ZeroNormError("fidelity of a null pointer state");
  return std::norm(inner(a, b)) / (na * nb);
}

std::vector<double> branch_weights(const PointerState& state) {
  double total = 0.0;
  for (const auto& t : state.terms()) total += std::norm(t.coeff);
  if (!(total > 0.0)) throw ZeroNormError("pointer state has zero norm");
  std::vector<double> w;
  w.reserve(state.terms().size());
  for (const auto& t : state.terms()) w.push_back(std::norm(t.coeff) / total);
  return w;
}

double max_cross_overlap(const PointerState& state) {
  double worst = 0.0;
  const auto& t = state.terms();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      worst = std::max(worst, overlap(state.base(), t[i].shift, t[j].shift));
    }
  }
  return worst;
}

PointerState couple(const GaussianBase& base, std::span<const EigenBranch> branches, double g) {
  if (branches.empty()) throw DomainError("coupling needs at least one eigenbranch");
  std::vector<PointerTerm> terms;
  terms.reserve(branches.size());
  for (const auto& b : branches) terms.push_back({b.amplitude, g * b.eigenvalue});
  return PointerState(base, std::move(terms)).merged();
}

double readout_shift(const PointerState& state, double g) {
  if (g == 0.0) throw DomainError("readout needs a non-zero coupling");
  return -mean_position(state);
}

}  // namespace nullweak::pointer
