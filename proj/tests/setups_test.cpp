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

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nullweak/gates.hpp"
#include "oracles.hpp"

namespace nullweak::setups {
namespace {

constexpr double kPi = std::numbers::pi;

// Postselection axis for alpha = pi/3, frozen from the scan oracle below.
constexpr double kPhiAtThirdPi = 2.76134144689686;

// First row of exp(-i beta J_y), by series on a row vector.
std::array<oracle::C, 3> top_row(double beta) {
  const double r = 1.0 / std::sqrt(2.0);
  std::array<oracle::C, 3> term = {1.0, 0.0, 0.0}, sum = term;
  for (int n = 1; n < 45; ++n) {
    // row * (-i beta J_y) / n; J_y rows: (0,-ir,0), (ir,0,-ir), (0,ir,0).
    const oracle::C a = term[0], b = term[1], c = term[2];
    const oracle::C f(0.0, -beta / n);
    term = {f * b * oracle::C(0, r), f * (a * oracle::C(0, -r) + c * oracle::C(0, r)), f * b * oracle::C(0, -r)};
    for (int i = 0; i < 3; ++i) sum[i] += term[i];
  }
  return sum;
}

double residual_oracle(const oracle::Mat& d, double alpha, double phi) {
  const auto f = top_row(alpha - phi);
  double s = 0.0;
  for (int k : {0, -1}) s += d[oracle::row(k)][oracle::row(0)].real() * f[oracle::row(k)].real();
  return s;
}

double weak(const ThreePathScenario& tp, const std::string& label) {
  const auto& p = tp.scenario.probe(label);
  return protocol::weak_value(tp.scenario, p.observable, p.slice).real();
}

TEST(Wigner, ZeroIsIdentity) {
  const auto d = wigner_d1(0.0);
  for (int m : {1, 0, -1})
    for (int n : {1, 0, -1}) EXPECT_EQ(d(m, n), m == n ? 1.0 : 0.0);
}

TEST(Wigner, HalfTurn) {
  const auto d = wigner_d1(kPi);
  const auto ref = oracle::wigner_series(kPi);
  EXPECT_NEAR(d(0, 0), -1.0, 1e-15);
  EXPECT_NEAR(d(1, -1), 1.0, 1e-15);
  for (int m : {1, 0, -1})
    for (int n : {1, 0, -1}) EXPECT_NEAR(d(m, n), ref[oracle::row(m)][oracle::row(n)].real(), 1e-12);
}

TEST(Wigner, MatchesGeneratorSeries) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-2.0 * kPi, 2.0 * kPi);
  for (int t = 0; t < 100; ++t) {
    const double beta = u(rng);
    const auto ref = oracle::wigner_series(beta);
    const auto d = wigner_d1(beta);
    for (int m : {1, 0, -1}) {
      for (int n : {1, 0, -1}) {
        EXPECT_NEAR(d(m, n), ref[oracle::row(m)][oracle::row(n)].real(), 1e-12);
        EXPECT_NEAR(ref[oracle::row(m)][oracle::row(n)].imag(), 0.0, 1e-12);
      }
    }
    // Split column d_k(alpha) = <m_alpha = k | m_z = 0>.
    for (int k : {1, 0, -1}) {
      EXPECT_NEAR(split_amplitude(k, beta), oracle::wigner_series(-beta)[oracle::row(k)][oracle::row(0)].real(), 1e-12);
    }
  }
}

TEST(Wigner, GroupLawAndOrthogonality) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    const auto da = wigner_d1(a).as_matrix(), db = wigner_d1(b).as_matrix();
    EXPECT_LE((da * db - wigner_d1(a + b).as_matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((da * da.transpose() - hilbert::Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(wigner_d1(0.3)(2, 0), DomainError);
}

TEST(Postselection, ScanOracleAgreesWithFrozenConstant) {
  const double alpha = kPi / 3.0;
  const auto d = oracle::wigner_series(-alpha);
  auto roots = oracle::scan_roots([&](double phi) { return residual_oracle(d, alpha, phi); }, 0.0, 2.0 * kPi, 1000000);
  std::erase_if(roots, [&](double r) { return std::abs(r - alpha) < 1e-4; });
  ASSERT_FALSE(roots.empty());
  EXPECT_NEAR(roots.front(), kPhiAtThirdPi, 1e-5);
}

TEST(Postselection, RegressionConstant) {
  const double phi = solve_postselection(kPi / 3.0);
  EXPECT_NEAR(phi, kPhiAtThirdPi, 1e-9);
  EXPECT_LE(std::abs(postselection_residual(kPi / 3.0, phi)), 1e-10);
  EXPECT_NEAR(residual_oracle(oracle::wigner_series(-kPi / 3.0), kPi / 3.0, phi), 0.0, 1e-10);
}

TEST(Postselection, SolvedAnglesNullTheMergedPaths) {
  for (double alpha : {0.3, 0.7, kPi / 3.0, 1.3, 2.0}) {
    const double phi = solve_postselection(alpha);
    EXPECT_LE(std::abs(postselection_residual(alpha, phi)), 1e-10);
    const auto tp = build_three_path(alpha, phi);
    EXPECT_NEAR(weak(tp, "Pi_O"), 0.0, 1e-10) << alpha;
    EXPECT_NEAR(weak(tp, "Pi_O'"), 0.0, 1e-10) << alpha;
  }
}

TEST(Postselection, DegenerateSplit) { EXPECT_THROW(solve_postselection(kPi / 2.0), NoPostselectionError); }

TEST(UnitWeakValues, ReproducesTable) {
  const auto a = solve_unit_weak_values();
  EXPECT_NEAR(a.alpha, std::atan(2.0), 1e-9);
  EXPECT_NEAR(a.phi, std::atan(2.0) + kPi / 2.0, 1e-9);
  const auto tp = build_three_path(a.alpha, a.phi);
  const std::vector<std::pair<std::string, double>> want = {{"Pi_E", 1},  {"Pi_F", -1},  {"Pi_D", 1}, {"Pi_O", 0},
                                                            {"Pi_E'", 1}, {"Pi_F'", -1}, {"Pi_O'", 0}};
  for (const auto& [l, v] : want) EXPECT_NEAR(weak(tp, l), v, 1e-9) << l;
  const auto& p = tp.scenario.probe("Pi_O");
  EXPECT_LE(std::abs(protocol::transition_amplitude(tp.scenario, p.observable, p.slice)), 1e-15);
}

TEST(UnitWeakValues, ConditionAloneGivesOppositePair) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.1, 1.4);
  for (int t = 0; t < 20; ++t) {
    const double alpha = u(rng);
    const auto tp = build_three_path(alpha, solve_postselection(alpha));
    const double c = weak(tp, "Pi_E");
    EXPECT_NEAR(weak(tp, "Pi_F"), -c, 1e-10);
    EXPECT_NEAR(weak(tp, "Pi_D"), 1.0, 1e-10);
    EXPECT_NEAR(weak(tp, "Pi_O"), 0.0, 1e-10);
  }
}

TEST(Gamma, MatchedWidthsAndFarOffset) {
  EXPECT_NEAR(gamma_overlap_factor(2.0, 1.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_overlap_factor(0.6, 0.3, 0.0), 1.0, 1e-15);
  for (auto [delta, sigma] : {std::pair{2.0, 1.0}, {1.0, 1.0}, {0.5, 2.0}}) {
    EXPECT_LE(gamma_overlap_factor(delta, sigma, 6.0 * std::max(delta, sigma)), 1e-6);
  }
}

TEST(Gamma, MatchesQuadrature) {
  EXPECT_NEAR(gamma_overlap_factor(2.0, 1.0, 0.0), oracle::gamma_quadrature(2.0, 1.0, 0.0), 1e-10);
  EXPECT_NEAR(gamma_overlap_factor(1.0, 1.0, 0.0), oracle::gamma_quadrature(1.0, 1.0, 0.0), 1e-10);
  EXPECT_NEAR(gamma_overlap_factor(1.5, 0.7, 0.9), oracle::gamma_quadrature(1.5, 0.7, 0.9), 1e-10);
  EXPECT_LT(gamma_overlap_factor(1.0, 1.0, 0.0), 1.0);
}

TEST(Gamma, RejectsBadWidths) {
  EXPECT_THROW(gamma_overlap_factor(0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(gamma_overlap_factor(1.0, -1.0, 0.0), DomainError);
  EXPECT_THROW(build_three_path(0.5, 1.0, {{"D", 1.5}}), DomainError);
}

TEST(ThreePath, StagesAreUnitary) {
  const auto a = solve_unit_weak_values();
  const auto tp = build_three_path(a.alpha, a.phi);
  for (const auto& s : tp.scenario.stages.stages()) EXPECT_LE(s.unitarity_defect(), 1e-12);
  EXPECT_EQ(tp.scenario.stages.slice_count(), 6u);
}

TEST(ThreePath, ForwardStateStructure) {
  const double alpha = 0.9;
  const auto tp = build_three_path(alpha, solve_postselection(alpha));
  const auto psi = tp.scenario.forward_state(tp.slice("t_2"));
  EXPECT_NEAR(std::abs(psi.amplitude({"D", 1})), std::abs(split_amplitude(1, alpha)), 1e-12);
  // Merged rail O carries the k = 0 and k = -1 components on separate spin labels.
  EXPECT_NEAR(std::abs(psi.amplitude({"O", 0})), std::abs(split_amplitude(0, alpha)), 1e-12);
  EXPECT_NEAR(std::abs(psi.amplitude({"O", -1})), std::abs(split_amplitude(-1, alpha)), 1e-12);
}

TEST(ThreePath, SumRules) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> u(0.1, 1.4);
  for (int t = 0; t < 20; ++t) {
    const double alpha = u(rng);
    const auto tp = build_three_path(alpha, solve_postselection(alpha));
    EXPECT_NEAR(weak(tp, "Pi_E") + weak(tp, "Pi_F"), weak(tp, "Pi_O"), 1e-10);
    EXPECT_NEAR(weak(tp, "Pi_E'") + weak(tp, "Pi_F'"), weak(tp, "Pi_O'"), 1e-10);
    const auto d1 = tp.projector("D", "t_1");
    const double wd1 = protocol::weak_value(tp.scenario, d1, tp.slice("t_1")).real();
    EXPECT_NEAR(weak(tp, "Pi_E") + weak(tp, "Pi_F") + wd1, 1.0, 1e-10);
  }
}

TEST(ThreePath, OverlapFactorScalesWeakValues) {
  const auto a = solve_unit_weak_values();
  const auto base = build_three_path(a.alpha, a.phi);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<std::string> regions = {"E", "F", "D", "O", "E'", "F'", "O'"};
  for (int t = 0; t < 20; ++t) {
    std::map<std::string, double> gamma;
    for (const auto& r : regions) gamma[r] = u(rng);
    const auto tp = build_three_path(a.alpha, a.phi, gamma);
    for (const auto& r : regions) {
      EXPECT_NEAR(weak(tp, "Pi_" + r), gamma[r] * weak(base, "Pi_" + r), 1e-12) << r;
    }
    EXPECT_NEAR(weak(tp, "Pi_O"), 0.0, 1e-12);
  }
}

TEST(NestedMZI, InnerInterferometerIsDarkTowardExit) {
  const auto mzi = build_nested_mzi();
  const auto psi = mzi.scenario.forward_state(mzi.slice("t_3"));
  EXPECT_LE(std::abs(psi.amplitude({"E'", std::nullopt})), 1e-12);
  for (const auto& s : mzi.scenario.stages.stages()) EXPECT_LE(s.unitarity_defect(), 1e-12);
}

TEST(NestedMZI, SumRules) {
  const auto mzi = build_nested_mzi();
  auto w = [&](const char* l) {
    const auto& p = mzi.scenario.probe(l);
    return protocol::weak_value(mzi.scenario, p.observable, p.slice).real();
  };
  EXPECT_NEAR(w("Pi_A") + w("Pi_B") + w("Pi_C"), 1.0, 1e-12);
  EXPECT_NEAR(w("Pi_C'") + w("Pi_E'"), 1.0, 1e-12);
  EXPECT_NEAR(w("Pi_C"), 1.0, 1e-12);
  EXPECT_NEAR(w("Pi_B"), -1.0, 1e-12);
}

TEST(Builtin, NamesAndUnknown) {
  EXPECT_EQ(builtin("three-path").probes.size(), 7u);
  EXPECT_EQ(builtin("nested-mzi").probes.size(), 6u);
  EXPECT_THROW(builtin("four-path"), ValidationError);
}

TEST(Gates, MergeRejectsCollidingSpins) {
  auto b = hilbert::make_basis({"a", "b"}, {1, 0, -1});
  EXPECT_THROW(merge(b, {"a", "b"}, {{0}, {0}}, {"o", "z"}), DimensionError);
  EXPECT_THROW(beamsplitter(b, "a", "b", "c", "d", 1.5), DomainError);
  EXPECT_THROW(beamsplitter(b, "a", "q", "c", "d"), IndexError);
}

}  // namespace
}  // namespace nullweak::setups
