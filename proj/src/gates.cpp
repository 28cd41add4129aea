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

#include "nullweak/gates.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nullweak/setups.hpp"

namespace nullweak::setups {

using hilbert::Basis;
using hilbert::Complex;
using hilbert::Matrix;

namespace {

std::size_t rail(const Basis& b, const std::string& path) {
  auto p = b.path_index(path);
  if (!p) throw IndexError("rail '" + path + "' not in slice basis");
  return *p;
}

std::map<std::string, std::string> zip_renames(const std::vector<std::string>& from,
                                               const std::vector<std::string>& to) {
  if (from.size() != to.size()) throw DimensionError("gate needs one output label per input rail");
  std::map<std::string, std::string> r;
  for (std::size_t i = 0; i < from.size(); ++i) r[from[i]] = to[i];
  return r;
}

BasisPtr renamed(const BasisPtr& in, const std::map<std::string, std::string>& renames) {
  return std::make_shared<const Basis>(in->renamed(renames));
}

Matrix identity(const Basis& b) {
  const auto n = static_cast<Eigen::Index>(b.dim());
  return Matrix::Identity(n, n);
}

// Rail permutations per spin label, perm[s][j] = output rail of input rail j
// (indices into the gate's rail list).
StageMap routed(const BasisPtr& in, const std::vector<std::string>& paths,
                const std::vector<std::vector<std::size_t>>& perm, const std::vector<std::string>& outs) {
  const Basis& b = *in;
  std::vector<std::size_t> rails;
  for (const auto& p : paths) rails.push_back(rail(b, p));
  Matrix m = identity(b);
  for (std::size_t s = 0; s < b.spin_count(); ++s) {
    for (std::size_t j = 0; j < rails.size(); ++j) {
      m(static_cast<Eigen::Index>(b.index(rails[j], s)), static_cast<Eigen::Index>(b.index(rails[j], s))) = 0.0;
    }
    for (std::size_t j = 0; j < rails.size(); ++j) {
      const auto col = static_cast<Eigen::Index>(b.index(rails[j], s));
      const auto row = static_cast<Eigen::Index>(b.index(rails[perm[s][j]], s));
      m(row, col) = 1.0;
    }
  }
  return StageMap(in, renamed(in, zip_renames(paths, outs)), m);
}

// For each spin label of the basis: index of the rail carrying it, or 0.
std::vector<std::size_t> carrier_per_spin(const Basis& b, const std::vector<std::vector<int>>& spins,
                                          std::size_t rail_count) {
  if (!b.has_spin()) throw DimensionError("spin-routed gate on a spinless basis");
  if (spins.size() != rail_count) throw DimensionError("spin-routed gate needs one spin set per rail");
  std::set<int> seen;
  for (const auto& set : spins) {
    for (int m : set) {
      if (std::find(b.spins().begin(), b.spins().end(), m) == b.spins().end()) {
        throw DimensionError("routed spin label not in basis");
      }
      if (!seen.insert(m).second) throw DimensionError("spin label routed by two rails");
    }
  }
  std::vector<std::size_t> carrier(b.spin_count(), 0);
  for (std::size_t s = 0; s < b.spin_count(); ++s) {
    for (std::size_t j = 0; j < spins.size(); ++j) {
      if (std::find(spins[j].begin(), spins[j].end(), b.spins()[s]) != spins[j].end()) carrier[s] = j;
    }
  }
  return carrier;
}

}  // namespace

StageMap beamsplitter(const BasisPtr& in, const std::string& a, const std::string& b,
                      const std::string& out_a, const std::string& out_b, double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) throw DomainError("reflectivity outside [0, 1]");
  const Basis& basis = *in;
  const std::size_t ra = rail(basis, a);
  const std::size_t rb = rail(basis, b);
  if (ra == rb) throw DimensionError("beamsplitter needs two distinct rails");
  const Complex t = std::sqrt(1.0 - reflectivity);
  const Complex r(0.0, std::sqrt(reflectivity));
  Matrix m = identity(basis);
  for (std::size_t s = 0; s < basis.spin_count(); ++s) {
    const auto ia = static_cast<Eigen::Index>(basis.index(ra, s));
    const auto ib = static_cast<Eigen::Index>(basis.index(rb, s));
    m(ia, ia) = t;
    m(ia, ib) = r;
    m(ib, ia) = r;
    m(ib, ib) = t;
  }
  return StageMap(in, renamed(in, {{a, out_a}, {b, out_b}}), m);
}

StageMap phase_shift(const BasisPtr& in, const std::vector<std::string>& paths, double theta) {
  const Basis& basis = *in;
  Matrix m = identity(basis);
  const Complex ph = std::polar(1.0, theta);
  for (const auto& p : paths) {
    const std::size_t r = rail(basis, p);
    for (std::size_t s = 0; s < basis.spin_count(); ++s) {
      const auto i = static_cast<Eigen::Index>(basis.index(r, s));
      m(i, i) = ph;
    }
  }
  return StageMap(in, in, m);
}

StageMap spin_rotation(const BasisPtr& in, double beta) {
  const Basis& basis = *in;
  if (basis.spins() != std::vector<int>{1, 0, -1}) {
    throw DimensionError("spin rotation needs spin labels ordered +1, 0, -1");
  }
  const Matrix d = wigner_d1(beta).as_matrix();
  return StageMap(in, in, hilbert::LinOp::spin_operator(in, d).matrix());
}

StageMap merge(const BasisPtr& in, const std::vector<std::string>& paths,
               const std::vector<std::vector<int>>& spins, const std::vector<std::string>& outs) {
  const auto carrier = carrier_per_spin(*in, spins, paths.size());
  std::vector<std::vector<std::size_t>> perm;
  for (std::size_t c : carrier) {
    std::vector<std::size_t> p(paths.size());
    p[c] = 0;
    std::size_t next = 1;
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (j != c) p[j] = next++;
    }
    perm.push_back(std::move(p));
  }
  return routed(in, paths, perm, outs);
}

StageMap split(const BasisPtr& in, const std::vector<std::string>& paths,
               const std::vector<std::vector<int>>& spins, const std::vector<std::string>& outs) {
  const auto carrier = carrier_per_spin(*in, spins, paths.size());
  std::vector<std::vector<std::size_t>> perm;
  for (std::size_t c : carrier) {
    std::vector<std::size_t> p(paths.size());
    p[0] = c;
    std::size_t next = 0;
    for (std::size_t j = 1; j < paths.size(); ++j) {
      if (next == c) ++next;
      p[j] = next++;
    }
    perm.push_back(std::move(p));
  }
  return routed(in, paths, perm, outs);
}

StageMap relabel(const BasisPtr& in, const std::map<std::string, std::string>& renames) {
  for (const auto& [from, to] : renames) rail(*in, from);
  return StageMap(in, renamed(in, renames), identity(*in));
}

StageMap matrix_stage(const BasisPtr& in, const hilbert::Matrix& m,
                      const std::map<std::string, std::string>& renames) {
  for (const auto& [from, to] : renames) rail(*in, from);
  return StageMap(in, renamed(in, renames), m);
}

}  // namespace nullweak::setups
