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

// Labeled finite-dimensional Hilbert spaces: a basis is the product of a
// list of path labels with an optional list of spin projections, ordered
// path-major. Kets and operators carry a shared pointer to their basis and
// are immutable once built.

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nullweak/errors.hpp"

namespace nullweak::hilbert {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for exact-algebra checks (unitarity, hermiticity, idempotence).
inline constexpr double kExactTol = 1e-12;

struct BasisLabel {
  std::string path;
  std::optional<int> spin;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
  std::string to_string() const;
};

class Basis {
 public:
  /// `spins` empty means a spinless basis. Throws DimensionError on an empty
  /// path list, duplicated labels, or a spin outside {-1, 0, +1}.
  Basis(std::vector<std::string> paths, std::vector<int> spins = {});

  /// Spin-only factor used by tensor(): a single anonymous path.
  static Basis spin_only(std::vector<int> spins);

  std::size_t dim() const { return paths_.size() * spin_count(); }
  std::size_t spin_count() const { return spins_.empty() ? 1 : spins_.size(); }
  bool has_spin() const { return !spins_.empty(); }
  const std::vector<std::string>& paths() const { return paths_; }
  const std::vector<int>& spins() const { return spins_; }

  BasisLabel label(std::size_t index) const;
  std::optional<std::size_t> find(const BasisLabel& label) const;
  std::size_t index_of(const BasisLabel& label) const;  // throws IndexError
  std::optional<std::size_t> path_index(const std::string& path) const;
  std::size_t index(std::size_t path_idx, std::size_t spin_idx) const {
    return path_idx * spin_count() + spin_idx;
  }

  /// Same spins, paths renamed through `renames` (missing keys unchanged).
  Basis renamed(const std::map<std::string, std::string>& renames) const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  std::vector<std::string> paths_;
  std::vector<int> spins_;
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr make_basis(std::vector<std::string> paths, std::vector<int> spins = {});

bool same_basis(const BasisPtr& a, const BasisPtr& b);

class Ket {
 public:
  Ket(BasisPtr basis, Vector amplitudes);

  static Ket basis_state(BasisPtr basis, const BasisLabel& label);

  const BasisPtr& basis() const { return basis_; }
  const Vector& amplitudes() const { return amps_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  Complex amplitude(const BasisLabel& label) const { return amps_(basis_->index_of(label)); }

  double norm() const { return amps_.norm(); }
  bool is_normalized() const;
  Ket normalized() const;  // throws ZeroNormError on a null ket
  Ket scaled(Complex factor) const { return Ket(basis_, amps_ * factor); }

 private:
  BasisPtr basis_;
  Vector amps_;
};

enum class Hermiticity { hermitian, non_hermitian, unchecked };

class LinOp {
 public:
  /// With `flag == hermitian` the matrix is checked and HermiticityError is
  /// raised when max|M - M^dagger| exceeds kExactTol.
  LinOp(BasisPtr basis, Matrix matrix, Hermiticity flag = Hermiticity::unchecked);

  static LinOp identity(BasisPtr basis);
  static LinOp zero(BasisPtr basis);
  /// weight * sum_m |path, m><path, m|
  static LinOp path_projector(BasisPtr basis, const std::string& path, double weight = 1.0);
  /// |k><k|
  static LinOp ket_projector(const Ket& k);
  /// 1_path (x) S for a spin operator S of size spin_count.
  static LinOp spin_operator(BasisPtr basis, const Matrix& spin_matrix);

  const BasisPtr& basis() const { return basis_; }
  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  Hermiticity hermiticity() const { return flag_; }

  /// Resolves an unchecked flag by inspecting the matrix.
  bool is_hermitian() const;
  bool is_normal(double tol = 1e-10) const;
  bool is_idempotent(double tol = kExactTol) const;

  LinOp adjoint() const;
  LinOp operator*(const LinOp& rhs) const;
  LinOp operator+(const LinOp& rhs) const;
  LinOp operator-(const LinOp& rhs) const;
  LinOp scaled(Complex factor) const;

 private:
  BasisPtr basis_;
  Matrix m_;
  Hermiticity flag_;
};

/// Linear map between two slice bases (rows: codomain, cols: domain).
class StageMap {
 public:
  /// Throws DimensionError on a shape mismatch and NonUnitaryError when
  /// max|U^dagger U - I| exceeds kExactTol.
  StageMap(BasisPtr from, BasisPtr to, Matrix matrix);

  const BasisPtr& from() const { return from_; }
  const BasisPtr& to() const { return to_; }
  const Matrix& matrix() const { return m_; }

  Ket forward(const Ket& k) const;
  Ket backward(const Ket& k) const;  // adjoint action, codomain -> domain
  /// `next` applied after this map.
  StageMap then(const StageMap& next) const;
  double unitarity_defect() const;

 private:
  BasisPtr from_;
  BasisPtr to_;
  Matrix m_;
};

class StageSequence {
 public:
  /// Consecutive stages must chain (stage i maps slice i to slice i + 1).
  /// Slice names default to "s0", "s1", ...
  StageSequence(std::vector<StageMap> stages, std::vector<std::string> slice_names = {});
  /// Zero-stage sequence over a single slice.
  explicit StageSequence(BasisPtr only_slice, std::string name = "s0");

  std::size_t slice_count() const { return slices_.size(); }
  std::size_t stage_count() const { return stages_.size(); }
  const BasisPtr& slice_basis(std::size_t slice) const;
  const std::vector<StageMap>& stages() const { return stages_; }
  const std::vector<std::string>& slice_names() const { return names_; }
  const std::string& slice_name(std::size_t slice) const;
  std::optional<std::size_t> slice_index(const std::string& name) const;

  /// Backward propagation of a ket living on slice `from_slice` down to
  /// `to_slice` through adjoint stage maps (from_slice >= to_slice).
  Ket evolve_backward(const Ket& k, std::size_t from_slice, std::size_t to_slice) const;

 private:
  std::vector<BasisPtr> slices_;
  std::vector<StageMap> stages_;
  std::vector<std::string> names_;
};

Ket tensor(const Ket& paths, const Ket& spin);
Ket apply(const LinOp& op, const Ket& k);
Complex inner(const Ket& a, const Ket& b);
Ket evolve(const StageSequence& seq, const Ket& k, std::size_t from_slice, std::size_t to_slice);

/// Spin-1 angular momentum components, rows/cols ordered m = +1, 0, -1.
Matrix spin1_jx();
Matrix spin1_jy();
Matrix spin1_jz();

}  // namespace nullweak::hilbert
