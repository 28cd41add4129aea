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

#include "nullweak/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace nullweak::hilbert {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_same(const BasisPtr& a, const BasisPtr& b, const char* what) {
  if (!same_basis(a, b)) {
    throw DimensionError(std::string(what) + ": basis mismatch");
  }
}

}  // namespace

std::string BasisLabel::to_string() const {
  if (!spin) return path;
  std::ostringstream os;
  os << path << ':' << (*spin > 0 ? "+" : "") << *spin;
  return os.str();
}

Basis::Basis(std::vector<std::string> paths, std::vector<int> spins)
    : paths_(std::move(paths)), spins_(std::move(spins)) {
  if (paths_.empty()) throw DimensionError("basis needs at least one path label");
  if (std::set<std::string>(paths_.begin(), paths_.end()).size() != paths_.size()) {
    throw DimensionError("duplicate path label in basis");
  }
  if (std::set<int>(spins_.begin(), spins_.end()).size() != spins_.size()) {
    throw DimensionError("duplicate spin label in basis");
  }
  for (int m : spins_) {
    if (m < -1 || m > 1) throw DimensionError("spin label outside {-1, 0, +1}");
  }
}

Basis Basis::spin_only(std::vector<int> spins) {
  if (spins.empty()) throw DimensionError("spin factor needs at least one spin label");
  return Basis({""}, std::move(spins));
}

BasisLabel Basis::label(std::size_t index) const {
  if (index >= dim()) throw IndexError("basis index out of range");
  BasisLabel l{paths_[index / spin_count()], std::nullopt};
  if (has_spin()) l.spin = spins_[index % spin_count()];
  return l;
}

std::optional<std::size_t> Basis::path_index(const std::string& path) const {
  auto it = std::find(paths_.begin(), paths_.end(), path);
  if (it == paths_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - paths_.begin());
}

std::optional<std::size_t> Basis::find(const BasisLabel& l) const {
  auto p = path_index(l.path);
  if (!p) return std::nullopt;
  if (!has_spin()) {
    if (l.spin) return std::nullopt;
    return *p;
  }
  if (!l.spin) return std::nullopt;
  auto s = std::find(spins_.begin(), spins_.end(), *l.spin);
  if (s == spins_.end()) return std::nullopt;
  return index(*p, static_cast<std::size_t>(s - spins_.begin()));
}

std::size_t Basis::index_of(const BasisLabel& l) const {
  auto i = find(l);
  if (!i) throw IndexError("label '" + l.to_string() + "' not in basis");
  return *i;
}

Basis Basis::renamed(const std::map<std::string, std::string>& renames) const {
  std::vector<std::string> paths = paths_;
  for (auto& p : paths) {
    if (auto it = renames.find(p); it != renames.end()) p = it->second;
  }
  return Basis(std::move(paths), spins_);
}

BasisPtr make_basis(std::vector<std::string> paths, std::vector<int> spins) {
  return std::make_shared<const Basis>(std::move(paths), std::move(spins));
}

bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------

Ket::Ket(BasisPtr basis, Vector amplitudes) : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (!basis_) throw DimensionError("ket without basis");
  if (static_cast<std::size_t>(amps_.size()) != basis_->dim()) {
    throw DimensionError("ket length does not match basis dimension");
  }
}

Ket Ket::basis_state(BasisPtr basis, const BasisLabel& label) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis->dim()));
  v(basis->index_of(label)) = 1.0;
  return Ket(std::move(basis), std::move(v));
}

bool Ket::is_normalized() const { return std::abs(norm() - 1.0) <= kExactTol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw ZeroNormError("cannot normalize a null ket");
  return Ket(basis_, amps_ / n);
}

// ---------------------------------------------------------------------------

LinOp::LinOp(BasisPtr basis, Matrix matrix, Hermiticity flag)
    : basis_(std::move(basis)), m_(std::move(matrix)), flag_(flag) {
  if (!basis_) throw DimensionError("operator without basis");
  const auto n = static_cast<Eigen::Index>(basis_->dim());
  if (m_.rows() != n || m_.cols() != n) {
    throw DimensionError("operator must be square over its basis");
  }
  if (flag_ == Hermiticity::hermitian && max_abs(m_ - m_.adjoint()) > kExactTol) {
    throw HermiticityError("operator flagged hermitian is not");
  }
}

LinOp LinOp::identity(BasisPtr basis) {
  const auto n = static_cast<Eigen::Index>(basis->dim());
  return LinOp(std::move(basis), Matrix::Identity(n, n), Hermiticity::hermitian);
}

LinOp LinOp::zero(BasisPtr basis) {
  const auto n = static_cast<Eigen::Index>(basis->dim());
  return LinOp(std::move(basis), Matrix::Zero(n, n), Hermiticity::hermitian);
}

LinOp LinOp::path_projector(BasisPtr basis, const std::string& path, double weight) {
  auto p = basis->path_index(path);
  if (!p) throw IndexError("path '" + path + "' not in basis");
  const auto n = static_cast<Eigen::Index>(basis->dim());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < basis->spin_count(); ++s) {
    const auto i = static_cast<Eigen::Index>(basis->index(*p, s));
    m(i, i) = weight;
  }
  return LinOp(std::move(basis), std::move(m), Hermiticity::hermitian);
}

LinOp LinOp::ket_projector(const Ket& k) {
  Matrix m = k.amplitudes() * k.amplitudes().adjoint();
  return LinOp(k.basis(), std::move(m), Hermiticity::unchecked);
}

LinOp LinOp::spin_operator(BasisPtr basis, const Matrix& spin_matrix) {
  const auto ns = static_cast<Eigen::Index>(basis->spin_count());
  if (!basis->has_spin() || spin_matrix.rows() != ns || spin_matrix.cols() != ns) {
    throw DimensionError("spin operator does not match the basis spin labels");
  }
  const auto n = static_cast<Eigen::Index>(basis->dim());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index p = 0; p < static_cast<Eigen::Index>(basis->paths().size()); ++p) {
    m.block(p * ns, p * ns, ns, ns) = spin_matrix;
  }
  return LinOp(std::move(basis), std::move(m));
}

bool LinOp::is_hermitian() const {
  switch (flag_) {
    case Hermiticity::hermitian: return true;
    case Hermiticity::non_hermitian: return false;
    case Hermiticity::unchecked: break;
  }
  return max_abs(m_ - m_.adjoint()) <= kExactTol;
}

bool LinOp::is_normal(double tol) const {
  return max_abs(m_ * m_.adjoint() - m_.adjoint() * m_) <= tol;
}

bool LinOp::is_idempotent(double tol) const { return max_abs(m_ * m_ - m_) <= tol; }

LinOp LinOp::adjoint() const {
  return LinOp(basis_, m_.adjoint(), flag_);
}

LinOp LinOp::operator*(const LinOp& rhs) const {
  require_same(basis_, rhs.basis_, "operator product");
  return LinOp(basis_, m_ * rhs.m_);
}

LinOp LinOp::operator+(const LinOp& rhs) const {
  require_same(basis_, rhs.basis_, "operator sum");
  return LinOp(basis_, m_ + rhs.m_);
}

LinOp LinOp::operator-(const LinOp& rhs) const {
  require_same(basis_, rhs.basis_, "operator difference");
  return LinOp(basis_, m_ - rhs.m_);
}

LinOp LinOp::scaled(Complex factor) const {
  const bool keeps_hermitian = flag_ == Hermiticity::hermitian && factor.imag() == 0.0;
  return LinOp(basis_, m_ * factor, keeps_hermitian ? Hermiticity::hermitian : Hermiticity::unchecked);
}

// ---------------------------------------------------------------------------

StageMap::StageMap(BasisPtr from, BasisPtr to, Matrix matrix)
    : from_(std::move(from)), to_(std::move(to)), m_(std::move(matrix)) {
  if (!from_ || !to_) throw DimensionError("stage map without basis");
  if (m_.rows() != static_cast<Eigen::Index>(to_->dim()) ||
      m_.cols() != static_cast<Eigen::Index>(from_->dim())) {
    throw DimensionError("stage matrix shape does not match its slice bases");
  }
  if (unitarity_defect() > kExactTol) {
    throw NonUnitaryError("stage map violates U^dagger U = I");
  }
}

double StageMap::unitarity_defect() const {
  const Matrix d = m_.adjoint() * m_ - Matrix::Identity(m_.cols(), m_.cols());
  return max_abs(d);
}

Ket StageMap::forward(const Ket& k) const {
  require_same(k.basis(), from_, "stage forward");
  return Ket(to_, m_ * k.amplitudes());
}

Ket StageMap::backward(const Ket& k) const {
  require_same(k.basis(), to_, "stage backward");
  return Ket(from_, m_.adjoint() * k.amplitudes());
}

StageMap StageMap::then(const StageMap& next) const {
  require_same(to_, next.from_, "stage composition");
  return StageMap(from_, next.to_, next.m_ * m_);
}

// ---------------------------------------------------------------------------

StageSequence::StageSequence(std::vector<StageMap> stages, std::vector<std::string> slice_names)
    : stages_(std::move(stages)), names_(std::move(slice_names)) {
  if (stages_.empty()) throw DimensionError("use the single-slice constructor for zero stages");
  slices_.push_back(stages_.front().from());
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (!same_basis(slices_.back(), stages_[i].from())) {
      throw DimensionError("stage " + std::to_string(i) + " does not start on the previous slice");
    }
    slices_.push_back(stages_[i].to());
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < slices_.size(); ++i) names_.push_back("s" + std::to_string(i));
  }
  if (names_.size() != slices_.size()) throw DimensionError("one name per slice required");
}

StageSequence::StageSequence(BasisPtr only_slice, std::string name)
    : slices_{std::move(only_slice)}, names_{std::move(name)} {
  if (!slices_.front()) throw DimensionError("slice without basis");
}

const BasisPtr& StageSequence::slice_basis(std::size_t slice) const {
  if (slice >= slices_.size()) throw IndexError("slice index out of range");
  return slices_[slice];
}

const std::string& StageSequence::slice_name(std::size_t slice) const {
  if (slice >= names_.size()) throw IndexError("slice index out of range");
  return names_[slice];
}

std::optional<std::size_t> StageSequence::slice_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Ket StageSequence::evolve_backward(const Ket& k, std::size_t from_slice, std::size_t to_slice) const {
  if (from_slice >= slices_.size() || to_slice > from_slice) {
    throw IndexError("invalid backward slice range");
  }
  require_same(k.basis(), slices_[from_slice], "evolve_backward");
  Ket out = k;
  for (std::size_t s = from_slice; s > to_slice; --s) out = stages_[s - 1].backward(out);
  return out;
}

// ---------------------------------------------------------------------------

Ket tensor(const Ket& paths, const Ket& spin) {
  const Basis& pb = *paths.basis();
  const Basis& sb = *spin.basis();
  if (pb.has_spin() || sb.paths().size() != 1 || !sb.paths().front().empty() || !sb.has_spin()) {
    throw DimensionError("tensor expects a spinless path ket and a spin-only ket");
  }
  auto basis = make_basis(pb.paths(), sb.spins());
  Vector v(static_cast<Eigen::Index>(basis->dim()));
  const auto ns = static_cast<Eigen::Index>(sb.dim());
  for (Eigen::Index p = 0; p < paths.amplitudes().size(); ++p) {
    v.segment(p * ns, ns) = paths.amplitudes()(p) * spin.amplitudes();
  }
  return Ket(std::move(basis), std::move(v));
}

Ket apply(const LinOp& op, const Ket& k) {
  require_same(op.basis(), k.basis(), "apply");
  return Ket(k.basis(), op.matrix() * k.amplitudes());
}

Complex inner(const Ket& a, const Ket& b) {
  require_same(a.basis(), b.basis(), "inner");
  return a.amplitudes().dot(b.amplitudes());  // conjugates the left argument
}

Ket evolve(const StageSequence& seq, const Ket& k, std::size_t from_slice, std::size_t to_slice) {
  if (from_slice > to_slice || to_slice >= seq.slice_count()) {
    throw IndexError("invalid forward slice range");
  }
  require_same(k.basis(), seq.slice_basis(from_slice), "evolve");
  Ket out = k;
  for (std::size_t s = from_slice; s < to_slice; ++s) out = seq.stages()[s].forward(out);
  return out;
}

Matrix spin1_jz() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

Matrix spin1_jx() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
  return m;
}

Matrix spin1_jy() {
  const Complex r(0.0, 1.0 / std::sqrt(2.0));
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = -r;
  m(1, 0) = r;
  m(1, 2) = -r;
  m(2, 1) = r;
  return m;
}

}  // namespace nullweak::hilbert
