// Copyright 2026 The dcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcube/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace dcube {

namespace {

constexpr std::size_t kDefaultDimCap = std::size_t{1} << 16;

std::size_t read_env_cap() {
  if (const char* env = std::getenv("DCUBE_DIM_CAP")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultDimCap;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{read_env_cap()};
  return cap;
}

std::string capacity_message(const std::string& what, std::size_t requested, std::size_t cap) {
  std::ostringstream os;
  os << "capacity exceeded: " << what << " needs dimension " << requested
     << " but the dense cap is " << cap << " (set DCUBE_DIM_CAP to raise it)";
  return os.str();
}

}  // namespace

CapacityError::CapacityError(const std::string& what, std::size_t requested, std::size_t cap)
    : Error(capacity_message(what, requested, cap)), requested_(requested), cap_(cap) {}

std::size_t dim_cap() { return cap_storage().load(); }

void set_dim_cap(std::size_t cap) { cap_storage().store(cap == 0 ? kDefaultDimCap : cap); }

void check_capacity(std::size_t rows, const std::string& what) {
  if (rows > dim_cap()) throw CapacityError(what, rows, dim_cap());
}

// ---------------------------------------------------------------------------
// SpaceLayout
// ---------------------------------------------------------------------------

SpaceLayout::SpaceLayout(std::vector<Factor> factors) {
  for (auto& f : factors) push(std::move(f));
}

void SpaceLayout::push(Factor f) {
  if (f.kind == FactorKind::kBosonMode) {
    if (f.dim < 2) throw ValidationError("boson mode needs at least 2 levels");
  } else if (f.dim != 2) {
    throw ValidationError("qubit and fermion-mode factors have local dimension 2");
  }
  total_dim_ *= static_cast<std::size_t>(f.dim);
  factors_.push_back(std::move(f));
}

SpaceLayout& SpaceLayout::add_qubit(std::string label) {
  push({FactorKind::kQubit, 2, std::move(label)});
  return *this;
}

SpaceLayout& SpaceLayout::add_fermion_mode(std::string label) {
  push({FactorKind::kFermionMode, 2, std::move(label)});
  return *this;
}

SpaceLayout& SpaceLayout::add_boson_mode(int levels, std::string label) {
  push({FactorKind::kBosonMode, levels, std::move(label)});
  return *this;
}

SpaceLayout SpaceLayout::qubits(int n) {
  SpaceLayout l;
  for (int i = 0; i < n; ++i) l.add_qubit("q" + std::to_string(i));
  return l;
}

SpaceLayout SpaceLayout::fermion_modes(int n) {
  SpaceLayout l;
  for (int i = 0; i < n; ++i) l.add_fermion_mode("f" + std::to_string(i));
  return l;
}

std::size_t SpaceLayout::stride(std::size_t i) const {
  std::size_t s = 1;
  for (std::size_t k = factors_.size(); k-- > i + 1;) s *= static_cast<std::size_t>(factors_[k].dim);
  return s;
}

std::vector<std::size_t> SpaceLayout::indices_of(FactorKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].kind == kind) out.push_back(i);
  return out;
}

SpaceLayout SpaceLayout::operator+(const SpaceLayout& other) const {
  SpaceLayout out = *this;
  for (const auto& f : other.factors_) out.push(f);
  return out;
}

SpaceLayout SpaceLayout::subset(std::span<const std::size_t> keep) const {
  SpaceLayout out;
  for (std::size_t k : keep) out.push(factors_.at(k));
  return out;
}

bool SpaceLayout::operator==(const SpaceLayout& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].kind != other.factors_[i].kind || factors_[i].dim != other.factors_[i].dim)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Elementary operators
// ---------------------------------------------------------------------------

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix X() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix Y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}
ComplexMatrix Z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
ComplexMatrix lowering() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
ComplexMatrix raising() { return lowering().adjoint(); }
ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}
}  // namespace pauli

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = static_cast<std::size_t>(a.rows() * b.rows());
  const std::size_t cols = static_cast<std::size_t>(a.cols() * b.cols());
  check_capacity(std::max(rows, cols), "kron");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> ops) {
  if (ops.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) out = kron(out, ops[i]);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const SpaceLayout& layout, std::size_t index) {
  if (index >= layout.size()) throw ValidationError("embed: factor index out of range");
  const int d = layout.factor(index).dim;
  if (op.rows() != d || op.cols() != d)
    throw ValidationError("embed: operator dimension does not match the factor");
  check_capacity(layout.total_dim(), "embed");
  const auto left = static_cast<Eigen::Index>(layout.total_dim() / (layout.stride(index) * d));
  const auto right = static_cast<Eigen::Index>(layout.stride(index));
  return kron(kron(ComplexMatrix::Identity(left, left), op), ComplexMatrix::Identity(right, right));
}

ComplexMatrix boson_annihilate(int levels) {
  if (levels < 2) throw ValidationError("boson truncation needs at least 2 levels");
  ComplexMatrix q = ComplexMatrix::Zero(levels, levels);
  for (int m = 0; m + 1 < levels; ++m) q(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
  return q;
}

ComplexMatrix boson_position(int levels) {
  const ComplexMatrix q = boson_annihilate(levels);
  return (q + q.adjoint()) / std::sqrt(2.0);
}

FermionPair jordan_wigner(std::size_t mode, const SpaceLayout& layout) {
  const auto modes = layout.indices_of(FactorKind::kFermionMode);
  if (mode >= modes.size()) throw ValidationError("jordan_wigner: mode index out of range");
  std::vector<ComplexMatrix> ops;
  ops.reserve(layout.size());
  for (std::size_t f = 0; f < layout.size(); ++f) {
    const auto& fac = layout.factor(f);
    if (f == modes[mode]) {
      ops.push_back(pauli::lowering());
    } else if (fac.kind == FactorKind::kFermionMode && f < modes[mode]) {
      ops.push_back(pauli::Z());
    } else {
      ops.push_back(ComplexMatrix::Identity(fac.dim, fac.dim));
    }
  }
  check_capacity(layout.total_dim(), "jordan_wigner");
  FermionPair p;
  p.annihilate = kron_all(ops);
  p.create = p.annihilate.adjoint();
  return p;
}

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

namespace {

bool has_zero_offdiagonal(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{}) return false;
  return true;
}

void require_finite(const ComplexMatrix& out, const ComplexMatrix& in, const char* what) {
  if (!out.allFinite()) {
    std::ostringstream os;
    os << what << " did not converge (input max-norm " << max_abs(in) << ")";
    throw NumericalError(os.str());
  }
}

}  // namespace

ComplexMatrix hermitian_exp(const ComplexMatrix& h, Complex theta) {
  return HermitianExp(h)(theta);
}

HermitianExp::HermitianExp(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("HermitianExp: matrix is not square");
  if (has_zero_offdiagonal(h)) {
    diagonal_ = true;
    diag_ = h.diagonal().real();
    values_ = diag_;
    return;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("HermitianExp: eigensolver failed");
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

ComplexMatrix HermitianExp::operator()(Complex theta) const {
  if (theta == Complex{}) return ComplexMatrix::Identity(values_.size(), values_.size());
  if (diagonal_) {
    ComplexMatrix out = ComplexMatrix::Zero(diag_.size(), diag_.size());
    for (Eigen::Index i = 0; i < diag_.size(); ++i) out(i, i) = std::exp(kI * theta * diag_(i));
    return out;
  }
  ComplexVector phases(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) phases(i) = std::exp(kI * theta * values_(i));
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix_exp: matrix is not square");
  if (m.size() == 0) return m;
  const double scale = std::max(1.0, max_abs(m));
  const double tol = 1e-13 * scale;
  if (max_abs(m - m.adjoint()) <= tol) {
    // exp(h) = exp(i * (-i) * h)
    ComplexMatrix out = HermitianExp(m)(Complex{0.0, -1.0});
    require_finite(out, m, "matrix_exp");
    return out;
  }
  if (max_abs(m + m.adjoint()) <= tol) {
    // m = -i h with h = i m Hermitian, exp(m) = exp(-i h)
    ComplexMatrix out = HermitianExp(kI * m)(-1.0);
    require_finite(out, m, "matrix_exp");
    return out;
  }
  ComplexMatrix out = m.exp();
  require_finite(out, m, "matrix_exp");
  return out;
}

SparseMatrix to_sparse(const ComplexMatrix& m, double tol) {
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol) trips.emplace_back(i, j, m(i, j));
  SparseMatrix s(m.rows(), m.cols());
  s.setFromTriplets(trips.begin(), trips.end());
  s.makeCompressed();
  return s;
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

DensityDiagnostics diagnose_density(const ComplexMatrix& m) {
  DensityDiagnostics d;
  d.trace = m.trace();
  d.hermiticity_error = max_abs(m - m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
  return d;
}

DensityMatrix::DensityMatrix(SpaceLayout layout, ComplexMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (static_cast<std::size_t>(matrix_.rows()) != layout_.total_dim() ||
      matrix_.rows() != matrix_.cols())
    throw ValidationError("density matrix shape does not match the layout");
  const auto d = diagnose_density(matrix_);
  if (std::abs(d.trace - 1.0) > 1e-10) throw ValidationError("density matrix trace differs from 1");
  if (d.hermiticity_error > 1e-12) throw ValidationError("density matrix is not Hermitian");
  if (d.min_eigenvalue < -1e-8) throw ValidationError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::unchecked(SpaceLayout layout, ComplexMatrix matrix) {
  DensityMatrix r;
  r.layout_ = std::move(layout);
  r.matrix_ = std::move(matrix);
  return r;
}

DensityMatrix DensityMatrix::pure(SpaceLayout layout, const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("pure state vector is zero");
  const ComplexVector v = psi / n;
  return DensityMatrix(std::move(layout), v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(SpaceLayout layout, std::size_t index) {
  const std::size_t dim = layout.total_dim();
  if (index >= dim) throw ValidationError("basis index out of range");
  check_capacity(dim, "basis_state");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(layout), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(SpaceLayout layout) {
  const std::size_t dim = layout.total_dim();
  check_capacity(dim, "maximally_mixed");
  return DensityMatrix(std::move(layout), identity(dim) / static_cast<double>(dim));
}

Complex DensityMatrix::expectation(const ComplexMatrix& op) const {
  return (matrix_ * op).trace();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceLayout& layout,
                            std::span<const std::size_t> keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.back() >= layout.size()) throw ValidationError("partial_trace: factor index out of range");
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim())
    throw ValidationError("partial_trace: matrix does not match the layout");

  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < layout.size(); ++f)
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);

  const SpaceLayout kl = layout.subset(kept);
  const SpaceLayout tl = layout.subset(traced);
  const std::size_t kd = kl.total_dim();
  const std::size_t td = tl.total_dim();

  // Map (kept index, traced index) -> full index.
  auto full_index = [&](std::size_t ki, std::size_t ti) {
    std::size_t idx = 0;
    for (std::size_t a = kept.size(); a-- > 0;) {
      const std::size_t d = static_cast<std::size_t>(kl.factor(a).dim);
      idx += (ki % d) * layout.stride(kept[a]);
      ki /= d;
    }
    for (std::size_t a = traced.size(); a-- > 0;) {
      const std::size_t d = static_cast<std::size_t>(tl.factor(a).dim);
      idx += (ti % d) * layout.stride(traced[a]);
      ti /= d;
    }
    return static_cast<Eigen::Index>(idx);
  };

  std::vector<Eigen::Index> table(kd * td);
  for (std::size_t k = 0; k < kd; ++k)
    for (std::size_t t = 0; t < td; ++t) table[k * td + t] = full_index(k, t);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      Complex s{};
      for (std::size_t t = 0; t < td; ++t) s += m(table[i * td + t], table[j * td + t]);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return DensityMatrix::unchecked(rho.layout().subset(kept),
                                  partial_trace(rho.matrix(), rho.layout(), kept));
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("frobenius_distance: dimension mismatch");
  return (a - b).norm();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("trace_distance: dimension mismatch");
  Eigen::JacobiSVD<ComplexMatrix> svd(a - b);
  return 0.5 * svd.singularValues().sum();
}

}  // namespace dcube
