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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dcube {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense object would exceed the configured dimension cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t requested, std::size_t cap);
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Input violates a documented precondition (shape, hermiticity, range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel failed to converge or produced non-finite output.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Maximum number of rows allowed for dense matrices. Defaults to 2^16 and
/// can be overridden with the DCUBE_DIM_CAP environment variable.
std::size_t dim_cap();
void set_dim_cap(std::size_t cap);
void check_capacity(std::size_t rows, const std::string& what);

// ---------------------------------------------------------------------------
// Space layout
// ---------------------------------------------------------------------------

enum class FactorKind { kQubit, kFermionMode, kBosonMode };

struct Factor {
  FactorKind kind = FactorKind::kQubit;
  int dim = 2;
  std::string label;
};

/// Ordered tensor factors. Factor 0 is the most significant (leftmost in the
/// Kronecker product), so basis index = sum_f digit_f * stride_f with the last
/// factor having stride 1.
class SpaceLayout {
 public:
  SpaceLayout() = default;
  explicit SpaceLayout(std::vector<Factor> factors);

  SpaceLayout& add_qubit(std::string label = {});
  SpaceLayout& add_fermion_mode(std::string label = {});
  SpaceLayout& add_boson_mode(int levels, std::string label = {});

  static SpaceLayout qubits(int n);
  static SpaceLayout fermion_modes(int n);

  std::size_t size() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t stride(std::size_t i) const;
  std::vector<std::size_t> indices_of(FactorKind kind) const;

  /// Concatenation: this factors first, then other.
  SpaceLayout operator+(const SpaceLayout& other) const;
  SpaceLayout subset(std::span<const std::size_t> keep) const;

  bool operator==(const SpaceLayout& other) const;

 private:
  void push(Factor f);
  std::vector<Factor> factors_;
  std::size_t total_dim_ = 1;
};

// ---------------------------------------------------------------------------
// Elementary operators
// ---------------------------------------------------------------------------

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
/// |0><1|, annihilates the |1> (occupied / excited) level.
ComplexMatrix lowering();
/// |1><0|.
ComplexMatrix raising();
ComplexMatrix hadamard();
}  // namespace pauli

ComplexMatrix identity(std::size_t dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> ops);

/// Places op on factor `index` of the layout, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const SpaceLayout& layout, std::size_t index);

/// Truncated bosonic annihilation operator, q[m, m+1] = sqrt(m+1).
ComplexMatrix boson_annihilate(int levels);
/// (q + q^dagger) / sqrt(2) on a truncated mode.
ComplexMatrix boson_position(int levels);

struct FermionPair {
  ComplexMatrix annihilate;
  ComplexMatrix create;
};

/// Jordan-Wigner representation of the `mode`-th fermion mode (counted among
/// the fermion-mode factors of the layout). The Z string covers only the
/// earlier fermion-mode factors.
FermionPair jordan_wigner(std::size_t mode, const SpaceLayout& layout);

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);
double max_abs(const ComplexMatrix& m);

/// General matrix exponential (scaling and squaring with Pade approximants).
/// Hermitian and anti-Hermitian inputs are routed through an eigensolver.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// exp(i * theta * h) for Hermitian h via eigendecomposition.
ComplexMatrix hermitian_exp(const ComplexMatrix& h, Complex theta);

/// Cached eigendecomposition of a Hermitian operator; exp(i theta h) for many
/// theta values costs one matrix product each.
class HermitianExp {
 public:
  HermitianExp() = default;
  explicit HermitianExp(const ComplexMatrix& h);
  ComplexMatrix operator()(Complex theta) const;
  const RealVector& eigenvalues() const { return values_; }
  const ComplexMatrix& eigenvectors() const { return vectors_; }
  bool is_diagonal() const { return diagonal_; }

 private:
  RealVector values_;
  ComplexMatrix vectors_;
  bool diagonal_ = false;
  RealVector diag_;
};

/// Drops entries with |z| <= tol.
SparseMatrix to_sparse(const ComplexMatrix& m, double tol = 0.0);

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

struct DensityDiagnostics {
  Complex trace;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

DensityDiagnostics diagnose_density(const ComplexMatrix& m);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Validates trace, hermiticity and positivity.
  DensityMatrix(SpaceLayout layout, ComplexMatrix matrix);

  /// Skips validation; used for integrator outputs that carry round-off.
  static DensityMatrix unchecked(SpaceLayout layout, ComplexMatrix matrix);
  static DensityMatrix pure(SpaceLayout layout, const ComplexVector& psi);
  static DensityMatrix basis_state(SpaceLayout layout, std::size_t index);
  static DensityMatrix maximally_mixed(SpaceLayout layout);

  const SpaceLayout& layout() const { return layout_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return layout_.total_dim(); }
  Complex expectation(const ComplexMatrix& op) const;

 private:
  SpaceLayout layout_;
  ComplexMatrix matrix_;
};

/// Reduced operator on the kept factors (ascending factor order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceLayout& layout,
                            std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// Half the Schatten-1 norm of the difference.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace dcube
