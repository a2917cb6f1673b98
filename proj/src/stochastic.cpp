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

#include "dcube/stochastic.hpp"

#include <cmath>

namespace dcube {

SignVector sample_signs(Rng& rng, int steps, int jumps) {
  SignVector s(static_cast<std::size_t>(steps) * static_cast<std::size_t>(jumps));
  for (auto& v : s) v = rng.sign();
  return s;
}

PureDecomposition decompose_state(const ComplexMatrix& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("decompose_state: eigensolver failed");
  PureDecomposition d;
  // Largest weights first for a stable summation order.
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
    const double w = es.eigenvalues()(i);
    if (w <= tol) continue;
    d.weights.push_back(w);
    d.vectors.push_back(es.eigenvectors().col(i));
  }
  if (d.weights.empty()) throw ValidationError("decompose_state: state has no positive weight");
  return d;
}

// ---------------------------------------------------------------------------
// Alg1Circuit
// ---------------------------------------------------------------------------

Alg1Generators::Alg1Generators(const LindbladSpec& spec) : dim(spec.dim()) {
  if (!spec.all_jumps_hermitian())
    throw ValidationError("sampled unitary circuits need Hermitian jumps; use ancilla_extend first");
  for (const auto& h : spec.hamiltonian_terms()) {
    terms.emplace_back(h.op);
    coefficients.push_back(h.coefficient);
  }
  for (const auto& j : spec.jump_terms()) {
    jumps.emplace_back(j.op);
    jump_scales.push_back(std::sqrt(j.rate));
  }
}

Alg1Circuit::Alg1Circuit(const LindbladSpec& spec, double t, int steps, double prune_tol)
    : Alg1Circuit(Alg1Generators(spec), t, steps, prune_tol) {}

Alg1Circuit::Alg1Circuit(const Alg1Generators& gens, double t, int steps, double prune_tol)
    : dim_(gens.dim), steps_(steps) {
  if (steps < 1) throw ValidationError("number of Trotter steps R must be >= 1");
  if (!(t >= 0.0)) throw ValidationError("time must be >= 0");
  const double tau = t / steps;
  const double root = std::sqrt(tau);
  for (std::size_t k = 0; k < gens.terms.size(); ++k)
    h_exps_.push_back(to_sparse(gens.terms[k](-tau * gens.coefficients[k]), prune_tol));
  for (std::size_t j = 0; j < gens.jumps.size(); ++j) {
    const double theta = root * gens.jump_scales[j];
    jump_plus_.push_back(to_sparse(gens.jumps[j](theta), prune_tol));
    jump_minus_.push_back(to_sparse(gens.jumps[j](-theta), prune_tol));
  }
}

void Alg1Circuit::check_signs(const SignVector& s) const {
  if (s.size() != static_cast<std::size_t>(steps_) * jump_plus_.size())
    throw ValidationError("sign vector shape does not match N_L x R");
  for (int v : s)
    if (v != 1 && v != -1) throw ValidationError("sign entries must be +1 or -1");
}

ComplexVector Alg1Circuit::apply(const SignVector& s, const ComplexVector& psi) const {
  check_signs(s);
  ComplexVector v = psi;
  const std::size_t nl = jump_plus_.size();
  for (int r = 0; r < steps_; ++r) {
    for (std::size_t j = 0; j < nl; ++j) {
      const int sign = s[static_cast<std::size_t>(r) * nl + j];
      v = (sign > 0 ? jump_plus_[j] : jump_minus_[j]) * v;
    }
    for (const auto& e : h_exps_) v = e * v;
  }
  return v;
}

ComplexMatrix Alg1Circuit::unitary(const SignVector& s) const {
  check_signs(s);
  ComplexMatrix u = identity(dim_);
  const std::size_t nl = jump_plus_.size();
  for (int r = 0; r < steps_; ++r) {
    for (std::size_t j = 0; j < nl; ++j) {
      const int sign = s[static_cast<std::size_t>(r) * nl + j];
      u = (sign > 0 ? jump_plus_[j] : jump_minus_[j]) * u;
    }
    for (const auto& e : h_exps_) u = e * u;
  }
  return u;
}

ComplexMatrix build_unitary_alg1(const LindbladSpec& spec, double t, int steps, const SignVector& s) {
  return Alg1Circuit(spec, t, steps, 0.0).unitary(s);
}

ComplexMatrix one_step_map(const LindbladSpec& spec, const ComplexMatrix& rho, double t) {
  if (spec.jump_terms().size() != 1 || !spec.jump_terms()[0].hermitian)
    throw ValidationError("one_step_map needs exactly one Hermitian jump");
  if (!(t >= 0.0)) throw ValidationError("time must be >= 0");
  const auto& j = spec.jump_terms()[0];
  const HermitianExp ej(j.op);
  const double theta = std::sqrt(t * j.rate);
  const ComplexMatrix up = ej(theta);
  const ComplexMatrix um = ej(-theta);
  const ComplexMatrix mixed = 0.5 * (up * rho * up.adjoint() + um * rho * um.adjoint());
  const ComplexMatrix uh = HermitianExp(spec.hamiltonian())(-t);
  return uh * mixed * uh.adjoint();
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

namespace {

void check_options(const Alg1Options& o) {
  if (o.samples < 1) throw ValidationError("number of samples M must be >= 1");
  if (o.steps < 1) throw ValidationError("number of Trotter steps R must be >= 1");
}

}  // namespace

std::vector<std::vector<ChannelEstimate>> run_alg1_series(const LindbladSpec& spec, const ComplexMatrix& rho0,
                                                          const std::vector<ComplexMatrix>& observables,
                                                          const std::vector<double>& times,
                                                          const Alg1Options& options) {
  check_options(options);
  const auto d = static_cast<Eigen::Index>(spec.dim());
  if (rho0.rows() != d || rho0.cols() != d) throw ValidationError("initial state does not match the spec");
  std::vector<SparseMatrix> obs;
  for (const auto& o : observables) {
    if (o.rows() != d || o.cols() != d) throw ValidationError("observable does not match the spec");
    obs.push_back(to_sparse(o));
  }
  const PureDecomposition pure = decompose_state(rho0);
  const Alg1Generators gens(spec);
  const int nl = static_cast<int>(spec.jump_terms().size());

  std::vector<std::vector<ChannelEstimate>> out;
  out.reserve(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const Alg1Circuit circuit(gens, times[ti], options.steps);
    // values[o][p]
    std::vector<std::vector<double>> values(obs.size(), std::vector<double>(options.samples));
    parallel_for(options.samples, options.threads, [&](std::size_t p) {
      Rng rng = stream(options.seed, ti, p);
      const SignVector s = sample_signs(rng, options.steps, nl);
      std::vector<double> acc(obs.size(), 0.0);
      for (std::size_t c = 0; c < pure.weights.size(); ++c) {
        const ComplexVector psi = circuit.apply(s, pure.vectors[c]);
        for (std::size_t o = 0; o < obs.size(); ++o)
          acc[o] += pure.weights[c] * psi.dot(obs[o] * psi).real();
      }
      for (std::size_t o = 0; o < obs.size(); ++o) values[o][p] = acc[o];
    });
    std::vector<ChannelEstimate> row;
    for (std::size_t o = 0; o < obs.size(); ++o) row.push_back(make_estimate(values[o], options.keep_samples));
    out.push_back(std::move(row));
  }
  return out;
}

ChannelEstimate run_alg1(const LindbladSpec& spec, const ComplexMatrix& rho0, const ComplexMatrix& observable,
                         double t, const Alg1Options& options) {
  return run_alg1_series(spec, rho0, {observable}, {t}, options).front().front();
}

ComplexMatrix averaged_channel_exact(const LindbladSpec& spec, double t, int steps) {
  if (steps < 1) throw ValidationError("number of Trotter steps R must be >= 1");
  const std::size_t d = spec.dim();
  check_capacity(d * d, "averaged_channel_exact");
  if (!(t >= 0.0)) throw ValidationError("time must be >= 0");
  const Alg1Generators gens(spec);
  const double tau = t / steps;
  const double root = std::sqrt(tau);

  ComplexMatrix step = identity(d * d);
  for (std::size_t j = 0; j < gens.jumps.size(); ++j) {
    const double theta = root * gens.jump_scales[j];
    const ComplexMatrix avg =
        0.5 * (unitary_superoperator(gens.jumps[j](theta)) + unitary_superoperator(gens.jumps[j](-theta)));
    step = avg * step;
  }
  for (std::size_t k = 0; k < gens.terms.size(); ++k)
    step = unitary_superoperator(gens.terms[k](-tau * gens.coefficients[k])) * step;

  ComplexMatrix total = identity(d * d);
  for (int r = 0; r < steps; ++r) total = step * total;
  return total;
}

// ---------------------------------------------------------------------------
// Ancilla extension and disorder duality
// ---------------------------------------------------------------------------

AncillaExtension ancilla_extend(const ComplexMatrix& ell, const SpaceLayout& system_layout) {
  const auto d = static_cast<Eigen::Index>(system_layout.total_dim());
  if (ell.rows() != d || ell.cols() != d) throw ValidationError("ancilla_extend: ell does not match the layout");
  SpaceLayout layout = system_layout;
  layout.add_qubit("ancilla");
  ComplexMatrix big = kron(ell, pauli::raising()) + kron(ell.adjoint(), pauli::lowering());
  big = 0.5 * (big + big.adjoint());
  AncillaExtension ext{LindbladSpec(layout), system_layout};
  ext.spec.add_jump(1.0, std::move(big), true, "dilation");
  return ext;
}

ComplexMatrix AncillaExtension::attach(const ComplexMatrix& rho_system) const {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  return kron(rho_system, zero);
}

ComplexMatrix AncillaExtension::reduce(const ComplexMatrix& rho_extended) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < system_layout.size(); ++i) keep.push_back(i);
  return partial_trace(rho_extended, spec.layout(), keep);
}

LindbladSpec disorder_to_dephasing(const SpaceLayout& layout, const ComplexMatrix& h0, const ComplexMatrix& h1,
                                   double a, double b, double t) {
  if (!(b > a)) throw ValidationError("disorder interval needs b > a");
  if (!(t >= 0.0)) throw ValidationError("time must be >= 0");
  LindbladSpec spec(layout);
  spec.add_hamiltonian(1.0, h0, "H0");
  spec.add_hamiltonian(0.5 * (a + b), h1, "H1");
  spec.add_jump(t * (b - a) * (b - a) / 12.0, h1, true, "H1");
  return spec;
}

}  // namespace dcube
