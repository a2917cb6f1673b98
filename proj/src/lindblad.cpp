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

#include "dcube/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcube {

// ---------------------------------------------------------------------------
// LindbladSpec
// ---------------------------------------------------------------------------

void LindbladSpec::check_shape(const ComplexMatrix& op, const char* what) const {
  const auto d = static_cast<Eigen::Index>(dim());
  if (op.rows() != d || op.cols() != d) {
    std::ostringstream os;
    os << what << " has shape " << op.rows() << "x" << op.cols() << " but the layout dimension is "
       << d;
    throw ValidationError(os.str());
  }
}

LindbladSpec& LindbladSpec::add_hamiltonian(double coefficient, ComplexMatrix op, std::string label) {
  check_shape(op, "hamiltonian term");
  if (!std::isfinite(coefficient)) throw ValidationError("hamiltonian coefficient is not finite");
  if (!is_hermitian(op, 1e-12)) throw ValidationError("hamiltonian term is not Hermitian");
  hterms_.push_back({coefficient, std::move(op), std::move(label)});
  return *this;
}

LindbladSpec& LindbladSpec::add_jump(double rate, ComplexMatrix op, bool hermitian, std::string label) {
  check_shape(op, "jump operator");
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw ValidationError("jump rate must be finite and >= 0");
  if (hermitian && !is_hermitian(op, 1e-12))
    throw ValidationError("jump operator flagged Hermitian is not Hermitian");
  jumps_.push_back({rate, std::move(op), hermitian, std::move(label)});
  return *this;
}

bool LindbladSpec::all_jumps_hermitian() const {
  return std::all_of(jumps_.begin(), jumps_.end(), [](const JumpTerm& j) { return j.hermitian; });
}

ComplexMatrix LindbladSpec::hamiltonian() const {
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
  for (const auto& term : hterms_) h += term.coefficient * term.op;
  return h;
}

ComplexMatrix LindbladSpec::apply(const ComplexMatrix& x) const {
  const ComplexMatrix h = hamiltonian();
  ComplexMatrix out = -kI * (h * x - x * h);
  for (const auto& j : jumps_) {
    if (j.rate == 0.0) continue;
    const ComplexMatrix ld = j.op.adjoint();
    const ComplexMatrix ldl = ld * j.op;
    out += j.rate * (j.op * x * ld - 0.5 * (ldl * x + x * ldl));
  }
  return out;
}

LindbladSpec build_unital(const SpaceLayout& layout, const std::vector<ComplexMatrix>& hamiltonian,
                          const std::vector<ComplexMatrix>& jumps) {
  LindbladSpec spec(layout);
  for (const auto& h : hamiltonian) spec.add_hamiltonian(1.0, h);
  for (const auto& l : jumps) spec.add_jump(1.0, l, true);
  return spec;
}

// ---------------------------------------------------------------------------
// CompiledLindbladian
// ---------------------------------------------------------------------------

CompiledLindbladian::CompiledLindbladian(const LindbladSpec& spec) : dim_(spec.dim()) {
  ComplexMatrix h_eff = spec.hamiltonian();
  for (const auto& j : spec.jump_terms()) {
    if (j.rate == 0.0) continue;
    h_eff -= 0.5 * kI * j.rate * (j.op.adjoint() * j.op);
    rates_.push_back(j.rate);
    ls_.push_back(to_sparse(j.op));
    ls_adj_.push_back(to_sparse(j.op.adjoint()));
  }
  h_eff_ = to_sparse(h_eff);
  h_eff_adj_ = to_sparse(h_eff.adjoint());
}

ComplexMatrix CompiledLindbladian::apply(const ComplexMatrix& x) const {
  // X H_eff^dagger = (H_eff X^dagger)^dagger
  ComplexMatrix out = -kI * (h_eff_ * x);
  out += kI * (h_eff_ * x.adjoint()).adjoint();
  for (std::size_t j = 0; j < ls_.size(); ++j) {
    const ComplexMatrix lx = ls_[j] * x;
    out += rates_[j] * (ls_[j] * lx.adjoint()).adjoint();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Rk45 {
 public:
  Rk45(const CompiledLindbladian& op, const EvolveOptions& opts) : op_(op), opts_(opts) {
    h_ = opts.initial_step;
  }

  // Advances x from t0 to t1 in place.
  void advance(ComplexMatrix& x, double t0, double t1) {
    if (t1 <= t0) return;
    double t = t0;
    if (!have_k1_) {
      k1_ = op_.apply(x);
      have_k1_ = true;
    }
    while (t < t1) {
      if (++steps_ > opts_.max_steps) fail("maximum step count exceeded", t);
      double h = std::min(h_, t1 - t);
      const bool last = (h == t1 - t);
      const ComplexMatrix k2 = op_.apply(x + h * (a21 * k1_));
      const ComplexMatrix k3 = op_.apply(x + h * (a31 * k1_ + a32 * k2));
      const ComplexMatrix k4 = op_.apply(x + h * (a41 * k1_ + a42 * k2 + a43 * k3));
      const ComplexMatrix k5 = op_.apply(x + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
      const ComplexMatrix k6 =
          op_.apply(x + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      ComplexMatrix y = x + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      ComplexMatrix k7 = op_.apply(y);
      const ComplexMatrix err = h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double scale = opts_.atol + opts_.rtol * std::max(max_abs(x), max_abs(y));
      const double ratio = max_abs(err) / scale;
      if (!std::isfinite(ratio)) fail("non-finite state", t);
      if (ratio <= 1.0) {
        t = last ? t1 : t + h;
        x = std::move(y);
        k1_ = std::move(k7);
        const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
        // A clipped final step says nothing about the natural step size.
        if (!last || grow < 1.0) h_ = h * grow;
      } else {
        h_ = h * std::max(0.2, 0.9 * std::pow(ratio, -0.2));
        if (h_ < opts_.min_step) fail("step size underflow", t);
      }
    }
  }

 private:
  [[noreturn]] void fail(const char* why, double t) const {
    std::ostringstream os;
    os << "integration failure: " << why << " at t=" << t << " (step " << h_ << ", " << steps_
       << " steps, dim " << op_.dim() << ")";
    throw NumericalError(os.str());
  }

  const CompiledLindbladian& op_;
  const EvolveOptions& opts_;
  double h_;
  std::size_t steps_ = 0;
  ComplexMatrix k1_;
  bool have_k1_ = false;
};

bool use_dense(const LindbladSpec& spec, const EvolveOptions& opts) {
  switch (opts.method) {
    case EvolveMethod::kDense:
      return true;
    case EvolveMethod::kRungeKutta:
      return false;
    case EvolveMethod::kAuto:
      break;
  }
  return spec.dim() <= opts.dense_max_dim && spec.dim() * spec.dim() <= dim_cap();
}

void check_times(const std::vector<double>& times) {
  double prev = 0.0;
  for (double t : times) {
    if (!(t >= prev) || !std::isfinite(t))
      throw ValidationError("evolution times must be finite, >= 0 and non-decreasing");
    prev = t;
  }
}

}  // namespace

std::vector<ComplexMatrix> evolve_operator_series(const LindbladSpec& spec, const ComplexMatrix& x0,
                                                  const std::vector<double>& times,
                                                  const EvolveOptions& options) {
  check_times(times);
  const auto d = static_cast<Eigen::Index>(spec.dim());
  if (x0.rows() != d || x0.cols() != d) throw ValidationError("initial operator does not match layout");
  std::vector<ComplexMatrix> out;
  out.reserve(times.size());

  if (use_dense(spec, options)) {
    const ComplexMatrix lhat = vectorize(spec);
    ComplexVector v = vec(x0);
    double t = 0.0;
    double cached_dt = -1.0;
    ComplexMatrix prop;
    for (double target : times) {
      const double dt = target - t;
      if (dt > 0.0) {
        if (dt != cached_dt) {
          prop = matrix_exp(dt * lhat);
          cached_dt = dt;
        }
        v = prop * v;
      }
      t = target;
      out.push_back(unvec(v, spec.dim()));
    }
    return out;
  }

  const CompiledLindbladian op(spec);
  Rk45 rk(op, options);
  ComplexMatrix x = x0;
  double t = 0.0;
  for (double target : times) {
    rk.advance(x, t, target);
    t = target;
    out.push_back(x);
  }
  return out;
}

ComplexMatrix evolve_operator(const LindbladSpec& spec, const ComplexMatrix& x0, double t,
                              const EvolveOptions& options) {
  if (!(t >= 0.0)) throw ValidationError("evolution time must be >= 0");
  return evolve_operator_series(spec, x0, {t}, options).front();
}

DensityMatrix evolve_exact(const LindbladSpec& spec, const DensityMatrix& rho0, double t,
                           const EvolveOptions& options) {
  if (!(rho0.layout() == spec.layout())) throw ValidationError("state layout differs from spec layout");
  if (t == 0.0) return rho0;
  return DensityMatrix::unchecked(spec.layout(), evolve_operator(spec, rho0.matrix(), t, options));
}

// ---------------------------------------------------------------------------
// Superoperators
// ---------------------------------------------------------------------------

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) != dim * dim) throw ValidationError("unvec: size mismatch");
  const auto d = static_cast<Eigen::Index>(dim);
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix vectorize(const LindbladSpec& spec) {
  const std::size_t d = spec.dim();
  check_capacity(d * d, "vectorized Lindbladian");
  const ComplexMatrix id = identity(d);
  ComplexMatrix h_eff = spec.hamiltonian();
  for (const auto& j : spec.jump_terms()) h_eff -= 0.5 * kI * j.rate * (j.op.adjoint() * j.op);
  // -i H_eff X + i X H_eff^dagger
  ComplexMatrix out = -kI * kron(id, h_eff) + kI * kron(h_eff.adjoint().transpose(), id);
  for (const auto& j : spec.jump_terms()) {
    if (j.rate == 0.0) continue;
    out += j.rate * kron(j.op.conjugate(), j.op);
  }
  return out;
}

ComplexMatrix unitary_superoperator(const ComplexMatrix& u) {
  check_capacity(static_cast<std::size_t>(u.rows() * u.rows()), "unitary superoperator");
  return kron(u.conjugate(), u);
}

ComplexMatrix exact_channel(const LindbladSpec& spec, double t) { return matrix_exp(t * vectorize(spec)); }

ComplexMatrix apply_superoperator(const ComplexMatrix& s, const ComplexMatrix& x) {
  if (s.cols() != x.size()) throw ValidationError("apply_superoperator: size mismatch");
  return unvec(s * vec(x), static_cast<std::size_t>(x.rows()));
}

}  // namespace dcube
