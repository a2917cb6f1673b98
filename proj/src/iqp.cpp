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

#include "dcube/iqp.hpp"

#include <algorithm>
#include <cmath>

namespace dcube {

void IqpSpec::validate() const {
  if (L < 1 || N < 1) throw ValidationError("IQP register needs L >= 1 and N >= 1");
  auto check = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != 1 && v.size() != static_cast<std::size_t>(L))
      throw ValidationError(std::string(name) + " needs one entry or one per site");
    for (double x : v)
      if (!std::isfinite(x)) throw ValidationError(std::string(name) + " entries must be finite");
  };
  check(g, "g");
  check(omega, "omega");
  for (double x : g)
    if (x < 0.0) throw ValidationError("couplings g must be >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
}

double IqpSpec::g_at(int k) const { return g.size() == 1 ? g[0] : g.at(k); }
double IqpSpec::omega_at(int k) const { return omega.size() == 1 ? omega[0] : omega.at(k); }

std::vector<RealMatrix> h_iqp_coefficients(const IqpSpec& spec) {
  spec.validate();
  std::vector<RealMatrix> out;
  for (int k = 0; k < spec.L; ++k) {
    RealMatrix c = RealMatrix::Zero(spec.N, spec.N);
    const double g = spec.g_at(k);
    const double pre = g * g / (8.0 * spec.N);
    for (int j = 0; j < spec.N; ++j)
      for (int l = 0; l < j; ++l) c(j, l) = pre * std::sin(spec.omega_at(k) * (l - j) * spec.t / spec.N);
    out.push_back(std::move(c));
  }
  return out;
}

ComplexVector jump_ell_vector(const IqpSpec& spec, int k) {
  spec.validate();
  if (k < 0 || k >= spec.L) throw ValidationError("site column out of range");
  const double amp = 0.5 * spec.g_at(k) * std::sqrt(1.0 / (2.0 * spec.N));
  ComplexVector a(spec.N);
  for (int j = 0; j < spec.N; ++j)
    a(j) = amp * std::exp(kI * (spec.omega_at(k) * (j + 1) * spec.t / spec.N));
  return a;
}

namespace {

void check_signs(const IqpSpec& spec, const std::vector<int>& s) {
  if (s.size() != static_cast<std::size_t>(spec.bits()))
    throw ValidationError("sign configuration length must be N * L");
  for (int v : s)
    if (v != 1 && v != -1) throw ValidationError("sign entries must be +1 or -1");
}

// Per-column tables over the 2^N basis states b (bit j = step j).
struct ColumnTables {
  std::vector<Complex> ell;
  std::vector<double> energy;
};

ColumnTables column_tables(const IqpSpec& spec, int k) {
  const ComplexVector a = jump_ell_vector(spec, k);
  const RealMatrix c = h_iqp_coefficients(spec)[static_cast<std::size_t>(k)];
  const std::size_t size = std::size_t{1} << spec.N;
  ColumnTables tab{std::vector<Complex>(size), std::vector<double>(size)};
  std::vector<int> s(static_cast<std::size_t>(spec.N));
  for (std::size_t b = 0; b < size; ++b) {
    for (int j = 0; j < spec.N; ++j) s[j] = ((b >> j) & 1U) ? -1 : 1;
    Complex l{};
    for (int j = 0; j < spec.N; ++j) l += a(j) * static_cast<double>(s[j]);
    double e = 0.0;
    for (int j = 0; j < spec.N; ++j)
      for (int m = 0; m < j; ++m) e += c(j, m) * s[j] * s[m];
    tab.ell[b] = l;
    tab.energy[b] = e;
  }
  return tab;
}

void walsh_hadamard(std::vector<Complex>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t i = 0; i < v.size(); i += 2 * len)
      for (std::size_t j = i; j < i + len; ++j) {
        const Complex u = v[j];
        v[j] = u + v[j + len];
        v[j + len] = u - v[j + len];
      }
}

}  // namespace

Complex ell_value(const IqpSpec& spec, int k, const std::vector<int>& s) {
  check_signs(spec, s);
  const ComplexVector a = jump_ell_vector(spec, k);
  Complex l{};
  for (int j = 0; j < spec.N; ++j) l += a(j) * static_cast<double>(s[spec.flat(j, k)]);
  return l;
}

double iqp_energy(const IqpSpec& spec, const std::vector<int>& s) {
  check_signs(spec, s);
  const auto coeffs = h_iqp_coefficients(spec);
  double e = 0.0;
  for (int k = 0; k < spec.L; ++k)
    for (int j = 0; j < spec.N; ++j)
      for (int l = 0; l < j; ++l) e += coeffs[k](j, l) * s[spec.flat(j, k)] * s[spec.flat(l, k)];
  return e;
}

Complex lambda_eigenvalue(const IqpSpec& spec, const std::vector<int>& s, const std::vector<int>& s2) {
  check_signs(spec, s);
  check_signs(spec, s2);
  double re = 0.0, im = 0.0;
  for (int k = 0; k < spec.L; ++k) {
    const Complex a = ell_value(spec, k, s);
    const Complex b = ell_value(spec, k, s2);
    re += -0.5 * std::norm(a - b);
    im += std::imag(a * std::conj(b));
  }
  return {re, im};
}

double lambda_band_bound(const IqpSpec& spec, const std::vector<int>& s, const std::vector<int>& s2) {
  check_signs(spec, s);
  check_signs(spec, s2);
  double bound = 0.0;
  for (int k = 0; k < spec.L; ++k) {
    int flips = 0;
    for (int j = 0; j < spec.N; ++j) flips += s[spec.flat(j, k)] != s2[spec.flat(j, k)];
    const double g = spec.g_at(k);
    bound += g * g * flips * flips / (4.0 * spec.N);
  }
  return bound;
}

std::vector<int> signs_from_index(std::uint64_t index, int bits) {
  std::vector<int> s(static_cast<std::size_t>(bits));
  for (int f = 0; f < bits; ++f) s[f] = ((index >> f) & 1U) ? -1 : 1;
  return s;
}

std::vector<double> gamma_column_exact(const IqpSpec& spec, int k) {
  spec.validate();
  if (k < 0 || k >= spec.L) throw ValidationError("site column out of range");
  if (spec.N > 14) throw CapacityError("exact Gamma column (4^N pairs)", std::size_t{1} << spec.N, std::size_t{1} << 14);
  const ColumnTables tab = column_tables(spec, k);
  const std::size_t size = tab.ell.size();
  // f(delta) = sum_b rho_{b, b xor delta}, rho_{s,s'} = 2^-N e^{t lambda} e^{-it(E_s - E_s')}
  std::vector<Complex> f(size, Complex{});
  for (std::size_t delta = 0; delta < size; ++delta) {
    Complex acc{};
    for (std::size_t b = 0; b < size; ++b) {
      const std::size_t b2 = b ^ delta;
      const Complex l1 = tab.ell[b];
      const Complex l2 = tab.ell[b2];
      const Complex lam{-0.5 * std::norm(l1 - l2), std::imag(l1 * std::conj(l2))};
      acc += std::exp(spec.t * lam - kI * (spec.t * (tab.energy[b] - tab.energy[b2])));
    }
    f[delta] = acc / static_cast<double>(size);
  }
  walsh_hadamard(f);
  std::vector<double> probs(size);
  for (std::size_t g = 0; g < size; ++g) probs[g] = std::max(0.0, f[g].real() / static_cast<double>(size));
  return probs;
}

GammaDistribution gamma_exact(const IqpSpec& spec) {
  spec.validate();
  const int bits = spec.bits();
  check_capacity(std::size_t{1} << bits, "exact Gamma table");
  std::vector<std::vector<double>> cols;
  for (int k = 0; k < spec.L; ++k) cols.push_back(gamma_column_exact(spec, k));
  GammaDistribution d{spec.L, spec.N, std::vector<double>(std::size_t{1} << bits)};
  for (std::size_t idx = 0; idx < d.probs.size(); ++idx) {
    double p = 1.0;
    for (int k = 0; k < spec.L; ++k) {
      std::size_t b = 0;
      for (int j = 0; j < spec.N; ++j) b |= ((idx >> spec.flat(j, k)) & 1U) << j;
      p *= cols[k][b];
    }
    d.probs[idx] = p;
  }
  return d;
}

GammaDistribution gamma_via_boson_trace(const IqpSpec& spec, int n_b) {
  spec.validate();
  if (n_b < 2) throw ValidationError("boson truncation n_b must be >= 2");
  DcubeConfig cfg;
  cfg.layout_a = SpaceLayout::qubits(1);
  cfg.h_a = ComplexMatrix::Zero(2, 2);
  SpaceLayout lb;
  for (int k = 0; k < spec.L; ++k) lb.add_boson_mode(n_b, "q" + std::to_string(k));
  cfg.layout_b = lb;
  const auto db = static_cast<Eigen::Index>(lb.total_dim());
  cfg.h_b = ComplexMatrix::Zero(db, db);
  const ComplexMatrix q = boson_annihilate(n_b);
  for (int k = 0; k < spec.L; ++k) {
    cfg.h_b += spec.omega_at(k) * embed(q.adjoint() * q, lb, static_cast<std::size_t>(k));
    cfg.a_ops.push_back(pauli::Z());
    cfg.b_ops.push_back(0.5 * spec.g_at(k) * embed(boson_position(n_b), lb, static_cast<std::size_t>(k)));
  }
  cfg.t = spec.t;
  cfg.steps = spec.N;
  ComplexMatrix vac = ComplexMatrix::Zero(db, db);
  vac(0, 0) = 1.0;
  return {spec.L, spec.N, gamma_probabilities(cfg, vac)};
}

namespace {

// ell_k as a diagonal operator on the column register (qubit j = factor j).
ComplexMatrix column_ell_operator(const IqpSpec& spec, int k) {
  const ComplexVector a = jump_ell_vector(spec, k);
  const SpaceLayout reg = SpaceLayout::qubits(spec.N);
  ComplexMatrix op = ComplexMatrix::Zero(static_cast<Eigen::Index>(reg.total_dim()),
                                         static_cast<Eigen::Index>(reg.total_dim()));
  for (int j = 0; j < spec.N; ++j) op += a(j) * embed(pauli::Z(), reg, static_cast<std::size_t>(j));
  return op;
}

}  // namespace

LindbladSpec build_iqp_lindblad(const IqpSpec& spec, bool include_hamiltonian) {
  spec.validate();
  const SpaceLayout layout = SpaceLayout::qubits(spec.bits());
  check_capacity(layout.total_dim(), "IQP Lindbladian");
  LindbladSpec out(layout);
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  if (include_hamiltonian) {
    const auto coeffs = h_iqp_coefficients(spec);
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < spec.L; ++k)
      for (int j = 0; j < spec.N; ++j)
        for (int l = 0; l < j; ++l) {
          if (coeffs[k](j, l) == 0.0) continue;
          h += coeffs[k](j, l) * (embed(pauli::Z(), layout, spec.flat(j, k)) *
                                  embed(pauli::Z(), layout, spec.flat(l, k)));
        }
    out.add_hamiltonian(1.0, h, "H_IQP");
  }
  for (int k = 0; k < spec.L; ++k) {
    const ComplexVector a = jump_ell_vector(spec, k);
    ComplexMatrix ell = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < spec.N; ++j) ell += a(j) * embed(pauli::Z(), layout, spec.flat(j, k));
    out.add_jump(1.0, ell, false, "ell" + std::to_string(k));
  }
  return out;
}

int default_n_rho(int N) {
  if (N < 1) throw ValidationError("N must be >= 1");
  return static_cast<int>(std::ceil(std::pow(static_cast<double>(N), 0.25) - 1e-12));
}

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat2 rot_x(double theta) {
  Mat2 m;
  m << std::cos(theta), kI * std::sin(theta), kI * std::sin(theta), std::cos(theta);
  return m;
}

Mat2 rot_y(double theta) {
  Mat2 m;
  m << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return m;
}

// Ancilla unitary approximating exp(i eps (a X + b Y)).
Mat2 ancilla_unitary(double a, double b, double eps, const CircuitOptions& o, int n_rho) {
  if (o.exact_rotation) {
    const double r = std::hypot(a, b);
    Mat2 m = Mat2::Identity();
    if (r == 0.0) return m;
    const double c = std::cos(eps * r), s = std::sin(eps * r);
    // exp(i eps r n.sigma) = cos I + i sin n.sigma, n = (a, b, 0) / r
    m << c, kI * s * Complex(a, -b) / r, kI * s * Complex(a, b) / r, c;
    return m;
  }
  const double d = eps / n_rho;
  Mat2 step;
  if (o.order == 1) {
    step = rot_y(d * b) * rot_x(d * a);
  } else {
    step = rot_x(0.5 * d * a) * rot_y(d * b) * rot_x(0.5 * d * a);
  }
  Mat2 m = Mat2::Identity();
  for (int i = 0; i < n_rho; ++i) m = step * m;
  return m;
}

void check_circuit_options(const CircuitOptions& o) {
  if (o.order != 1 && o.order != 2) throw ValidationError("product-formula order p must be 1 or 2");
  if (o.n_rho < 0 || o.n_eta < 0) throw ValidationError("N_rho and N_eta must be >= 1 (0 selects the default)");
}

}  // namespace

IqpCircuitSampler::IqpCircuitSampler(const IqpSpec& spec, const CircuitOptions& options) : spec_(spec) {
  spec.validate();
  check_circuit_options(options);
  if (spec.N > 24) throw CapacityError("IQP column statevector", std::size_t{1} << spec.N, std::size_t{1} << 24);
  n_eta_ = options.n_eta > 0 ? options.n_eta : spec.N;
  const int n_rho = options.n_rho > 0 ? options.n_rho : default_n_rho(spec.N);
  const double eps = std::sqrt(spec.t / n_eta_);
  for (int k = 0; k < spec.L; ++k) {
    const ColumnTables tab = column_tables(spec, k);
    std::vector<Complex> w0(tab.ell.size()), w1(tab.ell.size()), ph(tab.ell.size());
    for (std::size_t b = 0; b < tab.ell.size(); ++b) {
      const Mat2 u = ancilla_unitary(tab.ell[b].real(), tab.ell[b].imag(), eps, options, n_rho);
      w0[b] = u(0, 0);
      w1[b] = u(1, 0);
      ph[b] = std::exp(-kI * (spec.t * tab.energy[b]));
    }
    w0_.push_back(std::move(w0));
    w1_.push_back(std::move(w1));
    phases_.push_back(std::move(ph));
  }
}

std::uint64_t IqpCircuitSampler::sample_column(int k, Rng& rng) const {
  const auto& w0 = w0_.at(static_cast<std::size_t>(k));
  const auto& w1 = w1_[static_cast<std::size_t>(k)];
  const std::size_t size = w0.size();
  std::vector<Complex> psi(size, Complex(std::pow(2.0, -0.5 * spec_.N), 0.0));
  for (int e = 0; e < n_eta_; ++e) {
    double p1 = 0.0;
    for (std::size_t b = 0; b < size; ++b) p1 += std::norm(psi[b]) * std::norm(w1[b]);
    const bool one = rng.uniform() < p1;
    const auto& w = one ? w1 : w0;
    double norm = 0.0;
    for (std::size_t b = 0; b < size; ++b) {
      psi[b] *= w[b];
      norm += std::norm(psi[b]);
    }
    if (norm <= 0.0) throw NumericalError("IQP sampler: collapsed onto a zero-probability branch");
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& v : psi) v *= inv;
  }
  const auto& ph = phases_[static_cast<std::size_t>(k)];
  for (std::size_t b = 0; b < size; ++b) psi[b] *= ph[b];
  walsh_hadamard(psi);
  std::vector<double> probs(size);
  for (std::size_t b = 0; b < size; ++b) probs[b] = std::norm(psi[b]);
  return rng.categorical(probs);
}

GammaBitstring IqpCircuitSampler::sample(Rng& rng) const {
  GammaBitstring g(spec_.N, spec_.L);
  for (int k = 0; k < spec_.L; ++k) {
    const std::uint64_t col = sample_column(k, rng);
    for (int j = 0; j < spec_.N; ++j) g.bits[spec_.flat(j, k)] = (col >> j) & 1U;
  }
  return g;
}

IqpExactSampler::IqpExactSampler(const IqpSpec& spec) : spec_(spec) {
  for (int k = 0; k < spec.L; ++k) {
    const auto p = gamma_column_exact(spec, k);
    std::vector<double> cum(p.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < p.size(); ++b) cum[b] = (acc += p[b]);
    cumulative_.push_back(std::move(cum));
  }
}

GammaBitstring IqpExactSampler::sample(Rng& rng) const {
  GammaBitstring g(spec_.N, spec_.L);
  for (int k = 0; k < spec_.L; ++k) {
    const auto& cum = cumulative_[static_cast<std::size_t>(k)];
    const double u = rng.uniform() * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    const auto col = static_cast<std::uint64_t>(it - cum.begin());
    for (int j = 0; j < spec_.N; ++j) g.bits[spec_.flat(j, k)] = (col >> j) & 1U;
  }
  return g;
}

GammaBitstring gamma_circuit_sample(const IqpSpec& spec, int n_rho, int order, Rng& rng, int n_eta) {
  CircuitOptions o;
  o.n_rho = n_rho;
  o.order = order;
  o.n_eta = n_eta;
  return IqpCircuitSampler(spec, o).sample(rng);
}

ComplexMatrix g_map_superoperator(const IqpSpec& spec, int k, double eps, const CircuitOptions& options) {
  spec.validate();
  check_circuit_options(options);
  const ComplexMatrix ell = column_ell_operator(spec, k);
  const ComplexMatrix re = 0.5 * (ell + ell.adjoint());
  const ComplexMatrix im = -0.5 * kI * (ell - ell.adjoint());
  const ComplexMatrix gx = kron(re, pauli::X());
  const ComplexMatrix gy = kron(im, pauli::Y());
  ComplexMatrix u;
  if (options.exact_rotation) {
    u = matrix_exp(kI * eps * (gx + gy));
  } else {
    const int n_rho = options.n_rho > 0 ? options.n_rho : default_n_rho(spec.N);
    const double d = eps / n_rho;
    ComplexMatrix step;
    if (options.order == 1) {
      step = matrix_exp(kI * d * gy) * matrix_exp(kI * d * gx);
    } else {
      const ComplexMatrix half = matrix_exp(0.5 * kI * d * gx);
      step = half * matrix_exp(kI * d * gy) * half;
    }
    u = identity(static_cast<std::size_t>(step.rows()));
    for (int i = 0; i < n_rho; ++i) u = step * u;
  }
  const auto dim = ell.rows();
  const SpaceLayout layout = SpaceLayout::qubits(spec.N + 1);
  std::vector<std::size_t> keep;
  for (int j = 0; j < spec.N; ++j) keep.push_back(static_cast<std::size_t>(j));
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix out(dim * dim, dim * dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    for (Eigen::Index a = 0; a < dim; ++a) {
      ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
      e(a, b) = 1.0;
      const ComplexMatrix r = partial_trace(u * kron(e, zero) * u.adjoint(), layout, keep);
      out.col(a + b * dim) = vec(r);
    }
  return out;
}

ComplexMatrix column_dissipator_superoperator(const IqpSpec& spec, int k) {
  LindbladSpec d(SpaceLayout::qubits(spec.N));
  d.add_jump(1.0, column_ell_operator(spec, k), false);
  return vectorize(d);
}

AnticoncentrationReport anticoncentration_report(const std::vector<double>& probs) {
  AnticoncentrationReport r;
  for (double p : probs) {
    if (p < 0.0) throw ValidationError("probabilities must be >= 0");
    r.max_probability = std::max(r.max_probability, p);
    r.collision_probability += p * p;
    if (p > 0.0) r.entropy_bits -= p * std::log2(p);
  }
  return r;
}

}  // namespace dcube
