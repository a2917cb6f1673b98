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

#include "dcube/dcube.hpp"

#include <algorithm>
#include <cmath>

#include "dcube/stochastic.hpp"

namespace dcube {

void DcubeConfig::validate() const {
  const auto da = static_cast<Eigen::Index>(layout_a.total_dim());
  const auto db = static_cast<Eigen::Index>(layout_b.total_dim());
  if (h_a.rows() != da || h_a.cols() != da) throw ValidationError("H_A does not match subsystem A");
  if (h_b.rows() != db || h_b.cols() != db) throw ValidationError("H_B does not match subsystem B");
  if (!is_hermitian(h_a) || !is_hermitian(h_b)) throw ValidationError("H_A and H_B must be Hermitian");
  if (a_ops.size() != b_ops.size()) throw ValidationError("need one B_k per A_k");
  if (a_ops.empty()) throw ValidationError("need at least one jump pair");
  if (steps < 1) throw ValidationError("number of Trotter steps must be >= 1");
  if (!(t >= 0.0)) throw ValidationError("time must be >= 0");
  for (std::size_t k = 0; k < a_ops.size(); ++k) {
    const auto& a = a_ops[k];
    const auto& b = b_ops[k];
    if (a.rows() != da || a.cols() != da) throw ValidationError("A_k does not match subsystem A");
    if (b.rows() != db || b.cols() != db) throw ValidationError("B_k does not match subsystem B");
    if (!is_hermitian(a) || !is_hermitian(b)) throw ValidationError("A_k and B_k must be Hermitian");
    if (max_abs(a * a - ComplexMatrix::Identity(da, da)) > 1e-12)
      throw ValidationError("A_k must square to the identity");
  }
}

std::uint64_t GammaBitstring::index() const {
  if (bits.size() > 63) throw CapacityError("gamma index", bits.size(), 63);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) idx |= std::uint64_t{1} << i;
  return idx;
}

GammaBitstring GammaBitstring::from_index(std::uint64_t index, int steps, int jumps) {
  GammaBitstring g(steps, jumps);
  for (std::size_t i = 0; i < g.bits.size(); ++i) g.bits[i] = (index >> i) & 1U;
  return g;
}

std::string GammaBitstring::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

namespace {

std::size_t reverse_bits(std::size_t x, int n) {
  std::size_t r = 0;
  for (int i = 0; i < n; ++i) r |= ((x >> i) & 1U) << (n - 1 - i);
  return r;
}

// Final amplitudes Psi(b, c) after V and the Hadamard layer, for one pure
// B-side input. Column c holds ancilla 0 in its most significant bit.
ComplexMatrix final_amplitudes(const DcubeConfig& cfg, const ComplexVector& psi_b) {
  const int n = cfg.ancillas();
  const auto db = static_cast<Eigen::Index>(cfg.layout_b.total_dim());
  check_capacity(static_cast<std::size_t>(db) << n, "Dcube ancilla register");
  const auto cols = static_cast<Eigen::Index>(Eigen::Index{1} << n);
  const double tau = cfg.t / cfg.steps;
  const double root = std::sqrt(tau);

  std::vector<ComplexMatrix> plus, minus;
  for (const auto& b : cfg.b_ops) {
    const HermitianExp eb(b);
    plus.push_back(eb(root));
    minus.push_back(eb(-root));
  }
  const ComplexMatrix eh = HermitianExp(cfg.h_b)(-tau);

  ComplexMatrix psi(db, cols);
  const double amp = std::pow(2.0, -0.5 * n);
  for (Eigen::Index c = 0; c < cols; ++c) psi.col(c) = amp * psi_b;

  for (int r = 0; r < cfg.steps; ++r) {
    for (int k = 0; k < cfg.jumps(); ++k) {
      const int a = r * cfg.jumps() + k;
      const Eigen::Index mask = Eigen::Index{1} << (n - 1 - a);
      for (Eigen::Index c = 0; c < cols; ++c)
        psi.col(c) = ((c & mask) ? minus[k] : plus[k]) * psi.col(c);
    }
    psi = eh * psi;
  }

  // Hadamard on every ancilla: normalized Walsh-Hadamard transform of rows.
  for (Eigen::Index len = 1; len < cols; len <<= 1)
    for (Eigen::Index i = 0; i < cols; i += 2 * len)
      for (Eigen::Index j = i; j < i + len; ++j) {
        const ComplexVector u = psi.col(j);
        psi.col(j) += psi.col(j + len);
        psi.col(j + len) = u - psi.col(j + len);
      }
  psi *= amp;
  return psi;
}

std::vector<double> column_weights(const ComplexMatrix& psi) {
  std::vector<double> w(static_cast<std::size_t>(psi.cols()));
  for (Eigen::Index c = 0; c < psi.cols(); ++c) w[static_cast<std::size_t>(c)] = psi.col(c).squaredNorm();
  return w;
}

}  // namespace

ComplexMatrix build_V(const DcubeConfig& cfg) {
  cfg.validate();
  const int n = cfg.ancillas();
  const SpaceLayout anc = SpaceLayout::qubits(n);
  const std::size_t total = cfg.layout_b.total_dim() * anc.total_dim();
  check_capacity(total, "build_V");
  const double tau = cfg.t / cfg.steps;
  const double root = std::sqrt(tau);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;

  const ComplexMatrix eh = kron(HermitianExp(cfg.h_b)(-tau), identity(anc.total_dim()));
  ComplexMatrix v = identity(total);
  for (int r = 0; r < cfg.steps; ++r) {
    for (int k = 0; k < cfg.jumps(); ++k) {
      const std::size_t a = static_cast<std::size_t>(r * cfg.jumps() + k);
      const HermitianExp eb(cfg.b_ops[k]);
      const ComplexMatrix coupling =
          kron(eb(root), embed(p0, anc, a)) + kron(eb(-root), embed(p1, anc, a));
      v = coupling * v;
    }
    v = eh * v;
  }
  return v;
}

std::vector<double> gamma_probabilities(const DcubeConfig& cfg, const ComplexMatrix& rho_b) {
  cfg.validate();
  const int n = cfg.ancillas();
  const PureDecomposition pure = decompose_state(rho_b);
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < pure.weights.size(); ++i) {
    const auto w = column_weights(final_amplitudes(cfg, pure.vectors[i]));
    for (std::size_t c = 0; c < w.size(); ++c) probs[reverse_bits(c, n)] += pure.weights[i] * w[c];
  }
  return probs;
}

GammaSampler::GammaSampler(const DcubeConfig& cfg, const ComplexMatrix& rho_b)
    : steps_(cfg.steps), jumps_(cfg.jumps()), n_(cfg.ancillas()) {
  cfg.validate();
  const PureDecomposition pure = decompose_state(rho_b);
  weights_ = pure.weights;
  for (const auto& v : pure.vectors) {
    const auto w = column_weights(final_amplitudes(cfg, v));
    std::vector<double> cum(w.size() + 1, 0.0);
    for (std::size_t c = 0; c < w.size(); ++c) cum[c + 1] = cum[c] + w[c];
    cumulative_.push_back(std::move(cum));
  }
}

GammaBitstring GammaSampler::sample(Rng& rng) const {
  const auto& cum = cumulative_[weights_.size() == 1 ? 0 : rng.categorical(weights_)];
  GammaBitstring g(steps_, jumps_);
  std::size_t lo = 0;
  std::size_t width = std::size_t{1} << n_;
  // Ancilla 0 is the most significant column bit: peel bits from the top.
  for (int a = 0; a < n_; ++a) {
    width >>= 1;
    const double p0 = cum[lo + width] - cum[lo];
    const double p1 = cum[lo + 2 * width] - cum[lo + width];
    const double u = rng.uniform() * (p0 + p1);
    const bool one = (p0 <= 0.0) || (u >= p0 && p1 > 0.0);
    if (one) lo += width;
    g.bits[static_cast<std::size_t>(a)] = one ? 1 : 0;
  }
  return g;
}

GammaBitstring sample_gamma(const DcubeConfig& cfg, const ComplexMatrix& rho_b, Rng& rng) {
  return GammaSampler(cfg, rho_b).sample(rng);
}

ComplexMatrix build_U_gamma(const DcubeConfig& cfg, const GammaBitstring& gamma) {
  cfg.validate();
  if (gamma.steps != cfg.steps || gamma.jumps != cfg.jumps() ||
      gamma.bits.size() != static_cast<std::size_t>(cfg.ancillas()))
    throw ValidationError("gamma shape does not match the Dcube configuration");
  const ComplexMatrix eh = HermitianExp(cfg.h_a)(-cfg.t / cfg.steps);
  ComplexMatrix u = identity(cfg.layout_a.total_dim());
  for (int r = 0; r < cfg.steps; ++r) {
    for (int k = 0; k < cfg.jumps(); ++k)
      if (gamma.at(r, k)) u = cfg.a_ops[k] * u;
    u = eh * u;
  }
  return u;
}

ComplexMatrix exact_decoupled_channel(const DcubeConfig& cfg, const ComplexMatrix& rho_a,
                                      const ComplexMatrix& rho_b) {
  const auto probs = gamma_probabilities(cfg, rho_b);
  const auto da = static_cast<Eigen::Index>(cfg.layout_a.total_dim());
  if (rho_a.rows() != da || rho_a.cols() != da) throw ValidationError("rho_A does not match subsystem A");
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    if (probs[idx] == 0.0) continue;
    const ComplexMatrix u = build_U_gamma(cfg, GammaBitstring::from_index(idx, cfg.steps, cfg.jumps()));
    out += probs[idx] * (u * rho_a * u.adjoint());
  }
  return out;
}

ChannelEstimate run_dcube(const DcubeConfig& cfg, const ComplexMatrix& rho_a, const ComplexMatrix& rho_b,
                          const ComplexMatrix& observable, const DcubeRunOptions& options) {
  if (options.samples < 1) throw ValidationError("number of samples M must be >= 1");
  const GammaSampler sampler(cfg, rho_b);
  const PureDecomposition pure = decompose_state(rho_a);
  const ComplexMatrix eh = HermitianExp(cfg.h_a)(-cfg.t / cfg.steps);
  std::vector<double> values(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t p) {
    Rng rng = stream(options.seed, 0, p);
    const GammaBitstring g = sampler.sample(rng);
    double acc = 0.0;
    for (std::size_t c = 0; c < pure.weights.size(); ++c) {
      ComplexVector psi = pure.vectors[c];
      for (int r = 0; r < cfg.steps; ++r) {
        for (int k = 0; k < cfg.jumps(); ++k)
          if (g.at(r, k)) psi = cfg.a_ops[k] * psi;
        psi = eh * psi;
      }
      acc += pure.weights[c] * psi.dot(observable * psi).real();
    }
    values[p] = acc;
  });
  return make_estimate(values, options.keep_samples);
}

}  // namespace dcube
