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

#include "dcube/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace dcube {

void ModelConfig::validate() const {
  if (sites < 1) throw ValidationError("model needs at least one site");
  if (n_b < 2) throw ValidationError("boson truncation n_b must be >= 2");
  auto check_list = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != 1 && v.size() != static_cast<std::size_t>(sites))
      throw ValidationError(std::string(name) + " needs one entry or one per site");
    for (double x : v)
      if (!std::isfinite(x)) throw ValidationError(std::string(name) + " entries must be finite");
  };
  check_list(omega, "omega");
  check_list(g, "g");
  if (!std::isfinite(J) || !std::isfinite(U)) throw ValidationError("J and U must be finite");
  std::set<int> seen;
  for (int m : occupied_modes) {
    if (m < 0 || m >= modes()) throw ValidationError("occupied mode index out of range");
    if (!seen.insert(m).second) throw ValidationError("occupied mode listed twice");
  }
}

int ModelConfig::mode_index(int site, int spin) const {
  if (site < 0 || site >= sites) throw ValidationError("site index out of range");
  if (spin < 0 || spin > (spinful ? 1 : 0)) throw ValidationError("spin index out of range");
  return spinful ? 2 * site + spin : site;
}

double ModelConfig::omega_at(int site) const { return omega.size() == 1 ? omega[0] : omega.at(site); }
double ModelConfig::g_at(int site) const { return g.size() == 1 ? g[0] : g.at(site); }

SpaceLayout fermion_layout(const ModelConfig& cfg) {
  cfg.validate();
  SpaceLayout l;
  for (int s = 0; s < cfg.sites; ++s) {
    if (cfg.spinful) {
      l.add_fermion_mode("c" + std::to_string(s) + "u");
      l.add_fermion_mode("c" + std::to_string(s) + "d");
    } else {
      l.add_fermion_mode("c" + std::to_string(s));
    }
  }
  return l;
}

SpaceLayout eph_layout(const ModelConfig& cfg) {
  SpaceLayout l = fermion_layout(cfg);
  for (int s = 0; s < cfg.sites; ++s) l.add_boson_mode(cfg.n_b, "q" + std::to_string(s));
  return l;
}

ComplexMatrix hopping_matrix(const ModelConfig& cfg) {
  cfg.validate();
  ComplexMatrix h = ComplexMatrix::Zero(cfg.modes(), cfg.modes());
  const int spins = cfg.spinful ? 2 : 1;
  for (int s = 0; s + 1 < cfg.sites; ++s)
    for (int sp = 0; sp < spins; ++sp) {
      const int a = cfg.mode_index(s, sp);
      const int b = cfg.mode_index(s + 1, sp);
      h(a, b) = -cfg.J;
      h(b, a) = -cfg.J;
    }
  return h;
}

ComplexMatrix mode_number(const SpaceLayout& layout, std::size_t mode) {
  const auto modes = layout.indices_of(FactorKind::kFermionMode);
  if (mode >= modes.size()) throw ValidationError("mode index out of range");
  ComplexMatrix n = ComplexMatrix::Zero(2, 2);
  n(1, 1) = 1.0;
  return embed(n, layout, modes[mode]);
}

ComplexMatrix site_density(const ModelConfig& cfg, const SpaceLayout& layout, int site) {
  ComplexMatrix n = mode_number(layout, cfg.mode_index(site, 0));
  if (cfg.spinful) n += mode_number(layout, cfg.mode_index(site, 1));
  return n;
}

ComplexMatrix site_sign(const ModelConfig& cfg, const SpaceLayout& layout, int site) {
  const auto modes = layout.indices_of(FactorKind::kFermionMode);
  if (!cfg.spinful) {
    // 2n - 1 = -Z on the site's mode.
    return -embed(pauli::Z(), layout, modes.at(cfg.mode_index(site, 0)));
  }
  // (-1)^(n_up + n_down) = Z_up Z_down
  return -(embed(pauli::Z(), layout, modes.at(cfg.mode_index(site, 0))) *
           embed(pauli::Z(), layout, modes.at(cfg.mode_index(site, 1))));
}

ComplexMatrix fermion_hamiltonian(const ModelConfig& cfg, const SpaceLayout& layout) {
  const ComplexMatrix h = hopping_matrix(cfg);
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  std::vector<FermionPair> c;
  for (int m = 0; m < cfg.modes(); ++m) c.push_back(jordan_wigner(static_cast<std::size_t>(m), layout));
  for (int m = 0; m < cfg.modes(); ++m)
    for (int n = 0; n < cfg.modes(); ++n)
      if (h(m, n) != Complex{}) out += h(m, n) * (c[m].create * c[n].annihilate);
  if (cfg.spinful && cfg.U != 0.0) {
    for (int s = 0; s < cfg.sites; ++s)
      out += cfg.U * (mode_number(layout, cfg.mode_index(s, 0)) * mode_number(layout, cfg.mode_index(s, 1)));
  }
  return out;
}

ComplexMatrix boson_hamiltonian(const ModelConfig& cfg, const SpaceLayout& layout) {
  const auto bosons = layout.indices_of(FactorKind::kBosonMode);
  if (bosons.size() != static_cast<std::size_t>(cfg.sites))
    throw ValidationError("layout needs one boson mode per site");
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int s = 0; s < cfg.sites; ++s) {
    const int nb = layout.factor(bosons[s]).dim;
    const ComplexMatrix q = boson_annihilate(nb);
    out += cfg.omega_at(s) * embed(q.adjoint() * q, layout, bosons[s]);
  }
  return out;
}

ComplexMatrix boson_position_at(const SpaceLayout& layout, int site) {
  const auto bosons = layout.indices_of(FactorKind::kBosonMode);
  const std::size_t f = bosons.at(static_cast<std::size_t>(site));
  return embed(boson_position(layout.factor(f).dim), layout, f);
}

LindbladSpec build_eph_lindblad(const ModelConfig& cfg) {
  const SpaceLayout layout = eph_layout(cfg);
  LindbladSpec spec(layout);
  spec.add_hamiltonian(1.0, fermion_hamiltonian(cfg, layout), "H_F");
  spec.add_hamiltonian(1.0, boson_hamiltonian(cfg, layout), "H_Q");
  for (int s = 0; s < cfg.sites; ++s) {
    const double g = cfg.g_at(s);
    ComplexMatrix op = boson_position_at(layout, s) * site_sign(cfg, layout, s);
    op = 0.5 * (op + op.adjoint());  // exact symmetrization of commuting factors
    spec.add_jump(0.25 * g * g, std::move(op), true, "xA" + std::to_string(s));
  }
  return spec;
}

LindbladSpec build_fermion_dephasing(const ModelConfig& cfg) {
  const SpaceLayout layout = fermion_layout(cfg);
  LindbladSpec spec(layout);
  spec.add_hamiltonian(1.0, fermion_hamiltonian(cfg, layout), "H_F");
  for (int s = 0; s < cfg.sites; ++s) {
    const double g = cfg.g_at(s);
    spec.add_jump(g * g, site_density(cfg, layout, s), true, "n" + std::to_string(s));
  }
  return spec;
}

namespace {

// Basis index of a fermion occupation pattern; mode m sits on factor m.
std::size_t fermion_index(const SpaceLayout& layout, const std::vector<int>& occupied) {
  const auto modes = layout.indices_of(FactorKind::kFermionMode);
  std::size_t idx = 0;
  for (int m : occupied) idx += layout.stride(modes.at(static_cast<std::size_t>(m)));
  return idx;
}

}  // namespace

ComplexVector fock_vector(const ModelConfig& cfg, const SpaceLayout& layout) {
  cfg.validate();
  check_capacity(layout.total_dim(), "fock_vector");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  v(static_cast<Eigen::Index>(fermion_index(layout, cfg.occupied_modes))) = 1.0;
  return v;
}

DensityMatrix fock_state(const ModelConfig& cfg, const SpaceLayout& layout) {
  return DensityMatrix::pure(layout, fock_vector(cfg, layout));
}

GroundState ground_state(const ModelConfig& cfg, int n_up, int n_down) {
  const SpaceLayout layout = fermion_layout(cfg);
  const int modes = cfg.modes();
  if (n_up < 0) n_up = cfg.spinful ? cfg.sites / 2 : cfg.sites / 2;
  if (n_down < 0) n_down = cfg.spinful ? cfg.sites / 2 : 0;
  const ComplexMatrix h = fermion_hamiltonian(cfg, layout);

  // Factor m has stride 2^(modes - 1 - m).
  auto count = [&](std::size_t idx, int spin) {
    int c = 0;
    for (int m = 0; m < modes; ++m) {
      const bool occ = (idx >> (modes - 1 - m)) & 1U;
      if (!occ) continue;
      if (!cfg.spinful || (m % 2) == spin) ++c;
    }
    return c;
  };
  std::vector<Eigen::Index> sector;
  for (std::size_t idx = 0; idx < layout.total_dim(); ++idx) {
    if (count(idx, 0) == n_up && (!cfg.spinful || count(idx, 1) == n_down))
      sector.push_back(static_cast<Eigen::Index>(idx));
  }
  if (sector.empty()) throw ValidationError("ground_state: empty particle-number sector");
  const auto n = static_cast<Eigen::Index>(sector.size());
  ComplexMatrix hs(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) hs(a, b) = h(sector[a], sector[b]);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
  if (es.info() != Eigen::Success) throw NumericalError("ground_state: eigensolver failed");

  GroundState gs;
  gs.energy = es.eigenvalues()(0);
  gs.gap = n > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : 0.0;
  ComplexVector local = es.eigenvectors().col(0);
  Eigen::Index arg = 0;
  local.cwiseAbs().maxCoeff(&arg);
  local *= std::conj(local(arg)) / std::abs(local(arg));
  gs.vector = ComplexVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  for (Eigen::Index a = 0; a < n; ++a) gs.vector(sector[a]) = local(a);
  return gs;
}

DensityMatrix with_boson_vacuum(const ModelConfig& cfg, const SpaceLayout& layout,
                                const ComplexVector& fermion_psi) {
  const SpaceLayout fl = fermion_layout(cfg);
  if (static_cast<std::size_t>(fermion_psi.size()) != fl.total_dim())
    throw ValidationError("fermion state does not match the model");
  const std::size_t boson_dim = layout.total_dim() / fl.total_dim();
  ComplexVector vac = ComplexVector::Zero(static_cast<Eigen::Index>(boson_dim));
  vac(0) = 1.0;
  ComplexVector psi(static_cast<Eigen::Index>(layout.total_dim()));
  for (Eigen::Index i = 0; i < fermion_psi.size(); ++i)
    psi.segment(i * vac.size(), vac.size()) = fermion_psi(i) * vac;
  return DensityMatrix::pure(layout, psi);
}

}  // namespace dcube
