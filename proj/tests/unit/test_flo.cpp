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

#include <doctest.h>

#include <cmath>

#include "dcube/flo.hpp"
#include "dcube/models.hpp"
#include "test_util.hpp"

using namespace dcube;

namespace {

struct Dense {
  explicit Dense(int modes) : layout(SpaceLayout::fermion_modes(modes)) {
    for (int m = 0; m < modes; ++m) c.push_back(jordan_wigner(m, layout));
  }
  ComplexMatrix quadratic(const ComplexMatrix& h) const {
    const auto d = static_cast<Eigen::Index>(layout.total_dim());
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (std::size_t m = 0; m < c.size(); ++m)
      for (std::size_t n = 0; n < c.size(); ++n)
        if (h(m, n) != Complex(0.0)) out += h(m, n) * c[m].create * c[n].annihilate;
    return out;
  }
  ComplexMatrix parity(const std::vector<int>& modes) const {
    ComplexMatrix out = identity(layout.total_dim());
    for (int m : modes) out = out * (identity(layout.total_dim()) - 2.0 * c[m].create * c[m].annihilate);
    return out;
  }
  SpaceLayout layout;
  std::vector<FermionPair> c;
};

}  // namespace

TEST_SUITE("flo") {
  TEST_CASE("fock correlation") {
    const ComplexMatrix c = fock_correlation(3, {1});
    CHECK(c(1, 1) == Complex(1.0));
    CHECK(c(0, 0) == Complex(0.0));
    CHECK(max_abs(c - c.adjoint()) == 0.0);
    CHECK_THROWS_AS(fock_correlation(3, {3}), ValidationError);

    const Dense dense(3);
    ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
    rho(0b010, 0b010) = 1.0;  // mode 1 occupied; factor 0 most significant
    CHECK(max_abs(correlation_matrix(rho, dense.layout) - c) < 1e-15);
  }

  TEST_CASE("correlation evolution matches the dense many-body evolution") {
    Rng rng(61);
    const Dense dense(3);
    const ComplexMatrix h = test::random_hermitian(3, rng);
    const ComplexMatrix rho = test::random_density(8, rng);
    const double tau = 0.8;
    const ComplexMatrix u = HermitianExp(dense.quadratic(h))(-tau);
    const ComplexMatrix lhs = evolve_correlation(correlation_matrix(rho, dense.layout), h, tau);
    CHECK(max_abs(lhs - correlation_matrix(u * rho * u.adjoint(), dense.layout)) < 1e-12);
  }

  TEST_CASE("z strings flip the sign of mixed correlations") {
    Rng rng(62);
    const Dense dense(3);
    const ComplexMatrix rho = test::random_density(8, rng);
    const ComplexMatrix c = correlation_matrix(rho, dense.layout);
    const std::vector<int> flipped{0, 2};
    const ComplexMatrix p = dense.parity(flipped);
    CHECK(max_abs(apply_z_string(c, flipped) - correlation_matrix(p * rho * p, dense.layout)) < 1e-13);
    const ComplexMatrix d = z_string_matrix(3, flipped);
    CHECK(d(0, 0) == Complex(-1.0));
    CHECK(d(1, 1) == Complex(1.0));
    const ComplexMatrix m = test::random_matrix(3, rng);
    CHECK(max_abs(apply_z_string_transfer(m, flipped) - d * m) == 0.0);
  }

  TEST_CASE("trajectory transfer against dense site signs") {
    ModelConfig model;
    model.J = 0.9;
    const ComplexMatrix h = hopping_matrix(model);
    const std::vector<std::vector<int>> site_modes{{0}, {1}};
    const Dense dense(2);
    const double t = 1.3;
    const int steps = 3;
    const ComplexMatrix step = HermitianExp(dense.quadratic(h))(-t / steps);
    ComplexMatrix rho0 = ComplexMatrix::Zero(4, 4);
    rho0(0b10, 0b10) = 1.0;
    const ComplexMatrix c0 = fock_correlation(2, {0});
    for (std::uint64_t idx = 0; idx < (1u << (steps * 2)); ++idx) {
      const GammaBitstring g = GammaBitstring::from_index(idx, steps, 2);
      ComplexMatrix u = identity(4);
      for (int j = 0; j < steps; ++j) {
        for (int k = 0; k < 2; ++k)
          if (g.at(j, k)) u = dense.parity(site_modes[k]) * u;
        u = step * u;
      }
      const ComplexMatrix rho = u * rho0 * u.adjoint();
      const ComplexMatrix m = trajectory_transfer(h, g, t, site_modes);
      const RealVector n = trajectory_densities(m, c0);
      for (int mode = 0; mode < 2; ++mode) {
        const double expected =
            (rho * dense.c[mode].create * dense.c[mode].annihilate).trace().real();
        CHECK(std::abs(n(mode) - expected) < 1e-12);
      }
    }
  }

  TEST_CASE("free dimer hops as cos^2") {
    ModelConfig model;
    model.J = 1.0;
    const double t = 0.7;
    const GammaBitstring none(1, 2);
    const ComplexMatrix m = trajectory_transfer(hopping_matrix(model), none, t, {{0}, {1}});
    const RealVector n = trajectory_densities(m, fock_correlation(2, {0}));
    CHECK(n(0) == doctest::Approx(std::pow(std::cos(t), 2)).epsilon(1e-13));
    CHECK(n(1) == doctest::Approx(std::pow(std::sin(t), 2)).epsilon(1e-13));
    CHECK(std::abs(gf_anticommutator(m, 0) - std::cos(t)) < 1e-13);
  }

  TEST_CASE("anticommutator is one at time zero and matches dense") {
    CHECK(gf_anticommutator(identity(3), 1) == Complex(1.0));
    Rng rng(63);
    const Dense dense(3);
    const ComplexMatrix h = test::random_hermitian(3, rng);
    const double tau = 0.6;
    const ComplexMatrix u = HermitianExp(dense.quadratic(h))(-tau);
    // The full-occupation correlation is invariant.
    CHECK(max_abs(evolve_correlation(identity(3), h, tau) - identity(3)) < 1e-13);
    const ComplexMatrix transfer = HermitianExp(h)(-tau);
    const ComplexMatrix rho = test::random_density(8, rng);
    for (int i = 0; i < 3; ++i) {
      const ComplexMatrix cdt = u.adjoint() * dense.c[i].create * u;
      const ComplexMatrix ac = cdt * dense.c[i].annihilate + dense.c[i].annihilate * cdt;
      CHECK(std::abs((rho * ac).trace() - gf_anticommutator(transfer, i)) < 1e-12);
    }
  }
}
