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

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dcube/models.hpp"

using namespace dcube;

TEST_SUITE("models") {
  TEST_CASE("config validation") {
    ModelConfig m;
    CHECK_NOTHROW(m.validate());
    m.g = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(m.validate(), ValidationError);
    m.g = {1.0, 2.0};
    CHECK(m.g_at(1) == 2.0);
    m.occupied_modes = {5};
    CHECK_THROWS_AS(m.validate(), ValidationError);
    m.occupied_modes = {0};
    m.sites = 0;
    CHECK_THROWS_AS(m.validate(), ValidationError);
  }

  TEST_CASE("spinful mode index") {
    ModelConfig m;
    m.spinful = true;
    m.sites = 3;
    CHECK(m.modes() == 6);
    CHECK(m.mode_index(1, 0) == 2);
    CHECK(m.mode_index(1, 1) == 3);
  }

  TEST_CASE("single-particle spectrum of the dimer") {
    ModelConfig m;
    m.J = 1.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hopping_matrix(m));
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.5));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.5));
  }

  TEST_CASE("hubbard dimer ground energy") {
    // Half filling, S_z = 0: E0 = (U - sqrt(U^2 + 16 J^2)) / 2.
    for (double u : {0.0, 1.0, 4.0}) {
      ModelConfig m;
      m.spinful = true;
      m.U = u;
      m.J = 1.0;
      const GroundState gs = ground_state(m);
      CHECK(gs.energy == doctest::Approx(0.5 * (u - std::sqrt(u * u + 16.0))).epsilon(1e-12));
      CHECK(gs.gap > 0.0);
      const ComplexMatrix h = fermion_hamiltonian(m, fermion_layout(m));
      CHECK(((h * gs.vector) - gs.energy * gs.vector).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("site sign is an involution commuting with the density") {
    for (bool spinful : {false, true}) {
      ModelConfig m;
      m.spinful = spinful;
      const SpaceLayout layout = eph_layout(m);
      for (int s = 0; s < m.sites; ++s) {
        const ComplexMatrix a = site_sign(m, layout, s);
        const ComplexMatrix n = site_density(m, layout, s);
        CHECK(max_abs(a * a - identity(layout.total_dim())) < 1e-15);
        CHECK(max_abs(a * n - n * a) < 1e-15);
      }
    }
  }

  TEST_CASE("electron-phonon lindbladian layout and rates") {
    ModelConfig m;
    m.g = {2.0};
    m.n_b = 4;
    const LindbladSpec spec = build_eph_lindblad(m);
    CHECK(spec.dim() == 4u * 16u);
    CHECK(spec.hamiltonian_terms().size() == 2);
    REQUIRE(spec.jump_terms().size() == 2);
    CHECK(spec.jump_terms()[0].rate == doctest::Approx(1.0));
    CHECK(spec.all_jumps_hermitian());
    // Jump operator x_0 (2 n_0 - 1).
    const SpaceLayout layout = spec.layout();
    const ComplexMatrix expected = boson_position_at(layout, 0) * (2.0 * site_density(m, layout, 0) - identity(64));
    CHECK(max_abs(spec.jump_terms()[0].op - expected) < 1e-14);
  }

  TEST_CASE("fermion dephasing lindbladian") {
    ModelConfig m;
    m.g = {0.5};
    const LindbladSpec spec = build_fermion_dephasing(m);
    CHECK(spec.dim() == 4);
    CHECK(spec.jump_terms()[1].rate == doctest::Approx(0.25));
  }

  TEST_CASE("fock state and boson vacuum") {
    ModelConfig m;
    m.n_b = 3;
    m.occupied_modes = {1};
    const SpaceLayout layout = eph_layout(m);
    const DensityMatrix rho = fock_state(m, layout);
    CHECK(std::abs(rho.expectation(site_density(m, layout, 1)) - 1.0) < 1e-15);
    CHECK(std::abs(rho.expectation(site_density(m, layout, 0))) < 1e-15);
    const ComplexMatrix nb = embed(boson_annihilate(3).adjoint() * boson_annihilate(3), layout, 2);
    CHECK(std::abs(rho.expectation(nb)) < 1e-15);
  }
}
