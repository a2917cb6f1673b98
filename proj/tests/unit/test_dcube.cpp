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
#include <numeric>

#include "dcube/dcube.hpp"
#include "dcube/stochastic.hpp"
#include "test_util.hpp"

using namespace dcube;

namespace {

DcubeConfig qubit_pair(double t, int steps) {
  DcubeConfig cfg;
  cfg.layout_a = SpaceLayout::qubits(1);
  cfg.layout_b = SpaceLayout::qubits(1);
  cfg.h_a = ComplexMatrix::Zero(2, 2);
  cfg.h_b = ComplexMatrix::Zero(2, 2);
  cfg.a_ops = {pauli::Z()};
  cfg.b_ops = {pauli::Z()};
  cfg.t = t;
  cfg.steps = steps;
  return cfg;
}

const ComplexMatrix kUp = 0.5 * (identity(2) + pauli::Z());

}  // namespace

TEST_SUITE("dcube") {
  TEST_CASE("bitstring indexing is little-endian") {
    GammaBitstring g(2, 3);
    g.bits[1] = 1;
    g.bits[4] = 1;
    CHECK(g.index() == ((1u << 1) | (1u << 4)));
    CHECK(g.at(1, 1) == 1);
    CHECK(g.to_string() == "010010");
    const GammaBitstring back = GammaBitstring::from_index(g.index(), 2, 3);
    CHECK(back.bits == g.bits);
  }

  TEST_CASE("validation") {
    DcubeConfig cfg = qubit_pair(0.3, 1);
    CHECK_NOTHROW(cfg.validate());
    cfg.a_ops = {0.5 * pauli::Z()};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.a_ops = {pauli::Z(), pauli::X()};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = qubit_pair(-0.1, 1);
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = qubit_pair(0.1, 0);
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
  }

  TEST_CASE("single ancilla rotates by sqrt(t)") {
    const double t = 0.3;
    const DcubeConfig cfg = qubit_pair(t, 1);
    const ComplexMatrix v = build_V(cfg);
    CHECK(max_abs(v - HermitianExp(kron(pauli::Z(), pauli::Z()))(std::sqrt(t))) < 1e-14);
    const auto p = gamma_probabilities(cfg, kUp);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(std::pow(std::cos(std::sqrt(t)), 2)).epsilon(1e-13));
    CHECK(p[1] == doctest::Approx(std::pow(std::sin(std::sqrt(t)), 2)).epsilon(1e-13));
  }

  TEST_CASE("no coupling or no time leaves the ancillas untouched") {
    DcubeConfig cfg = qubit_pair(0.7, 2);
    cfg.b_ops = {ComplexMatrix::Zero(2, 2)};
    cfg.h_a = 0.8 * pauli::X();
    Rng rng(5);
    const ComplexMatrix ra = test::random_density(2, rng);
    const auto p = gamma_probabilities(cfg, kUp);
    CHECK(p[0] == doctest::Approx(1.0));
    const ComplexMatrix u = HermitianExp(pauli::X())(-0.8 * 0.7);
    CHECK(max_abs(exact_decoupled_channel(cfg, ra, kUp) - u * ra * u.adjoint()) < 1e-13);

    DcubeRunOptions opt;
    opt.samples = 40;
    const ChannelEstimate e = run_dcube(cfg, ra, kUp, pauli::Z(), opt);
    CHECK(e.std_error == 0.0);
    CHECK(e.mean == doctest::Approx((u * ra * u.adjoint() * pauli::Z()).trace().real()).epsilon(1e-12));

    cfg = qubit_pair(0.0, 3);
    CHECK(gamma_probabilities(cfg, kUp)[0] == doctest::Approx(1.0));
    CHECK(max_abs(exact_decoupled_channel(cfg, ra, kUp) - ra) < 1e-14);
  }

  TEST_CASE("probabilities are a distribution for mixed environments") {
    DcubeConfig cfg = qubit_pair(0.9, 2);
    cfg.h_b = 0.6 * pauli::X();
    cfg.b_ops = {0.7 * pauli::Y()};
    Rng rng(6);
    const auto p = gamma_probabilities(cfg, test::random_density(2, rng));
    CHECK(p.size() == 4);
    for (double x : p) CHECK(x >= -1e-15);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("sampler frequencies match the exact probabilities") {
    DcubeConfig cfg = qubit_pair(0.8, 2);
    cfg.h_b = 0.5 * pauli::X();
    cfg.b_ops = {0.9 * pauli::Z()};
    Rng rng(7);
    const ComplexMatrix rb = test::random_density(2, rng);
    const auto p = gamma_probabilities(cfg, rb);
    const GammaSampler sampler(cfg, rb);
    std::vector<int> counts(p.size(), 0);
    const int n = 40000;
    Rng draws(8);
    for (int i = 0; i < n; ++i) ++counts[sampler.sample(draws).index()];
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double f = counts[i] / double(n);
      CHECK(std::abs(f - p[i]) <= 4.0 * std::sqrt(p[i] * (1.0 - p[i]) / n) + 1e-12);
    }
  }

  TEST_CASE("trajectory unitaries") {
    DcubeConfig cfg = qubit_pair(0.4, 2);
    GammaBitstring none(2, 1);
    CHECK(max_abs(build_U_gamma(cfg, none) - identity(2)) < 1e-15);
    GammaBitstring one(2, 1);
    one.bits[1] = 1;
    CHECK(max_abs(build_U_gamma(cfg, one) - pauli::Z()) < 1e-15);

    cfg.h_a = pauli::X();
    cfg.a_ops = {pauli::Z()};
    const ComplexMatrix step = HermitianExp(pauli::X())(-0.2);
    GammaBitstring first(2, 1);
    first.bits[0] = 1;
    // Step 0 acts first: e^{-i tau H} A applied before the second step.
    CHECK(max_abs(build_U_gamma(cfg, first) - step * step * pauli::Z()) < 1e-14);
    CHECK(is_unitary(build_U_gamma(cfg, first)));
  }

  TEST_CASE("decoupled channel equals the traced stochastic average") {
    const double t = 0.6;
    Rng rng(9);
    for (int steps : {1, 2, 3}) {
      DcubeConfig cfg;
      cfg.layout_a = SpaceLayout::qubits(1);
      cfg.layout_b = SpaceLayout::qubits(1);
      cfg.h_a = 0.7 * pauli::X();
      cfg.h_b = 0.9 * pauli::Z();
      cfg.a_ops = {pauli::Z(), pauli::Y()};
      cfg.b_ops = {0.6 * pauli::X(), 0.4 * pauli::Z()};
      cfg.t = t;
      cfg.steps = steps;
      const ComplexMatrix ra = test::random_density(2, rng), rb = test::random_density(2, rng);

      const SpaceLayout joint = SpaceLayout::qubits(2);
      LindbladSpec full(joint);
      full.add_hamiltonian(1.0, kron(cfg.h_a, identity(2)));
      full.add_hamiltonian(1.0, kron(identity(2), cfg.h_b));
      for (int k = 0; k < 2; ++k) full.add_jump(1.0, kron(cfg.a_ops[k], cfg.b_ops[k]));
      const ComplexMatrix avg = apply_superoperator(averaged_channel_exact(full, t, steps), kron(ra, rb));
      const std::size_t keep[] = {0};
      const ComplexMatrix lhs = exact_decoupled_channel(cfg, ra, rb);
      CHECK(max_abs(lhs - partial_trace(avg, joint, keep)) < 1e-12);
      CHECK(std::abs(lhs.trace() - 1.0) < 1e-13);
      CHECK(is_hermitian(lhs, 1e-13));
    }
  }

  TEST_CASE("monte carlo estimate is unbiased and reproducible") {
    DcubeConfig cfg = qubit_pair(1.1, 2);
    cfg.h_a = 0.5 * pauli::X();
    cfg.h_b = 0.3 * pauli::X();
    cfg.b_ops = {0.8 * pauli::Z()};
    const ComplexMatrix ra = kUp;
    const ComplexMatrix exact = exact_decoupled_channel(cfg, ra, kUp);
    DcubeRunOptions opt;
    opt.samples = 20000;
    opt.seed = 31;
    const ChannelEstimate e = run_dcube(cfg, ra, kUp, pauli::Z(), opt);
    CHECK(std::abs(e.mean - (exact * pauli::Z()).trace().real()) < 4.0 * e.std_error);
    opt.threads = 3;
    CHECK(run_dcube(cfg, ra, kUp, pauli::Z(), opt).mean == e.mean);
  }
}
