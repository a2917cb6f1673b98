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

#include "dcube/models.hpp"
#include "dcube/stochastic.hpp"
#include "test_util.hpp"

using namespace dcube;

namespace {

LindbladSpec qubit_dephasing(double h = 0.5, double rate = 1.0) {
  LindbladSpec spec(SpaceLayout::qubits(1));
  spec.add_hamiltonian(h, pauli::X(), "X");
  spec.add_jump(rate, pauli::Z(), true, "Z");
  return spec;
}

// Superoperator of a linear map on d x d matrices, column stacked.
template <typename Map>
ComplexMatrix superoperator_of(int d, Map map) {
  ComplexMatrix s(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      s.col(j * d + i) = vec(map(e));
    }
  return s;
}

}  // namespace

TEST_SUITE("stochastic") {
  TEST_CASE("sign vectors hold only +-1") {
    Rng rng(3);
    const SignVector s = sample_signs(rng, 4, 3);
    CHECK(s.size() == 12);
    for (int v : s) CHECK((v == 1 || v == -1));
  }

  TEST_CASE("one step map examples") {
    LindbladSpec spec(SpaceLayout::qubits(1));
    spec.add_jump(1.0, pauli::Z());
    const ComplexMatrix plus = 0.5 * (identity(2) + pauli::X());
    CHECK(max_abs(one_step_map(spec, plus, 0.0) - plus) == 0.0);
    // Half of cos(2 sqrt(t)) on the off-diagonal.
    const ComplexMatrix out = one_step_map(spec, plus, 0.04);
    CHECK(std::abs(out(0, 1) - 0.5 * std::cos(0.4)) < 1e-14);

    const LindbladSpec two = qubit_dephasing();
    CHECK_THROWS_AS(one_step_map(build_unital(SpaceLayout::qubits(1), {}, {pauli::X(), pauli::Z()}), plus, 0.1),
                    ValidationError);
    LindbladSpec nonherm(SpaceLayout::qubits(1));
    nonherm.add_jump(1.0, pauli::lowering(), false);
    CHECK_THROWS_AS(one_step_map(nonherm, plus, 0.1), ValidationError);
  }

  TEST_CASE("one step map error is second order in t") {
    const LindbladSpec spec = qubit_dephasing();
    std::vector<double> ts{0.05, 0.1, 0.2, 0.4}, d;
    for (double t : ts) {
      const ComplexMatrix s = superoperator_of(2, [&](const ComplexMatrix& x) { return one_step_map(spec, x, t); });
      d.push_back(frobenius_distance(s, exact_channel(spec, t)));
      // Same channel as the exact average over both signs.
      CHECK(max_abs(s - averaged_channel_exact(spec, t, 1)) < 1e-14);
    }
    const double slope = test::loglog_slope(ts, d);
    CHECK(slope >= 1.7);
    CHECK(slope <= 2.3);
  }

  TEST_CASE("unitary circuit structure") {
    const LindbladSpec spec = qubit_dephasing();
    const double t = 0.3;
    const ComplexMatrix u = build_unitary_alg1(spec, t, 1, {1});
    const ComplexMatrix expected = HermitianExp(pauli::X())(-0.5 * t) * HermitianExp(pauli::Z())(std::sqrt(t));
    CHECK(max_abs(u - expected) < 1e-14);
    CHECK_THROWS_AS(build_unitary_alg1(spec, t, 0, {}), ValidationError);

    Rng rng(4);
    Rng signs(5);
    const LindbladSpec bigger =
        build_unital(SpaceLayout::qubits(2), {test::random_hermitian(4, rng)},
                     {test::random_hermitian(4, rng), test::random_hermitian(4, rng)});
    const SignVector s = sample_signs(signs, 3, 2);
    const ComplexMatrix us = build_unitary_alg1(bigger, 0.7, 3, s);
    CHECK(is_unitary(us));
    const ComplexVector psi = test::random_state(4, rng);
    CHECK((Alg1Circuit(bigger, 0.7, 3).apply(s, psi) - us * psi).cwiseAbs().maxCoeff() < 1e-13);

    // The +s and -s unitaries average to the one step map for R = 1.
    LindbladSpec single(SpaceLayout::qubits(1));
    single.add_hamiltonian(0.8, pauli::Y());
    single.add_jump(0.6, pauli::X());
    const ComplexMatrix rho = test::random_density(2, rng);
    const ComplexMatrix up = build_unitary_alg1(single, 0.2, 1, {1});
    const ComplexMatrix um = build_unitary_alg1(single, 0.2, 1, {-1});
    const ComplexMatrix avg = 0.5 * (up * rho * up.adjoint() + um * rho * um.adjoint());
    CHECK(max_abs(avg - one_step_map(single, rho, 0.2)) < 1e-14);
  }

  TEST_CASE("averaged channel is unital and converges in R") {
    const LindbladSpec spec = qubit_dephasing(0.9, 0.7);
    const double t = 0.5;
    const ComplexMatrix exact = exact_channel(spec, t);
    std::vector<double> rs, d;
    for (int r : {1, 2, 4, 8}) {
      const ComplexMatrix s = averaged_channel_exact(spec, t, r);
      CHECK(max_abs(apply_superoperator(s, identity(2)) - identity(2)) < 1e-12);
      rs.push_back(r);
      d.push_back(frobenius_distance(s, exact));
    }
    const double slope = test::loglog_slope(rs, d);
    CHECK(slope >= -1.4);
    CHECK(slope <= -0.6);
  }

  TEST_CASE("monte carlo estimate is unbiased") {
    const LindbladSpec spec = qubit_dephasing(0.9, 0.7);
    const double t = 0.6;
    const int r = 3;
    const ComplexMatrix rho0 = 0.5 * (identity(2) + pauli::X());
    const ComplexMatrix target = apply_superoperator(averaged_channel_exact(spec, t, r), rho0);
    const double exact = (target * pauli::X()).trace().real();
    Alg1Options opt;
    opt.steps = r;
    opt.samples = 100000;
    opt.seed = 99;
    const ChannelEstimate e = run_alg1(spec, rho0, pauli::X(), t, opt);
    CHECK(e.std_error > 0.0);
    CHECK(std::abs(e.mean - exact) < 4.0 * e.std_error);
  }

  TEST_CASE("dephasing-free spec has zero variance") {
    LindbladSpec spec(SpaceLayout::qubits(1));
    spec.add_hamiltonian(1.0, pauli::X());
    spec.add_jump(0.0, pauli::Z());
    const ComplexMatrix rho0 = 0.5 * (identity(2) + pauli::Z());
    Alg1Options opt;
    opt.steps = 2;
    opt.samples = 50;
    const ChannelEstimate e = run_alg1(spec, rho0, pauli::Z(), 0.8, opt);
    CHECK(e.std_error == 0.0);
    CHECK(e.mean == doctest::Approx(std::cos(1.6)).epsilon(1e-12));
  }

  TEST_CASE("seeded runs are reproducible across thread counts") {
    ModelConfig m;
    m.g = {2.0};
    m.n_b = 3;
    const LindbladSpec spec = build_eph_lindblad(m);
    const DensityMatrix rho0 = fock_state(m, spec.layout());
    const ComplexMatrix n0 = site_density(m, spec.layout(), 0);
    Alg1Options opt;
    opt.steps = 2;
    opt.samples = 64;
    opt.seed = 1234;
    opt.keep_samples = true;
    const ChannelEstimate a = run_alg1(spec, rho0.matrix(), n0, 0.5, opt);
    opt.threads = 3;
    const ChannelEstimate b = run_alg1(spec, rho0.matrix(), n0, 0.5, opt);
    CHECK(a.mean == b.mean);
    CHECK(a.samples == b.samples);
    opt.samples = 1;
    CHECK(run_alg1(spec, rho0.matrix(), n0, 0.5, opt).mean == run_alg1(spec, rho0.matrix(), n0, 0.5, opt).mean);
  }

  TEST_CASE("pure decomposition reconstructs the state") {
    Rng rng(12);
    const ComplexMatrix rho = test::random_density(4, rng);
    const PureDecomposition p = decompose_state(rho);
    ComplexMatrix back = ComplexMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < p.weights.size(); ++i) back += p.weights[i] * p.vectors[i] * p.vectors[i].adjoint();
    CHECK(max_abs(back - rho) < 1e-13);
    for (std::size_t i = 1; i < p.weights.size(); ++i) CHECK(p.weights[i] <= p.weights[i - 1]);
  }

  TEST_CASE("ancilla extension reproduces amplitude damping to second order") {
    const double gamma = 1.0;
    const AncillaExtension ext = ancilla_extend(std::sqrt(gamma) * pauli::lowering(), SpaceLayout::qubits(1));
    CHECK(ext.spec.jump_terms().size() == 1);
    const ComplexMatrix& big = ext.spec.jump_terms()[0].op;
    CHECK(max_abs(big - big.adjoint()) < 1e-14);

    LindbladSpec damping(SpaceLayout::qubits(1));
    damping.add_jump(gamma, pauli::lowering(), false);
    std::vector<double> ts{0.05, 0.1, 0.2, 0.4}, d;
    for (double t : ts) {
      const ComplexMatrix s = superoperator_of(
          2, [&](const ComplexMatrix& x) { return ext.reduce(one_step_map(ext.spec, ext.attach(x), t)); });
      d.push_back(frobenius_distance(s, exact_channel(damping, t)));
    }
    const double slope = test::loglog_slope(ts, d);
    CHECK(slope >= 1.7);
    CHECK(slope <= 2.3);
  }

  TEST_CASE("ancilla extension of a hermitian jump matches the unital path") {
    const double t = 0.01;
    const AncillaExtension ext = ancilla_extend(pauli::Z(), SpaceLayout::qubits(1));
    LindbladSpec direct(SpaceLayout::qubits(1));
    direct.add_jump(1.0, pauli::Z());
    const ComplexMatrix rho = 0.5 * (identity(2) + 0.6 * pauli::X() + 0.3 * pauli::Y());
    const ComplexMatrix a = ext.reduce(one_step_map(ext.spec, ext.attach(rho), t));
    const ComplexMatrix b = one_step_map(direct, rho, t);
    CHECK(max_abs(a - b) < 10.0 * t * t);
  }

  TEST_CASE("disorder averaging becomes dephasing") {
    const SpaceLayout q = SpaceLayout::qubits(1);
    const LindbladSpec sym = disorder_to_dephasing(q, pauli::Z(), pauli::X(), -1.0, 1.0, 0.6);
    CHECK(sym.hamiltonian_terms()[1].coefficient == 0.0);
    CHECK(sym.jump_terms()[0].rate == doctest::Approx(0.6 / 3.0));
    CHECK_THROWS_AS(disorder_to_dephasing(q, pauli::Z(), pauli::X(), 1.0, 1.0, 0.6), ValidationError);

    const ComplexMatrix rho = 0.5 * (identity(2) + pauli::Y());
    for (double t : {0.05, 0.1}) {
      const double width = 0.25 / std::sqrt(t);
      const double a = 0.2 - 0.5 * width, b = 0.2 + 0.5 * width;
      const LindbladSpec spec = disorder_to_dephasing(q, pauli::Z(), pauli::X(), a, b, t);
      Rng rng = stream(77, 0, static_cast<std::uint64_t>(t * 100));
      ComplexMatrix avg = ComplexMatrix::Zero(2, 2);
      const int draws = 100000;
      for (int i = 0; i < draws; ++i) {
        const double xi = a + (b - a) * rng.uniform();
        const ComplexMatrix u = HermitianExp(pauli::Z() + xi * pauli::X())(-t);
        avg += u * rho * u.adjoint();
      }
      avg /= double(draws);
      CHECK(trace_distance(avg, evolve_operator(spec, rho, t)) <= t * t);
    }
  }
}
