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

#include "dcube/iqp.hpp"
#include "dcube/lindblad.hpp"

using namespace dcube;

namespace {

IqpSpec make_spec(int L, int N, std::vector<double> g, double t) {
  IqpSpec s;
  s.L = L;
  s.N = N;
  s.g = std::move(g);
  s.omega = {1.0};
  s.t = t;
  return s;
}

double total(const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

}  // namespace

TEST_SUITE("iqp") {
  TEST_CASE("spec validation and indexing") {
    IqpSpec s = make_spec(2, 3, {1.0, 2.0}, 0.5);
    CHECK_NOTHROW(s.validate());
    CHECK(s.bits() == 6);
    CHECK(s.flat(2, 1) == 5);
    CHECK(s.g_at(1) == 2.0);
    s.g = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = make_spec(1, 0, {1.0}, 0.5);
    CHECK_THROWS_AS(s.validate(), ValidationError);
    const auto signs = signs_from_index(0b101, 3);
    CHECK(signs == std::vector<int>{-1, 1, -1});
  }

  TEST_CASE("jump vector norm") {
    // |a|^2 = N (g/2)^2 / (2N) = g^2 / 8.
    const IqpSpec s = make_spec(1, 5, {3.0}, 0.7);
    CHECK(jump_ell_vector(s, 0).squaredNorm() == doctest::Approx(9.0 / 8.0));
    const std::vector<int> plus(5, 1);
    CHECK(lambda_eigenvalue(s, plus, plus) == Complex(0.0));
  }

  TEST_CASE("trivial distributions are a delta on all zeros") {
    for (const IqpSpec& s : {make_spec(2, 2, {0.0}, 1.0), make_spec(1, 3, {2.0}, 0.0)}) {
      const auto p = gamma_exact(s).probs;
      CHECK(p[0] == doctest::Approx(1.0));
      CHECK(total(p) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("exact distribution matches a dense X-basis measurement") {
    const IqpSpec s = make_spec(2, 2, {1.5, 2.5}, 0.9);
    const int n = s.bits();
    const LindbladSpec spec = build_iqp_lindblad(s, true);
    const auto d = static_cast<Eigen::Index>(1) << n;
    const ComplexVector plus = ComplexVector::Constant(d, 1.0 / std::sqrt(double(d)));
    const ComplexMatrix rho = evolve_operator(spec, plus * plus.adjoint(), s.t);
    ComplexMatrix h = identity(1);
    for (int f = 0; f < n; ++f) h = kron(h, pauli::hadamard());
    const ComplexMatrix rx = h * rho * h;

    const auto p = gamma_exact(s).probs;
    CHECK(total(p) == doctest::Approx(1.0).epsilon(1e-12));
    double worst = 0.0;
    for (Eigen::Index b = 0; b < d; ++b) {
      std::size_t little = 0;
      for (int f = 0; f < n; ++f)
        if ((b >> (n - 1 - f)) & 1) little |= std::size_t{1} << f;
      worst = std::max(worst, std::abs(rx(b, b).real() - p[little]));
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("the ZZ hamiltonian does not change the distribution's support") {
    const IqpSpec s = make_spec(1, 3, {2.0}, 1.0);
    const auto col = gamma_column_exact(s, 0);
    CHECK(col.size() == 8);
    CHECK(total(col) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_column_exact(s, 1), ValidationError);
  }

  TEST_CASE("exact sampler frequencies") {
    const IqpSpec s = make_spec(2, 2, {2.0, 3.0}, 1.0);
    const auto p = gamma_exact(s).probs;
    const IqpExactSampler sampler(s);
    Rng rng(41);
    const int n = 30000;
    std::vector<int> counts(p.size(), 0);
    for (int i = 0; i < n; ++i) ++counts[sampler.sample(rng).index()];
    for (std::size_t i = 0; i < p.size(); ++i)
      CHECK(std::abs(counts[i] / double(n) - p[i]) <= 4.0 * std::sqrt(p[i] * (1.0 - p[i]) / n) + 1e-12);
  }

  TEST_CASE("circuit sampler approaches the exact distribution") {
    const IqpSpec s = make_spec(1, 2, {3.0}, 1.0);
    const auto p = gamma_exact(s).probs;
    CircuitOptions opt;
    opt.exact_rotation = true;
    opt.n_eta = 40;
    const IqpCircuitSampler sampler(s, opt);
    Rng rng(42);
    const int n = 20000;
    std::vector<int> counts(p.size(), 0);
    for (int i = 0; i < n; ++i) ++counts[sampler.sample(rng).index()];
    for (std::size_t i = 0; i < p.size(); ++i)
      CHECK(std::abs(counts[i] / double(n) - p[i]) <= 4.0 * std::sqrt(p[i] * (1.0 - p[i]) / n) + 5e-3);
  }

  TEST_CASE("default product-formula depth") {
    CHECK(default_n_rho(1) == 1);
    CHECK(default_n_rho(16) == 2);
    CHECK(default_n_rho(17) == 3);
  }

  TEST_CASE("anticoncentration of a uniform distribution") {
    const std::vector<double> u(16, 1.0 / 16.0);
    const AnticoncentrationReport r = anticoncentration_report(u);
    CHECK(r.max_probability == doctest::Approx(1.0 / 16.0));
    CHECK(r.collision_probability == doctest::Approx(1.0 / 16.0));
    CHECK(r.entropy_bits == doctest::Approx(4.0));
    CHECK_THROWS_AS(anticoncentration_report({0.5, -0.1}), ValidationError);
  }
}
