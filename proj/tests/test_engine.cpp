// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hubsim/engine.hpp"
#include "hubsim/model.hpp"
#include "hubsim/rng.hpp"
#include "support.hpp"

using namespace hubsim;
using testsupport::as_vector;
using testsupport::circuit_unitary;

namespace {
// deterministic pseudo-random state for expectation cross-checks
QuantumState random_state(int n_qubits, std::uint64_t seed) {
  QuantumState s(n_qubits);
  Rng rng(seed);
  for (auto& a : s.amp)
    a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  renormalize(s);
  return s;
}
}  // namespace

TEST_CASE("basis states and bit order") {
  const auto s = basis_state(3, std::uint64_t(5));
  REQUIRE(s.amp[5] == cplx(1.0, 0.0));

  // string form is most significant qubit first
  const auto t = basis_state(2, "10");
  REQUIRE(t.amp[2] == cplx(1.0, 0.0));
  const auto u = basis_state(2, "01");
  REQUIRE(u.amp[1] == cplx(1.0, 0.0));

  REQUIRE_THROWS_AS(basis_state(2, std::uint64_t(4)), std::invalid_argument);
  REQUIRE_THROWS_AS(basis_state(2, "102"), std::invalid_argument);
}

TEST_CASE("single qubit gates act as their matrices") {
  const double th = 0.7321;
  const Gate gates[] = {gate::h(0),  gate::x(0),         gate::y(0),
                        gate::z(0),  gate::rx(0, th),    gate::ry(0, th),
                        gate::rz(0, th), gate::phase(0, th)};
  for (const auto& g : gates) {
    Circuit c(1);
    c.add(g);
    const auto u = circuit_unitary(c);
    for (std::uint64_t j = 0; j < 2; ++j) {
      auto s = basis_state(1, j);
      apply_in_place(s, g);
      for (std::uint64_t i = 0; i < 2; ++i)
        REQUIRE(std::abs(s.amp[i] - u(i, j)) < 1e-14);
    }
  }
}

TEST_CASE("cx and cz truth tables") {
  // cx(0,1): qubit 0 controls, qubit 1 flips
  auto s = basis_state(2, std::uint64_t(1));
  apply_in_place(s, gate::cx(0, 1));
  REQUIRE(s.amp[3] == cplx(1.0, 0.0));
  apply_in_place(s, gate::cx(0, 1));
  REQUIRE(s.amp[1] == cplx(1.0, 0.0));

  auto z = basis_state(2, std::uint64_t(3));
  apply_in_place(z, gate::cz(0, 1));
  REQUIRE(z.amp[3] == cplx(-1.0, 0.0));
  auto z2 = basis_state(2, std::uint64_t(2));
  apply_in_place(z2, gate::cz(0, 1));
  REQUIRE(z2.amp[2] == cplx(1.0, 0.0));
}

TEST_CASE("extra controls gate the action") {
  // x on qubit 0 controlled by qubit 2
  const auto cg = gate::with_controls(gate::x(0), {2});
  auto off = basis_state(3, std::uint64_t(0));
  apply_in_place(off, cg);
  REQUIRE(off.amp[0] == cplx(1.0, 0.0));
  auto on = basis_state(3, std::uint64_t(4));
  apply_in_place(on, cg);
  REQUIRE(on.amp[5] == cplx(1.0, 0.0));

  // controlled global phase marks only the control-on subspace
  const auto gp = gate::with_controls(gate::gphase(std::numbers::pi / 2), {1});
  auto sup = basis_state(2, std::uint64_t(0));
  apply_in_place(sup, gate::h(1));
  apply_in_place(sup, gp);
  REQUIRE(std::abs(sup.amp[0] - cplx(std::numbers::sqrt2 / 2, 0)) < 1e-14);
  REQUIRE(std::abs(sup.amp[2] - cplx(0, std::numbers::sqrt2 / 2)) < 1e-14);

  REQUIRE_THROWS_AS(apply(basis_state(2, std::uint64_t(0)),
                          gate::with_controls(gate::x(0), {0})),
                    std::invalid_argument);
}

TEST_CASE("random circuit agrees with dense reference") {
  const int n = 4;
  Circuit c(n);
  Rng rng(99);
  for (int step = 0; step < 60; ++step) {
    const int q = static_cast<int>(rng.below(n));
    int q2 = static_cast<int>(rng.below(n));
    while (q2 == q) q2 = static_cast<int>(rng.below(n));
    const double th = 4.0 * std::numbers::pi * (rng.uniform() - 0.5);
    switch (rng.below(10)) {
      case 0: c.add(gate::h(q)); break;
      case 1: c.add(gate::x(q)); break;
      case 2: c.add(gate::rx(q, th)); break;
      case 3: c.add(gate::ry(q, th)); break;
      case 4: c.add(gate::rz(q, th)); break;
      case 5: c.add(gate::phase(q, th)); break;
      case 6: c.add(gate::cx(q, q2)); break;
      case 7: c.add(gate::cz(q, q2)); break;
      case 8: c.add(gate::gphase(th)); break;
      default: c.add(gate::with_controls(gate::rz(q, th), {q2})); break;
    }
  }
  const auto u = circuit_unitary(c);
  auto s = random_state(n, 123);
  const Eigen::VectorXcd want = u * as_vector(s);
  run_in_place(s, c);
  const Eigen::VectorXcd got = as_vector(s);
  REQUIRE((want - got).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("expectation matches dense quadratic form") {
  const auto h = build_hubbard(chain(3), {1.0, 2.5, 0.0});
  const auto m = matrix_of(h);
  const auto s = random_state(h.n_qubits, 7);
  const auto v = as_vector(s);
  const double want = (v.adjoint() * m * v)(0).real();
  REQUIRE(expectation(s, h) == Catch::Approx(want).margin(1e-12));

  // pure Z sums use the diagonal fast path; check one explicitly
  PauliSum zz{2, {}};
  add_term(zz, "ZZ", 1.0);
  auto bell = basis_state(2, std::uint64_t(0));
  apply_in_place(bell, gate::h(0));
  apply_in_place(bell, gate::cx(0, 1));
  REQUIRE(expectation(bell, zz) == Catch::Approx(1.0));
}

TEST_CASE("probabilities, measurement, and collapse") {
  auto s = basis_state(2, std::uint64_t(0));
  apply_in_place(s, gate::h(0));
  REQUIRE(prob_of_bit(s, 0, 1) == Catch::Approx(0.5));
  REQUIRE(prob_of_bit(s, 1, 1) == Catch::Approx(0.0));

  Rng rng(5);
  int ones = 0;
  const int shots = 4000;
  for (int k = 0; k < shots; ++k) {
    auto copy = s;
    ones += measure_qubit_in_place(copy, 0, rng);
    REQUIRE(norm2(copy) == Catch::Approx(1.0));
    // after collapse the other outcome has zero weight
    REQUIRE((prob_of_bit(copy, 0, 1) == Catch::Approx(1.0) ||
             prob_of_bit(copy, 0, 1) == Catch::Approx(0.0)));
  }
  REQUIRE(std::abs(ones / double(shots) - 0.5) < 0.03);

  // Bell pair: the two qubits always agree
  apply_in_place(s, gate::cx(0, 1));
  for (int k = 0; k < 50; ++k) {
    auto copy = s;
    const int b0 = measure_qubit_in_place(copy, 0, rng);
    const int b1 = measure_qubit_in_place(copy, 1, rng);
    REQUIRE(b0 == b1);
  }
}

TEST_CASE("full register sampling is deterministic under a fixed seed") {
  const auto s = random_state(3, 42);
  Rng a(11), b(11);
  for (int k = 0; k < 20; ++k) REQUIRE(sample_index(s, a) == sample_index(s, b));
}

TEST_CASE("seed derivation separates streams") {
  REQUIRE(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
  REQUIRE(derive_seed(1, 2) != derive_seed(1, 3));
  REQUIRE(derive_seed(7, 0, 0, 0) == derive_seed(7, 0, 0, 0));
}
