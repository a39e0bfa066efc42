// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>
#include <map>

#include "hubsim/lattice.hpp"
#include "hubsim/model.hpp"
#include "hubsim/pauli.hpp"
#include "support.hpp"

using namespace hubsim;

namespace {
std::map<std::string, cplx> term_map(const PauliSum& h) {
  std::map<std::string, cplx> m;
  for (const auto& t : h.terms) m[t.ops] += t.coeff;
  return m;
}
}  // namespace

TEST_CASE("lattice constructors and validation") {
  const auto hex = hexagon6();
  REQUIRE(hex.n_sites == 6);
  REQUIRE(hex.edges.size() == 6);
  REQUIRE(std::is_sorted(hex.edges.begin(), hex.edges.end()));
  REQUIRE(is_canonical_cycle(hex));

  const auto c3 = chain(3);
  REQUIRE(c3.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  REQUIRE_FALSE(is_canonical_cycle(c3));

  const auto r3 = ring(3);
  REQUIRE(r3.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  REQUIRE(is_canonical_cycle(r3));
  REQUIRE(r3.name == "ring:3");

  REQUIRE(lattice_from_name("hexagon6").name == "hexagon6");
  REQUIRE(lattice_from_name("chain:4").n_sites == 4);
  REQUIRE(lattice_from_name("ring:5").edges.size() == 5);
  REQUIRE_THROWS_AS(lattice_from_name("torus:2"), std::invalid_argument);
  REQUIRE_THROWS_AS(ring(2), std::invalid_argument);

  Lattice bad{2, {{0, 0}}, "bad"};
  REQUIRE_THROWS_AS(validate(bad), std::invalid_argument);
  Lattice dup{3, {{0, 1}, {1, 0}}, "dup"};
  REQUIRE_THROWS_AS(validate(dup), std::invalid_argument);
}

TEST_CASE("number operator on two qubits") {
  const auto h = merged(jw_number(0, 2));
  auto m = term_map(h);
  REQUIRE(m.size() == 2);
  REQUIRE(m.at("II").real() == Catch::Approx(0.5));
  REQUIRE(m.at("ZI").real() == Catch::Approx(-0.5));
}

TEST_CASE("hopping term with and without parity string") {
  const auto adj = term_map(jw_hopping(0, 1, 2, 1.0));
  REQUIRE(adj.at("XX").real() == Catch::Approx(-0.5));
  REQUIRE(adj.at("YY").real() == Catch::Approx(-0.5));

  // non-adjacent modes carry Z on everything strictly between
  const auto far = term_map(jw_hopping(0, 3, 4, 2.0));
  REQUIRE(far.at("XZZX").real() == Catch::Approx(-1.0));
  REQUIRE(far.at("YZZY").real() == Catch::Approx(-1.0));

  REQUIRE_THROWS_AS(jw_hopping(2, 1, 4, 1.0), std::invalid_argument);
}

TEST_CASE("interaction keeps its identity component") {
  const auto m = term_map(jw_interaction(0, 1, 2.0, 2));
  REQUIRE(m.at("II").real() == Catch::Approx(0.5));
  REQUIRE(m.at("ZI").real() == Catch::Approx(-0.5));
  REQUIRE(m.at("IZ").real() == Catch::Approx(-0.5));
  REQUIRE(m.at("ZZ").real() == Catch::Approx(0.5));
}

TEST_CASE("full hamiltonian matches the fermionic reference") {
  struct Case { Lattice lat; HubbardParams p; };
  const Case cases[] = {
      {chain(2), {1.0, 3.0, 0.0}},
      {chain(3), {1.0, 1.5, 0.0}},
      {ring(3), {1.0, 3.0, 0.0}},
      {chain(3), {0.7, 2.0, 0.3}},
  };
  for (const auto& [lat, p] : cases) {
    const auto h = build_hubbard(lat, p);
    REQUIRE(h.n_qubits == 2 * lat.n_sites);
    const auto diff = matrix_of(h) - testsupport::fock_hubbard(lat, p);
    REQUIRE(diff.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("two-site dimer ground energy") {
  // half filling on the dimer: E0 = (u - sqrt(u^2 + 16)) / 2 at gamma0 = 1
  const auto h = build_hubbard(chain(2), {1.0, 3.0, 0.0});
  const double e0 = testsupport::ground_energy_dense(matrix_of(h));
  REQUIRE(e0 == Catch::Approx(-1.0).margin(1e-10));
}

TEST_CASE("norm bookkeeping on the hexagon") {
  const auto h = build_hubbard(hexagon6(), {1.0, 3.0, 0.0});
  // 12 hops x 2 strings x 0.5 plus 6 sites x 3 strings x 0.75
  REQUIRE(one_norm(h) == Catch::Approx(25.5));
  REQUIRE(identity_coefficient(h) == Catch::Approx(4.5));

  const auto free = build_hubbard(hexagon6(), {1.0, 0.0, 0.0});
  REQUIRE(one_norm(free) == Catch::Approx(12.0));
  REQUIRE(identity_coefficient(free) == Catch::Approx(0.0));
}

TEST_CASE("merged combines and prunes") {
  PauliSum h{2, {}};
  add_term(h, "XI", 0.5);
  add_term(h, "XI", 0.25);
  add_term(h, "ZZ", 1e-14);
  const auto m = merged(h);
  REQUIRE(m.terms.size() == 1);
  REQUIRE(m.terms[0].ops == "XI");
  REQUIRE(m.terms[0].coeff.real() == Catch::Approx(0.75));
}

TEST_CASE("parameter validation") {
  REQUIRE_THROWS_AS(validate(HubbardParams{1.0, -0.5, 0.0}),
                    std::invalid_argument);
  REQUIRE_NOTHROW(validate(HubbardParams{1.0, 0.0, 0.0}));
}
