#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>
#include <string>
#include <vector>

#include "hubsim/lattice.hpp"
#include "hubsim/pauli.hpp"

namespace hubsim {

struct HubbardParams {
  double gamma0 = 1.0;   // nearest-neighbor hopping
  double u0 = 0.0;       // on-site repulsion, must be >= 0
  double epsilon = 0.0;  // uniform on-site energy
};

inline void validate(const HubbardParams& p) {
  if (p.u0 < 0.0) throw std::invalid_argument("params: u0 must be >= 0");
}

// Spin-orbital convention used across the codebase: modes [0, N) carry spin
// up, modes [N, 2N) spin down, with mode index == qubit index. Hopping never
// mixes the blocks, so every parity string stays inside one spin sector.

// -gamma0/2 (X_i X_j + Y_i Y_j) Z_{i+1} ... Z_{j-1} for modes i < j.
inline PauliSum jw_hopping(int i, int j, int n_spin_orbitals, double gamma0) {
  if (i >= j || i < 0 || j >= n_spin_orbitals)
    throw std::invalid_argument("jw_hopping: need 0 <= i < j < n");
  PauliSum h{n_spin_orbitals, {}};
  std::string xs(n_spin_orbitals, 'I');
  std::string ys(n_spin_orbitals, 'I');
  for (int q = i + 1; q < j; ++q) { xs[q] = 'Z'; ys[q] = 'Z'; }
  xs[i] = xs[j] = 'X';
  ys[i] = ys[j] = 'Y';
  add_term(h, xs, -0.5 * gamma0);
  add_term(h, ys, -0.5 * gamma0);
  return h;
}

// Occupation of one mode: (I - Z_i) / 2.
inline PauliSum jw_number(int i, int n_spin_orbitals) {
  if (i < 0 || i >= n_spin_orbitals)
    throw std::invalid_argument("jw_number: index out of range");
  PauliSum h{n_spin_orbitals, {}};
  std::string id(n_spin_orbitals, 'I');
  std::string z = id;
  z[i] = 'Z';
  add_term(h, id, 0.5);
  add_term(h, z, -0.5);
  return h;
}

// u0 n_i n_j = u0/4 (II - Z_i - Z_j + Z_i Z_j). The identity piece is kept:
// it turns into a relative phase once the evolution is controlled.
inline PauliSum jw_interaction(int i, int j, double u0, int n_spin_orbitals) {
  if (i == j) throw std::invalid_argument("jw_interaction: i == j");
  if (i < 0 || j < 0 || i >= n_spin_orbitals || j >= n_spin_orbitals)
    throw std::invalid_argument("jw_interaction: index out of range");
  PauliSum h{n_spin_orbitals, {}};
  std::string id(n_spin_orbitals, 'I');
  std::string zi = id, zj = id, zz = id;
  zi[i] = 'Z';
  zj[j] = 'Z';
  zz[i] = zz[j] = 'Z';
  add_term(h, id, 0.25 * u0);
  add_term(h, zi, -0.25 * u0);
  add_term(h, zj, -0.25 * u0);
  add_term(h, zz, 0.25 * u0);
  return h;
}

// Full qubit Hamiltonian on 2N qubits, terms merged, zeros dropped.
inline PauliSum build_hubbard(const Lattice& lat, const HubbardParams& p) {
  validate(lat);
  validate(p);
  const int n = lat.n_sites;
  const int nq = 2 * n;
  PauliSum h{nq, {}};
  for (auto [i, j] : lat.edges) {
    h = h + jw_hopping(i, j, nq, p.gamma0);          // spin up
    h = h + jw_hopping(i + n, j + n, nq, p.gamma0);  // spin down
  }
  if (p.epsilon != 0.0)
    for (int q = 0; q < nq; ++q) h = h + scaled(jw_number(q, nq), p.epsilon);
  if (p.u0 != 0.0)
    for (int s = 0; s < n; ++s) h = h + jw_interaction(s, s + n, p.u0, nq);
  return merged(h);
}

// Structural view consumed by the circuit builders: bond list in fixed
// (lexicographic) order plus the couplings.
struct HubbardTerms {
  int n_sites = 0;
  std::vector<std::pair<int, int>> bonds;
  HubbardParams params;
};

inline HubbardTerms hubbard_terms(const Lattice& lat, const HubbardParams& p) {
  validate(lat);
  validate(p);
  return HubbardTerms{lat.n_sites, lat.edges, p};
}

}  // namespace hubsim
