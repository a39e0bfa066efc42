#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hubsim/circuits.hpp"
#include "hubsim/engine.hpp"
#include "hubsim/lattice.hpp"
#include "hubsim/pauli.hpp"

namespace hubsim {

// Single-particle eigenbasis of the hopping matrix. energies ascend;
// orbitals holds one orbital per column.
struct OrbitalSet {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd orbitals;
};

struct Occupation {
  int n_up = 0;
  int n_down = 0;
  std::vector<int> orbital_choice_up;
  std::vector<int> orbital_choice_down;
};

// For canonical cycles the degenerate +-k levels are kept in their complex
// Bloch gauge instead of the arbitrary real combinations a dense solver
// returns. Averages over a partially filled shell then agree with the
// exact-diagonalization ground manifold, which real gauges do not achieve.
inline OrbitalSet tight_binding_orbitals(const Lattice& lat, double gamma0) {
  validate(lat);
  const int n = lat.n_sites;
  OrbitalSet out;
  if (is_canonical_cycle(lat) && gamma0 > 0.0) {
    std::vector<int> ks(n);
    for (int k = 0; k < n; ++k) ks[k] = k;
    const auto energy = [&](int k) {
      return -2.0 * gamma0 * std::cos(2.0 * std::numbers::pi * k / n);
    };
    std::sort(ks.begin(), ks.end(), [&](int a, int b) {
      const double ea = energy(a), eb = energy(b);
      if (std::abs(ea - eb) > 1e-12) return ea < eb;
      const int ma = std::min(a, n - a), mb = std::min(b, n - b);
      if (ma != mb) return ma < mb;
      return a < b;
    });
    out.energies.resize(n);
    out.orbitals.resize(n, n);
    const double norm = 1.0 / std::sqrt(double(n));
    for (int col = 0; col < n; ++col) {
      const int k = ks[col];
      out.energies(col) = energy(k);
      for (int j = 0; j < n; ++j)
        out.orbitals(j, col) =
            std::polar(norm, 2.0 * std::numbers::pi * k * j / n);
    }
    return out;
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : lat.edges) h(i, j) = h(j, i) = -gamma0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  out.energies = es.eigenvalues();
  out.orbitals = es.eigenvectors().cast<cplx>();
  // fix the solver's arbitrary column gauge: largest component real positive
  for (int col = 0; col < n; ++col) {
    int lead = 0;
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = std::abs(out.orbitals(j, col));
      if (a > best + 1e-12) {
        best = a;
        lead = j;
      }
    }
    const cplx z = out.orbitals(lead, col);
    if (std::abs(z) > 0.0) out.orbitals.col(col) *= std::conj(z) / std::abs(z);
  }
  return out;
}

namespace detail {
inline std::vector<std::vector<int>> combinations(const std::vector<int>& pool,
                                                  int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(k);
  const int n = static_cast<int>(pool.size());
  if (k == 0) return {{}};
  if (k > n) return out;
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
    out.push_back(std::move(pick));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// All ways to place n_el electrons in the lowest orbitals when the Fermi
// level cuts a degenerate shell; the complete lower shells stay fixed.
inline std::vector<std::vector<int>> spin_shell_choices(
    const Eigen::VectorXd& energies, int n_el) {
  if (n_el == 0) return {{}};
  const int n = static_cast<int>(energies.size());
  const double e_f = energies(n_el - 1);
  const double tol = 1e-8;
  int shell_begin = n_el - 1, shell_end = n_el - 1;
  while (shell_begin > 0 && std::abs(energies(shell_begin - 1) - e_f) <= tol)
    --shell_begin;
  while (shell_end + 1 < n && std::abs(energies(shell_end + 1) - e_f) <= tol)
    ++shell_end;
  std::vector<int> fixed;
  for (int i = 0; i < shell_begin; ++i) fixed.push_back(i);
  std::vector<int> shell;
  for (int i = shell_begin; i <= shell_end; ++i) shell.push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& pick : combinations(shell, n_el - shell_begin)) {
    std::vector<int> full = fixed;
    full.insert(full.end(), pick.begin(), pick.end());
    out.push_back(std::move(full));
  }
  return out;
}
}  // namespace detail

inline void validate(const Occupation& occ, int n_sites) {
  if (occ.n_up < 0 || occ.n_up > n_sites || occ.n_down < 0 ||
      occ.n_down > n_sites)
    throw std::invalid_argument("occupation: counts out of range");
  if (static_cast<int>(occ.orbital_choice_up.size()) != occ.n_up ||
      static_cast<int>(occ.orbital_choice_down.size()) != occ.n_down)
    throw std::invalid_argument("occupation: choice length mismatch");
  for (const auto* choice : {&occ.orbital_choice_up, &occ.orbital_choice_down})
    for (std::size_t a = 0; a < choice->size(); ++a) {
      if ((*choice)[a] < 0 || (*choice)[a] >= n_sites)
        throw std::invalid_argument("occupation: orbital index out of range");
      for (std::size_t b = a + 1; b < choice->size(); ++b)
        if ((*choice)[a] == (*choice)[b])
          throw std::invalid_argument("occupation: repeated orbital");
    }
}

// Pairwise filling of the lowest orbitals; an odd electron goes to spin up;
// degenerate shells are entered lowest index first.
inline Occupation default_occupation(const OrbitalSet& orb, int n_occ) {
  const int n = static_cast<int>(orb.energies.size());
  if (n_occ <= 0 || n_occ > 2 * n)
    throw std::invalid_argument("occupation: n_occ out of range");
  Occupation occ;
  occ.n_up = (n_occ + 1) / 2;
  occ.n_down = n_occ / 2;
  for (int i = 0; i < occ.n_up; ++i) occ.orbital_choice_up.push_back(i);
  for (int i = 0; i < occ.n_down; ++i) occ.orbital_choice_down.push_back(i);
  validate(occ, n);
  return occ;
}

// Every deterministic filling consistent with default_occupation's electron
// counts when the Fermi level cuts a degenerate shell. The first entry is
// the default choice.
inline std::vector<Occupation> shell_choices(const OrbitalSet& orb, int n_occ) {
  const int n = static_cast<int>(orb.energies.size());
  if (n_occ <= 0 || n_occ > 2 * n)
    throw std::invalid_argument("occupation: n_occ out of range");
  const int n_up = (n_occ + 1) / 2, n_down = n_occ / 2;
  const auto ups = detail::spin_shell_choices(orb.energies, n_up);
  const auto downs = detail::spin_shell_choices(orb.energies, n_down);
  std::vector<Occupation> out;
  for (const auto& u : ups)
    for (const auto& d : downs) {
      Occupation occ{n_up, n_down, u, d};
      validate(occ, n);
      out.push_back(std::move(occ));
    }
  return out;
}

namespace detail {

// Determinant amplitudes: coefficient of the ascending-mode basis mask is
// the minor of the chosen orbital columns at the occupied rows.
inline cplx slater_minor(const Eigen::MatrixXcd& orbitals,
                         const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return cplx(1.0, 0.0);
  Eigen::MatrixXcd m(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m(a, b) = orbitals(rows[a], cols[b]);
  return m.determinant();
}

inline std::vector<std::vector<int>> masks_by_count(int n_bits, int k) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 0; m < (1u << n_bits); ++m) {
    if (popcount64(m) != k) continue;
    std::vector<int> bits;
    for (int q = 0; q < n_bits; ++q)
      if ((m >> q) & 1) bits.push_back(q);
    out.push_back(std::move(bits));
  }
  return out;
}

}  // namespace detail

// Reference path: the Slater determinant assembled directly from orbital
// minors, exact to machine precision.
inline QuantumState prepare_slater(const Occupation& occ, const OrbitalSet& orb) {
  const int n = static_cast<int>(orb.energies.size());
  validate(occ, n);
  QuantumState s(2 * n);
  s.amp[0] = 0.0;
  const auto up_masks = detail::masks_by_count(n, occ.n_up);
  const auto down_masks = detail::masks_by_count(n, occ.n_down);
  for (const auto& ub : up_masks) {
    std::uint64_t u = 0;
    for (int q : ub) u |= std::uint64_t(1) << q;
    const cplx det_u = detail::slater_minor(orb.orbitals, ub, occ.orbital_choice_up);
    if (std::abs(det_u) < 1e-16) continue;
    for (const auto& db : down_masks) {
      std::uint64_t d = 0;
      for (int q : db) d |= std::uint64_t(1) << q;
      const cplx det_d =
          detail::slater_minor(orb.orbitals, db, occ.orbital_choice_down);
      s.amp[u | (d << n)] = det_u * det_d;
    }
  }
  return s;
}

namespace detail {

struct EliminationOp {
  bool is_phase = false;
  int row = 0;      // phase acts on row; rotation mixes (row-1, row)
  double angle = 0.0;
};

// Column-by-column elimination of a unitary by row phases and real adjacent
// Givens rotations, bottom row upward. Leaves w diagonal with unit-modulus
// entries and returns the operations in application order.
inline std::vector<EliminationOp> eliminate_unitary(Eigen::MatrixXcd& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<EliminationOp> ops;
  for (int c = 0; c + 1 < n; ++c) {
    for (int r = n - 1; r > c; --r) {
      const cplx x = w(r - 1, c), y = w(r, c);
      if (std::abs(y) < 1e-14) continue;
      const double phi = std::arg(x) - std::arg(y);
      w.row(r) *= std::polar(1.0, phi);
      ops.push_back({true, r, phi});
      const double th = std::atan2(std::abs(y), std::abs(x));
      const Eigen::RowVectorXcd top = w.row(r - 1), bot = w.row(r);
      w.row(r - 1) = std::cos(th) * top + std::sin(th) * bot;
      w.row(r) = -std::sin(th) * top + std::cos(th) * bot;
      ops.push_back({false, r, th});
    }
  }
  return ops;
}

// Appends the fermionic basis rotation U(E(theta)) on adjacent modes
// (a, a+1): the commuting pair exp(+i(theta/2) X_a Y_{a+1}) followed by
// exp(-i(theta/2) Y_a X_{a+1}). It preserves both the vacuum and the doubly
// occupied pair, so U(Q)|0> = |0> holds gate by gate.
inline void append_mode_rotation(Circuit& c, int a, double theta) {
  append_pauli_rotation(c, {a, a + 1}, "XY", -theta, {});
  append_pauli_rotation(c, {a, a + 1}, "YX", theta, {});
}

// Circuit for U(Q) acting on one spin block at qubit offset `off`, where Q
// was reduced as ops * Q = D. U(Q) = U(op_1^dag) ... U(op_K^dag) U(D).
inline void append_block_rotation(Circuit& c, int off,
                                  const Eigen::MatrixXcd& diag,
                                  const std::vector<EliminationOp>& ops) {
  const int n = static_cast<int>(diag.rows());
  for (int m = 0; m < n; ++m) {
    const double ph = std::arg(diag(m, m));
    if (std::abs(ph) > 1e-14) c.add(gate::phase(off + m, ph));
  }
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->is_phase) {
      if (std::abs(it->angle) > 1e-14)
        c.add(gate::phase(off + it->row, -it->angle));
    } else {
      append_mode_rotation(c, off + it->row - 1, -it->angle);
    }
  }
}

}  // namespace detail

// Quantum-realistic path: occupy the first k modes of each spin block and
// rotate the mode basis with adjacent Givens rotations. Agrees with
// prepare_slater including the global phase.
inline Circuit slater_circuit(const Occupation& occ, const OrbitalSet& orb,
                              int n_qubits = 0) {
  const int n = static_cast<int>(orb.energies.size());
  validate(occ, n);
  if (n_qubits == 0) n_qubits = 2 * n;
  if (n_qubits < 2 * n)
    throw std::invalid_argument("slater_circuit: register too small");
  Circuit c(n_qubits);
  const auto block = [&](int off, const std::vector<int>& choice) {
    const int k = static_cast<int>(choice.size());
    if (k == 0) return;
    for (int q = 0; q < k; ++q) c.add(gate::x(off + q));
    // chosen columns first, then the remaining orbitals as completion
    Eigen::MatrixXcd q_mat(n, n);
    std::vector<bool> used(n, false);
    for (int b = 0; b < k; ++b) {
      q_mat.col(b) = orb.orbitals.col(choice[b]);
      used[choice[b]] = true;
    }
    int next = k;
    for (int b = 0; b < n; ++b)
      if (!used[b]) q_mat.col(next++) = orb.orbitals.col(b);
    const auto ops = detail::eliminate_unitary(q_mat);
    detail::append_block_rotation(c, off, q_mat, ops);
  };
  block(0, occ.orbital_choice_up);
  block(n, occ.orbital_choice_down);
  return c;
}

}  // namespace hubsim
