#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. Everything here is deliberately
// naive dense linear algebra, independent of the optimized kernels under
// test, so agreement between the two is meaningful.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "hubsim/engine.hpp"
#include "hubsim/lattice.hpp"
#include "hubsim/model.hpp"
#include "hubsim/pauli.hpp"

namespace hubsim::testsupport {

inline Eigen::VectorXcd as_vector(const QuantumState& s) {
  Eigen::VectorXcd v(s.dim());
  for (std::uint64_t i = 0; i < s.dim(); ++i) v(i) = s.amp[i];
  return v;
}

inline QuantumState from_vector(int n_qubits, const Eigen::VectorXcd& v) {
  QuantumState s(n_qubits);
  if (static_cast<std::uint64_t>(v.size()) != s.dim())
    throw std::invalid_argument("from_vector: dimension mismatch");
  for (std::uint64_t i = 0; i < s.dim(); ++i) s.amp[i] = v(i);
  return s;
}

// 2x2 matrix of a single-qubit gate kind, column-major in Eigen.
inline Eigen::Matrix2cd local_matrix(const Gate& g) {
  using std::polar;
  const cplx im(0.0, 1.0);
  Eigen::Matrix2cd m;
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  const double r = std::numbers::sqrt2 / 2.0;
  switch (g.kind) {
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -im, im, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::RX: m << c, -im * s, -im * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RZ: m << polar(1.0, -g.angle / 2), 0, 0, polar(1.0, g.angle / 2); break;
    case GateKind::Phase: m << 1, 0, 0, polar(1.0, g.angle); break;
    case GateKind::Unitary1q:
      m << g.matrix[0], g.matrix[1], g.matrix[2], g.matrix[3];
      break;
    default:
      throw std::invalid_argument("local_matrix: not a single-qubit gate");
  }
  return m;
}

// Full 2^n x 2^n unitary of one gate, built column by column from the
// definition (controls gate the action, qubit 0 is the low bit).
inline Eigen::MatrixXcd gate_unitary(int n_qubits, const Gate& g) {
  const std::uint64_t dim = 1ull << n_qubits;
  std::uint64_t cmask = 0;
  for (int c : g.controls) cmask |= 1ull << c;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    if ((j & cmask) != cmask) {
      u(j, j) = 1.0;
      continue;
    }
    switch (g.kind) {
      case GateKind::GlobalPhase:
        u(j, j) = std::polar(1.0, g.angle);
        break;
      case GateKind::CX: {
        const std::uint64_t cb = 1ull << g.targets[0];
        const std::uint64_t tb = 1ull << g.targets[1];
        u((j & cb) ? j ^ tb : j, j) = 1.0;
        break;
      }
      case GateKind::CZ: {
        const std::uint64_t both =
            (1ull << g.targets[0]) | (1ull << g.targets[1]);
        u(j, j) = ((j & both) == both) ? -1.0 : 1.0;
        break;
      }
      default: {
        const Eigen::Matrix2cd m = local_matrix(g);
        const std::uint64_t tb = 1ull << g.targets[0];
        const int b = (j & tb) ? 1 : 0;
        u(j & ~tb, j) += m(0, b);
        u(j | tb, j) += m(1, b);
        break;
      }
    }
  }
  return u;
}

inline Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const std::uint64_t dim = 1ull << c.n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : c.gates) u = gate_unitary(c.n_qubits, g) * u;
  return u;
}

// exp(-i h t) of a Hermitian matrix via eigendecomposition.
inline Eigen::MatrixXcd expmi(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < ph.size(); ++k)
    ph(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
  return v * ph.asDiagonal() * v.adjoint();
}

// Hubbard Hamiltonian assembled directly in the Fock basis from fermionic
// anticommutation rules: bit q of the basis index is the occupation of mode
// q (modes [0,N) spin up, [N,2N) spin down). The sign of a hop i<j is the
// parity of occupied modes strictly between i and j.
inline Eigen::MatrixXcd fock_hubbard(const Lattice& lat, const HubbardParams& p) {
  const int n = lat.n_sites;
  const int nq = 2 * n;
  if (nq > 14) throw std::invalid_argument("fock_hubbard: too large");
  const std::uint64_t dim = 1ull << nq;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  auto between_parity = [](std::uint64_t b, int lo, int hi) {
    const std::uint64_t mask = ((1ull << hi) - 1) & ~((1ull << (lo + 1)) - 1);
    return __builtin_popcountll(b & mask) & 1;
  };
  for (std::uint64_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int s = 0; s < n; ++s)
      if (((b >> s) & 1) && ((b >> (s + n)) & 1)) diag += p.u0;
    if (p.epsilon != 0.0) diag += p.epsilon * __builtin_popcountll(b);
    m(b, b) += diag;
    for (auto [i, j] : lat.edges) {
      for (int off : {0, n}) {
        const int a = i + off, c = j + off;
        const bool oa = (b >> a) & 1, oc = (b >> c) & 1;
        if (oa == oc) continue;
        const std::uint64_t b2 = b ^ (1ull << a) ^ (1ull << c);
        const double sign = between_parity(b, a, c) ? -1.0 : 1.0;
        m(b2, b) += -p.gamma0 * sign;
      }
    }
  }
  return m;
}

inline double ground_energy_dense(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  return es.eigenvalues()(0);
}

}  // namespace hubsim::testsupport
