#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hubsim {

using cplx = std::complex<double>;

// One weighted Pauli string. ops[q] is the operator on qubit q (qubit 0 is
// the least significant bit of a basis index), drawn from {I, X, Y, Z}.
struct PauliString {
  std::string ops;
  cplx coeff{0.0, 0.0};

  bool is_identity() const {
    return ops.find_first_not_of('I') == std::string::npos;
  }
};

struct PauliSum {
  int n_qubits = 0;
  std::vector<PauliString> terms;
};

inline void check_term(const PauliString& t, int n_qubits) {
  if (static_cast<int>(t.ops.size()) != n_qubits)
    throw std::invalid_argument("pauli term length mismatch");
  for (char c : t.ops)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("bad pauli op");
}

inline void add_term(PauliSum& h, std::string ops, cplx coeff) {
  PauliString t{std::move(ops), coeff};
  check_term(t, h.n_qubits);
  h.terms.push_back(std::move(t));
}

// Combines equal strings, prunes coefficients below 1e-12, orders terms
// lexicographically so that identical inputs produce identical sums.
inline PauliSum merged(const PauliSum& h) {
  std::map<std::string, cplx> acc;
  for (const auto& t : h.terms) {
    check_term(t, h.n_qubits);
    acc[t.ops] += t.coeff;
  }
  PauliSum out{h.n_qubits, {}};
  for (auto& [ops, c] : acc)
    if (std::abs(c) >= 1e-12) out.terms.push_back({ops, c});
  return out;
}

inline PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("pauli sum size mismatch");
  PauliSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

inline PauliSum scaled(const PauliSum& h, double f) {
  PauliSum out = h;
  for (auto& t : out.terms) t.coeff *= f;
  return out;
}

// Sum of absolute coefficients of the non-identity terms. The identity
// offset is reported separately by identity_coefficient.
inline double one_norm(const PauliSum& h) {
  double s = 0.0;
  for (const auto& t : h.terms)
    if (!t.is_identity()) s += std::abs(t.coeff);
  return s;
}

inline double identity_coefficient(const PauliSum& h) {
  cplx c = 0.0;
  for (const auto& t : h.terms)
    if (t.is_identity()) c += t.coeff;
  return c.real();
}

namespace detail {
// Column action of one Pauli string: P |j> = phase(j) |j ^ flip_mask>.
struct PauliAction {
  std::uint64_t flip_mask = 0;  // X and Y positions
  std::uint64_t z_mask = 0;     // Z and Y positions contribute (-1)^bit
  std::uint64_t y_mask = 0;     // Y positions contribute i or -i
};

inline PauliAction action_of(const std::string& ops) {
  PauliAction a;
  for (std::size_t q = 0; q < ops.size(); ++q) {
    const std::uint64_t bit = 1ull << q;
    switch (ops[q]) {
      case 'X': a.flip_mask |= bit; break;
      case 'Y': a.flip_mask |= bit; a.z_mask |= bit; a.y_mask |= bit; break;
      case 'Z': a.z_mask |= bit; break;
      default: break;
    }
  }
  return a;
}

inline int popcount64(std::uint64_t v) {
  return __builtin_popcountll(v);
}

// Phase of P acting on basis state |j>: product over qubits of
// X: 1, Z: (-1)^b, Y: (i on b=0, -i on b=1).
inline cplx column_phase(const PauliAction& a, std::uint64_t j) {
  // Y on bit b: i * (-1)^b; fold the (-1)^b part into the z_mask count.
  const int minus = popcount64(j & a.z_mask);
  const int ys = popcount64(a.y_mask);
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx phase = i_pow[ys & 3];
  return (minus & 1) ? -phase : phase;
}
}  // namespace detail

// out += coeff * P * v over the full register.
inline void accumulate_pauli_apply(const PauliString& term,
                                   const std::vector<cplx>& v,
                                   std::vector<cplx>& out) {
  const auto a = detail::action_of(term.ops);
  const std::uint64_t dim = v.size();
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (v[j] == cplx(0.0, 0.0)) continue;
    out[j ^ a.flip_mask] += term.coeff * detail::column_phase(a, j) * v[j];
  }
}

// h * v as a dense vector; used for energies, variances, and residuals.
inline std::vector<cplx> apply_pauli_sum(const PauliSum& h,
                                         const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size(), cplx(0.0, 0.0));
  for (const auto& t : h.terms) accumulate_pauli_apply(t, v, out);
  return out;
}

// Dense Kronecker expansion. Guarded: beyond 14 qubits the matrix does not
// fit in memory at this representation.
inline Eigen::MatrixXcd matrix_of(const PauliSum& h) {
  if (h.n_qubits > 14)
    throw std::runtime_error("matrix_of: register too large (limit 14 qubits)");
  const std::uint64_t dim = 1ull << h.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms) {
    check_term(t, h.n_qubits);
    const auto a = detail::action_of(t.ops);
    for (std::uint64_t j = 0; j < dim; ++j)
      m(j ^ a.flip_mask, j) += t.coeff * detail::column_phase(a, j);
  }
  return m;
}

}  // namespace hubsim
