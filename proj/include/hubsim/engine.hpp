#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubsim/pauli.hpp"
#include "hubsim/rng.hpp"

namespace hubsim {

// Dense statevector. Qubit 0 is the least significant bit of the basis
// index; this convention is fixed across all modules.
struct QuantumState {
  int n_qubits = 0;
  std::vector<cplx> amp;

  explicit QuantumState(int n = 0)
      : n_qubits(n), amp(std::size_t(1) << n, cplx(0.0, 0.0)) {
    if (n > 0) amp[0] = 1.0;
  }
  std::uint64_t dim() const { return std::uint64_t(1) << n_qubits; }
};

inline double norm2(const QuantumState& s) {
  double n = 0.0;
  for (const auto& a : s.amp) n += std::norm(a);
  return n;
}

inline void renormalize(QuantumState& s) {
  const double n = std::sqrt(norm2(s));
  if (n <= 0.0) throw std::runtime_error("state collapsed to zero norm");
  for (auto& a : s.amp) a /= n;
}

inline QuantumState basis_state(int n_qubits, std::uint64_t index) {
  QuantumState s(n_qubits);
  if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
  s.amp[0] = 0.0;
  s.amp[index] = 1.0;
  return s;
}

// bits is written most significant qubit first: basis_state(2, "10") puts
// qubit 1 in |1> and qubit 0 in |0>, i.e. index 2.
inline QuantumState basis_state(int n_qubits, const std::string& bits) {
  if (static_cast<int>(bits.size()) != n_qubits)
    throw std::invalid_argument("bitstring length mismatch");
  std::uint64_t idx = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const char c = bits[bits.size() - 1 - q];
    if (c != '0' && c != '1') throw std::invalid_argument("bad bitstring");
    if (c == '1') idx |= std::uint64_t(1) << q;
  }
  return basis_state(n_qubits, idx);
}

enum class GateKind {
  H, X, Y, Z, RX, RY, RZ, Phase, GlobalPhase, CX, CZ, Unitary1q
};

// targets: one qubit for the single-qubit kinds, the ordered (control,
// target) pair for CX, the symmetric pair for CZ, empty for GlobalPhase.
// controls: extra qubits that must all read 1 for the gate to act.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;
  std::array<cplx, 4> matrix{};  // Unitary1q, row-major
};

namespace gate {
inline Gate h(int q) { return {GateKind::H, {q}, {}, 0.0, {}}; }
inline Gate x(int q) { return {GateKind::X, {q}, {}, 0.0, {}}; }
inline Gate y(int q) { return {GateKind::Y, {q}, {}, 0.0, {}}; }
inline Gate z(int q) { return {GateKind::Z, {q}, {}, 0.0, {}}; }
inline Gate rx(int q, double th) { return {GateKind::RX, {q}, {}, th, {}}; }
inline Gate ry(int q, double th) { return {GateKind::RY, {q}, {}, th, {}}; }
inline Gate rz(int q, double th) { return {GateKind::RZ, {q}, {}, th, {}}; }
inline Gate phase(int q, double ph) { return {GateKind::Phase, {q}, {}, ph, {}}; }
inline Gate gphase(double ph) { return {GateKind::GlobalPhase, {}, {}, ph, {}}; }
inline Gate cx(int c, int t) { return {GateKind::CX, {c, t}, {}, 0.0, {}}; }
inline Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, {}, 0.0, {}}; }
inline Gate u1q(int q, const std::array<cplx, 4>& m) {
  return {GateKind::Unitary1q, {q}, {}, 0.0, m};
}
inline Gate with_controls(Gate g, const std::vector<int>& cs) {
  g.controls.insert(g.controls.end(), cs.begin(), cs.end());
  return g;
}
}  // namespace gate

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::Phase: return "phase";
    case GateKind::GlobalPhase: return "gphase";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::Unitary1q: return "u1q";
  }
  return "?";
}

// Qubits the gate acts on or is conditioned on, targets first.
inline std::vector<int> touched_qubits(const Gate& g) {
  std::vector<int> qs = g.targets;
  qs.insert(qs.end(), g.controls.begin(), g.controls.end());
  return qs;
}

inline void check_gate(const Gate& g, int n_qubits) {
  const int want_targets =
      g.kind == GateKind::GlobalPhase ? 0
      : (g.kind == GateKind::CX || g.kind == GateKind::CZ) ? 2 : 1;
  if (static_cast<int>(g.targets.size()) != want_targets)
    throw std::invalid_argument("gate: wrong target count");
  auto qs = touched_qubits(g);
  for (std::size_t a = 0; a < qs.size(); ++a) {
    if (qs[a] < 0 || qs[a] >= n_qubits)
      throw std::invalid_argument("gate: qubit index out of range");
    for (std::size_t b = a + 1; b < qs.size(); ++b)
      if (qs[a] == qs[b])
        throw std::invalid_argument("gate: overlapping targets/controls");
  }
}

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  explicit Circuit(int n = 0) : n_qubits(n) {}
  void add(Gate g) {
    check_gate(g, n_qubits);
    gates.push_back(std::move(g));
  }
  void append(const Circuit& other) {
    if (other.n_qubits != n_qubits)
      throw std::invalid_argument("circuit: register size mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  }
};

namespace detail {

inline std::uint64_t control_mask(const Gate& g) {
  std::uint64_t m = 0;
  for (int c : g.controls) m |= std::uint64_t(1) << c;
  return m;
}

// Generic 2x2 kernel over amplitude pairs with stride 2^t; pairs whose
// control bits are not all 1 are skipped.
inline void kernel_1q(QuantumState& s, int t, std::uint64_t cmask,
                      cplx a, cplx b, cplx c, cplx d) {
  const std::uint64_t bit = std::uint64_t(1) << t;
  const std::uint64_t dim = s.dim();
  for (std::uint64_t hi = 0; hi < dim; hi += (bit << 1)) {
    for (std::uint64_t lo = hi; lo < hi + bit; ++lo) {
      if ((lo & cmask) != cmask) continue;
      const cplx a0 = s.amp[lo];
      const cplx a1 = s.amp[lo | bit];
      s.amp[lo] = a * a0 + b * a1;
      s.amp[lo | bit] = c * a0 + d * a1;
    }
  }
}

// Diagonal kernel: multiply amplitudes with target bit 0 / 1 by d0 / d1.
inline void kernel_diag(QuantumState& s, int t, std::uint64_t cmask,
                        cplx d0, cplx d1) {
  const std::uint64_t bit = std::uint64_t(1) << t;
  const std::uint64_t dim = s.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cmask) != cmask) continue;
    s.amp[i] *= (i & bit) ? d1 : d0;
  }
}

}  // namespace detail

inline void apply_in_place(QuantumState& s, const Gate& g) {
  check_gate(g, s.n_qubits);
  const std::uint64_t cmask = detail::control_mask(g);
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  switch (g.kind) {
    case GateKind::H:
      detail::kernel_1q(s, g.targets[0], cmask, inv_sqrt2, inv_sqrt2,
                        inv_sqrt2, -inv_sqrt2);
      break;
    case GateKind::X:
      detail::kernel_1q(s, g.targets[0], cmask, 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::Y:
      detail::kernel_1q(s, g.targets[0], cmask, 0.0, cplx(0, -1), cplx(0, 1), 0.0);
      break;
    case GateKind::Z:
      detail::kernel_diag(s, g.targets[0], cmask, 1.0, -1.0);
      break;
    case GateKind::RX: {
      const double c = std::cos(g.angle / 2), sn = std::sin(g.angle / 2);
      detail::kernel_1q(s, g.targets[0], cmask, c, cplx(0, -sn), cplx(0, -sn), c);
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2), sn = std::sin(g.angle / 2);
      detail::kernel_1q(s, g.targets[0], cmask, c, -sn, sn, c);
      break;
    }
    case GateKind::RZ:
      detail::kernel_diag(s, g.targets[0], cmask,
                          std::polar(1.0, -g.angle / 2),
                          std::polar(1.0, g.angle / 2));
      break;
    case GateKind::Phase:
      detail::kernel_diag(s, g.targets[0], cmask, 1.0,
                          std::polar(1.0, g.angle));
      break;
    case GateKind::GlobalPhase: {
      // with controls this is a phase on the all-ones control subspace
      const cplx ph = std::polar(1.0, g.angle);
      for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & cmask) == cmask) s.amp[i] *= ph;
      break;
    }
    case GateKind::CX: {
      const std::uint64_t cbit = std::uint64_t(1) << g.targets[0];
      const std::uint64_t tbit = std::uint64_t(1) << g.targets[1];
      const std::uint64_t dim = s.dim();
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (!(i & cbit) || (i & tbit)) continue;
        if ((i & cmask) != cmask) continue;
        std::swap(s.amp[i], s.amp[i | tbit]);
      }
      break;
    }
    case GateKind::CZ: {
      const std::uint64_t both = (std::uint64_t(1) << g.targets[0]) |
                                 (std::uint64_t(1) << g.targets[1]);
      const std::uint64_t dim = s.dim();
      for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & both) == both && (i & cmask) == cmask) s.amp[i] = -s.amp[i];
      break;
    }
    case GateKind::Unitary1q:
      detail::kernel_1q(s, g.targets[0], cmask, g.matrix[0], g.matrix[1],
                        g.matrix[2], g.matrix[3]);
      break;
  }
}

inline QuantumState apply(QuantumState s, const Gate& g) {
  apply_in_place(s, g);
  return s;
}

inline void run_in_place(QuantumState& s, const Circuit& c) {
  if (c.n_qubits != s.n_qubits)
    throw std::invalid_argument("run: register size mismatch");
  for (const auto& g : c.gates) apply_in_place(s, g);
}

inline QuantumState run(QuantumState s, const Circuit& c) {
  run_in_place(s, c);
  return s;
}

inline double prob_of_bit(const QuantumState& s, int q, int bit) {
  if (q < 0 || q >= s.n_qubits) throw std::invalid_argument("qubit out of range");
  const std::uint64_t qbit = std::uint64_t(1) << q;
  double p = 0.0;
  for (std::uint64_t i = 0; i < s.dim(); ++i)
    if (((i & qbit) != 0) == (bit != 0)) p += std::norm(s.amp[i]);
  return p;
}

// Born sample of one qubit; collapses and renormalizes.
inline int measure_qubit_in_place(QuantumState& s, int q, Rng& rng) {
  const double p1 = prob_of_bit(s, q, 1);
  const int bit = rng.uniform() < p1 ? 1 : 0;
  const std::uint64_t qbit = std::uint64_t(1) << q;
  for (std::uint64_t i = 0; i < s.dim(); ++i)
    if (((i & qbit) != 0) != (bit != 0)) s.amp[i] = 0.0;
  renormalize(s);
  return bit;
}

inline std::pair<int, QuantumState> measure_qubit(QuantumState s, int q, Rng& rng) {
  const int bit = measure_qubit_in_place(s, q, rng);
  return {bit, std::move(s)};
}

// Full-register Born sample (basis index), no collapse.
inline std::uint64_t sample_index(const QuantumState& s, Rng& rng) {
  double u = rng.uniform();
  const std::uint64_t dim = s.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    u -= std::norm(s.amp[i]);
    if (u <= 0.0) return i;
  }
  return dim - 1;
}

namespace detail {
// <state| P |state> for one Pauli string with unit coefficient.
// Z-diagonal strings avoid the copy; X/Y strings rotate a scratch copy into
// the Z basis (X via H, Y via S-dagger then H) and reuse the diagonal path.
inline double expectation_term(const QuantumState& s, const std::string& ops) {
  std::uint64_t zmask = 0;
  bool diagonal = true;
  for (std::size_t q = 0; q < ops.size(); ++q) {
    if (ops[q] == 'Z') zmask |= std::uint64_t(1) << q;
    else if (ops[q] == 'X' || ops[q] == 'Y') diagonal = false;
  }
  const QuantumState* src = &s;
  QuantumState scratch(0);
  if (!diagonal) {
    scratch = s;
    zmask = 0;
    for (std::size_t q = 0; q < ops.size(); ++q) {
      const int qi = static_cast<int>(q);
      switch (ops[q]) {
        case 'X':
          apply_in_place(scratch, gate::h(qi));
          zmask |= std::uint64_t(1) << q;
          break;
        case 'Y':
          apply_in_place(scratch, gate::phase(qi, -std::numbers::pi / 2));
          apply_in_place(scratch, gate::h(qi));
          zmask |= std::uint64_t(1) << q;
          break;
        case 'Z':
          zmask |= std::uint64_t(1) << q;
          break;
        default:
          break;
      }
    }
    src = &scratch;
  }
  double acc = 0.0;
  for (std::uint64_t i = 0; i < src->dim(); ++i) {
    const double p = std::norm(src->amp[i]);
    acc += (popcount64(i & zmask) & 1) ? -p : p;
  }
  return acc;
}
}  // namespace detail

inline cplx inner(const QuantumState& a, const QuantumState& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("inner: register size mismatch");
  cplx acc = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    acc += std::conj(a.amp[i]) * b.amp[i];
  return acc;
}

inline double expectation(const QuantumState& s, const PauliSum& h) {
  if (h.n_qubits != s.n_qubits)
    throw std::invalid_argument("expectation: register size mismatch");
  cplx acc = 0.0;
  for (const auto& t : h.terms)
    acc += t.coeff * detail::expectation_term(s, t.ops);
  return acc.real();
}

}  // namespace hubsim
