#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubsim/engine.hpp"
#include "hubsim/model.hpp"

namespace hubsim {

struct TrotterConfig {
  int n_steps = 1;  // first-order steps per unit of evolution
  double t = 0.0;   // duration in units of 1/gamma0
};

inline void validate(const TrotterConfig& c) {
  if (c.n_steps < 1) throw std::invalid_argument("trotter: n_steps must be >= 1");
}

// Per-slice rotation angles. theta0 multiplies the hopping generator,
// thetaU the on-site interaction.
struct EvolutionAngles {
  double theta0 = 0.0;  // -gamma0 * dt
  double thetaU = 0.0;  // u0 * dt
};

inline EvolutionAngles angles_for(const HubbardParams& p, double dt) {
  validate(p);
  if (p.epsilon != 0.0)
    throw std::invalid_argument(
        "angles_for: nonzero on-site energy has no circuit fragment");
  return {-p.gamma0 * dt, p.u0 * dt};
}

namespace detail {

constexpr double angle_cutoff = 1e-15;

inline void check_fragment_qubits(int n_qubits, const std::vector<int>& support,
                                  const std::vector<int>& controls) {
  for (int q : support) {
    if (q < 0 || q >= n_qubits)
      throw std::invalid_argument("fragment: qubit out of range");
    for (int c : controls)
      if (c == q)
        throw std::invalid_argument("fragment: control overlaps target");
  }
  for (int c : controls)
    if (c < 0 || c >= n_qubits)
      throw std::invalid_argument("fragment: control out of range");
}

// Appends exp(-i (theta/2) P) for a Pauli string supported on `qubits`
// (ops[k] acts on qubits[k]). Basis changes and the CX parity ladder are
// control-free; only the central RZ carries the controls, which makes the
// controlled fragment exactly |0><0| (x) I + |1><1| (x) exp(-i (theta/2) P).
inline void append_pauli_rotation(Circuit& c, const std::vector<int>& qubits,
                                  const std::string& ops, double theta,
                                  const std::vector<int>& controls) {
  if (std::abs(theta) < angle_cutoff) return;
  if (qubits.size() != ops.size() || qubits.empty())
    throw std::invalid_argument("pauli rotation: support mismatch");
  check_fragment_qubits(c.n_qubits, qubits, controls);
  const double half_pi = std::numbers::pi / 2;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (ops[k] == 'X') c.add(gate::h(qubits[k]));
    else if (ops[k] == 'Y') c.add(gate::rx(qubits[k], half_pi));
  }
  for (std::size_t k = 0; k + 1 < qubits.size(); ++k)
    c.add(gate::cx(qubits[k], qubits[k + 1]));
  c.add(gate::with_controls(gate::rz(qubits.back(), theta), controls));
  for (std::size_t k = qubits.size() - 1; k-- > 0;)
    c.add(gate::cx(qubits[k], qubits[k + 1]));
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (ops[k] == 'X') c.add(gate::h(qubits[k]));
    else if (ops[k] == 'Y') c.add(gate::rx(qubits[k], -half_pi));
  }
}

}  // namespace detail

// exp[-i (theta0/2) (X_i X_j + Y_i Y_j) Z_{i+1..j-1}] on modes i < j.
// The two commuting rotations are emitted sequentially.
inline Circuit hopping_evolution(int n_qubits, int i, int j, double theta0,
                                 const std::vector<int>& controls = {}) {
  if (i >= j) throw std::invalid_argument("hopping_evolution: need i < j");
  Circuit c(n_qubits);
  if (std::abs(theta0) < detail::angle_cutoff) return c;
  std::vector<int> support;
  for (int q = i; q <= j; ++q) support.push_back(q);
  std::string xs(support.size(), 'Z'), ys(support.size(), 'Z');
  xs.front() = xs.back() = 'X';
  ys.front() = ys.back() = 'Y';
  detail::append_pauli_rotation(c, support, xs, theta0, controls);
  detail::append_pauli_rotation(c, support, ys, theta0, controls);
  return c;
}

// exp[-i t (I - Z_i)/2], a phase of e^{-it} on the occupied mode. The
// uncontrolled form is exactly one PHASE(-t). Under controls, the identity
// half becomes PHASE(-t/2) on the first control so that no phase relative
// to the idle control branch is lost.
inline Circuit number_evolution(int n_qubits, int i, double t,
                                const std::vector<int>& controls = {}) {
  Circuit c(n_qubits);
  if (std::abs(t) < detail::angle_cutoff) return c;
  detail::check_fragment_qubits(n_qubits, {i}, controls);
  if (controls.empty()) {
    c.add(gate::phase(i, -t));
    return c;
  }
  c.add(gate::with_controls(gate::rz(i, -t), controls));
  std::vector<int> rest(controls.begin() + 1, controls.end());
  c.add(gate::with_controls(gate::phase(controls.front(), -t / 2), rest));
  return c;
}

// exp[-i (thetaU/4) (II - Z_i - Z_j + Z_i Z_j)] = exp(-i thetaU n_i n_j).
// The scalar quarter angle is a global phase when uncontrolled and a
// control-branch phase otherwise.
inline Circuit interaction_evolution(int n_qubits, int i, int j, double thetaU,
                                     const std::vector<int>& controls = {}) {
  if (i == j) throw std::invalid_argument("interaction_evolution: i == j");
  Circuit c(n_qubits);
  if (std::abs(thetaU) < detail::angle_cutoff) return c;
  detail::check_fragment_qubits(n_qubits, {i, j}, controls);
  if (controls.empty()) {
    c.add(gate::gphase(-thetaU / 4));
    c.add(gate::rz(i, -thetaU / 2));
    c.add(gate::rz(j, -thetaU / 2));
  } else {
    std::vector<int> rest(controls.begin() + 1, controls.end());
    c.add(gate::with_controls(gate::phase(controls.front(), -thetaU / 4), rest));
    c.add(gate::with_controls(gate::rz(i, -thetaU / 2), controls));
    c.add(gate::with_controls(gate::rz(j, -thetaU / 2), controls));
  }
  c.add(gate::cx(i, j));
  c.add(gate::with_controls(gate::rz(j, thetaU / 2), controls));
  c.add(gate::cx(i, j));
  return c;
}

namespace detail {
inline int register_size(const HubbardTerms& terms,
                         const std::vector<int>& controls) {
  int nq = 2 * terms.n_sites;
  for (int c : controls) nq = std::max(nq, c + 1);
  return nq;
}
}  // namespace detail

// One first-order slice: spin-up hops in bond order, spin-down hops in the
// same order, then the mutually commuting on-site interactions.
inline Circuit trotter_step(const HubbardTerms& terms,
                            const EvolutionAngles& angles,
                            const std::vector<int>& controls = {}) {
  const int n = terms.n_sites;
  const int nq = detail::register_size(terms, controls);
  Circuit c(nq);
  for (auto [i, j] : terms.bonds)
    c.append(hopping_evolution(nq, i, j, angles.theta0, controls));
  for (auto [i, j] : terms.bonds)
    c.append(hopping_evolution(nq, i + n, j + n, angles.theta0, controls));
  for (int s = 0; s < n; ++s)
    c.append(interaction_evolution(nq, s, s + n, angles.thetaU, controls));
  return c;
}

// Trotterized exp(-i H t): n_steps identical slices of dt = t / n_steps.
inline Circuit evolution_circuit(const HubbardTerms& terms,
                                 const TrotterConfig& config,
                                 const std::vector<int>& controls = {}) {
  validate(config);
  const double dt = config.t / config.n_steps;
  const auto angles = angles_for(terms.params, dt);
  const Circuit step = trotter_step(terms, angles, controls);
  Circuit c(step.n_qubits);
  for (int k = 0; k < config.n_steps; ++k) c.append(step);
  return c;
}

namespace detail {
inline void check_power(const HubbardTerms& terms, int ancilla,
                        std::uint64_t power) {
  if (power == 0 || (power & (power - 1)) != 0)
    throw std::invalid_argument("controlled_power: power must be 2^k");
  if (ancilla >= 0 && ancilla < 2 * terms.n_sites)
    throw std::invalid_argument("controlled_power: ancilla inside system");
  if (ancilla < 0)
    throw std::invalid_argument("controlled_power: bad ancilla");
}
}  // namespace detail

// Controlled U^power by literal repetition: `power` copies of the controlled
// evolution circuit, keeping the Trotter step count per application fixed.
inline Circuit controlled_power(const HubbardTerms& terms,
                                const TrotterConfig& config, int ancilla,
                                std::uint64_t power) {
  detail::check_power(terms, ancilla, power);
  const Circuit unit = evolution_circuit(terms, config, {ancilla});
  Circuit c(unit.n_qubits);
  for (std::uint64_t k = 0; k < power; ++k) c.append(unit);
  return c;
}

// Depth-saving variant: one evolution circuit over time t * power with the
// rotation angles scaled instead of the slices repeated. The Trotter error
// grows with the power, so this is reserved for noiseless studies.
inline Circuit controlled_power_fast(const HubbardTerms& terms,
                                     const TrotterConfig& config, int ancilla,
                                     std::uint64_t power) {
  detail::check_power(terms, ancilla, power);
  const TrotterConfig scaled{config.n_steps,
                             config.t * static_cast<double>(power)};
  return evolution_circuit(terms, scaled, {ancilla});
}

// Plain-text gate list, one line per gate: name, angle, targets, controls.
// Empty fields print as "-". The format is stable; tools may parse it.
inline void dump_circuit(std::ostream& os, const Circuit& c) {
  const auto join = [](const std::vector<int>& v) {
    if (v.empty()) return std::string("-");
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(v[k]);
    }
    return s;
  };
  for (const auto& g : c.gates) {
    char angle[32];
    std::snprintf(angle, sizeof angle, "%.17g", g.angle);
    os << gate_name(g.kind) << ' ' << angle << ' ' << join(g.targets) << ' '
       << join(g.controls) << '\n';
  }
}

}  // namespace hubsim
