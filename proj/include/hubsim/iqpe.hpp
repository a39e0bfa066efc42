#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Iterative quantum phase estimation: one ancilla, m rounds, classical phase
// feedback between rounds. Round k applies the controlled evolution to the
// power 2^(m-k) and measures phase bit x_{m-k+1}, so the least significant
// bit comes first and each later round inherits the bits below it through
// the feedback rotation.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubsim/circuits.hpp"
#include "hubsim/engine.hpp"
#include "hubsim/lattice.hpp"
#include "hubsim/model.hpp"
#include "hubsim/noise.hpp"
#include "hubsim/pauli.hpp"
#include "hubsim/prep.hpp"
#include "hubsim/rng.hpp"

namespace hubsim {

// Evolution time per power unit and the aliasing-free energy window that
// this time resolves.
struct TimeScale {
  double t = 0.0;
  double e_lo = 0.0;
  double e_hi = 0.0;
};

// The non-identity 1-norm bounds the spectrum around the identity
// coefficient, so B = one_norm*(1+margin) and t = pi/B give every relevant
// eigenvalue a distinct phase. The window is quoted shifted by the identity
// coefficient; unwrapped estimates are then plain energies with no further
// offset bookkeeping. Margin zero is the tight window.
inline TimeScale choose_time_scale(const PauliSum& h, double margin = 0.05) {
  if (margin < 0.0)
    throw std::invalid_argument("choose_time_scale: negative margin");
  const double bound = one_norm(h) * (1.0 + margin);
  if (bound <= 0.0)
    throw std::invalid_argument("choose_time_scale: zero-width window");
  const double off = identity_coefficient(h);
  return {std::numbers::pi / bound, -bound - off, bound - off};
}

struct IqpeConfig {
  int m_bits = 5;            // binary digits of phase
  TrotterConfig trotter;     // per power unit: duration t and slice count
  int shots_per_bit = 1;     // majority-vote size on the noisy path
  double e_lo = 0.0;         // unwrap window, usually from choose_time_scale
  double e_hi = 0.0;
  std::uint64_t seed = 1;    // root of the per-round, per-shot rng streams
  bool fast_powers = false;  // scale angles instead of repeating the circuit
};

inline void validate(const IqpeConfig& c) {
  if (c.m_bits < 1)
    throw std::invalid_argument("iqpe: m_bits must be >= 1");
  if (c.m_bits > 62)
    throw std::invalid_argument("iqpe: m_bits too large for 2^k powers");
  validate(c.trotter);
  if (c.trotter.t <= 0.0)
    throw std::invalid_argument("iqpe: evolution time must be positive");
  if (c.shots_per_bit < 1)
    throw std::invalid_argument("iqpe: shots_per_bit must be >= 1");
  if (!(c.e_hi > c.e_lo))
    throw std::invalid_argument("iqpe: empty energy window");
  if ((c.e_hi - c.e_lo) * c.trotter.t > 2 * std::numbers::pi * (1 + 1e-12))
    throw std::invalid_argument("iqpe: energy window wraps the phase circle");
}

inline IqpeConfig make_iqpe_config(const TimeScale& ts, int m_bits,
                                   int n_steps, int shots_per_bit = 1,
                                   std::uint64_t seed = 1) {
  IqpeConfig c;
  c.m_bits = m_bits;
  c.trotter = {n_steps, ts.t};
  c.shots_per_bit = shots_per_bit;
  c.e_lo = ts.e_lo;
  c.e_hi = ts.e_hi;
  c.seed = seed;
  return c;
}

struct EnergyEstimate {
  std::string phase_bits;  // x1..xm, most significant first
  double phi = 0.0;        // sum of x_k 2^-k
  double energy = 0.0;     // -2*pi*phi / t unwrapped into the window
  std::vector<double> bit_vote_fractions;  // round order, k = 1 first
  IqpeConfig config;
};

namespace detail {

// Round k of m: Hadamard on the ancilla, controlled U^(2^(m-k)), the
// feedback rotation, Hadamard. The ancilla is qubit 2*n_sites. A zero
// feedback angle is skipped entirely so that the first round's schedule
// carries no idle phase gate.
inline Circuit iqpe_round_circuit(const HubbardTerms& terms,
                                  const IqpeConfig& cfg, int k,
                                  double feedback_phi) {
  const std::uint64_t power = std::uint64_t(1) << (cfg.m_bits - k);
  const int anc = 2 * terms.n_sites;
  const Circuit body =
      cfg.fast_powers ? controlled_power_fast(terms, cfg.trotter, anc, power)
                      : controlled_power(terms, cfg.trotter, anc, power);
  Circuit c(body.n_qubits);
  c.add(gate::h(anc));
  c.append(body);
  const double angle = -2 * std::numbers::pi * feedback_phi;
  if (std::abs(angle) >= angle_cutoff) c.add(gate::phase(anc, angle));
  c.add(gate::h(anc));
  return c;
}

struct BitVote {
  int bit = 0;
  double fraction = 1.0;  // winning share of the vote
};

inline BitVote iqpe_vote(int k, const QuantumState& prepared,
                         const HubbardTerms& terms, const IqpeConfig& cfg,
                         double feedback_phi, const NoiseProfile* noise,
                         NoiseStats* stats) {
  if (k < 1 || k > cfg.m_bits)
    throw std::invalid_argument("iqpe: round index out of range");
  const Circuit round = iqpe_round_circuit(terms, cfg, k, feedback_phi);
  if (prepared.n_qubits != round.n_qubits)
    throw std::invalid_argument("iqpe: prepared state has the wrong register");
  const int anc = 2 * terms.n_sites;
  if (noise == nullptr || is_noiseless(*noise)) {
    // The ancilla distribution is available exactly, so the vote is the
    // deterministic rounding of p(1) and shots_per_bit is irrelevant.
    const QuantumState s = run(prepared, round);
    const double p1 = prob_of_bit(s, anc, 1);
    return {p1 > 0.5 ? 1 : 0, std::max(p1, 1.0 - p1)};
  }
  if (cfg.fast_powers)
    throw std::invalid_argument(
        "iqpe: fast powers misrepresent circuit depth under noise");
  const ScheduledCircuit sc = schedule(round, *noise);
  int ones = 0;
  for (int shot = 0; shot < cfg.shots_per_bit; ++shot) {
    Rng rng = derive_rng(cfg.seed, std::uint64_t(k), std::uint64_t(shot));
    QuantumState s = run_trajectory_from(prepared, sc, *noise, rng, stats);
    ones += noisy_measure_bit(s, anc, *noise, rng, stats);
  }
  const int zeros = cfg.shots_per_bit - ones;
  return {ones > zeros ? 1 : 0,
          double(std::max(ones, zeros)) / double(cfg.shots_per_bit)};
}

// Places e on the branch of width (e_hi - e_lo) starting at e_lo. A result
// within rounding of the upper edge collapses to e_lo.
inline double unwrap_energy(double e, double e_lo, double e_hi) {
  const double w = e_hi - e_lo;
  double r = std::fmod(e - e_lo, w);
  if (r < 0.0) r += w;
  if (w - r < 1e-12 * w) r = 0.0;
  return e_lo + r;
}

}  // namespace detail

// Majority-voted phase bit of round k. `prepared` spans the system register
// plus the ancilla at qubit 2*n_sites, with the ancilla in |0>.
inline int iqpe_iteration(int k, const QuantumState& prepared,
                          const HubbardTerms& terms, const IqpeConfig& cfg,
                          double feedback_phi,
                          const NoiseProfile* noise = nullptr,
                          NoiseStats* stats = nullptr) {
  return detail::iqpe_vote(k, prepared, terms, cfg, feedback_phi, noise, stats)
      .bit;
}

// Full m-round estimate starting from the given Slater occupation. State
// preparation itself is noiseless: the rounds receive a fixed input state
// and only the phase-kick circuits and measurements are noisy.
inline EnergyEstimate run_iqpe(const Lattice& lat, const HubbardParams& p,
                               const Occupation& occ, const IqpeConfig& cfg,
                               const NoiseProfile* noise = nullptr,
                               NoiseStats* stats = nullptr) {
  validate(cfg);
  const HubbardTerms terms = hubbard_terms(lat, p);
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  const int anc = 2 * lat.n_sites;
  const Circuit prep = slater_circuit(occ, orb, anc + 1);
  const QuantumState prepared = run(QuantumState(anc + 1), prep);

  EnergyEstimate est;
  est.config = cfg;
  est.phase_bits.assign(std::size_t(cfg.m_bits), '0');
  double feedback = 0.0;
  for (int k = 1; k <= cfg.m_bits; ++k) {
    const auto vote =
        detail::iqpe_vote(k, prepared, terms, cfg, feedback, noise, stats);
    est.phase_bits[std::size_t(cfg.m_bits - k)] = char('0' + vote.bit);
    est.bit_vote_fractions.push_back(vote.fraction);
    // phi_{k+1} = 0.0 x_{m-k+1} ... x_m: shift the known tail down one
    // binary place and add the fresh bit at the quarter position.
    feedback = 0.5 * feedback + 0.25 * vote.bit;
  }
  for (int i = 0; i < cfg.m_bits; ++i)
    if (est.phase_bits[std::size_t(i)] == '1')
      est.phi += std::ldexp(1.0, -(i + 1));
  est.energy = detail::unwrap_energy(
      -2 * std::numbers::pi * est.phi / cfg.trotter.t, cfg.e_lo, cfg.e_hi);
  return est;
}

// Same loop from the default (lowest-orbital) filling.
inline EnergyEstimate run_iqpe(const Lattice& lat, const HubbardParams& p,
                               int n_occ, const IqpeConfig& cfg,
                               const NoiseProfile* noise = nullptr,
                               NoiseStats* stats = nullptr) {
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  return run_iqpe(lat, p, default_occupation(orb, n_occ), cfg, noise, stats);
}

}  // namespace hubsim
