#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubsim/engine.hpp"
#include "hubsim/rng.hpp"

namespace hubsim {

// Hardware calibration snapshot. Durations follow the unit in the field
// name; a non-positive T1 or T2 disables that relaxation channel.
struct NoiseProfile {
  double p1q = 0.0;          // depolarizing probability per 1q gate
  double p2q = 0.0;          // depolarizing probability per 2q gate
  double t1_us = 0.0;        // amplitude damping time
  double t2_us = 0.0;        // dephasing time, t2 <= 2*t1
  double t1q_ns = 0.0;       // 1q gate duration
  double t2q_ns = 0.0;       // 2q gate duration
  double tmeas_ns = 0.0;     // measurement duration
  double p_flip_0to1 = 0.0;  // classical readout flip 0 -> 1
  double p_flip_1to0 = 0.0;  // classical readout flip 1 -> 0
  bool clipped = false;      // set when scale() clipped a probability at 1
};

inline void validate(const NoiseProfile& p) {
  for (double prob : {p.p1q, p.p2q, p.p_flip_0to1, p.p_flip_1to0})
    if (!(prob >= 0.0 && prob <= 1.0))
      throw std::invalid_argument("noise profile: probability outside [0, 1]");
  for (double d : {p.t1q_ns, p.t2q_ns, p.tmeas_ns})
    if (!(d >= 0.0))
      throw std::invalid_argument("noise profile: negative duration");
  if (p.t1_us > 0.0 && p.t2_us > p.t1_us * 2.0 * (1.0 + 1e-12))
    throw std::invalid_argument("noise profile: T2 exceeds 2*T1");
}

inline bool is_noiseless(const NoiseProfile& p) {
  return p.p1q == 0.0 && p.p2q == 0.0 && p.p_flip_0to1 == 0.0 &&
         p.p_flip_1to0 == 0.0 && p.t1_us <= 0.0 && p.t2_us <= 0.0;
}

// Median calibration of the 27-qubit device the noisy benchmarks model.
inline NoiseProfile ibm_baseline() {
  NoiseProfile p;
  p.p1q = 2.230e-4;
  p.p2q = 7.986e-3;
  p.t1_us = 300.0;
  p.t2_us = 160.0;
  p.t1q_ns = 60.0;
  p.t2q_ns = 660.0;
  p.tmeas_ns = 1000.0;
  p.p_flip_0to1 = 0.022;
  p.p_flip_1to0 = 0.016;
  return p;
}

// Parameter sweep helper. Selectors: p1q, p2q, t1, t2, t1t2, p01, p10,
// readout. Probabilities clip at 1 and set the clipped flag; a scaled
// profile that violates T2 <= 2*T1 is rejected.
inline NoiseProfile scale(NoiseProfile p, const std::string& selector,
                          double factor) {
  if (!(factor >= 0.0))
    throw std::invalid_argument("scale: factor must be non-negative");
  const auto clip = [&p](double& prob) {
    if (prob > 1.0) {
      prob = 1.0;
      p.clipped = true;
    }
  };
  if (selector == "p1q") {
    p.p1q *= factor;
    clip(p.p1q);
  } else if (selector == "p2q") {
    p.p2q *= factor;
    clip(p.p2q);
  } else if (selector == "t1") {
    p.t1_us *= factor;
  } else if (selector == "t2") {
    p.t2_us *= factor;
  } else if (selector == "t1t2") {
    p.t1_us *= factor;
    p.t2_us *= factor;
  } else if (selector == "p01") {
    p.p_flip_0to1 *= factor;
    clip(p.p_flip_0to1);
  } else if (selector == "p10") {
    p.p_flip_1to0 *= factor;
    clip(p.p_flip_1to0);
  } else if (selector == "readout") {
    p.p_flip_0to1 *= factor;
    p.p_flip_1to0 *= factor;
    clip(p.p_flip_0to1);
    clip(p.p_flip_1to0);
  } else {
    throw std::invalid_argument("scale: unknown selector '" + selector + "'");
  }
  validate(p);
  return p;
}

inline void save_noise_profile(std::ostream& os, const NoiseProfile& p) {
  os << "p1q " << p.p1q << "\n"
     << "p2q " << p.p2q << "\n"
     << "t1_us " << p.t1_us << "\n"
     << "t2_us " << p.t2_us << "\n"
     << "t1q_ns " << p.t1q_ns << "\n"
     << "t2q_ns " << p.t2q_ns << "\n"
     << "tmeas_ns " << p.tmeas_ns << "\n"
     << "p01 " << p.p_flip_0to1 << "\n"
     << "p10 " << p.p_flip_1to0 << "\n";
}

// Plain key-value lines; '#' starts a comment. All nine keys are required.
inline NoiseProfile load_noise_profile(std::istream& is) {
  NoiseProfile p;
  std::vector<std::string> seen;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    double value = 0.0;
    if (!(ls >> value))
      throw std::invalid_argument("noise profile: missing value for " + key);
    std::string extra;
    if (ls >> extra)
      throw std::invalid_argument("noise profile: trailing text after " + key);
    if (key == "p1q") p.p1q = value;
    else if (key == "p2q") p.p2q = value;
    else if (key == "t1_us") p.t1_us = value;
    else if (key == "t2_us") p.t2_us = value;
    else if (key == "t1q_ns") p.t1q_ns = value;
    else if (key == "t2q_ns") p.t2q_ns = value;
    else if (key == "tmeas_ns") p.tmeas_ns = value;
    else if (key == "p01") p.p_flip_0to1 = value;
    else if (key == "p10") p.p_flip_1to0 = value;
    else throw std::invalid_argument("noise profile: unknown key '" + key + "'");
    for (const auto& s : seen)
      if (s == key)
        throw std::invalid_argument("noise profile: duplicate key " + key);
    seen.push_back(key);
  }
  if (seen.size() != 9)
    throw std::invalid_argument("noise profile: expected 9 keys, found " +
                                std::to_string(seen.size()));
  validate(p);
  return p;
}

struct NoiseStats {
  std::uint64_t gates = 0;
  std::uint64_t depolarizing_events = 0;
  std::uint64_t relaxation_decays = 0;
  std::uint64_t phase_flips = 0;
  std::uint64_t readout_flips = 0;
};

// Gates grouped into simultaneously executable layers. moments[k] and
// moment_duration[k] are parallel; duration is the slowest member gate.
struct ScheduledCircuit {
  int n_qubits = 0;
  std::vector<std::vector<Gate>> moments;
  std::vector<double> moment_duration;
};

inline double gate_duration(const Gate& g, const NoiseProfile& p) {
  const auto qs = touched_qubits(g);
  if (qs.empty()) return 0.0;
  return qs.size() == 1 ? p.t1q_ns : p.t2q_ns;
}

// Greedy as-soon-as-possible layering; per-qubit gate order is preserved
// because a gate never lands before the frontier of any qubit it touches.
inline ScheduledCircuit schedule(const Circuit& c, const NoiseProfile& p) {
  ScheduledCircuit sc;
  sc.n_qubits = c.n_qubits;
  std::vector<std::size_t> frontier(c.n_qubits, 0);
  for (const auto& g : c.gates) {
    const auto qs = touched_qubits(g);
    std::size_t slot = 0;
    for (int q : qs) slot = std::max(slot, frontier[q]);
    while (sc.moments.size() <= slot) {
      sc.moments.emplace_back();
      sc.moment_duration.push_back(0.0);
    }
    sc.moments[slot].push_back(g);
    sc.moment_duration[slot] =
        std::max(sc.moment_duration[slot], gate_duration(g, p));
    for (int q : qs) frontier[q] = slot + 1;
  }
  return sc;
}

namespace detail {

// One qubit's thermal relaxation for duration d: an amplitude-damping Kraus
// branch sampled by its Born weight, then a phase flip. gamma and p_phi are
// precomputed by the caller.
inline void relax_qubit_in_place(QuantumState& s, int q, double gamma,
                                 double p_phi, Rng& rng, NoiseStats* stats) {
  const std::uint64_t bit = std::uint64_t(1) << q;
  const std::uint64_t dim = s.dim();
  if (gamma > 0.0) {
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i)
      if (i & bit) p1 += std::norm(s.amp[i]);
    const double p_decay = gamma * p1;
    if (rng.uniform() < p_decay) {
      // K1 = sqrt(gamma) |0><1|: move excited amplitude down, renormalize
      const double r = 1.0 / std::sqrt(p1);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) {
          s.amp[i & ~bit] = s.amp[i] * r;
          s.amp[i] = 0.0;
        }
      }
      if (stats) ++stats->relaxation_decays;
    } else if (p1 > 0.0) {
      // K0 = diag(1, sqrt(1-gamma)) followed by renormalization
      const double keep = std::sqrt(1.0 - gamma);
      const double r = 1.0 / std::sqrt(1.0 - p_decay);
      for (std::uint64_t i = 0; i < dim; ++i)
        s.amp[i] *= (i & bit) ? keep * r : r;
    }
  }
  if (p_phi > 0.0 && rng.uniform() < p_phi) {
    for (std::uint64_t i = 0; i < dim; ++i)
      if (i & bit) s.amp[i] = -s.amp[i];
    if (stats) ++stats->phase_flips;
  }
}

// Damping and phase-flip probabilities for an idle stretch of d_ns. The
// dephasing rate is T1-corrected: 1/T2' = 1/T2 - 1/(2 T1).
struct RelaxRates {
  double gamma = 0.0;
  double p_phi = 0.0;
};

inline RelaxRates relax_rates(double d_ns, const NoiseProfile& p) {
  RelaxRates r;
  if (d_ns <= 0.0) return r;
  if (p.t1_us > 0.0) r.gamma = 1.0 - std::exp(-d_ns / (p.t1_us * 1e3));
  if (p.t2_us > 0.0) {
    const double inv_t2p =
        1.0 / (p.t2_us * 1e3) -
        (p.t1_us > 0.0 ? 1.0 / (2.0 * p.t1_us * 1e3) : 0.0);
    if (inv_t2p > 0.0) r.p_phi = (1.0 - std::exp(-d_ns * inv_t2p)) / 2.0;
  }
  return r;
}

}  // namespace detail

// Thermal relaxation of every qubit in the register for duration d_ns,
// amplitude damping first, then dephasing.
inline void relaxation_pass_in_place(QuantumState& s, double d_ns,
                                     const NoiseProfile& p, Rng& rng,
                                     NoiseStats* stats = nullptr) {
  const auto r = detail::relax_rates(d_ns, p);
  if (r.gamma == 0.0 && r.p_phi == 0.0) return;
  for (int q = 0; q < s.n_qubits; ++q)
    detail::relax_qubit_in_place(s, q, r.gamma, r.p_phi, rng, stats);
}

namespace detail {

inline Gate pauli_gate(int which, int q) {
  switch (which) {
    case 1: return gate::x(q);
    case 2: return gate::y(q);
    default: return gate::z(q);
  }
}

// Uniformly random non-identity Pauli on one or two qubits.
inline void insert_depolarizing(QuantumState& s, const std::vector<int>& qs,
                                Rng& rng, NoiseStats* stats) {
  if (qs.size() == 1) {
    apply_in_place(s, pauli_gate(1 + int(rng.below(3)), qs[0]));
  } else {
    const int pick = 1 + int(rng.below(15));
    const int a = pick / 4, b = pick % 4;
    if (a != 0) apply_in_place(s, pauli_gate(a, qs[0]));
    if (b != 0) apply_in_place(s, pauli_gate(b, qs[1]));
  }
  if (stats) ++stats->depolarizing_events;
}

}  // namespace detail

// Applies one scheduled moment as a Monte Carlo trajectory segment: each
// gate, its depolarizing sample, then a register-wide relaxation pass for
// the moment duration.
inline void trajectory_step_in_place(QuantumState& s,
                                     const std::vector<Gate>& moment,
                                     double duration_ns, const NoiseProfile& p,
                                     Rng& rng, NoiseStats* stats = nullptr) {
  for (const auto& g : moment) {
    apply_in_place(s, g);
    if (stats) ++stats->gates;
    const auto qs = touched_qubits(g);
    if (qs.empty()) continue;
    if (qs.size() > 2)
      throw std::invalid_argument(
          "noisy execution requires one- and two-qubit gates");
    const double perr = qs.size() == 1 ? p.p1q : p.p2q;
    if (perr > 0.0 && rng.uniform() < perr)
      detail::insert_depolarizing(s, qs, rng, stats);
  }
  relaxation_pass_in_place(s, duration_ns, p, rng, stats);
}

inline QuantumState trajectory_step(QuantumState s,
                                    const std::vector<Gate>& moment,
                                    double duration_ns, const NoiseProfile& p,
                                    Rng& rng, NoiseStats* stats = nullptr) {
  trajectory_step_in_place(s, moment, duration_ns, p, rng, stats);
  return s;
}

// One full stochastic circuit execution starting from |0...0>.
inline QuantumState run_trajectory(const ScheduledCircuit& sc,
                                   const NoiseProfile& p, Rng& rng,
                                   NoiseStats* stats = nullptr) {
  QuantumState s(sc.n_qubits);
  for (std::size_t m = 0; m < sc.moments.size(); ++m)
    trajectory_step_in_place(s, sc.moments[m], sc.moment_duration[m], p, rng,
                             stats);
  return s;
}

// One stochastic execution starting from a caller-supplied state. Each
// qubit's relaxation is accumulated while it idles and applied just before
// the next gate that touches it, plus once at the end. Relaxation on
// distinct qubits commutes with gates and noise acting elsewhere, so the
// resulting channel is the same as the moment-by-moment pass; only the
// per-trajectory sampling order differs. Deep circuits spend most of their
// time relaxing idle qubits, which makes this path much cheaper.
inline QuantumState run_trajectory_from(QuantumState s,
                                        const ScheduledCircuit& sc,
                                        const NoiseProfile& p, Rng& rng,
                                        NoiseStats* stats = nullptr) {
  if (s.n_qubits != sc.n_qubits)
    throw std::invalid_argument("run_trajectory_from: register size mismatch");
  const bool relaxing = p.t1_us > 0.0 || p.t2_us > 0.0;
  std::vector<double> flushed(std::size_t(sc.n_qubits), 0.0);
  double clock = 0.0;  // circuit time at the start of the current moment
  for (std::size_t m = 0; m < sc.moments.size(); ++m) {
    for (const auto& g : sc.moments[m]) {
      const auto qs = touched_qubits(g);
      if (qs.size() > 2)
        throw std::invalid_argument(
            "noisy execution requires one- and two-qubit gates");
      if (relaxing) {
        for (int q : qs) {
          const double idle = clock - flushed[std::size_t(q)];
          if (idle > 0.0) {
            const auto r = detail::relax_rates(idle, p);
            detail::relax_qubit_in_place(s, q, r.gamma, r.p_phi, rng, stats);
          }
          flushed[std::size_t(q)] = clock;
        }
      }
      apply_in_place(s, g);
      if (stats) ++stats->gates;
      if (!qs.empty()) {
        const double perr = qs.size() == 1 ? p.p1q : p.p2q;
        if (perr > 0.0 && rng.uniform() < perr)
          detail::insert_depolarizing(s, qs, rng, stats);
      }
    }
    clock += sc.moment_duration[m];
  }
  if (relaxing) {
    for (int q = 0; q < sc.n_qubits; ++q) {
      const double idle = clock - flushed[std::size_t(q)];
      if (idle > 0.0) {
        const auto r = detail::relax_rates(idle, p);
        detail::relax_qubit_in_place(s, q, r.gamma, r.p_phi, rng, stats);
      }
    }
  }
  return s;
}

// Classical readout channel on an already-measured bitstring.
inline std::string sample_readout(const std::string& bits,
                                  const NoiseProfile& p, Rng& rng,
                                  NoiseStats* stats = nullptr) {
  std::string out = bits;
  for (char& b : out) {
    if (b != '0' && b != '1')
      throw std::invalid_argument("sample_readout: bitstring expected");
    const double flip = b == '0' ? p.p_flip_0to1 : p.p_flip_1to0;
    if (flip > 0.0 && rng.uniform() < flip) {
      b = b == '0' ? '1' : '0';
      if (stats) ++stats->readout_flips;
    }
  }
  return out;
}

// Measures one qubit the way hardware does: the register relaxes for the
// measurement duration, the qubit is projected, and the classical bit may
// flip. The post-measurement state is not meaningful to callers.
inline int noisy_measure_bit(QuantumState& s, int q, const NoiseProfile& p,
                             Rng& rng, NoiseStats* stats = nullptr) {
  relaxation_pass_in_place(s, p.tmeas_ns, p, rng, stats);
  int bit = measure_qubit_in_place(s, q, rng);
  const double flip = bit == 0 ? p.p_flip_0to1 : p.p_flip_1to0;
  if (flip > 0.0 && rng.uniform() < flip) {
    bit ^= 1;
    if (stats) ++stats->readout_flips;
  }
  return bit;
}

// Full-register Z-basis sample with measurement relaxation and independent
// per-bit classical flips.
inline std::uint64_t noisy_sample_state(QuantumState s, const NoiseProfile& p,
                                        Rng& rng,
                                        NoiseStats* stats = nullptr) {
  relaxation_pass_in_place(s, p.tmeas_ns, p, rng, stats);
  std::uint64_t bits = sample_index(s, rng);
  for (int q = 0; q < s.n_qubits; ++q) {
    const bool one = (bits >> q) & 1;
    const double flip = one ? p.p_flip_1to0 : p.p_flip_0to1;
    if (flip > 0.0 && rng.uniform() < flip) {
      bits ^= std::uint64_t(1) << q;
      if (stats) ++stats->readout_flips;
    }
  }
  return bits;
}

}  // namespace hubsim
