#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hubsim/circuits.hpp"
#include "hubsim/engine.hpp"
#include "hubsim/lattice.hpp"
#include "hubsim/model.hpp"
#include "hubsim/noise.hpp"
#include "hubsim/observables.hpp"
#include "hubsim/oracle.hpp"
#include "hubsim/prep.hpp"
#include "hubsim/rng.hpp"

namespace hubsim {

// Interpolation schedule for H(eta) = hopping + eta * interaction. `eta`
// maps the time fraction x = t/T to [0, 1]; an empty function means the
// linear ramp eta(x) = x.
struct AdiabaticSchedule {
  double total_time = 60.0;
  int n_steps = 2400;
  std::function<double(double)> eta;

  double dt() const { return total_time / n_steps; }
  double eta_at(double x) const { return eta ? eta(x) : x; }
};

inline void validate(const AdiabaticSchedule& s) {
  if (!(s.total_time > 0.0))
    throw std::invalid_argument("adiabatic: total time must be positive");
  if (s.n_steps < 1)
    throw std::invalid_argument("adiabatic: need at least one step");
  if (std::abs(s.eta_at(0.0)) > 1e-12 || std::abs(s.eta_at(1.0) - 1.0) > 1e-12)
    throw std::invalid_argument("adiabatic: schedule must ramp from 0 to 1");
  double prev = 0.0;
  for (int j = 1; j <= s.n_steps; ++j) {
    const double x = s.eta_at(double(j) / s.n_steps);
    if (x < prev - 1e-12)
      throw std::invalid_argument("adiabatic: schedule must be non-decreasing");
    prev = x;
  }
}

// One first-order slice of the path Hamiltonian at interpolation eta:
// full-strength hopping, interaction scaled by eta.
inline Circuit path_slice(const HubbardTerms& terms, double dt, double eta) {
  const EvolutionAngles base = angles_for(terms.params, dt);
  return trotter_step(terms, {base.theta0, eta * base.thetaU});
}

// Evolves one Slater determinant along the interpolation path. Each slice
// freezes eta at its midpoint, which halves the schedule-discretization bias
// of a left-endpoint rule at identical cost.
inline QuantumState adiabatic_evolve(const Lattice& lat,
                                     const HubbardParams& p,
                                     const Occupation& occ,
                                     const AdiabaticSchedule& schedule,
                                     double trotter_dt) {
  validate(schedule);
  if (!(trotter_dt > 0.0))
    throw std::invalid_argument("adiabatic: step duration must be positive");
  if (std::abs(schedule.n_steps * trotter_dt - schedule.total_time) >
      1e-9 * std::max(1.0, schedule.total_time))
    throw std::invalid_argument("adiabatic: steps times dt must equal T");
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  const HubbardTerms terms = hubbard_terms(lat, p);
  QuantumState s = prepare_slater(occ, orb);
  for (int j = 0; j < schedule.n_steps; ++j) {
    const double eta = schedule.eta_at((j + 0.5) / schedule.n_steps);
    run_in_place(s, path_slice(terms, trotter_dt, eta));
  }
  return s;
}

inline QuantumState adiabatic_evolve(const Lattice& lat,
                                     const HubbardParams& p, int n_occ,
                                     const AdiabaticSchedule& schedule,
                                     double trotter_dt) {
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  return adiabatic_evolve(lat, p, default_occupation(orb, n_occ), schedule,
                          trotter_dt);
}

// Minimum gap along the path between the traveling ground manifold and the
// first level above it, in the sector the evolution runs in. Degeneracies
// the interaction never splits (the symmetry doublets at odd filling) travel
// with the ground state and do not count as a closing gap; what matters for
// adiabaticity is the distance to the states the bundle can leak into.
struct PathGap {
  double min_gap = 0.0;
  double eta_at_min = 0.0;
};

inline PathGap min_gap_along_path(const Lattice& lat, const HubbardParams& p,
                                  int n_occ, int n_eta_samples) {
  if (n_eta_samples < 2)
    throw std::invalid_argument("min_gap_along_path: need at least 2 samples");
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  const Occupation occ = default_occupation(orb, n_occ);
  const Sector sec = make_sector(lat.n_sites, occ.n_up, occ.n_down);
  if (sec.dim() > 4000)
    throw std::invalid_argument("min_gap_along_path: sector too large");
  PathGap out{0.0, -1.0};
  for (int k = 0; k < n_eta_samples; ++k) {
    const double eta = double(k) / (n_eta_samples - 1);
    HubbardParams scaled = p;
    scaled.u0 = eta * p.u0;
    const Eigen::MatrixXd h{sector_hamiltonian(lat, scaled, sec)};
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{
        h, Eigen::EigenvaluesOnly};
    const auto& ev = es.eigenvalues();
    const double tol = 1e-8 * std::max(1.0, std::abs(ev(0)));
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < ev.size(); ++i)
      if (ev(i) - ev(0) > tol) {
        gap = ev(i) - ev(0);
        break;
      }
    if (out.eta_at_min < 0.0 || gap < out.min_gap) out = {gap, eta};
  }
  return out;
}

// A filling is gap limited when the interaction splits the non-interacting
// ground manifold of the evolution sector at first order in eta: the lowest
// branch then separates by a gap that closes as eta -> 0, and an evolution
// started from an arbitrary manifold element cannot follow it in practical
// total time. Degeneracies the projected interaction leaves fully intact are
// protected bundles; they evolve as a whole and converge fine.
inline bool gap_limited(const Lattice& lat, const HubbardParams& p,
                        int n_occ) {
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  const Occupation occ = default_occupation(orb, n_occ);
  const Sector sec = make_sector(lat.n_sites, occ.n_up, occ.n_down);
  HubbardParams free = p;
  free.u0 = 0.0;
  const EigenResult r0 = diagonalize_sector(lat, free, sec);
  const int g = static_cast<int>(r0.ground_manifold.size());
  if (g <= 1) return false;
  HubbardParams interaction = p;
  interaction.gamma0 = 0.0;
  if (interaction.u0 == 0.0) interaction.u0 = 1.0;
  const Eigen::SparseMatrix<double> hu =
      sector_hamiltonian(lat, interaction, sec);
  Eigen::MatrixXd m(g, g);
  for (int a = 0; a < g; ++a) {
    const Eigen::VectorXd hva = hu * r0.ground_manifold[a];
    for (int b = 0; b < g; ++b) m(b, a) = r0.ground_manifold[b].dot(hva);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{m};
  const double split = es.eigenvalues()(g - 1) - es.eigenvalues()(0);
  return split > 1e-9 * std::max(1.0, std::abs(es.eigenvalues()(0)));
}

// Ground-state observables via the adiabatic path. When the Fermi level cuts
// a degenerate shell the evolution is run once per shell choice and the raw
// moments are averaged before the connected parts are formed, mirroring how
// the oracle averages over a degenerate ground manifold.
inline ObservableReport adiabatic_observables(const Lattice& lat,
                                              const HubbardParams& p,
                                              int n_occ,
                                              const AdiabaticSchedule& schedule,
                                              double trotter_dt) {
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  const auto choices = shell_choices(orb, n_occ);
  const PauliSum h = build_hubbard(lat, p);
  RawMoments avg = zero_moments(lat.n_sites);
  double energy = 0.0;
  const double w = 1.0 / static_cast<double>(choices.size());
  for (const Occupation& occ : choices) {
    const QuantumState s = adiabatic_evolve(lat, p, occ, schedule, trotter_dt);
    accumulate(avg, moments_of_state(s, lat), w);
    energy += w * expectation(s, h);
  }
  return connected_report(avg, energy);
}

// Shot-based variant: each shot evolves one trajectory of the full circuit
// (preparation included) and contributes a single Z-basis readout, so the
// estimate carries gate noise, relaxation, and readout flips. Shell choices
// rotate across shots. A null profile samples the ideal states instead.
inline ObservableReport adiabatic_observables_sampled(
    const Lattice& lat, const HubbardParams& p, int n_occ,
    const AdiabaticSchedule& schedule, double trotter_dt, int shots,
    std::uint64_t seed, const NoiseProfile* noise = nullptr,
    NoiseStats* stats = nullptr) {
  validate(schedule);
  if (shots < 1)
    throw std::invalid_argument("adiabatic: need at least one shot");
  const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
  const auto choices = shell_choices(orb, n_occ);
  const PauliSum h = build_hubbard(lat, p);
  const HubbardTerms terms = hubbard_terms(lat, p);

  std::vector<Circuit> full;
  for (const Occupation& occ : choices) {
    Circuit c = slater_circuit(occ, orb);
    for (int j = 0; j < schedule.n_steps; ++j) {
      const double eta = schedule.eta_at((j + 0.5) / schedule.n_steps);
      c.append(path_slice(terms, trotter_dt, eta));
    }
    full.push_back(std::move(c));
  }

  std::vector<std::uint64_t> samples;
  samples.reserve(shots);
  double energy = 0.0;
  if (noise != nullptr && !is_noiseless(*noise)) {
    std::vector<ScheduledCircuit> scheduled;
    for (const Circuit& c : full)
      scheduled.push_back(hubsim::schedule(c, *noise));
    for (int shot = 0; shot < shots; ++shot) {
      Rng rng = derive_rng(seed, std::uint64_t(shot));
      const auto& sc = scheduled[shot % scheduled.size()];
      QuantumState s(2 * lat.n_sites);
      s = run_trajectory_from(std::move(s), sc, *noise, rng, stats);
      energy += expectation(s, h) / shots;
      samples.push_back(noisy_sample_state(std::move(s), *noise, rng, stats));
    }
  } else {
    std::vector<QuantumState> states;
    for (const Circuit& c : full)
      states.push_back(run(QuantumState(2 * lat.n_sites), c));
    for (int shot = 0; shot < shots; ++shot) {
      Rng rng = derive_rng(seed, std::uint64_t(shot));
      const QuantumState& s = states[shot % states.size()];
      samples.push_back(sample_index(s, rng));
    }
    for (const QuantumState& s : states)
      energy += expectation(s, h) / static_cast<double>(states.size());
  }
  return connected_report(moments_from_samples(samples, lat.n_sites), energy);
}

}  // namespace hubsim
