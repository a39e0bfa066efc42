#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hubsim/engine.hpp"
#include "hubsim/lattice.hpp"
#include "hubsim/model.hpp"
#include "hubsim/pauli.hpp"

namespace hubsim {

// Per-site densities plus site-0 referenced connected correlations.
struct ObservableReport {
  std::vector<double> charge_density;  // n_i
  std::vector<double> spin_density;    // S_i^z
  std::vector<double> charge_corr;     // C^c_{0,j}
  std::vector<double> spin_corr;       // C^s_{0,j}
  double energy = 0.0;
};

// Raw first and second diagonal moments. Degenerate ground manifolds are
// averaged at this level, before the connected parts are formed, so the
// report does not depend on the arbitrary basis chosen within the manifold.
struct RawMoments {
  std::vector<double> n;    // <n_i>
  std::vector<double> sz;   // <S_i^z>
  std::vector<double> nn0;  // <n_0 n_j>
  std::vector<double> ss0;  // <S_0^z S_j^z>
};

inline RawMoments zero_moments(int n_sites) {
  RawMoments m;
  m.n.assign(n_sites, 0.0);
  m.sz.assign(n_sites, 0.0);
  m.nn0.assign(n_sites, 0.0);
  m.ss0.assign(n_sites, 0.0);
  return m;
}

inline void accumulate(RawMoments& acc, const RawMoments& m, double weight) {
  const auto axpy = [weight](std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += weight * b[i];
  };
  axpy(acc.n, m.n);
  axpy(acc.sz, m.sz);
  axpy(acc.nn0, m.nn0);
  axpy(acc.ss0, m.ss0);
}

inline ObservableReport connected_report(const RawMoments& m, double energy) {
  const int n = static_cast<int>(m.n.size());
  ObservableReport r;
  r.charge_density = m.n;
  r.spin_density = m.sz;
  r.charge_corr.resize(n);
  r.spin_corr.resize(n);
  for (int j = 0; j < n; ++j) {
    r.charge_corr[j] = m.nn0[j] - m.n[0] * m.n[j];
    r.spin_corr[j] = m.ss0[j] - m.sz[0] * m.sz[j];
  }
  r.energy = energy;
  return r;
}

// Product of two sums that contain only I/Z strings (Z squares to I).
inline PauliSum diagonal_product(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("diagonal_product: size mismatch");
  PauliSum out{a.n_qubits, {}};
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      std::string ops(a.n_qubits, 'I');
      for (int q = 0; q < a.n_qubits; ++q) {
        const bool za = ta.ops[q] == 'Z', zb = tb.ops[q] == 'Z';
        if ((ta.ops[q] != 'I' && !za) || (tb.ops[q] != 'I' && !zb))
          throw std::invalid_argument("diagonal_product: non-diagonal term");
        if (za != zb) ops[q] = 'Z';
      }
      out.terms.push_back({std::move(ops), ta.coeff * tb.coeff});
    }
  return merged(out);
}

// Total and spin-resolved density operators for one site.
inline PauliSum site_number(int site, int n_sites) {
  const int nq = 2 * n_sites;
  return merged(jw_number(site, nq) + jw_number(site + n_sites, nq));
}

inline PauliSum site_spin_z(int site, int n_sites) {
  const int nq = 2 * n_sites;
  return merged(jw_number(site, nq) + scaled(jw_number(site + n_sites, nq), -1.0));
}

inline RawMoments moments_of_state(const QuantumState& s, const Lattice& lat) {
  const int n = lat.n_sites;
  if (s.n_qubits != 2 * n)
    throw std::invalid_argument("moments_of_state: register size mismatch");
  RawMoments m = zero_moments(n);
  const PauliSum n0 = site_number(0, n);
  const PauliSum s0 = scaled(site_spin_z(0, n), 0.5);
  for (int i = 0; i < n; ++i) {
    const PauliSum ni = site_number(i, n);
    const PauliSum si = scaled(site_spin_z(i, n), 0.5);
    m.n[i] = expectation(s, ni);
    m.sz[i] = expectation(s, si);
    m.nn0[i] = expectation(s, diagonal_product(n0, ni));
    m.ss0[i] = expectation(s, diagonal_product(s0, si));
  }
  return m;
}

// Moments estimated from Z-basis samples of the full register: bit q is the
// occupation of mode q, modes [0,N) spin up and [N,2N) spin down.
inline RawMoments moments_from_samples(const std::vector<std::uint64_t>& samples,
                                       int n_sites) {
  if (samples.empty())
    throw std::invalid_argument("moments_from_samples: no samples");
  RawMoments m = zero_moments(n_sites);
  const double w = 1.0 / static_cast<double>(samples.size());
  for (const std::uint64_t b : samples) {
    const auto occ_up = [&](int i) { return double((b >> i) & 1); };
    const auto occ_dn = [&](int i) { return double((b >> (i + n_sites)) & 1); };
    const double n0 = occ_up(0) + occ_dn(0);
    const double s0 = 0.5 * (occ_up(0) - occ_dn(0));
    for (int i = 0; i < n_sites; ++i) {
      const double ni = occ_up(i) + occ_dn(i);
      const double si = 0.5 * (occ_up(i) - occ_dn(i));
      m.n[i] += w * ni;
      m.sz[i] += w * si;
      m.nn0[i] += w * n0 * ni;
      m.ss0[i] += w * s0 * si;
    }
  }
  return m;
}

inline ObservableReport measure_observables(const QuantumState& s,
                                            const Lattice& lat) {
  return connected_report(moments_of_state(s, lat), 0.0);
}

inline ObservableReport measure_observables(const QuantumState& s,
                                            const Lattice& lat,
                                            const PauliSum& hamiltonian) {
  return connected_report(moments_of_state(s, lat), expectation(s, hamiltonian));
}

}  // namespace hubsim
