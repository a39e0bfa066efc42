#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hubsim/engine.hpp"
#include "hubsim/lattice.hpp"
#include "hubsim/model.hpp"
#include "hubsim/observables.hpp"
#include "hubsim/rng.hpp"

namespace hubsim {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Fixed-particle-number block of the Fock space. The basis is ordered
// up-major: ascending spin-up masks, and within each, ascending spin-down
// masks, so the flat index is rank(up) * C(N, n_down) + rank(down).
struct Sector {
  int n_sites = 0;
  int n_up = 0;
  int n_down = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> basis;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {
inline std::vector<std::uint32_t> masks_with_popcount(int n_bits, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n_bits); ++m)
    if (popcount64(m) == k) out.push_back(m);
  return out;  // ascending by construction
}
}  // namespace detail

inline Sector make_sector(int n_sites, int n_up, int n_down) {
  if (n_sites <= 0 || n_sites > 16)
    throw std::invalid_argument("sector: unsupported site count");
  if (n_up < 0 || n_up > n_sites || n_down < 0 || n_down > n_sites)
    throw std::invalid_argument("sector: occupation out of range");
  Sector s{n_sites, n_up, n_down, {}};
  const auto ups = detail::masks_with_popcount(n_sites, n_up);
  const auto downs = detail::masks_with_popcount(n_sites, n_down);
  s.basis.reserve(ups.size() * downs.size());
  for (const auto u : ups)
    for (const auto d : downs) s.basis.emplace_back(u, d);
  return s;
}

// Hubbard Hamiltonian restricted to the sector, assembled directly from
// fermionic rules: a hop i < j picks up the parity of occupied same-spin
// modes strictly between i and j; the diagonal counts double occupancies.
inline Eigen::SparseMatrix<double> sector_hamiltonian(const Lattice& lat,
                                                      const HubbardParams& p,
                                                      const Sector& sec) {
  validate(lat);
  validate(p);
  if (lat.n_sites != sec.n_sites)
    throw std::invalid_argument("sector_hamiltonian: lattice/sector mismatch");
  const int n = lat.n_sites;
  const std::size_t dim = sec.dim();
  if (dim == 0) throw std::invalid_argument("sector_hamiltonian: empty sector");
  if (dim > 200000)
    throw std::invalid_argument("sector_hamiltonian: dimension guard exceeded");

  const auto ups = detail::masks_with_popcount(n, sec.n_up);
  const auto downs = detail::masks_with_popcount(n, sec.n_down);
  std::unordered_map<std::uint32_t, std::size_t> up_rank, down_rank;
  for (std::size_t i = 0; i < ups.size(); ++i) up_rank[ups[i]] = i;
  for (std::size_t i = 0; i < downs.size(); ++i) down_rank[downs[i]] = i;
  const std::size_t nd = downs.size();

  const auto between_parity = [](std::uint32_t m, int lo, int hi) {
    const std::uint32_t mask = ((1u << hi) - 1) & ~((1u << (lo + 1)) - 1);
    return detail::popcount64(m & mask) & 1;
  };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(dim * (2 * lat.edges.size() + 1));
  for (std::size_t k = 0; k < dim; ++k) {
    const auto [u, d] = sec.basis[k];
    double diag = 0.0;
    for (int s = 0; s < n; ++s)
      if (((u >> s) & 1) && ((d >> s) & 1)) diag += p.u0;
    if (p.epsilon != 0.0) diag += p.epsilon * (sec.n_up + sec.n_down);
    if (diag != 0.0) trips.emplace_back(k, k, diag);
    if (p.gamma0 == 0.0) continue;
    for (auto [i, j] : lat.edges) {
      const bool ui = (u >> i) & 1, uj = (u >> j) & 1;
      if (ui != uj) {
        const std::uint32_t u2 = u ^ (1u << i) ^ (1u << j);
        const double sign = between_parity(u, i, j) ? -1.0 : 1.0;
        trips.emplace_back(up_rank.at(u2) * nd + down_rank.at(d), k,
                           -p.gamma0 * sign);
      }
      const bool di = (d >> i) & 1, dj = (d >> j) & 1;
      if (di != dj) {
        const std::uint32_t d2 = d ^ (1u << i) ^ (1u << j);
        const double sign = between_parity(d, i, j) ? -1.0 : 1.0;
        trips.emplace_back(up_rank.at(u) * nd + down_rank.at(d2), k,
                           -p.gamma0 * sign);
      }
    }
  }
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

struct EigenResult {
  double ground_energy = 0.0;
  Eigen::VectorXd ground_vector;
  double gap = 0.0;  // E1 - E0 within the sector
  Sector sector;
  // Orthonormal basis of the (near-)degenerate ground space; contains at
  // least ground_vector. Observables are averaged over it.
  std::vector<Eigen::VectorXd> ground_manifold;
};

namespace detail {

// Lanczos with full reorthogonalization; returns the lowest Ritz pairs.
// Only used past the dense-solver size cutoff. Degenerate levels collapse
// to a single Krylov copy, so the reported manifold is just the ground
// vector on this path.
inline void lanczos_lowest(const Eigen::SparseMatrix<double>& h, int want,
                           Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index dim = h.rows();
  const int m = static_cast<int>(std::min<Eigen::Index>(dim, 300));
  Eigen::MatrixXd v(dim, m);
  Eigen::VectorXd alpha(m), beta(m);
  Rng rng(0x5eedbeefULL);
  Eigen::VectorXd q(dim);
  for (Eigen::Index i = 0; i < dim; ++i) q(i) = rng.uniform() - 0.5;
  q.normalize();
  int steps = 0;
  for (int k = 0; k < m; ++k) {
    v.col(k) = q;
    Eigen::VectorXd w = h * q;
    alpha(k) = q.dot(w);
    w -= alpha(k) * q;
    if (k > 0) w -= beta(k - 1) * v.col(k - 1);
    // two-pass reorthogonalization against the whole basis
    for (int pass = 0; pass < 2; ++pass)
      w -= v.leftCols(k + 1) * (v.leftCols(k + 1).transpose() * w);
    beta(k) = w.norm();
    steps = k + 1;
    if (beta(k) < 1e-13) break;  // invariant subspace reached
    q = w / beta(k);
  }
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
  for (int k = 0; k < steps; ++k) {
    tri(k, k) = alpha(k);
    if (k + 1 < steps) tri(k, k + 1) = tri(k + 1, k) = beta(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
  const int got = std::min(want, steps);
  values = es.eigenvalues().head(got);
  vectors = v.leftCols(steps) * es.eigenvectors().leftCols(got);
  for (int k = 0; k < got; ++k) vectors.col(k).normalize();
}

inline constexpr std::size_t dense_solver_cutoff = 1000;

}  // namespace detail

inline EigenResult diagonalize_sector(const Lattice& lat, const HubbardParams& p,
                                      const Sector& sec) {
  const auto h = sector_hamiltonian(lat, p, sec);
  const std::size_t dim = sec.dim();
  EigenResult r;
  r.sector = sec;
  if (dim <= detail::dense_solver_cutoff) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(h)};
    const auto& ev = es.eigenvalues();
    r.ground_energy = ev(0);
    r.ground_vector = es.eigenvectors().col(0);
    r.gap = dim > 1 ? ev(1) - ev(0) : std::numeric_limits<double>::infinity();
    const double tol = 1e-8 * std::max(1.0, std::abs(ev(0)));
    for (Eigen::Index k = 0; k < ev.size() && ev(k) - ev(0) <= tol; ++k)
      r.ground_manifold.push_back(es.eigenvectors().col(k));
  } else {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    detail::lanczos_lowest(h, 2, values, vectors);
    r.ground_energy = values(0);
    r.ground_vector = vectors.col(0);
    r.gap = values.size() > 1 ? values(1) - values(0)
                              : std::numeric_limits<double>::infinity();
    r.ground_manifold.push_back(r.ground_vector);
  }
  return r;
}

// Global ground state over all (n_up, n_down) splittings of n_occ. Sectors
// are visited with n_up descending and replaced only on strict improvement,
// so an Sz <-> -Sz tie lands on the n_up >= n_down representative.
inline EigenResult ground(const Lattice& lat, const HubbardParams& p, int n_occ) {
  const int n = lat.n_sites;
  if (n_occ < 0 || n_occ > 2 * n)
    throw std::invalid_argument("ground: occupation out of range");
  EigenResult best;
  bool have = false;
  for (int n_up = std::min(n_occ, n); n_up >= 0; --n_up) {
    const int n_down = n_occ - n_up;
    if (n_down < 0 || n_down > n) continue;
    auto r = diagonalize_sector(lat, p, make_sector(n, n_up, n_down));
    if (!have || r.ground_energy < best.ground_energy - 1e-12) {
      best = std::move(r);
      have = true;
    }
  }
  if (!have) throw std::invalid_argument("ground: no sector");
  return best;
}

namespace detail {
// Diagonal moments of one sector vector, straight off the bitmasks.
inline RawMoments sector_moments(const Eigen::VectorXd& v, const Sector& sec) {
  RawMoments m = zero_moments(sec.n_sites);
  for (std::size_t k = 0; k < sec.dim(); ++k) {
    const double w = v(k) * v(k);
    if (w == 0.0) continue;
    const auto [u, d] = sec.basis[k];
    const double n0 = double((u >> 0) & 1) + double((d >> 0) & 1);
    const double s0 = 0.5 * (double((u >> 0) & 1) - double((d >> 0) & 1));
    for (int i = 0; i < sec.n_sites; ++i) {
      const double ni = double((u >> i) & 1) + double((d >> i) & 1);
      const double si = 0.5 * (double((u >> i) & 1) - double((d >> i) & 1));
      m.n[i] += w * ni;
      m.sz[i] += w * si;
      m.nn0[i] += w * n0 * ni;
      m.ss0[i] += w * s0 * si;
    }
  }
  return m;
}
}  // namespace detail

// Densities and site-0 correlations of the ground space. Raw moments are
// averaged over the manifold first; connected parts are formed afterwards.
inline ObservableReport ground_observables(const EigenResult& r,
                                           const Lattice& lat) {
  if (lat.n_sites != r.sector.n_sites)
    throw std::invalid_argument("ground_observables: lattice mismatch");
  if (r.ground_manifold.empty())
    throw std::invalid_argument("ground_observables: empty manifold");
  RawMoments avg = zero_moments(lat.n_sites);
  const double w = 1.0 / static_cast<double>(r.ground_manifold.size());
  for (const auto& v : r.ground_manifold)
    accumulate(avg, detail::sector_moments(v, r.sector), w);
  return connected_report(avg, r.ground_energy);
}

// Embeds a sector vector into the full register: amplitude of basis pair
// (u, d) goes to index u | (d << N). This matches the JW ordering used by
// the model module, so no extra sign appears.
inline QuantumState eigenpair_as_statevector(const EigenResult& r,
                                             const Sector& sec, int n_qubits) {
  if (n_qubits != 2 * sec.n_sites)
    throw std::invalid_argument("eigenpair_as_statevector: register mismatch");
  if (static_cast<std::size_t>(r.ground_vector.size()) != sec.dim())
    throw std::invalid_argument("eigenpair_as_statevector: vector mismatch");
  QuantumState s(n_qubits);
  s.amp[0] = 0.0;
  for (std::size_t k = 0; k < sec.dim(); ++k) {
    const auto [u, d] = sec.basis[k];
    s.amp[std::uint64_t(u) | (std::uint64_t(d) << sec.n_sites)] =
        r.ground_vector(k);
  }
  return s;
}

}  // namespace hubsim
