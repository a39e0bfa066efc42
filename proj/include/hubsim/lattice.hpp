#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hubsim {

// Site graph. Edges are unordered pairs stored with first < second, kept
// sorted lexicographically; this fixes the bond order used by the Trotter
// builders.
struct Lattice {
  int n_sites = 0;
  std::vector<std::pair<int, int>> edges;
  std::string name;
};

inline void validate(const Lattice& lat) {
  if (lat.n_sites <= 0) throw std::invalid_argument("lattice: empty");
  std::vector<std::pair<int, int>> seen;
  for (auto [i, j] : lat.edges) {
    if (i == j) throw std::invalid_argument("lattice: self-loop");
    if (i < 0 || j < 0 || i >= lat.n_sites || j >= lat.n_sites)
      throw std::invalid_argument("lattice: edge site out of range");
    auto e = std::minmax(i, j);
    if (std::find(seen.begin(), seen.end(), std::make_pair(e.first, e.second)) != seen.end())
      throw std::invalid_argument("lattice: duplicate edge");
    seen.emplace_back(e.first, e.second);
  }
}

namespace detail {
inline Lattice make_lattice(int n, std::vector<std::pair<int, int>> edges,
                            std::string name) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  Lattice lat{n, std::move(edges), std::move(name)};
  validate(lat);
  return lat;
}
}  // namespace detail

// Six-site ring, the graphene hexagon fragment.
inline Lattice hexagon6() {
  return detail::make_lattice(
      6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}, "hexagon6");
}

// Open chain, edges (i, i+1).
inline Lattice chain(int n) {
  if (n < 1) throw std::invalid_argument("chain: n must be positive");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return detail::make_lattice(n, std::move(edges), "chain:" + std::to_string(n));
}

// Closed ring of n >= 3 sites. ring(3) is the triangle used by the reduced
// noisy benchmarks; ring(6) equals hexagon6 up to the name.
inline Lattice ring(int n) {
  if (n < 3) throw std::invalid_argument("ring: n must be at least 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return detail::make_lattice(n, std::move(edges), "ring:" + std::to_string(n));
}

// True when the edge set is exactly the canonical cycle 0-1-...-(n-1)-0.
// Only lattices built by hexagon6()/ring() are expected to match; a relabeled
// cycle simply falls back to the generic treatment.
inline bool is_canonical_cycle(const Lattice& lat) {
  int n = lat.n_sites;
  if (n < 3 || static_cast<int>(lat.edges.size()) != n) return false;
  std::vector<std::pair<int, int>> want;
  for (int i = 0; i + 1 < n; ++i) want.emplace_back(i, i + 1);
  want.emplace_back(0, n - 1);
  std::sort(want.begin(), want.end());
  return lat.edges == want;
}

// Parses "hexagon6", "chain:N", "ring:N".
inline Lattice lattice_from_name(const std::string& name) {
  if (name == "hexagon6") return hexagon6();
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    const int n = std::stoi(name.substr(colon + 1));
    if (kind == "chain") return chain(n);
    if (kind == "ring") return ring(n);
  }
  throw std::invalid_argument("unknown lattice: " + name);
}

}  // namespace hubsim
