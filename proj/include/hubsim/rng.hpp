#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>

namespace hubsim {

// splitmix64, used everywhere randomness is needed. One instance per logical
// stream; streams are derived by folding integer labels into the seed so that
// a given (seed, run, iteration, shot) tuple always yields the same sequence
// no matter which order the work is executed in.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n small
  std::uint64_t below(std::uint64_t n) {
    auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }
};

namespace detail {
inline std::uint64_t fold_label(std::uint64_t state, std::uint64_t label) {
  Rng r(state ^ (0xD1B54A32D192ED03ull * (label + 1)));
  return r.next();
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t seed) { return seed; }

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label, Rest... rest) {
  return derive_seed(detail::fold_label(seed, label),
                     static_cast<std::uint64_t>(rest)...);
}

template <typename... Labels>
Rng derive_rng(std::uint64_t seed, Labels... labels) {
  return Rng(derive_seed(seed, static_cast<std::uint64_t>(labels)...));
}

}  // namespace hubsim
