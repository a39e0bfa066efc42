#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hubsim/adiabatic.hpp"
#include "hubsim/iqpe.hpp"
#include "hubsim/noise.hpp"
#include "hubsim/oracle.hpp"
#include "hubsim/table.hpp"
#include "hubsim/version.hpp"

namespace hubsim {

// A finished experiment: data rows, the replay manifest, and whether every
// tolerance flag in the table passed (drives the process exit status).
struct ExperimentResult {
  ResultTable table;
  RunManifest manifest;
  bool ok = true;
};

inline RunManifest make_manifest(std::string command, std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.master_seed = seed;
  m.version = version_tag;
  return m;
}

inline double phase_quantum(const TimeScale& ts, int m_bits) {
  return (ts.e_hi - ts.e_lo) / std::ldexp(1.0, m_bits);
}

// Operational Trotter floor. A high-resolution noiseless readout locks onto
// the Trotterized circuit's own eigenphase, not the exact energy; the gap
// between them, padded by the readout's own quantum, bounds the systematic
// bias every lower-resolution estimate of the same circuit inherits.
inline double trotter_floor(const Lattice& lat, const HubbardParams& p,
                            int n_occ, double e_exact, const TimeScale& ts,
                            int n_trot, int m_hi = 8) {
  const EnergyEstimate e =
      run_iqpe(lat, p, n_occ, make_iqpe_config(ts, m_hi, n_trot));
  return std::abs(e.energy - e_exact) + phase_quantum(ts, m_hi);
}

// Mean and sample standard deviation of repeated noisy IQPE estimates. Run r
// uses the seed derived from (master, r), so any run can be replayed alone.
struct NoisySeries {
  std::vector<double> energies;
  double mean = 0.0;
  double stddev = 0.0;
};

inline NoisySeries noisy_gse_series(const Lattice& lat, const HubbardParams& p,
                                    int n_occ, const IqpeConfig& base,
                                    const NoiseProfile& noise, int runs,
                                    std::uint64_t master_seed,
                                    NoiseStats* stats = nullptr) {
  if (runs < 1) throw std::invalid_argument("noisy series: need runs >= 1");
  NoisySeries s;
  for (int r = 0; r < runs; ++r) {
    IqpeConfig cfg = base;
    cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(r));
    s.energies.push_back(run_iqpe(lat, p, n_occ, cfg, &noise, stats).energy);
  }
  for (double e : s.energies) s.mean += e;
  s.mean /= runs;
  if (runs > 1) {
    double ss = 0.0;
    for (double e : s.energies) ss += (e - s.mean) * (e - s.mean);
    s.stddev = std::sqrt(ss / (runs - 1));
  }
  return s;
}

// Half of every gate and readout error probability, twice the relaxation
// times, durations untouched.
inline NoiseProfile half_noise(NoiseProfile p) {
  p = scale(p, "p1q", 0.5);
  p = scale(p, "p2q", 0.5);
  p = scale(p, "readout", 0.5);
  p = scale(p, "t1t2", 2.0);
  return p;
}

// Profile with every channel off except the selected one at base * factor.
// Durations are kept: they describe the schedule, not a noise channel, and
// the thermal sweep is meaningless without them.
inline NoiseProfile isolated_profile(const NoiseProfile& base,
                                     const std::string& selector,
                                     double factor) {
  const NoiseProfile scaled = scale(base, selector, factor);
  NoiseProfile iso;
  iso.t1q_ns = base.t1q_ns;
  iso.t2q_ns = base.t2q_ns;
  iso.tmeas_ns = base.tmeas_ns;
  iso.clipped = scaled.clipped;
  if (selector == "p1q") {
    iso.p1q = scaled.p1q;
  } else if (selector == "p2q") {
    iso.p2q = scaled.p2q;
  } else if (selector == "t1") {
    iso.t1_us = scaled.t1_us;
  } else if (selector == "t2") {
    iso.t1_us = scaled.t1_us;  // T2 alone is unphysical without T1's bound
    iso.t2_us = scaled.t2_us;
  } else if (selector == "t1t2") {
    iso.t1_us = scaled.t1_us;
    iso.t2_us = scaled.t2_us;
  } else if (selector == "p01" || selector == "p10" ||
             selector == "readout") {
    iso.p_flip_0to1 = scaled.p_flip_0to1;
    iso.p_flip_1to0 = scaled.p_flip_1to0;
    if (selector == "p01") iso.p_flip_1to0 = 0.0;
    if (selector == "p10") iso.p_flip_0to1 = 0.0;
  } else {
    throw std::invalid_argument("isolated_profile: unknown selector " +
                                selector);
  }
  validate(iso);
  return iso;
}

// ---------------------------------------------------------------------------
// gse-scan: noiseless IQPE ground-state energies over a (u0, n_occ) grid.

struct GseScanArgs {
  Lattice lattice = hexagon6();
  HubbardParams base{1.0, 0.0};
  std::vector<double> u0_values{0.0};
  std::vector<int> n_occ_values{};
  int m_bits = 5;
  int n_trot = 15;
  double margin = 0.05;
  bool fast_powers = false;
  std::uint64_t seed = 1;
};

inline ExperimentResult gse_scan(const GseScanArgs& a) {
  if (a.u0_values.empty() || a.n_occ_values.empty())
    throw std::invalid_argument("gse-scan: empty grid");
  ExperimentResult out;
  out.manifest = make_manifest("gse-scan", a.seed);
  out.table.columns = {"n_occ", "u0",      "e_iqpe", "e_exact", "abs_err",
                       "delta_e", "t",     "e_lo",   "e_hi",    "pass"};
  for (const double u0 : a.u0_values) {
    HubbardParams p = a.base;
    p.u0 = u0;
    const TimeScale ts = choose_time_scale(build_hubbard(a.lattice, p),
                                           a.margin);
    IqpeConfig cfg = make_iqpe_config(ts, a.m_bits, a.n_trot, 1, a.seed);
    cfg.fast_powers = a.fast_powers;
    const double de = phase_quantum(ts, a.m_bits);
    for (const int n : a.n_occ_values) {
      const EigenResult g = ground(a.lattice, p, n);
      const EnergyEstimate e = run_iqpe(a.lattice, p, n, cfg);
      const double err = std::abs(e.energy - g.ground_energy);
      const bool pass = err <= de;
      out.ok = out.ok && pass;
      out.table.add_row({static_cast<std::int64_t>(n), u0, e.energy,
                         g.ground_energy, err, de, ts.t, ts.e_lo, ts.e_hi,
                         static_cast<std::int64_t>(pass)});
    }
    if (a.u0_values.size() == 1) {
      out.manifest.t = ts.t;
      out.manifest.e_lo = ts.e_lo;
      out.manifest.e_hi = ts.e_hi;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// convergence: error versus bit count at fixed depth, and versus depth at
// fixed bit count.

struct ConvergenceArgs {
  Lattice lattice = hexagon6();
  HubbardParams base{1.0, 3.0};
  std::vector<int> n_occ_values{3, 6, 9};
  std::vector<int> m_values{2, 3, 4, 5};
  int n_trot_fixed = 15;
  std::vector<int> n_trot_values{};
  int m_fixed = 5;
  double margin = 0.05;
  bool fast_powers = false;
  std::uint64_t seed = 1;
};

inline ExperimentResult convergence(const ConvergenceArgs& a) {
  ExperimentResult out;
  out.manifest = make_manifest("convergence", a.seed);
  out.table.columns = {"sweep",   "value",   "n_occ",   "u0",   "e_iqpe",
                       "e_exact", "abs_err", "delta_e", "t",    "e_lo",
                       "e_hi",    "pass"};
  const TimeScale ts =
      choose_time_scale(build_hubbard(a.lattice, a.base), a.margin);
  out.manifest.t = ts.t;
  out.manifest.e_lo = ts.e_lo;
  out.manifest.e_hi = ts.e_hi;

  const auto emit = [&](const std::string& sweep, int value, int m_bits,
                        int n_trot) {
    IqpeConfig cfg = make_iqpe_config(ts, m_bits, n_trot, 1, a.seed);
    cfg.fast_powers = a.fast_powers;
    const double de = phase_quantum(ts, m_bits);
    for (const int n : a.n_occ_values) {
      const EigenResult g = ground(a.lattice, a.base, n);
      const EnergyEstimate e = run_iqpe(a.lattice, a.base, n, cfg);
      const double err = std::abs(e.energy - g.ground_energy);
      const bool pass = err <= de;
      out.ok = out.ok && pass;
      out.table.add_row({sweep, static_cast<std::int64_t>(value),
                         static_cast<std::int64_t>(n), a.base.u0, e.energy,
                         g.ground_energy, err, de, ts.t, ts.e_lo, ts.e_hi,
                         static_cast<std::int64_t>(pass)});
    }
  };
  for (const int m : a.m_values) emit("m_bits", m, m, a.n_trot_fixed);
  for (const int nt : a.n_trot_values) emit("n_trot", nt, a.m_fixed, nt);
  return out;
}

// ---------------------------------------------------------------------------
// adiabatic: densities and correlations versus the oracle per filling.

struct AdiabaticScanArgs {
  Lattice lattice = hexagon6();
  HubbardParams base{1.0, 3.0};
  std::vector<int> n_occ_values{2, 3, 4, 5, 6, 7, 8, 9, 10};
  AdiabaticSchedule schedule{};
  bool include_gapless = false;
  double tolerance = 0.02;
  const NoiseProfile* noise = nullptr;
  int shots = 0;  // 0: exact expectations; otherwise sampled readouts
  std::uint64_t seed = 1;
};

inline ExperimentResult adiabatic_scan(const AdiabaticScanArgs& a) {
  ExperimentResult out;
  out.manifest = make_manifest("adiabatic", a.seed);
  out.table.columns = {"n_occ", "observable",  "site",      "simulated",
                       "exact", "abs_err",     "gap_limited", "tolerance",
                       "pass"};
  for (const int n : a.n_occ_values) {
    const bool limited = gap_limited(a.lattice, a.base, n);
    if (limited && !a.include_gapless) continue;
    const ObservableReport exact =
        ground_observables(ground(a.lattice, a.base, n), a.lattice);
    const ObservableReport sim =
        a.shots > 0
            ? adiabatic_observables_sampled(a.lattice, a.base, n, a.schedule,
                                            a.schedule.dt(), a.shots, a.seed,
                                            a.noise)
            : adiabatic_observables(a.lattice, a.base, n, a.schedule,
                                    a.schedule.dt());
    const auto emit = [&](const std::string& name, int site, double s,
                          double e) {
      const double err = std::abs(s - e);
      const bool pass = limited || err <= a.tolerance;
      out.ok = out.ok && pass;
      out.table.add_row({static_cast<std::int64_t>(n), name,
                         static_cast<std::int64_t>(site), s, e, err,
                         static_cast<std::int64_t>(limited), a.tolerance,
                         static_cast<std::int64_t>(pass)});
    };
    for (int j = 0; j < a.lattice.n_sites; ++j) {
      emit("n", j, sim.charge_density[j], exact.charge_density[j]);
      emit("sz", j, sim.spin_density[j], exact.spin_density[j]);
      emit("cc", j, sim.charge_corr[j], exact.charge_corr[j]);
      emit("cs", j, sim.spin_corr[j], exact.spin_corr[j]);
    }
    emit("energy", -1, sim.energy, exact.energy);
  }
  return out;
}

// ---------------------------------------------------------------------------
// noise-sweep: repeated noisy IQPE at scaled noise strengths.

struct NoiseSweepArgs {
  Lattice lattice = ring(3);
  HubbardParams base{1.0, 3.0};
  int n_occ = 3;
  int m_bits = 4;
  int n_trot = 12;
  double margin = 0.05;
  int shots = 50000;  // mirrors the reported sampling effort
  int runs = 50;
  std::uint64_t seed = 1;
  NoiseProfile profile = ibm_baseline();
  std::string selector = "p2q";
  std::vector<double> factors{0.2, 1.0, 5.0};
  bool isolated = true;
};

inline ExperimentResult noise_sweep(const NoiseSweepArgs& a) {
  ExperimentResult out;
  out.manifest = make_manifest("noise-sweep", a.seed);
  out.table.columns = {"selector", "factor", "mean_e"};
  if (a.runs > 1) out.table.columns.push_back("std_e");
  for (const char* c : {"runs", "shots", "e_exact", "delta_e", "t", "e_lo",
                        "e_hi"})
    out.table.columns.push_back(c);

  const TimeScale ts =
      choose_time_scale(build_hubbard(a.lattice, a.base), a.margin);
  out.manifest.t = ts.t;
  out.manifest.e_lo = ts.e_lo;
  out.manifest.e_hi = ts.e_hi;
  const IqpeConfig cfg =
      make_iqpe_config(ts, a.m_bits, a.n_trot, a.shots, a.seed);
  const double exact = ground(a.lattice, a.base, a.n_occ).ground_energy;
  const double de = phase_quantum(ts, a.m_bits);

  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const double f = a.factors[i];
    const NoiseProfile np = a.isolated
                                ? isolated_profile(a.profile, a.selector, f)
                                : scale(a.profile, a.selector, f);
    const std::uint64_t point_seed =
        derive_seed(a.seed, static_cast<std::uint64_t>(i));
    for (int r = 0; r < a.runs; ++r)
      out.manifest.per_run_seeds.push_back(
          derive_seed(point_seed, static_cast<std::uint64_t>(r)));
    const NoisySeries s = noisy_gse_series(a.lattice, a.base, a.n_occ, cfg,
                                           np, a.runs, point_seed);
    std::vector<Cell> row{a.selector, f, s.mean};
    if (a.runs > 1) row.push_back(s.stddev);
    for (const Cell& c :
         std::vector<Cell>{static_cast<std::int64_t>(a.runs),
                           static_cast<std::int64_t>(a.shots), exact, de,
                           ts.t, ts.e_lo, ts.e_hi})
      row.push_back(c);
    out.table.add_row(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// fig8: the reduced three-site benchmark, exact versus noisy variants.

struct Fig8Args {
  Lattice lattice = ring(3);
  HubbardParams base{1.0, 0.0};
  std::vector<double> u0_values{0, 1, 2, 3, 4, 5, 6};
  int n_occ = 3;
  int m_bits = 4;
  int n_trot = 12;
  int shots = 10000;
  int runs = 20;
  bool include_improved = true;
  int improved_m_bits = 5;
  int improved_n_trot = 15;
  int improved_shots = 50000;
  int improved_runs = 50;
  double margin = 0.05;
  std::uint64_t seed = 1;
  NoiseProfile profile = ibm_baseline();
};

inline ExperimentResult fig8(const Fig8Args& a) {
  ExperimentResult out;
  out.manifest = make_manifest("fig8", a.seed);
  out.table.columns = {"u0",    "variant", "mean_e",  "std_e", "runs",
                       "shots", "e_exact", "delta_e", "t",     "e_lo",
                       "e_hi"};
  const NoiseProfile half = half_noise(a.profile);
  for (std::size_t i = 0; i < a.u0_values.size(); ++i) {
    HubbardParams p = a.base;
    p.u0 = a.u0_values[i];
    const TimeScale ts =
        choose_time_scale(build_hubbard(a.lattice, p), a.margin);
    const double exact = ground(a.lattice, p, a.n_occ).ground_energy;

    const auto emit = [&](const std::string& variant, const NoiseProfile& np,
                          int m_bits, int n_trot, int shots, int runs,
                          std::uint64_t salt) {
      const IqpeConfig cfg = make_iqpe_config(ts, m_bits, n_trot, shots, 0);
      const NoisySeries s = noisy_gse_series(
          a.lattice, p, a.n_occ, cfg, np, runs,
          derive_seed(a.seed, salt, static_cast<std::uint64_t>(i)));
      out.table.add_row({p.u0, variant, s.mean, s.stddev,
                         static_cast<std::int64_t>(runs),
                         static_cast<std::int64_t>(shots), exact,
                         phase_quantum(ts, m_bits), ts.t, ts.e_lo, ts.e_hi});
    };

    out.table.add_row({p.u0, std::string("exact"), exact, 0.0,
                       static_cast<std::int64_t>(0),
                       static_cast<std::int64_t>(0), exact,
                       phase_quantum(ts, a.m_bits), ts.t, ts.e_lo, ts.e_hi});
    emit("noisy-baseline", a.profile, a.m_bits, a.n_trot, a.shots, a.runs, 1);
    emit("noisy-half", half, a.m_bits, a.n_trot, a.shots, a.runs, 2);
    if (a.include_improved)
      emit("noisy-improved", a.profile, a.improved_m_bits, a.improved_n_trot,
           a.improved_shots, a.improved_runs, 3);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ed: oracle energies and gaps as requested.

struct EdArgs {
  Lattice lattice = hexagon6();
  HubbardParams base{1.0, 0.0};
  std::vector<double> u0_values{3.0};
  std::vector<int> n_occ_values{};
};

inline ExperimentResult ed_table(const EdArgs& a) {
  if (a.u0_values.empty() || a.n_occ_values.empty())
    throw std::invalid_argument("ed: empty grid");
  ExperimentResult out;
  out.manifest = make_manifest("ed", 0);
  out.table.columns = {"n_occ", "u0",  "n_up",        "n_down",
                       "energy", "gap", "manifold_dim"};
  for (const double u0 : a.u0_values) {
    HubbardParams p = a.base;
    p.u0 = u0;
    for (const int n : a.n_occ_values) {
      const EigenResult g = ground(a.lattice, p, n);
      out.table.add_row(
          {static_cast<std::int64_t>(n), u0,
           static_cast<std::int64_t>(g.sector.n_up),
           static_cast<std::int64_t>(g.sector.n_down), g.ground_energy,
           g.gap, static_cast<std::int64_t>(g.ground_manifold.size())});
    }
  }
  return out;
}

}  // namespace hubsim
