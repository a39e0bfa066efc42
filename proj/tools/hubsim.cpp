// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner. Each subcommand prints one result table (CSV by
// default, JSON on request) with the replay manifest embedded, and exits 0
// only when every tolerance flag in the table passed. Identical command
// line and seed give byte-identical output; wall time goes to stderr so it
// never perturbs the artifact.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hubsim/experiments.hpp"

namespace {

using namespace hubsim;
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// Grid syntax: single values, comma lists, and unit-step ranges may be
// mixed, e.g. "3", "0..6", "1,3..5".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dots = tok.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stod(tok));
        continue;
      }
      const double lo = std::stod(tok.substr(0, dots));
      const double hi = std::stod(tok.substr(dots + 2));
      if (hi < lo)
        throw std::runtime_error("descending range '" + tok + "'");
      for (double v = lo; v <= hi + 1e-9; v += 1.0) out.push_back(v);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("cannot parse grid entry '" + tok + "'");
    }
  }
  if (out.empty()) throw std::runtime_error("empty grid '" + text + "'");
  return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  for (const double v : parse_grid(text)) {
    if (std::abs(v - std::round(v)) > 1e-9)
      throw std::runtime_error("grid '" + text + "' wants integers");
    out.push_back(static_cast<int>(std::round(v)));
  }
  return out;
}

double single_value(const std::string& text, const char* flag) {
  const std::vector<double> v = parse_grid(text);
  if (v.size() != 1)
    throw std::runtime_error(std::string(flag) + " wants a single value, " +
                             "got grid '" + text + "'");
  return v[0];
}

NoiseProfile resolved_profile(const std::string& file,
                              const std::vector<std::string>& scales) {
  NoiseProfile p = ibm_baseline();
  if (!file.empty()) {
    std::ifstream is(file);
    if (!is)
      throw std::runtime_error("cannot open noise profile file " + file);
    p = load_noise_profile(is);
  }
  for (const std::string& s : scales) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--scale wants KEY=FACTOR, got '" + s + "'");
    p = scale(p, s.substr(0, eq), std::stod(s.substr(eq + 1)));
  }
  return p;
}

std::filesystem::path out_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("HUBSIM_OUT_DIR"))
      p = std::filesystem::path(dir) / p;
  return p;
}

void write_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path p = out_path(out);
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open output file " + p.string());
  f << text;
  std::cerr << "wrote " << p.string() << '\n';
}

int emit(ExperimentResult r, const std::string& command, ConfigEcho config,
         const std::string& out, const std::string& format) {
  r.manifest.command = command;
  r.manifest.config = std::move(config);
  std::ostringstream os;
  if (format == "json")
    write_json(os, r.table, &r.manifest);
  else
    write_csv(os, r.table, &r.manifest);
  write_text(os.str(), out);
  return r.ok ? 0 : 1;
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

// Flat key = value defaults, '#' comments. Keys are the long flag names
// without the leading dashes; values given on the command line win.
void apply_config(CLI::App* sub, const std::string& file) {
  if (file.empty()) return;
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot open config file " + file);
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    const std::string where = file + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw std::runtime_error(where + ": expected key = value");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || key == "config")
      throw std::runtime_error(where + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string cmdline;
  for (int i = 0; i < argc; ++i) {
    if (i) cmdline += ' ';
    cmdline += argv[i];
  }
  const auto t_start = std::chrono::steady_clock::now();

  CLI::App app{
      "Hubbard ground states on small graphene fragments: iterative phase "
      "estimation and adiabatic evolution, noiseless or noisy"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ------------------------------------------------------------- gse-scan
  struct {
    std::string lattice = "hexagon6", u0 = "0", nocc = "1..11";
    std::string out, format = "csv", config;
    int m_bits = 5, n_trot = 15;
    std::uint64_t seed = 1;
    bool fast = false;
  } gv;
  auto* gse = app.add_subcommand(
      "gse-scan", "Noiseless IQPE energies over a (u0, n_occ) grid");
  gse->add_option("--lattice", gv.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  gse->add_option("--u0", gv.u0, "interaction grid, e.g. 3 or 0..6")
      ->capture_default_str();
  gse->add_option("--nocc", gv.nocc, "filling grid, e.g. 4 or 1..11")
      ->capture_default_str();
  gse->add_option("--m-bits", gv.m_bits, "phase bits")->capture_default_str();
  gse->add_option("--trotter-steps", gv.n_trot, "slices per unit evolution")
      ->capture_default_str();
  gse->add_option("--seed", gv.seed, "master seed")->capture_default_str();
  gse->add_flag("--fast-powers", gv.fast,
                "square the unit step instead of repeating it (noiseless "
                "depth shortcut)");
  gse->add_option("--out", gv.out,
                  "output file; relative paths join HUBSIM_OUT_DIR");
  gse->add_option("--format", gv.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  gse->add_option("--config", gv.config,
                  "flat key=value defaults; command line flags override");
  gse->callback([&] {
    apply_config(gse, gv.config);
    GseScanArgs a;
    a.lattice = lattice_from_name(gv.lattice);
    a.u0_values = parse_grid(gv.u0);
    a.n_occ_values = parse_int_grid(gv.nocc);
    a.m_bits = gv.m_bits;
    a.n_trot = gv.n_trot;
    a.seed = gv.seed;
    a.fast_powers = gv.fast;
    exit_code = emit(gse_scan(a), cmdline,
                     {{"lattice", gv.lattice},
                      {"u0", gv.u0},
                      {"nocc", gv.nocc},
                      {"m_bits", fmt_int(gv.m_bits)},
                      {"trotter_steps", fmt_int(gv.n_trot)},
                      {"fast_powers", gv.fast ? "1" : "0"}},
                     gv.out, gv.format);
  });

  // ---------------------------------------------------------- convergence
  struct {
    std::string lattice = "hexagon6", u0 = "3", nocc = "3,6,9";
    std::string m = "2..5", trot = "15";
    std::string out, format = "csv", config;
    std::uint64_t seed = 1;
    bool fast = false;
  } cv;
  auto* con = app.add_subcommand(
      "convergence",
      "IQPE error versus phase bits (fixed depth) or versus depth (fixed "
      "bits)");
  con->add_option("--lattice", cv.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  con->add_option("--u0", cv.u0, "single interaction value")
      ->capture_default_str();
  con->add_option("--nocc", cv.nocc, "filling grid")->capture_default_str();
  con->add_option("--m-bits", cv.m,
                  "bit grid; more than one value sweeps m at fixed depth")
      ->capture_default_str();
  con->add_option("--trotter-steps", cv.trot,
                  "depth grid; more than one value sweeps depth at fixed m")
      ->capture_default_str();
  con->add_option("--seed", cv.seed, "master seed")->capture_default_str();
  con->add_flag("--fast-powers", cv.fast, "noiseless depth shortcut");
  con->add_option("--out", cv.out,
                  "output file; relative paths join HUBSIM_OUT_DIR");
  con->add_option("--format", cv.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  con->add_option("--config", cv.config,
                  "flat key=value defaults; command line flags override");
  con->callback([&] {
    apply_config(con, cv.config);
    ConvergenceArgs a;
    a.lattice = lattice_from_name(cv.lattice);
    a.base = {1.0, single_value(cv.u0, "--u0")};
    a.n_occ_values = parse_int_grid(cv.nocc);
    const std::vector<int> ms = parse_int_grid(cv.m);
    const std::vector<int> trs = parse_int_grid(cv.trot);
    if (trs.size() > 1 && ms.size() > 1)
      throw std::runtime_error(
          "convergence sweeps either --m-bits or --trotter-steps, not both");
    if (trs.size() > 1) {
      a.m_values = {};
      a.m_fixed = ms[0];
      a.n_trot_values = trs;
    } else {
      a.m_values = ms;
      a.n_trot_fixed = trs[0];
      a.n_trot_values = {};
    }
    a.fast_powers = cv.fast;
    a.seed = cv.seed;
    exit_code = emit(convergence(a), cmdline,
                     {{"lattice", cv.lattice},
                      {"u0", cv.u0},
                      {"nocc", cv.nocc},
                      {"m_bits", cv.m},
                      {"trotter_steps", cv.trot}},
                     cv.out, cv.format);
  });

  // ------------------------------------------------------------ adiabatic
  struct {
    std::string lattice = "hexagon6", u0 = "3", nocc = "2..10";
    std::string noise_file, out, format = "csv", config;
    std::vector<std::string> scales;
    double total_time = 60.0, tolerance = 0.02;
    int steps = 2400, shots = 0;
    std::uint64_t seed = 1;
    bool include_gapless = false;
  } av;
  auto* adi = app.add_subcommand(
      "adiabatic", "Ramped-evolution observables against the exact oracle");
  adi->add_option("--lattice", av.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  adi->add_option("--u0", av.u0, "single interaction value")
      ->capture_default_str();
  adi->add_option("--nocc", av.nocc, "filling grid")->capture_default_str();
  adi->add_flag("--include-gapless", av.include_gapless,
                "emit fillings whose starting manifold splits (flagged, not "
                "asserted)");
  adi->add_option("--total-time", av.total_time, "ramp duration")
      ->capture_default_str();
  adi->add_option("--ramp-steps", av.steps, "slices along the ramp")
      ->capture_default_str();
  adi->add_option("--tolerance", av.tolerance,
                  "per-entry pass threshold against the oracle")
      ->capture_default_str();
  adi->add_option("--shots", av.shots,
                  "sample readouts instead of exact expectations (0 = exact)")
      ->capture_default_str();
  adi->add_option("--noise-profile", av.noise_file,
                  "calibration file for sampled readouts (needs --shots)");
  adi->add_option("--scale", av.scales,
                  "KEY=FACTOR noise adjustment, repeatable");
  adi->add_option("--seed", av.seed, "master seed")->capture_default_str();
  adi->add_option("--out", av.out,
                  "output file; relative paths join HUBSIM_OUT_DIR");
  adi->add_option("--format", av.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  adi->add_option("--config", av.config,
                  "flat key=value defaults; command line flags override");
  adi->callback([&] {
    apply_config(adi, av.config);
    AdiabaticScanArgs a;
    a.lattice = lattice_from_name(av.lattice);
    a.base = {1.0, single_value(av.u0, "--u0")};
    a.n_occ_values = parse_int_grid(av.nocc);
    a.schedule.total_time = av.total_time;
    a.schedule.n_steps = av.steps;
    a.include_gapless = av.include_gapless;
    a.tolerance = av.tolerance;
    a.shots = av.shots;
    a.seed = av.seed;
    NoiseProfile np;
    if (!av.noise_file.empty() || !av.scales.empty()) {
      if (av.shots <= 0)
        throw std::runtime_error("adiabatic: noise needs sampled readouts; "
                                 "pass --shots as well");
      np = resolved_profile(av.noise_file, av.scales);
      a.noise = &np;
    }
    exit_code = emit(adiabatic_scan(a), cmdline,
                     {{"lattice", av.lattice},
                      {"u0", av.u0},
                      {"nocc", av.nocc},
                      {"total_time", format_number(av.total_time)},
                      {"ramp_steps", fmt_int(av.steps)},
                      {"tolerance", format_number(av.tolerance)},
                      {"shots", fmt_int(av.shots)},
                      {"include_gapless", av.include_gapless ? "1" : "0"}},
                     av.out, av.format);
  });

  // ---------------------------------------------------------- noise-sweep
  struct {
    std::string lattice = "ring:3", u0 = "3";
    std::string sweep = "p2q", factors = "0.2,1,5";
    std::string noise_file, out, format = "csv", config;
    std::vector<std::string> scales;
    int nocc = 3, m_bits = 4, n_trot = 12, shots = 50000, runs = 50;
    std::uint64_t seed = 1;
    bool isolated = true;
  } nv;
  auto* nsw = app.add_subcommand(
      "noise-sweep", "Repeated noisy IQPE at scaled channel strengths");
  nsw->add_option("--lattice", nv.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  nsw->add_option("--u0", nv.u0, "single interaction value")
      ->capture_default_str();
  nsw->add_option("--nocc", nv.nocc, "filling")->capture_default_str();
  nsw->add_option("--sweep", nv.sweep,
                  "channel to sweep: p1q p2q t1 t2 t1t2 p01 p10 readout")
      ->capture_default_str();
  nsw->add_option("--factors", nv.factors, "multiplier grid")
      ->capture_default_str();
  nsw->add_flag("--isolated,!--baseline", nv.isolated,
                "isolated: all other channels off; baseline: others stay at "
                "profile values");
  nsw->add_option("--m-bits", nv.m_bits, "phase bits")->capture_default_str();
  nsw->add_option("--trotter-steps", nv.n_trot, "slices per unit evolution")
      ->capture_default_str();
  nsw->add_option("--shots", nv.shots, "shots per bit")->capture_default_str();
  nsw->add_option("--runs", nv.runs, "independent repetitions per point")
      ->capture_default_str();
  nsw->add_option("--noise-profile", nv.noise_file, "calibration file");
  nsw->add_option("--scale", nv.scales,
                  "KEY=FACTOR profile adjustment applied before the sweep, "
                  "repeatable");
  nsw->add_option("--seed", nv.seed, "master seed")->capture_default_str();
  nsw->add_option("--out", nv.out,
                  "output file; relative paths join HUBSIM_OUT_DIR");
  nsw->add_option("--format", nv.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  nsw->add_option("--config", nv.config,
                  "flat key=value defaults; command line flags override");
  nsw->callback([&] {
    apply_config(nsw, nv.config);
    NoiseSweepArgs a;
    a.lattice = lattice_from_name(nv.lattice);
    a.base = {1.0, single_value(nv.u0, "--u0")};
    a.n_occ = nv.nocc;
    a.m_bits = nv.m_bits;
    a.n_trot = nv.n_trot;
    a.shots = nv.shots;
    a.runs = nv.runs;
    a.seed = nv.seed;
    a.profile = resolved_profile(nv.noise_file, nv.scales);
    a.selector = nv.sweep;
    a.factors = parse_grid(nv.factors);
    a.isolated = nv.isolated;
    exit_code = emit(noise_sweep(a), cmdline,
                     {{"lattice", nv.lattice},
                      {"u0", nv.u0},
                      {"nocc", fmt_int(nv.nocc)},
                      {"sweep", nv.sweep},
                      {"factors", nv.factors},
                      {"mode", nv.isolated ? "isolated" : "baseline"},
                      {"m_bits", fmt_int(nv.m_bits)},
                      {"trotter_steps", fmt_int(nv.n_trot)},
                      {"shots", fmt_int(nv.shots)},
                      {"runs", fmt_int(nv.runs)}},
                     nv.out, nv.format);
  });

  // ----------------------------------------------------------------- fig8
  struct {
    std::string lattice = "ring:3", u0 = "0..6";
    std::string noise_file, out, format = "csv", config;
    std::vector<std::string> scales;
    int nocc = 3, m_bits = 4, n_trot = 12, shots = 10000, runs = 20;
    std::uint64_t seed = 1;
    bool no_improved = false;
  } fv;
  auto* f8 = app.add_subcommand(
      "fig8",
      "Three-site benchmark: exact, baseline-noise, half-noise, and "
      "improved-settings energy curves");
  f8->add_option("--lattice", fv.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  f8->add_option("--u0", fv.u0, "interaction grid")->capture_default_str();
  f8->add_option("--nocc", fv.nocc, "filling")->capture_default_str();
  f8->add_option("--m-bits", fv.m_bits, "phase bits for the baseline pair")
      ->capture_default_str();
  f8->add_option("--trotter-steps", fv.n_trot,
                 "slices per unit evolution for the baseline pair")
      ->capture_default_str();
  f8->add_option("--shots", fv.shots, "shots per bit for the baseline pair")
      ->capture_default_str();
  f8->add_option("--runs", fv.runs, "repetitions for the baseline pair")
      ->capture_default_str();
  f8->add_flag("--no-improved", fv.no_improved,
               "skip the m=5, 15-slice, 50x50000 variant");
  f8->add_option("--noise-profile", fv.noise_file, "calibration file");
  f8->add_option("--scale", fv.scales,
                 "KEY=FACTOR profile adjustment, repeatable");
  f8->add_option("--seed", fv.seed, "master seed")->capture_default_str();
  f8->add_option("--out", fv.out,
                 "output file; relative paths join HUBSIM_OUT_DIR");
  f8->add_option("--format", fv.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  f8->add_option("--config", fv.config,
                  "flat key=value defaults; command line flags override");
  f8->callback([&] {
    apply_config(f8, fv.config);
    Fig8Args a;
    a.lattice = lattice_from_name(fv.lattice);
    a.u0_values = parse_grid(fv.u0);
    a.n_occ = fv.nocc;
    a.m_bits = fv.m_bits;
    a.n_trot = fv.n_trot;
    a.shots = fv.shots;
    a.runs = fv.runs;
    a.include_improved = !fv.no_improved;
    a.seed = fv.seed;
    a.profile = resolved_profile(fv.noise_file, fv.scales);
    exit_code = emit(fig8(a), cmdline,
                     {{"lattice", fv.lattice},
                      {"u0", fv.u0},
                      {"nocc", fmt_int(fv.nocc)},
                      {"m_bits", fmt_int(fv.m_bits)},
                      {"trotter_steps", fmt_int(fv.n_trot)},
                      {"shots", fmt_int(fv.shots)},
                      {"runs", fmt_int(fv.runs)},
                      {"improved", fv.no_improved ? "0" : "1"}},
                     fv.out, fv.format);
  });

  // ------------------------------------------------------------------- ed
  struct {
    std::string lattice = "hexagon6", u0 = "3", nocc;
    std::string out, format = "csv", config;
  } ev;
  auto* ed = app.add_subcommand(
      "ed", "Exact-diagonalization energies, gaps, and sector data");
  ed->add_option("--lattice", ev.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  ed->add_option("--u0", ev.u0, "interaction grid")->capture_default_str();
  ed->add_option("--nocc", ev.nocc,
                 "filling grid (default: every filling the lattice admits)");
  ed->add_option("--out", ev.out,
                 "output file; relative paths join HUBSIM_OUT_DIR");
  ed->add_option("--format", ev.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  ed->add_option("--config", ev.config,
                  "flat key=value defaults; command line flags override");
  ed->callback([&] {
    apply_config(ed, ev.config);
    EdArgs a;
    a.lattice = lattice_from_name(ev.lattice);
    a.u0_values = parse_grid(ev.u0);
    if (ev.nocc.empty()) {
      for (int n = 0; n <= 2 * a.lattice.n_sites; ++n)
        a.n_occ_values.push_back(n);
    } else {
      a.n_occ_values = parse_int_grid(ev.nocc);
    }
    exit_code = emit(ed_table(a), cmdline,
                     {{"lattice", ev.lattice},
                      {"u0", ev.u0},
                      {"nocc", ev.nocc.empty() ? "all" : ev.nocc}},
                     ev.out, ev.format);
  });

  // --------------------------------------------------------- dump-circuit
  struct {
    std::string lattice = "hexagon6", u0 = "3", out;
    int nocc = 0, n_trot = 1;
  } dv;
  auto* dc = app.add_subcommand(
      "dump-circuit",
      "Print the preparation and unit-evolution gate lists as text");
  dc->add_option("--lattice", dv.lattice, "hexagon6 | chain:N | ring:N")
      ->capture_default_str();
  dc->add_option("--u0", dv.u0, "single interaction value")
      ->capture_default_str();
  dc->add_option("--nocc", dv.nocc,
                 "filling to prepare (0 skips the preparation section)")
      ->capture_default_str();
  dc->add_option("--trotter-steps", dv.n_trot, "slices in the evolution dump")
      ->capture_default_str();
  dc->add_option("--out", dv.out,
                 "output file; relative paths join HUBSIM_OUT_DIR");
  dc->callback([&] {
    const Lattice lat = lattice_from_name(dv.lattice);
    const HubbardParams p{1.0, single_value(dv.u0, "--u0")};
    const TimeScale ts = choose_time_scale(build_hubbard(lat, p), 0.05);
    std::ostringstream os;
    os << "# hubsim " << version_tag << '\n';
    os << "# command: " << cmdline << '\n';
    os << "# time_scale: t=" << format_number(ts.t)
       << " e_lo=" << format_number(ts.e_lo)
       << " e_hi=" << format_number(ts.e_hi) << '\n';
    if (dv.nocc > 0) {
      const OrbitalSet orb = tight_binding_orbitals(lat, p.gamma0);
      os << "# preparation\n";
      dump_circuit(os, slater_circuit(default_occupation(orb, dv.nocc), orb,
                                      2 * lat.n_sites));
    }
    os << "# evolution\n";
    dump_circuit(os,
                 evolution_circuit(hubbard_terms(lat, p), {dv.n_trot, ts.t}));
    write_text(os.str(), dv.out);
    exit_code = 0;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const std::chrono::duration<double> wall =
      std::chrono::steady_clock::now() - t_start;
  std::cerr << "# wall_seconds: " << wall.count() << '\n';
  return exit_code;
}
