// Command-line front end for the qpg shared library: figure-style data
// (Rabi comparison, fidelity landscapes, DD sequence comparison, T2
// scaling), Monte Carlo runs with built-in cross checks, and the
// time-domain sequence optimizer. Emits CSV for curves/grids and JSON for
// scalar results; every output embeds its full configuration.
//
// Exit codes: 0 success, 1 usage error, 2 self-check failure, 3 numerical
// failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpg/qpg.h"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelfCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(qpg_status status) {
  if (status == QPG_OK) return;
  if (status == QPG_ERR_INVALID_ARGUMENT) throw UsageError(qpg_last_error());
  throw std::runtime_error(qpg_last_error());
}

struct SequenceHandle {
  qpg_sequence *ptr = nullptr;
  SequenceHandle() = default;
  SequenceHandle(const SequenceHandle &) = delete;
  SequenceHandle &operator=(const SequenceHandle &) = delete;
  ~SequenceHandle() { qpg_sequence_free(ptr); }
};

// Frequencies arrive either as plain rad/us (numerically, MHz in the paper
// convention) or with a pi: prefix meaning multiples of pi, e.g. pi:100.
double parse_frequency(const std::string &text) {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  try {
    if (text.rfind("pi:", 0) == 0) {
      return kPi * std::stod(text.substr(3));
    }
    return std::stod(text);
  } catch (const std::exception &) {
    throw UsageError("cannot parse frequency '" + text +
                     "' (use a number or pi:<number>)");
  }
}

// "fid" | "se" | "cpmg:N" | "udd:N" | comma-separated fractions.
void parse_sequence(const std::string &text, SequenceHandle &out) {
  if (text == "fid") {
    check(qpg_sequence_fid(&out.ptr));
    return;
  }
  if (text == "se") {
    check(qpg_sequence_cpmg(1, &out.ptr));
    return;
  }
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    int n = 0;
    try {
      n = std::stoi(text.substr(colon + 1));
    } catch (const std::exception &) {
      throw UsageError("bad sequence spec '" + text + "'");
    }
    if (kind == "cpmg") {
      check(qpg_sequence_cpmg(n, &out.ptr));
      return;
    }
    if (kind == "udd") {
      check(qpg_sequence_udd(n, &out.ptr));
      return;
    }
    throw UsageError("unknown sequence family '" + kind + "'");
  }
  std::vector<double> fractions;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      fractions.push_back(std::stod(item));
    } catch (const std::exception &) {
      throw UsageError("bad fraction '" + item + "' in sequence spec");
    }
  }
  if (fractions.empty()) throw UsageError("empty sequence spec");
  check(qpg_sequence_custom(fractions.data(),
                            static_cast<int>(fractions.size()), &out.ptr));
}

qpg_noise_target parse_noise(const std::string &text) {
  if (text == "field") return QPG_NOISE_FIELD;
  if (text == "phase-linear") return QPG_NOISE_PHASE_LINEAR;
  if (text == "phase-smooth") return QPG_NOISE_PHASE_SMOOTH;
  throw UsageError("unknown noise target '" + text + "'");
}

json sequence_json(const SequenceHandle &seq) {
  std::vector<char> buf(64 + 32 * static_cast<std::size_t>(
                                      qpg_sequence_size(seq.ptr)));
  check(qpg_sequence_to_json(seq.ptr, buf.data(), buf.size()));
  return json::parse(buf.data());
}

std::ofstream open_output(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out.precision(15);
  return out;
}

void write_csv(const std::string &path, const json &config,
               const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows) {
  auto out = open_output(path);
  out << "# config: " << config.dump() << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  }
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

void write_json(const std::string &path, const std::string &command,
                const json &config, const json &results) {
  json doc;
  doc["tool"] = "qpg";
  doc["version"] = qpg_version();
  doc["command"] = command;
  doc["config"] = config;
  doc["results"] = results;
  auto out = open_output(path);
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

void cmd_rabi_compare(const std::string &omega_a, const std::string &omega_b,
                      const std::string &omega_r, double varphi0, double t_max,
                      int points, const std::string &out_csv,
                      const std::string &out_json) {
  const double wa = parse_frequency(omega_a);
  const double wb = parse_frequency(omega_b);
  const double wr = parse_frequency(omega_r);
  if (wr <= 0.0) throw UsageError("--omega-r must be positive");

  json config{{"omega_a", omega_a},       {"omega_b", omega_b},
              {"omega_r", omega_r},       {"omega_a_rad_us", wa},
              {"omega_b_rad_us", wb},     {"omega_r_rad_us", wr},
              {"varphi0", varphi0},       {"t_max_over_rabi", t_max},
              {"points", points},         {"out", out_csv},
              {"summary", out_json}};

  std::vector<double> p_exact(points), p_rwa(points), p_mrwa(points);
  double l2_rwa = 0.0, l2_mrwa = 0.0;
  check(qpg_rabi_compare(wa, wb, wr, varphi0, t_max / wr, points,
                         p_exact.data(), p_rwa.data(), p_mrwa.data(), &l2_rwa,
                         &l2_mrwa));

  std::vector<std::vector<double>> rows(points);
  for (int i = 0; i < points; ++i) {
    const double t_units = t_max * i / (points - 1);
    rows[i] = {t_units, p_exact[i], p_rwa[i], p_mrwa[i]};
  }
  write_csv(out_csv, config, {"t_omega_r", "p_exact", "p_rwa", "p_mrwa"}, rows);

  json results{{"l2_rwa", l2_rwa},
               {"l2_mrwa", l2_mrwa},
               {"mrwa_closer", l2_mrwa < l2_rwa}};
  write_json(out_json, "rabi-compare", config, results);
  std::cout << "rabi-compare: l2_rwa=" << l2_rwa << " l2_mrwa=" << l2_mrwa
            << " -> " << out_csv << "\n";
}

void cmd_landscape(const std::string &target, const std::string &sequence,
                   const std::string &noise, double x0, double x1, int nx,
                   double y0, double y1, int ny, const std::string &out_csv) {
  qpg_landscape_kind kind;
  SequenceHandle seq;
  qpg_noise_target noise_target = parse_noise(noise);
  if (target == "fid-b") {
    kind = QPG_LANDSCAPE_FID_B;
  } else if (target == "fid-phi") {
    kind = QPG_LANDSCAPE_FID_PHI_LINEAR;
  } else if (target == "fid-phi-smooth") {
    kind = QPG_LANDSCAPE_FID_PHI_SMOOTH;
  } else if (target == "fid-se") {
    kind = QPG_LANDSCAPE_FID_SE;
  } else if (target == "sequence") {
    kind = QPG_LANDSCAPE_SEQUENCE_EXACT;
    parse_sequence(sequence, seq);
    if (noise_target != QPG_NOISE_FIELD) {
      kind = QPG_LANDSCAPE_SEQUENCE_TIME_QUAD;
    }
  } else {
    throw UsageError("unknown landscape target '" + target + "'");
  }

  json config{{"target", target}, {"x0", x0}, {"x1", x1}, {"nx", nx},
              {"y0", y0},         {"y1", y1}, {"ny", ny}, {"noise", noise},
              {"out", out_csv}};
  if (seq.ptr) config["sequence"] = sequence_json(seq);

  std::vector<double> values(static_cast<std::size_t>(nx) * ny);
  check(qpg_landscape(kind, seq.ptr, noise_target, x0, x1, nx, y0, y1, ny,
                      values.data()));

  std::vector<std::vector<double>> rows;
  rows.reserve(values.size());
  for (int iy = 0; iy < ny; ++iy) {
    const double y = ny == 1 ? y0 : y0 + (y1 - y0) * iy / (ny - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double x = nx == 1 ? x0 : x0 + (x1 - x0) * ix / (nx - 1);
      rows.push_back({x, y, values[static_cast<std::size_t>(iy) * nx + ix]});
    }
  }
  write_csv(out_csv, config, {"gamma_T", "Gamma_over_gamma", "fidelity"}, rows);
  std::cout << "landscape: " << rows.size() << " cells -> " << out_csv << "\n";
}

void cmd_dd_compare(const std::string &panel, double fixed, int points,
                    const std::string &sequences, const std::string &out_csv) {
  if (panel != "a" && panel != "b") throw UsageError("--panel must be a or b");

  std::vector<std::string> names;
  std::stringstream ss(sequences);
  std::string item;
  while (std::getline(ss, item, ',')) names.push_back(item);
  if (names.empty()) throw UsageError("--sequences is empty");

  std::vector<SequenceHandle> handles(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    parse_sequence(names[i], handles[i]);
  }

  json config{{"panel", panel},     {"fixed", fixed},
              {"points", points},   {"sequences", names},
              {"out", out_csv}};

  std::vector<std::string> header{panel == "a" ? "gamma_T" : "Gamma_over_gamma"};
  for (const auto &n : names) header.push_back("F_" + n);

  std::vector<std::vector<double>> rows(points);
  for (int i = 0; i < points; ++i) {
    const double sweep = 4.0 * i / (points - 1);
    rows[i].push_back(sweep);
    for (auto &h : handles) {
      const double x = panel == "a" ? sweep : fixed;
      const double y = panel == "a" ? fixed : sweep;
      double chi = 0.0;
      check(qpg_chi_exact(h.ptr, x, y, &chi));
      rows[i].push_back(std::exp(-chi));
    }
  }
  write_csv(out_csv, config, header, rows);
  std::cout << "dd-compare: panel " << panel << " -> " << out_csv << "\n";
}

void cmd_optimize(int n, int starts, double tol, std::uint64_t seed,
                  const std::string &out_json) {
  json config{{"n", n}, {"starts", starts}, {"tol", tol}, {"seed", seed},
              {"out", out_json}};

  qpg_opt_result info{};
  SequenceHandle seq;
  check(qpg_optimize(n, starts, tol, seed, &info, &seq.ptr));

  std::vector<double> fractions(n);
  check(qpg_sequence_fractions(seq.ptr, fractions.data(), n));

  SequenceHandle cpmg;
  check(qpg_sequence_cpmg(n, &cpmg.ptr));
  std::vector<double> reference(n);
  check(qpg_sequence_fractions(cpmg.ptr, reference.data(), n));
  double deviation = 0.0;
  for (int k = 0; k < n; ++k) {
    deviation = std::max(deviation, std::abs(fractions[k] - reference[k]));
  }

  json results{{"fractions", fractions},
               {"c3_min", info.c3_min},
               {"c3_times_12n2", info.c3_min * 12.0 * n * n},
               {"constraint_residual", info.constraint_residual},
               {"iterations", info.iterations},
               {"starts", info.starts},
               {"converged_starts", info.converged_starts},
               {"cpmg_fractions", reference},
               {"max_deviation_from_cpmg", deviation}};
  write_json(out_json, "optimize", config, results);
  std::cout << "optimize: n=" << n << " max|mu-cpmg|=" << deviation << " -> "
            << out_json << "\n";
}

void cmd_mc(const std::string &sequence, const std::string &noise,
            double gamma_t, double ratio, double gamma, std::int64_t traj,
            std::uint64_t seed, int grid_steps, bool self_check,
            const std::string &out_json) {
  if (gamma <= 0.0) throw UsageError("--gamma must be positive");
  SequenceHandle seq;
  parse_sequence(sequence, seq);
  const qpg_noise_target target = parse_noise(noise);
  const double T = gamma_t / gamma;
  const double Gamma = ratio * gamma;

  json config{{"sequence", sequence_json(seq)},
              {"noise", noise},
              {"gamma_t", gamma_t},
              {"ratio", ratio},
              {"gamma", gamma},
              {"Gamma", Gamma},
              {"T", T},
              {"trajectories", traj},
              {"seed", seed},
              {"grid_steps", grid_steps},
              {"self_check", self_check},
              {"out", out_json}};

  qpg_mc_result mc{};
  check(qpg_mc_fidelity(seq.ptr, target, Gamma, gamma, T, traj, seed,
                        grid_steps, &mc));

  // Deterministic references: closed-form exponent for field noise, the
  // time-domain quadrature otherwise.
  double chi_ref = 0.0;
  if (target == QPG_NOISE_FIELD) {
    check(qpg_chi_exact(seq.ptr, gamma_t, ratio, &chi_ref));
  } else {
    check(qpg_chi_time_domain(seq.ptr, target, Gamma, gamma, T, &chi_ref));
  }
  const double f_ref = std::exp(-chi_ref);
  const double z = mc.std_error > 0.0
                       ? (mc.fidelity - f_ref) / mc.std_error
                       : (mc.fidelity == f_ref ? 0.0 : INFINITY);

  json results{{"fidelity", mc.fidelity},
               {"std_error", mc.std_error},
               {"chi", mc.chi},
               {"imag_mean", mc.imag_mean},
               {"imag_std_error", mc.imag_std_error},
               {"reference_fidelity", f_ref},
               {"reference_chi", chi_ref},
               {"z_score", z},
               {"self_check_passed", std::abs(z) <= 4.0}};
  write_json(out_json, "mc", config, results);
  std::cout << "mc: F=" << mc.fidelity << " +- " << mc.std_error
            << " (reference " << f_ref << ", z=" << z << ") -> " << out_json
            << "\n";
  if (self_check && std::abs(z) > 4.0) {
    throw SelfCheckError("monte carlo deviates from the deterministic "
                         "reference by more than 4 standard errors");
  }
}

void cmd_t2_scaling(int n_min, int n_max, double Gamma, double gamma,
                    const std::string &out_csv, const std::string &out_json) {
  if (n_min < 1 || n_max < n_min) throw UsageError("bad --n-min/--n-max range");

  json config{{"n_min", n_min}, {"n_max", n_max},   {"Gamma", Gamma},
              {"gamma", gamma}, {"out", out_csv},   {"summary", out_json}};

  std::vector<std::vector<double>> rows;
  std::vector<double> log_n, log_formula, log_exact;
  for (int n = n_min; n <= n_max; ++n) {
    SequenceHandle seq;
    check(qpg_sequence_cpmg(n, &seq.ptr));
    double t2_formula = 0.0, t2_exact = 0.0;
    check(qpg_t2_dd(n, Gamma, gamma, &t2_formula));
    check(qpg_t2_exact(seq.ptr, Gamma, gamma, &t2_exact));
    rows.push_back({static_cast<double>(n), t2_formula, t2_exact});
    log_n.push_back(std::log(n));
    log_formula.push_back(std::log(t2_formula));
    log_exact.push_back(std::log(t2_exact));
  }
  write_csv(out_csv, config, {"n", "t2_formula", "t2_exact"}, rows);

  const auto slope = [&log_n](const std::vector<double> &ly) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(log_n.size());
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sx += log_n[i];
      sy += ly[i];
      sxx += log_n[i] * log_n[i];
      sxy += log_n[i] * ly[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };

  double t2_fid = 0.0;
  check(qpg_t2_fid(Gamma, gamma, &t2_fid));
  json results{{"slope_formula", slope(log_formula)},
               {"slope_exact", slope(log_exact)},
               {"t2_fid_formula", t2_fid}};
  write_json(out_json, "t2-scaling", config, results);
  std::cout << "t2-scaling: slope_formula=" << results["slope_formula"]
            << " -> " << out_csv << "\n";
}

void cmd_sample_noise(double Gamma, double gamma, double t_max, int points,
                      std::uint64_t seed, const std::string &out_csv) {
  if (points < 2) throw UsageError("--points must be >= 2");
  json config{{"Gamma", Gamma}, {"gamma", gamma}, {"t_max", t_max},
              {"points", points}, {"seed", seed}, {"out", out_csv}};
  const double dt = t_max / (points - 1);
  std::vector<double> values(points);
  check(qpg_ou_sample(Gamma, gamma, 0.0, dt, points, seed, values.data()));
  std::vector<std::vector<double>> rows(points);
  for (int i = 0; i < points; ++i) rows[i] = {i * dt, values[i]};
  write_csv(out_csv, config, {"t", "delta"}, rows);
  std::cout << "sample-noise: " << points << " points -> " << out_csv << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Berry-phase gate fidelity toolkit (OU noise, dynamical "
               "decoupling, sequence optimization)"};
  app.require_subcommand(1);

  // rabi-compare ------------------------------------------------------------
  auto *rabi = app.add_subcommand(
      "rabi-compare", "Population dynamics under the exact, RWA, and "
                      "modified-RWA Hamiltonians");
  std::string rc_wa = "pi:100", rc_wb = "pi:60", rc_wr = "pi:20";
  double rc_phi = 0.0, rc_tmax = 4.0;
  int rc_points = 801;
  std::string rc_out = "rabi_compare.csv", rc_summary = "rabi_compare.json";
  rabi->add_option("--omega-a", rc_wa, "qubit splitting (rad/us or pi:x)");
  rabi->add_option("--omega-b", rc_wb, "drive frequency (rad/us or pi:x)");
  rabi->add_option("--omega-r", rc_wr, "Rabi frequency (rad/us or pi:x)");
  rabi->add_option("--varphi0", rc_phi, "drive phase (rad)");
  rabi->add_option("--t-max", rc_tmax, "trace length in units of 1/Omega_R");
  rabi->add_option("--points", rc_points, "grid points")->check(CLI::Range(2, 100000));
  rabi->add_option("-o,--out", rc_out, "CSV output path");
  rabi->add_option("--summary", rc_summary, "JSON summary path");

  // landscape ---------------------------------------------------------------
  auto *land = app.add_subcommand("landscape",
                                  "Fidelity over the (gamma T, Gamma/gamma) plane");
  std::string ls_target = "fid-b", ls_seq = "fid", ls_noise = "field";
  double ls_x0 = 0.0, ls_x1 = 4.0, ls_y0 = 0.0, ls_y1 = 4.0;
  int ls_nx = 101, ls_ny = 101;
  std::string ls_out = "landscape.csv";
  land->add_option("--target", ls_target,
                   "fid-b | fid-phi | fid-phi-smooth | fid-se | sequence");
  land->add_option("--sequence", ls_seq, "sequence spec for --target sequence");
  land->add_option("--noise", ls_noise,
                   "field | phase-linear | phase-smooth (sequence target)");
  land->add_option("--x0", ls_x0);
  land->add_option("--x1", ls_x1);
  land->add_option("--nx", ls_nx)->check(CLI::Range(1, 4096));
  land->add_option("--y0", ls_y0);
  land->add_option("--y1", ls_y1);
  land->add_option("--ny", ls_ny)->check(CLI::Range(1, 4096));
  land->add_option("-o,--out", ls_out, "CSV output path");

  // dd-compare --------------------------------------------------------------
  auto *ddc = app.add_subcommand(
      "dd-compare", "Gate fidelity under DD sequences (exact B-noise exponent)");
  std::string dd_panel = "a";
  double dd_fixed = 4.0;
  int dd_points = 101;
  std::string dd_seqs = "fid,se,cpmg:2,udd:3,cpmg:3,udd:10,cpmg:10";
  std::string dd_out = "dd_compare.csv";
  ddc->add_option("--panel", dd_panel,
                  "a: sweep gamma T at fixed Gamma/gamma; b: sweep Gamma/gamma");
  ddc->add_option("--fixed", dd_fixed, "value of the fixed axis");
  ddc->add_option("--points", dd_points)->check(CLI::Range(2, 100000));
  ddc->add_option("--sequences", dd_seqs, "comma-separated sequence specs");
  ddc->add_option("-o,--out", dd_out, "CSV output path");

  // optimize ----------------------------------------------------------------
  auto *opt = app.add_subcommand("optimize",
                                 "Minimize C3 under the phase constraint");
  int op_n = 3, op_starts = 20;
  double op_tol = 1e-6;
  std::uint64_t op_seed = 1;
  std::string op_out = "optimize.json";
  opt->add_option("--n", op_n, "number of pulses")->required()->check(CLI::Range(1, 64));
  opt->add_option("--starts", op_starts)->check(CLI::Range(1, 10000));
  opt->add_option("--tol", op_tol);
  opt->add_option("--seed", op_seed);
  opt->add_option("-o,--out", op_out, "JSON output path");

  // mc ----------------------------------------------------------------------
  auto *mc = app.add_subcommand("mc", "Monte Carlo gate fidelity over OU noise");
  std::string mc_seq = "fid", mc_noise = "field";
  double mc_x = 0.72, mc_y = 1.0, mc_gamma = 1.0;
  std::int64_t mc_traj = 100000;
  std::uint64_t mc_seed = 0;
  int mc_grid = 0;
  bool mc_self = false;
  std::string mc_out = "mc.json";
  mc->add_option("--sequence", mc_seq, "sequence spec");
  mc->add_option("--noise", mc_noise, "field | phase-linear | phase-smooth");
  mc->add_option("--gamma-t", mc_x, "dimensionless period gamma*T");
  mc->add_option("--ratio", mc_y, "Gamma/gamma");
  mc->add_option("--gamma", mc_gamma, "memory rate gamma (1/us)");
  mc->add_option("--trajectories", mc_traj)->check(CLI::Range(100, 100000000));
  mc->add_option("--seed", mc_seed, "master seed (trajectory j uses a derived seed)")
      ->required();
  mc->add_option("--grid-steps", mc_grid, "0 = automatic");
  mc->add_flag("--self-check", mc_self,
               "exit 2 if MC and the deterministic reference disagree (4 sigma)");
  mc->add_option("-o,--out", mc_out, "JSON output path");

  // t2-scaling ---------------------------------------------------------------
  auto *t2 = app.add_subcommand("t2-scaling",
                                "Decoherence time vs pulse number for CPMG");
  int t2_min = 2, t2_max = 20;
  double t2_G = 1.0, t2_g = 1.0;
  std::string t2_out = "t2_scaling.csv", t2_json = "t2_scaling.json";
  t2->add_option("--n-min", t2_min)->check(CLI::Range(1, 1000));
  t2->add_option("--n-max", t2_max)->check(CLI::Range(1, 1000));
  t2->add_option("--Gamma", t2_G, "correlation intensity (rad^2/us)");
  t2->add_option("--gamma", t2_g, "memory rate (1/us)");
  t2->add_option("-o,--out", t2_out, "CSV output path");
  t2->add_option("--summary", t2_json, "JSON summary path");

  // sample-noise ---------------------------------------------------------------
  auto *sn = app.add_subcommand("sample-noise",
                                "Write one OU realization as CSV (t, delta)");
  double sn_G = 1.0, sn_g = 1.0, sn_tmax = 10.0;
  int sn_points = 1001;
  std::uint64_t sn_seed = 0;
  std::string sn_out = "noise.csv";
  sn->add_option("--Gamma", sn_G, "correlation intensity (rad^2/us)");
  sn->add_option("--gamma", sn_g, "memory rate (1/us)");
  sn->add_option("--t-max", sn_tmax, "path length (us)");
  sn->add_option("--points", sn_points)->check(CLI::Range(2, 10000000));
  sn->add_option("--seed", sn_seed, "RNG seed")->required();
  sn->add_option("-o,--out", sn_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rabi->parsed()) {
      cmd_rabi_compare(rc_wa, rc_wb, rc_wr, rc_phi, rc_tmax, rc_points, rc_out,
                       rc_summary);
    } else if (land->parsed()) {
      cmd_landscape(ls_target, ls_seq, ls_noise, ls_x0, ls_x1, ls_nx, ls_y0,
                    ls_y1, ls_ny, ls_out);
    } else if (ddc->parsed()) {
      cmd_dd_compare(dd_panel, dd_fixed, dd_points, dd_seqs, dd_out);
    } else if (opt->parsed()) {
      cmd_optimize(op_n, op_starts, op_tol, op_seed, op_out);
    } else if (mc->parsed()) {
      cmd_mc(mc_seq, mc_noise, mc_x, mc_y, mc_gamma, mc_traj, mc_seed, mc_grid,
             mc_self, mc_out);
    } else if (t2->parsed()) {
      cmd_t2_scaling(t2_min, t2_max, t2_G, t2_g, t2_out, t2_json);
    } else if (sn->parsed()) {
      cmd_sample_noise(sn_G, sn_g, sn_tmax, sn_points, sn_seed, sn_out);
    }
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SelfCheckError &e) {
    std::cerr << "self-check failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
