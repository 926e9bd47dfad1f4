#include "qpg/qpg.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "qpg/dd_sequences.hpp"
#include "qpg/drive_model.hpp"
#include "qpg/fidelity_engine.hpp"
#include "qpg/noise_process.hpp"
#include "qpg/rng.hpp"
#include "qpg/sequence_optimizer.hpp"

struct qpg_sequence {
  qpg::PulseSequence impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string &message) { g_last_error = message; }

// Runs fn, translating exceptions into status codes + qpg_last_error().
template <typename Fn>
qpg_status wrap(Fn &&fn) {
  try {
    return fn();
  } catch (const std::invalid_argument &e) {
    set_error(e.what());
    return QPG_ERR_INVALID_ARGUMENT;
  } catch (const std::exception &e) {
    set_error(e.what());
    return QPG_ERR_NUMERICAL;
  } catch (...) {
    set_error("unknown error");
    return QPG_ERR_NUMERICAL;
  }
}

qpg_status require(bool ok, const char *message) {
  if (!ok) {
    set_error(message);
    return QPG_ERR_INVALID_ARGUMENT;
  }
  return QPG_OK;
}

qpg_status make_sequence(qpg::PulseSequence seq, qpg_sequence **out) {
  *out = new qpg_sequence{std::move(seq)};
  return QPG_OK;
}

qpg::NoiseTarget to_target(qpg_noise_target target) {
  switch (target) {
    case QPG_NOISE_FIELD:
      return qpg::NoiseTarget::field_b();
    case QPG_NOISE_PHASE_LINEAR:
      return qpg::NoiseTarget::phase_dot_linear();
    case QPG_NOISE_PHASE_SMOOTH:
      return qpg::NoiseTarget::phase_dot_smooth();
  }
  throw std::invalid_argument("unknown noise target");
}

}  // namespace

extern "C" {

const char *qpg_last_error(void) { return g_last_error.c_str(); }

const char *qpg_version(void) { return "0.1.0"; }

qpg_status qpg_sequence_fid(qpg_sequence **out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] { return make_sequence(qpg::PulseSequence::fid(), out); });
}

qpg_status qpg_sequence_cpmg(int n, qpg_sequence **out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] { return make_sequence(qpg::PulseSequence::cpmg(n), out); });
}

qpg_status qpg_sequence_udd(int n, qpg_sequence **out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] { return make_sequence(qpg::PulseSequence::udd(n), out); });
}

qpg_status qpg_sequence_custom(const double *fractions, int n,
                               qpg_sequence **out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  if (auto st = require(n >= 0, "negative length")) return st;
  if (auto st = require(n == 0 || fractions != nullptr, "fractions is null")) {
    return st;
  }
  return wrap([&] {
    return make_sequence(
        qpg::PulseSequence::custom(std::vector<double>(fractions, fractions + n)),
        out);
  });
}

qpg_status qpg_sequence_recursion(int n, qpg_sequence **out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] { return make_sequence(qpg::recursion_solution(n), out); });
}

void qpg_sequence_free(qpg_sequence *seq) { delete seq; }

int qpg_sequence_size(const qpg_sequence *seq) {
  return seq ? seq->impl.size() : -1;
}

qpg_status qpg_sequence_fractions(const qpg_sequence *seq, double *out,
                                  int capacity) {
  if (auto st = require(seq && out, "null argument")) return st;
  if (capacity < seq->impl.size()) {
    set_error("fraction buffer too small");
    return QPG_ERR_BUFFER_TOO_SMALL;
  }
  const auto &mu = seq->impl.fractions();
  std::memcpy(out, mu.data(), mu.size() * sizeof(double));
  return QPG_OK;
}

double qpg_sequence_switching(const qpg_sequence *seq, double t_frac) {
  return seq ? seq->impl.switching(t_frac) : 0.0;
}

double qpg_sequence_filter(const qpg_sequence *seq, double z) {
  return seq ? seq->impl.filter(z) : -1.0;
}

qpg_status qpg_sequence_to_json(const qpg_sequence *seq, char *buf,
                                size_t capacity) {
  if (auto st = require(seq && buf, "null argument")) return st;
  return wrap([&]() -> qpg_status {
    const std::string text = seq->impl.to_json();
    if (capacity <= text.size()) {
      set_error("json buffer too small, need " +
                std::to_string(text.size() + 1) + " bytes");
      return QPG_ERR_BUFFER_TOO_SMALL;
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return QPG_OK;
  });
}

qpg_status qpg_sequence_coefficients(const qpg_sequence *seq,
                                     double coeffs_out[4]) {
  if (auto st = require(seq && coeffs_out, "null argument")) return st;
  return wrap([&] {
    const auto c = qpg::coefficients(seq->impl);
    coeffs_out[0] = c.c0;
    coeffs_out[1] = c.c1;
    coeffs_out[2] = c.c2;
    coeffs_out[3] = c.c3;
    return QPG_OK;
  });
}

qpg_status qpg_sequence_phase_constraint(const qpg_sequence *seq, double *out) {
  if (auto st = require(seq && out, "null argument")) return st;
  return wrap([&] {
    *out = qpg::phase_constraint(seq->impl);
    return QPG_OK;
  });
}

qpg_status qpg_ou_correlation(double Gamma, double gamma, double tau,
                              double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    const qpg::OuParams p{Gamma, gamma};
    p.validate();
    *out = qpg::correlation(p, tau);
    return QPG_OK;
  });
}

qpg_status qpg_ou_spectral_density(double Gamma, double gamma, double omega,
                                   double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    const qpg::OuParams p{Gamma, gamma};
    p.validate();
    *out = qpg::spectral_density(p, omega);
    return QPG_OK;
  });
}

qpg_status qpg_ou_sample(double Gamma, double gamma, double t0, double dt,
                         int n_points, uint64_t seed, double *values_out) {
  if (auto st = require(values_out != nullptr, "values_out is null")) return st;
  return wrap([&] {
    const auto path = qpg::sample_ou(qpg::OuParams{Gamma, gamma}, t0, dt,
                                     n_points, seed);
    std::memcpy(values_out, path.value.data(), path.value.size() * sizeof(double));
    return QPG_OK;
  });
}

uint64_t qpg_derive_seed(uint64_t master, uint64_t index) {
  return qpg::derive_seed(master, index);
}

qpg_status qpg_fidelity_b(double y, double x, double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    *out = qpg::fid_b_analytic(y, x).value;
    return QPG_OK;
  });
}

qpg_status qpg_fidelity_phi(double y, double x, double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    *out = qpg::fid_phi_analytic(y, x).value;
    return QPG_OK;
  });
}

qpg_status qpg_fidelity_se(double y, double x, double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    *out = qpg::fid_se_analytic(y, x).value;
    return QPG_OK;
  });
}

qpg_status qpg_fidelity_dd_approx(int n, double y, double x, double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    *out = qpg::fid_n_approx(n, y, x).value;
    return QPG_OK;
  });
}

qpg_status qpg_chi_exact(const qpg_sequence *seq, double x, double y,
                         double *out) {
  if (auto st = require(seq && out, "null argument")) return st;
  return wrap([&] {
    *out = qpg::chi_exact(seq->impl, x, y);
    return QPG_OK;
  });
}

qpg_status qpg_chi_time_domain(const qpg_sequence *seq, qpg_noise_target target,
                               double Gamma, double gamma, double T,
                               double *out) {
  if (auto st = require(seq && out, "null argument")) return st;
  return wrap([&] {
    *out = qpg::chi_time_domain(seq->impl, to_target(target),
                                qpg::OuParams{Gamma, gamma}, T);
    return QPG_OK;
  });
}

qpg_status qpg_chi_freq_domain(const qpg_sequence *seq, double Gamma,
                               double gamma, double T, double *out) {
  if (auto st = require(seq && out, "null argument")) return st;
  return wrap([&] {
    *out = qpg::chi_freq_domain(seq->impl, qpg::OuParams{Gamma, gamma}, T);
    return QPG_OK;
  });
}

qpg_status qpg_t2_fid(double Gamma, double gamma, double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    *out = qpg::t2_fid_formula(qpg::OuParams{Gamma, gamma});
    return QPG_OK;
  });
}

qpg_status qpg_t2_dd(int n, double Gamma, double gamma, double *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    *out = qpg::t2_dd_formula(n, qpg::OuParams{Gamma, gamma});
    return QPG_OK;
  });
}

qpg_status qpg_t2_exact(const qpg_sequence *seq, double Gamma, double gamma,
                        double *out) {
  if (auto st = require(seq && out, "null argument")) return st;
  return wrap([&] {
    *out = qpg::t2_exact(seq->impl, qpg::OuParams{Gamma, gamma});
    return QPG_OK;
  });
}

qpg_status qpg_mc_fidelity(const qpg_sequence *seq, qpg_noise_target target,
                           double Gamma, double gamma, double T, int64_t n_traj,
                           uint64_t seed, int grid_steps, qpg_mc_result *out) {
  if (auto st = require(seq && out, "null argument")) return st;
  return wrap([&] {
    const auto r = qpg::mc_fidelity(seq->impl, to_target(target),
                                    qpg::OuParams{Gamma, gamma}, T, n_traj,
                                    seed, grid_steps);
    out->fidelity = r.value;
    out->std_error = r.std_error;
    out->chi = r.chi;
    out->imag_mean = r.imag_mean;
    out->imag_std_error = r.imag_std_error;
    out->n_traj = n_traj;
    return QPG_OK;
  });
}

qpg_status qpg_landscape(qpg_landscape_kind kind, const qpg_sequence *seq,
                         qpg_noise_target target, double x0, double x1, int nx,
                         double y0, double y1, int ny, double *values_out) {
  if (auto st = require(values_out != nullptr, "values_out is null")) return st;
  return wrap([&] {
    qpg::LandscapeKind k;
    switch (kind) {
      case QPG_LANDSCAPE_FID_B: k = qpg::LandscapeKind::fid_b; break;
      case QPG_LANDSCAPE_FID_PHI_LINEAR: k = qpg::LandscapeKind::fid_phi_linear; break;
      case QPG_LANDSCAPE_FID_PHI_SMOOTH: k = qpg::LandscapeKind::fid_phi_smooth; break;
      case QPG_LANDSCAPE_FID_SE: k = qpg::LandscapeKind::fid_se; break;
      case QPG_LANDSCAPE_SEQUENCE_EXACT: k = qpg::LandscapeKind::sequence_exact; break;
      case QPG_LANDSCAPE_SEQUENCE_TIME_QUAD: k = qpg::LandscapeKind::sequence_time_quad; break;
      default: throw std::invalid_argument("unknown landscape kind");
    }
    const qpg::NoiseTarget t = to_target(target);
    const auto grid = qpg::landscape(k, seq ? &seq->impl : nullptr, &t, x0, x1,
                                     nx, y0, y1, ny);
    std::memcpy(values_out, grid.value.data(), grid.value.size() * sizeof(double));
    return QPG_OK;
  });
}

qpg_status qpg_optimize(int n, int starts, double tol, uint64_t seed,
                        qpg_opt_result *info_out, qpg_sequence **seq_out) {
  if (auto st = require(info_out && seq_out, "null argument")) return st;
  return wrap([&] {
    auto r = qpg::optimize(n, starts, tol, seed);
    info_out->c3_min = r.c3_min;
    info_out->constraint_residual = r.constraint_residual;
    info_out->iterations = r.iterations;
    info_out->starts = r.starts;
    info_out->converged_starts = r.converged_starts;
    return make_sequence(
        qpg::PulseSequence::custom(std::move(r.fractions), "optimized"),
        seq_out);
  });
}

qpg_status qpg_gate_phases_compute(qpg_theta_kind kind, double B0, double omega,
                                   double phi_rate, qpg_gate_phases *out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return wrap([&] {
    const qpg::GateSchedule s = kind == QPG_THETA_SMOOTH
                                    ? qpg::GateSchedule::smoothed(B0, omega, phi_rate)
                                    : qpg::GateSchedule::linear(B0, omega, phi_rate);
    const auto g = qpg::gate_phases(s);
    out->total_plus = g.total_plus;
    out->total_minus = g.total_minus;
    out->dynamical_plus = g.dynamical_plus;
    out->dynamical_minus = g.dynamical_minus;
    out->geometric_plus = g.geometric_plus;
    out->geometric_minus = g.geometric_minus;
    return QPG_OK;
  });
}

qpg_status qpg_rabi_compare(double omega_a, double omega_b, double Omega_R,
                            double varphi0, double t_max, int n_points,
                            double *p_exact, double *p_rwa, double *p_mrwa,
                            double *l2_rwa, double *l2_mrwa) {
  if (auto st = require(p_exact && p_rwa && p_mrwa && l2_rwa && l2_mrwa,
                        "null output buffer")) {
    return st;
  }
  return wrap([&] {
    const auto params =
        qpg::DriveParams::constant(omega_a, omega_b, Omega_R, varphi0);
    const auto traces = qpg::rabi_compare(params, t_max, n_points);
    std::memcpy(p_exact, traces.exact.data(), traces.exact.size() * sizeof(double));
    std::memcpy(p_rwa, traces.rwa.data(), traces.rwa.size() * sizeof(double));
    std::memcpy(p_mrwa, traces.mrwa.data(), traces.mrwa.size() * sizeof(double));
    *l2_rwa = traces.l2_rwa;
    *l2_mrwa = traces.l2_mrwa;
    return QPG_OK;
  });
}

}  // extern "C"
