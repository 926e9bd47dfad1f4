#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qpg/dd_sequences.hpp"
#include "qpg/drive_model.hpp"
#include "qpg/noise_process.hpp"

namespace qpg {

enum class Method { analytic, time_quad, freq_quad, monte_carlo };

struct FidelityResult {
  double value = 1.0;
  Method method = Method::analytic;
  double chi = 0.0;           // value = exp(-chi) for deterministic methods
  double std_error = 0.0;     // monte_carlo only
  double imag_mean = 0.0;     // monte_carlo consistency statistic
  double imag_std_error = 0.0;
};

// Which control parameter carries the noise. Field noise is weighted by 1;
// phase-derivative noise by 1 - cos(theta(t)), with theta given as a
// function of the cycle fraction u = t/T.
class NoiseTarget {
 public:
  static NoiseTarget field_b();
  static NoiseTarget phase_dot_linear();                  // theta = 2 pi u
  static NoiseTarget phase_dot_smooth();                  // theta = 2 pi u - sin(2 pi u)
  static NoiseTarget phase_dot(Schedule theta_of_fraction);

  bool is_field() const { return field_; }
  double weight_frac(double u) const;

 private:
  NoiseTarget(bool field, Schedule theta) : field_(field), theta_(std::move(theta)) {}
  bool field_ = true;
  Schedule theta_;
};

// --- closed forms (all functions of x = gamma*T, y = Gamma/gamma) ---

// FID under field noise: exp[-(y/2)(x + e^{-x} - 1)].
FidelityResult fid_b_analytic(double y, double x);

// FID under phase noise with theta = omega t, omega = 2 pi / T.
FidelityResult fid_phi_analytic(double y, double x);

// Spin echo under field noise: exp[-(y/2)(x - e^{-x} - 3 + 4 e^{-x/2})].
FidelityResult fid_se_analytic(double y, double x);

// Leading-order CPMG-n fidelity exp[-y x^3 / (24 n^2)].
FidelityResult fid_n_approx(int n, double y, double x);

// --- numerical decay exponents ---

// chi = (1/2) int int w(t) w(s) f(T;t) f(T;s) C(t-s) dt ds by adaptive
// quadrature, with the integration split at pulse times and at the t = s
// kink of the correlation function.
double chi_time_domain(const PulseSequence &seq, const NoiseTarget &target,
                       const OuParams &p, double T, double abs_tol = 1e-8);

// chi = (1/2pi) int_0^inf F(omega T) S(omega) / omega^2 domega, the
// frequency-domain expression consistent with the one-sided S(omega);
// field noise only. Truncated at a cutoff whose analytic tail bound is
// below tolerance.
double chi_freq_domain(const PulseSequence &seq, const OuParams &p, double T,
                       double abs_tol = 1e-9);

// --- decoherence time ---

// Short-time FID definition ln F(T2) = -1: T2 = 2 / sqrt(Gamma*gamma).
double t2_fid_formula(const OuParams &p);

// DD leading-order scaling T2 = (24 / (Gamma gamma^2))^{1/3} n^{2/3}.
double t2_dd_formula(int n, const OuParams &p);

// Root-solve chi(T2) = 1 by bracketed bisection over a monotone chi(T).
double t2_root_solve(const std::function<double(double)> &chi_of_t,
                     double t_hint);

// chi(T2) = 1 with the exact B-noise exponent of the sequence.
double t2_exact(const PulseSequence &seq, const OuParams &p);

// --- Monte Carlo ---

// Ensemble average of e^{-i Phi} with Phi = int w f delta over OU
// realizations; trapezoid accumulation on a grid with pulse times inserted
// exactly. grid_steps = 0 picks the grid from gamma*dt <= 0.01 and the
// minimum pulse gap. Deterministic given the master seed; trajectory j uses
// derive_seed(seed, j).
FidelityResult mc_fidelity(const PulseSequence &seq, const NoiseTarget &target,
                           const OuParams &p, double T, std::int64_t n_traj,
                           std::uint64_t seed, int grid_steps = 0,
                           int threads = 0);

// Single-realization ratio <+|rho(T)|-> / [<+|psi(T)><psi(T)|->] under the
// noisy diagonal Hamiltonian; independent of (alpha1, alpha2) and equal to
// exp(-i int delta_B dt) for field noise.
complexd input_state_ratio(const NoisePath &path, const GateSchedule &s,
                           double alpha1, double alpha2);

// --- landscapes over (gamma T, Gamma/gamma) ---

enum class LandscapeKind {
  fid_b,             // Eq.-(22) closed form
  fid_phi_linear,    // Eq.-(26) closed form
  fid_phi_smooth,    // FID phase noise, theta = wt - sin wt, time quadrature
  fid_se,            // Eq.-(30) closed form
  sequence_exact,    // exact B-noise exponent of `seq`
  sequence_time_quad // time-domain quadrature of `seq` and `target`
};

struct LandscapeGrid {
  std::vector<double> gamma_t;   // x axis
  std::vector<double> ratio;     // y axis
  std::vector<double> value;     // value[iy * nx + ix]
};

LandscapeGrid landscape(LandscapeKind kind, const PulseSequence *seq,
                        const NoiseTarget *target, double x0, double x1, int nx,
                        double y0, double y1, int ny, int threads = 0);

}  // namespace qpg
