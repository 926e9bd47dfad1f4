#ifndef QPG_QPG_H
#define QPG_QPG_H

/* C interface of the qpg shared library: simulation and optimization of
 * TQD-accelerated Berry-phase gates under Gaussian Ornstein-Uhlenbeck
 * control noise, with dynamical-decoupling sequence construction,
 * analytic / quadrature / Monte Carlo fidelity engines, and the
 * time-domain sequence optimizer.
 *
 * Conventions:
 *  - angular frequencies and rates in rad/us ("x pi MHz" in the physics
 *    convention equals x*pi rad/us), times in us;
 *  - x denotes the dimensionless period gamma*T, y the ratio Gamma/gamma;
 *  - every function returning qpg_status leaves outputs untouched on
 *    failure and stores a message retrievable via qpg_last_error().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QPG_API __declspec(dllexport)
#else
#define QPG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpg_status {
  QPG_OK = 0,
  QPG_ERR_INVALID_ARGUMENT = 1,
  QPG_ERR_NUMERICAL = 2,
  QPG_ERR_BUFFER_TOO_SMALL = 3
} qpg_status;

/* Message for the most recent failure on the calling thread. */
QPG_API const char *qpg_last_error(void);
QPG_API const char *qpg_version(void);

/* ---------------- pulse sequences ---------------- */

/* Opaque ordered list of pi-pulse fractions mu_k in (0,1); n = 0 is FID. */
typedef struct qpg_sequence qpg_sequence;

QPG_API qpg_status qpg_sequence_fid(qpg_sequence **out);
QPG_API qpg_status qpg_sequence_cpmg(int n, qpg_sequence **out);
QPG_API qpg_status qpg_sequence_udd(int n, qpg_sequence **out);
/* Strictly increasing fractions; duplicates are rejected. */
QPG_API qpg_status qpg_sequence_custom(const double *fractions, int n,
                                       qpg_sequence **out);
/* Appendix recursion; equals CPMG-n. */
QPG_API qpg_status qpg_sequence_recursion(int n, qpg_sequence **out);
QPG_API void qpg_sequence_free(qpg_sequence *seq);

QPG_API int qpg_sequence_size(const qpg_sequence *seq);
QPG_API qpg_status qpg_sequence_fractions(const qpg_sequence *seq, double *out,
                                          int capacity);
/* Switching function f(T;t) at fraction t_frac in [0,1]; returns +-1. */
QPG_API double qpg_sequence_switching(const qpg_sequence *seq, double t_frac);
/* Filter function F(z), z = omega*T. */
QPG_API double qpg_sequence_filter(const qpg_sequence *seq, double z);
/* JSON {"name": ..., "fractions": [...]}; needs capacity > strlen. */
QPG_API qpg_status qpg_sequence_to_json(const qpg_sequence *seq, char *buf,
                                        size_t capacity);

/* chi(x,y) series coefficients C0..C3 into coeffs_out[4]. */
QPG_API qpg_status qpg_sequence_coefficients(const qpg_sequence *seq,
                                             double coeffs_out[4]);
/* Dynamical-phase cancellation residual (-1)^n + 2 sum (-1)^{k-1} mu_k. */
QPG_API qpg_status qpg_sequence_phase_constraint(const qpg_sequence *seq,
                                                 double *out);

/* ---------------- Ornstein-Uhlenbeck noise ---------------- */

/* C(tau) = (Gamma*gamma/2) exp(-gamma |tau|). */
QPG_API qpg_status qpg_ou_correlation(double Gamma, double gamma, double tau,
                                      double *out);
/* One-sided S(omega) = 2 Gamma gamma^2 / (omega^2 + gamma^2). */
QPG_API qpg_status qpg_ou_spectral_density(double Gamma, double gamma,
                                           double omega, double *out);
/* Exact stationary discretization on t_i = t0 + i*dt; values_out[n_points]. */
QPG_API qpg_status qpg_ou_sample(double Gamma, double gamma, double t0,
                                 double dt, int n_points, uint64_t seed,
                                 double *values_out);
/* Per-work-unit seed derivation used by the Monte Carlo engine. */
QPG_API uint64_t qpg_derive_seed(uint64_t master, uint64_t index);

/* ---------------- closed-form fidelities ---------------- */

QPG_API qpg_status qpg_fidelity_b(double y, double x, double *out);
QPG_API qpg_status qpg_fidelity_phi(double y, double x, double *out);
QPG_API qpg_status qpg_fidelity_se(double y, double x, double *out);
/* Leading-order CPMG-n fidelity exp[-y x^3/(24 n^2)]. */
QPG_API qpg_status qpg_fidelity_dd_approx(int n, double y, double x,
                                          double *out);

/* ---------------- decay exponents ---------------- */

typedef enum qpg_noise_target {
  QPG_NOISE_FIELD = 0,        /* delta_B, weight 1 */
  QPG_NOISE_PHASE_LINEAR = 1, /* delta_phidot, theta = wt */
  QPG_NOISE_PHASE_SMOOTH = 2  /* delta_phidot, theta = wt - sin(wt) */
} qpg_noise_target;

/* Exact B-noise exponent chi(x, y) of the sequence (closed form). */
QPG_API qpg_status qpg_chi_exact(const qpg_sequence *seq, double x, double y,
                                 double *out);
/* Time-domain double-integral exponent. */
QPG_API qpg_status qpg_chi_time_domain(const qpg_sequence *seq,
                                       qpg_noise_target target, double Gamma,
                                       double gamma, double T, double *out);
/* Frequency-domain filter-function exponent (field noise). */
QPG_API qpg_status qpg_chi_freq_domain(const qpg_sequence *seq, double Gamma,
                                       double gamma, double T, double *out);

/* ---------------- decoherence time ---------------- */

QPG_API qpg_status qpg_t2_fid(double Gamma, double gamma, double *out);
QPG_API qpg_status qpg_t2_dd(int n, double Gamma, double gamma, double *out);
/* Root of chi(T2) = 1 with the exact sequence exponent. */
QPG_API qpg_status qpg_t2_exact(const qpg_sequence *seq, double Gamma,
                                double gamma, double *out);

/* ---------------- Monte Carlo ---------------- */

typedef struct qpg_mc_result {
  double fidelity;       /* Re mean of e^{-i Phi} */
  double std_error;
  double chi;            /* -ln fidelity */
  double imag_mean;      /* consistency statistic, ~0 */
  double imag_std_error;
  int64_t n_traj;
} qpg_mc_result;

/* grid_steps = 0 chooses the grid from gamma*dt <= 0.01 and the pulse
 * spacing; explicit grids coarser than the pulse spacing are rejected.
 * Deterministic for a fixed seed, independent of threading. */
QPG_API qpg_status qpg_mc_fidelity(const qpg_sequence *seq,
                                   qpg_noise_target target, double Gamma,
                                   double gamma, double T, int64_t n_traj,
                                   uint64_t seed, int grid_steps,
                                   qpg_mc_result *out);

/* ---------------- landscapes ---------------- */

typedef enum qpg_landscape_kind {
  QPG_LANDSCAPE_FID_B = 0,
  QPG_LANDSCAPE_FID_PHI_LINEAR = 1,
  QPG_LANDSCAPE_FID_PHI_SMOOTH = 2,
  QPG_LANDSCAPE_FID_SE = 3,
  QPG_LANDSCAPE_SEQUENCE_EXACT = 4,    /* needs seq */
  QPG_LANDSCAPE_SEQUENCE_TIME_QUAD = 5 /* needs seq; uses `target` */
} qpg_landscape_kind;

/* Fidelity over the grid x in [x0,x1] (nx points, gamma*T) times
 * y in [y0,y1] (ny points, Gamma/gamma); values_out[iy*nx + ix]. */
QPG_API qpg_status qpg_landscape(qpg_landscape_kind kind,
                                 const qpg_sequence *seq,
                                 qpg_noise_target target, double x0, double x1,
                                 int nx, double y0, double y1, int ny,
                                 double *values_out);

/* ---------------- sequence optimization ---------------- */

typedef struct qpg_opt_result {
  double c3_min;
  double constraint_residual;
  int iterations;
  int starts;
  int converged_starts;
} qpg_opt_result;

/* Minimizes C3 under the dynamical-phase constraint from `starts` random
 * feasible starts; the minimizer sequence is returned via seq_out. */
QPG_API qpg_status qpg_optimize(int n, int starts, double tol, uint64_t seed,
                                qpg_opt_result *info_out,
                                qpg_sequence **seq_out);

/* ---------------- gate model ---------------- */

typedef enum qpg_theta_kind {
  QPG_THETA_LINEAR = 0, /* theta = omega t */
  QPG_THETA_SMOOTH = 1  /* theta = omega t - sin(omega t) */
} qpg_theta_kind;

typedef struct qpg_gate_phases {
  double total_plus, total_minus;
  double dynamical_plus, dynamical_minus;
  double geometric_plus, geometric_minus;
} qpg_gate_phases;

/* Cycle phases for theta as selected, phi = phi_rate * t, T = 2pi/omega. */
QPG_API qpg_status qpg_gate_phases_compute(qpg_theta_kind kind, double B0,
                                           double omega, double phi_rate,
                                           qpg_gate_phases *out);

/* ---------------- Rabi-model comparison ---------------- */

/* Populations P+(t) from |+> under the exact, RWA, and modified-RWA
 * Hamiltonians on n_points uniform times in [0, t_max]; each buffer holds
 * n_points values. l2_* are rms distances to the exact trace. */
QPG_API qpg_status qpg_rabi_compare(double omega_a, double omega_b,
                                    double Omega_R, double varphi0,
                                    double t_max, int n_points, double *p_exact,
                                    double *p_rwa, double *p_mrwa,
                                    double *l2_rwa, double *l2_mrwa);

#ifdef __cplusplus
}
#endif

#endif /* QPG_QPG_H */
