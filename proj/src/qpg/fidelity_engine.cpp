#include "qpg/fidelity_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qpg/parallel.hpp"
#include "qpg/quadrature.hpp"
#include "qpg/rng.hpp"
#include "qpg/sequence_optimizer.hpp"

namespace qpg {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

NoiseTarget NoiseTarget::field_b() { return NoiseTarget(true, nullptr); }

NoiseTarget NoiseTarget::phase_dot_linear() {
  return NoiseTarget(false, [](double u) { return kTwoPi * u; });
}

NoiseTarget NoiseTarget::phase_dot_smooth() {
  return NoiseTarget(
      false, [](double u) { return kTwoPi * u - std::sin(kTwoPi * u); });
}

NoiseTarget NoiseTarget::phase_dot(Schedule theta_of_fraction) {
  return NoiseTarget(false, std::move(theta_of_fraction));
}

double NoiseTarget::weight_frac(double u) const {
  if (field_) return 1.0;
  return 1.0 - std::cos(theta_(u));
}

FidelityResult fid_b_analytic(double y, double x) {
  if (x < 0.0 || y < 0.0) {
    throw std::invalid_argument("fid_b_analytic: x and y must be >= 0");
  }
  FidelityResult r;
  r.method = Method::analytic;
  r.chi = 0.5 * y * (x + std::exp(-x) - 1.0);
  r.value = std::exp(-r.chi);
  return r;
}

FidelityResult fid_phi_analytic(double y, double x) {
  if (x < 0.0 || y < 0.0) {
    throw std::invalid_argument("fid_phi_analytic: x and y must be >= 0");
  }
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double bracket = 32.0 * pi4 * std::exp(-x) + 32.0 * pi4 * (x - 1.0) +
                         20.0 * pi2 * x * x * x + 3.0 * std::pow(x, 5);
  const double denom = 4.0 * pi2 + x * x;
  FidelityResult r;
  r.method = Method::analytic;
  r.chi = y * bracket / (4.0 * denom * denom);
  r.value = std::exp(-r.chi);
  return r;
}

FidelityResult fid_se_analytic(double y, double x) {
  if (x < 0.0 || y < 0.0) {
    throw std::invalid_argument("fid_se_analytic: x and y must be >= 0");
  }
  FidelityResult r;
  r.method = Method::analytic;
  r.chi = 0.5 * y * (x - std::exp(-x) - 3.0 + 4.0 * std::exp(-0.5 * x));
  r.value = std::exp(-r.chi);
  return r;
}

FidelityResult fid_n_approx(int n, double y, double x) {
  if (n < 1) throw std::invalid_argument("fid_n_approx: n must be >= 1");
  FidelityResult r;
  r.method = Method::analytic;
  r.chi = y * x * x * x / (24.0 * static_cast<double>(n) * n);
  r.value = std::exp(-r.chi);
  return r;
}

double chi_time_domain(const PulseSequence &seq, const NoiseTarget &target,
                       const OuParams &p, double T, double abs_tol) {
  p.validate();
  if (!(T >= 0.0)) throw std::invalid_argument("chi_time_domain: T must be >= 0");
  if (T == 0.0 || p.Gamma == 0.0) return 0.0;

  const double g = p.gamma;
  const auto w = [&target, T](double t) { return target.weight_frac(t / T); };

  // Segment edges at the pulse times; the switching function is constant on
  // each segment and C(t-s) = (Gamma g / 2) e^{-g(t-s)} is smooth once the
  // square is split along t = s.
  std::vector<double> edges;
  edges.push_back(0.0);
  for (const double mu : seq.fractions()) edges.push_back(mu * T);
  edges.push_back(T);
  const int n_seg = static_cast<int>(edges.size()) - 1;

  const double tol_1d = std::min(1e-12, abs_tol / (8.0 * n_seg));
  const double tol_diag = abs_tol / (4.0 * n_seg);

  // Exponentially shifted one-sided factors per segment; all exponents kept
  // <= 0 so large gamma*T cannot overflow.
  std::vector<double> left_factor(n_seg);   // int w(t) e^{-g (t - lo)} dt
  std::vector<double> right_factor(n_seg);  // int w(s) e^{-g (hi - s)} ds
  for (int a = 0; a < n_seg; ++a) {
    const double lo = edges[a], hi = edges[a + 1];
    left_factor[a] = integrate(
        [&](double t) { return w(t) * std::exp(-g * (t - lo)); }, lo, hi,
        tol_1d, 1e-13);
    right_factor[a] = integrate(
        [&](double s) { return w(s) * std::exp(-g * (hi - s)); }, lo, hi,
        tol_1d, 1e-13);
  }

  double sum = 0.0;

  // Cross terms (segment b strictly before segment a) factorize.
  for (int a = 0; a < n_seg; ++a) {
    const double sign_a = seq.switching(0.5 * (edges[a] + edges[a + 1]) / T);
    for (int b = 0; b < a; ++b) {
      const double sign_b = seq.switching(0.5 * (edges[b] + edges[b + 1]) / T);
      const double gap = std::exp(-g * (edges[a] - edges[b + 1]));
      sum += sign_a * sign_b * gap * left_factor[a] * right_factor[b];
    }
  }

  // Diagonal blocks: triangular integral with nested quadrature.
  for (int a = 0; a < n_seg; ++a) {
    const double lo = edges[a], hi = edges[a + 1];
    const double inner_tol = std::min(1e-13, tol_diag / (4.0 * (hi - lo) + 1.0));
    const double diag = integrate(
        [&](double t) {
          if (t <= lo) return 0.0;
          const double inner = integrate(
              [&](double s) { return w(s) * std::exp(-g * (t - s)); }, lo, t,
              inner_tol, 1e-12);
          return w(t) * inner;
        },
        lo, hi, tol_diag, 1e-12);
    sum += diag;  // switching sign squared is 1
  }

  return 0.5 * p.Gamma * g * sum;
}

double chi_freq_domain(const PulseSequence &seq, const OuParams &p, double T,
                       double abs_tol) {
  p.validate();
  if (!(T >= 0.0)) throw std::invalid_argument("chi_freq_domain: T must be >= 0");
  if (T == 0.0 || p.Gamma == 0.0) return 0.0;

  const double g = p.gamma;
  const int n = seq.size();
  const auto integrand = [&](double omega) {
    const double f = seq.filter(omega * T);
    return f * spectral_density(p, omega) / (omega * omega) / kTwoPi;
  };

  // |omega ftilde| <= 2n + 2, so F <= (2n+2)^2 / 2 and the tail beyond
  // omega_max is bounded by F_max * Gamma g^2 / (pi * 3 * omega_max^3).
  const double f_max = 0.5 * (2.0 * n + 2.0) * (2.0 * n + 2.0);
  const double tail_tol = 0.5 * abs_tol;
  double omega_max = std::max(100.0 * g, 200.0 * kPi / T);
  const double omega_for_tail =
      std::cbrt(f_max * p.Gamma * g * g / (3.0 * kPi * tail_tol));
  omega_max = std::max(omega_max, omega_for_tail);

  // Pre-split into chunks of a few filter oscillations so the adaptive error
  // estimate is trustworthy from the start.
  const double chunk = std::max(20.0 * kPi / T, omega_max / 4096.0);
  double chi = 0.0;
  double lo = 0.0;
  const double quad_tol = 0.5 * abs_tol / std::ceil(omega_max / chunk);
  while (lo < omega_max) {
    const double hi = std::min(lo + chunk, omega_max);
    chi += integrate(integrand, lo, hi, quad_tol, 1e-12);
    lo = hi;
  }
  return chi;
}

double t2_fid_formula(const OuParams &p) {
  p.validate();
  if (p.Gamma == 0.0) throw std::invalid_argument("t2: Gamma must be > 0");
  return 2.0 / std::sqrt(p.Gamma * p.gamma);
}

double t2_dd_formula(int n, const OuParams &p) {
  p.validate();
  if (n < 1) throw std::invalid_argument("t2_dd_formula: n must be >= 1");
  if (p.Gamma == 0.0) throw std::invalid_argument("t2: Gamma must be > 0");
  return std::cbrt(24.0 / (p.Gamma * p.gamma * p.gamma)) *
         std::pow(static_cast<double>(n), 2.0 / 3.0);
}

double t2_root_solve(const std::function<double(double)> &chi_of_t,
                     double t_hint) {
  if (!(t_hint > 0.0)) throw std::invalid_argument("t2_root_solve: bad hint");
  double lo = t_hint, hi = t_hint;
  // chi is monotone increasing in T; bracket by doubling/halving.
  int guard = 0;
  while (chi_of_t(hi) < 1.0) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("t2_root_solve: no upper bracket");
  }
  guard = 0;
  while (chi_of_t(lo) > 1.0) {
    lo *= 0.5;
    if (++guard > 200) throw std::runtime_error("t2_root_solve: no lower bracket");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi_of_t(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double t2_exact(const PulseSequence &seq, const OuParams &p) {
  p.validate();
  if (p.Gamma == 0.0) throw std::invalid_argument("t2_exact: Gamma must be > 0");
  const double y = p.Gamma / p.gamma;
  const double hint = seq.size() >= 1 ? t2_dd_formula(seq.size(), p)
                                      : t2_fid_formula(p);
  return t2_root_solve(
      [&](double t) { return chi_exact(seq, p.gamma * t, y); }, hint);
}

FidelityResult mc_fidelity(const PulseSequence &seq, const NoiseTarget &target,
                           const OuParams &p, double T, std::int64_t n_traj,
                           std::uint64_t seed, int grid_steps, int threads) {
  p.validate();
  if (!(T > 0.0)) throw std::invalid_argument("mc_fidelity: T must be > 0");
  if (n_traj < 100) throw std::invalid_argument("mc_fidelity: n_traj must be >= 100");

  // Minimum pulse gap in time units, including the boundaries.
  double min_gap = T;
  {
    double prev = 0.0;
    for (const double mu : seq.fractions()) {
      min_gap = std::min(min_gap, (mu * T) - prev);
      prev = mu * T;
    }
    min_gap = std::min(min_gap, T - prev);
  }

  if (grid_steps == 0) {
    const double dt_noise = 0.01 / p.gamma;           // gamma * dt <= 0.01
    const double dt_pulse = min_gap / 10.0;           // resolve pulse spacing
    grid_steps = static_cast<int>(
        std::ceil(T / std::min({dt_noise, dt_pulse, T / 50.0})));
  } else if (T / grid_steps > min_gap) {
    throw std::invalid_argument(
        "mc_fidelity: grid step exceeds the minimum pulse gap; refine the grid");
  }

  // Uniform grid with pulse times inserted exactly.
  std::vector<double> grid;
  grid.reserve(grid_steps + seq.size() + 1);
  for (int i = 0; i <= grid_steps; ++i) grid.push_back(T * i / grid_steps);
  for (const double mu : seq.fractions()) grid.push_back(mu * T);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [T](double a, double b) { return b - a < 1e-15 * T; }),
             grid.end());
  const std::size_t n_nodes = grid.size();

  // Phi_j = sum_i c_i * delta_j(t_i): trapezoid over intervals of constant
  // switching sign, folded into per-node coefficients once.
  std::vector<double> coeff(n_nodes, 0.0);
  for (std::size_t i = 0; i + 1 < n_nodes; ++i) {
    const double dt = grid[i + 1] - grid[i];
    const double sign = seq.switching(0.5 * (grid[i] + grid[i + 1]) / T);
    coeff[i] += 0.5 * sign * dt * target.weight_frac(grid[i] / T);
    coeff[i + 1] += 0.5 * sign * dt * target.weight_frac(grid[i + 1] / T);
  }

  std::vector<double> re(n_traj), im(n_traj);
  parallel_for(static_cast<std::size_t>(n_traj), threads,
               [&](std::size_t lo, std::size_t hi) {
                 const double stationary_sd = std::sqrt(0.5 * p.Gamma * p.gamma);
                 std::vector<double> decay(n_nodes, 0.0), innov(n_nodes, 0.0);
                 for (std::size_t i = 1; i < n_nodes; ++i) {
                   decay[i] = std::exp(-p.gamma * (grid[i] - grid[i - 1]));
                   innov[i] = stationary_sd *
                              std::sqrt(1.0 - decay[i] * decay[i]);
                 }
                 for (std::size_t j = lo; j < hi; ++j) {
                   Rng rng(derive_seed(seed, j));
                   double value = stationary_sd * rng.normal();
                   double phi = coeff[0] * value;
                   for (std::size_t i = 1; i < n_nodes; ++i) {
                     value = value * decay[i] + innov[i] * rng.normal();
                     phi += coeff[i] * value;
                   }
                   re[j] = std::cos(phi);
                   im[j] = -std::sin(phi);
                 }
               });

  // Serial reduction in index order: identical result for any thread count.
  double mean_re = 0.0, mean_im = 0.0;
  for (std::int64_t j = 0; j < n_traj; ++j) {
    mean_re += re[j];
    mean_im += im[j];
  }
  mean_re /= n_traj;
  mean_im /= n_traj;
  double var_re = 0.0, var_im = 0.0;
  for (std::int64_t j = 0; j < n_traj; ++j) {
    var_re += (re[j] - mean_re) * (re[j] - mean_re);
    var_im += (im[j] - mean_im) * (im[j] - mean_im);
  }
  var_re /= (n_traj - 1);
  var_im /= (n_traj - 1);

  FidelityResult r;
  r.method = Method::monte_carlo;
  r.value = mean_re;
  r.std_error = std::sqrt(var_re / n_traj);
  r.imag_mean = mean_im;
  r.imag_std_error = std::sqrt(var_im / n_traj);
  r.chi = mean_re > 0.0 ? -std::log(mean_re)
                        : std::numeric_limits<double>::infinity();
  // The exact ensemble mean is real for zero-mean Gaussian phases; a large
  // imaginary residue indicates an inconsistent estimate.
  if (std::abs(r.imag_mean) > 3.0 * r.imag_std_error + 1e-15) {
    throw std::runtime_error(
        "mc_fidelity: imaginary part of the ensemble mean exceeds 3 standard "
        "errors (" +
        std::to_string(r.imag_mean) + " vs " +
        std::to_string(r.imag_std_error) + "); rerun with another seed");
  }
  return r;
}

complexd input_state_ratio(const NoisePath &path, const GateSchedule &s,
                           double alpha1, double alpha2) {
  s.validate();
  if (path.t.size() < 2 || path.t.size() != path.value.size()) {
    throw std::invalid_argument("input_state_ratio: need a sampled path");
  }
  if (std::abs(path.t.front()) > 1e-12 * s.T ||
      std::abs(path.t.back() - s.T) > 1e-12 * s.T) {
    throw std::invalid_argument("input_state_ratio: path must span [0, T]");
  }

  // Accumulated noise phase, trapezoid on the path grid.
  double delta_int = 0.0;
  for (std::size_t i = 0; i + 1 < path.t.size(); ++i) {
    delta_int += 0.5 * (path.value[i] + path.value[i + 1]) *
                 (path.t[i + 1] - path.t[i]);
  }

  const double alpha = integrate(
      [&s](double t) { return s.B0 - s.phi_dot(t) * std::cos(s.theta(t)); },
      0.0, s.T, 1e-10);
  const double phi_T = s.phi(s.T) - s.phi(0.0);
  const double theta_T = s.theta(s.T);

  const auto evolution = [&](double z_phase) {
    Mat2 uz = Mat2::Zero();
    uz(0, 0) = std::exp(complexd(0.0, -0.5 * z_phase));
    uz(1, 1) = std::exp(complexd(0.0, 0.5 * z_phase));
    return exp_minus_i_h(pauli_z(), 0.5 * phi_T) *
           exp_minus_i_h(pauli_y(), 0.5 * theta_T) * uz;
  };

  const QubitState psi0 = state_from_angles(alpha1, alpha2);
  const Mat2 rho0 = psi0 * psi0.adjoint();

  const Mat2 u_noisy = evolution(alpha + delta_int);
  const Mat2 rho_t = u_noisy * rho0 * u_noisy.adjoint();

  const QubitState psi_ideal = evolution(alpha) * psi0;
  const complexd denom = psi_ideal(0) * std::conj(psi_ideal(1));
  if (std::abs(denom) < 1e-12) {
    throw std::invalid_argument(
        "input_state_ratio: input state has no coherence between |+> and |->");
  }
  return rho_t(0, 1) / denom;
}

LandscapeGrid landscape(LandscapeKind kind, const PulseSequence *seq,
                        const NoiseTarget *target, double x0, double x1, int nx,
                        double y0, double y1, int ny, int threads) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("landscape: empty grid");
  if ((kind == LandscapeKind::sequence_exact ||
       kind == LandscapeKind::sequence_time_quad) &&
      seq == nullptr) {
    throw std::invalid_argument("landscape: sequence kinds need a sequence");
  }
  if (kind == LandscapeKind::sequence_time_quad && target == nullptr) {
    throw std::invalid_argument("landscape: time-quad kind needs a noise target");
  }

  LandscapeGrid grid;
  grid.gamma_t.resize(nx);
  grid.ratio.resize(ny);
  for (int i = 0; i < nx; ++i) {
    grid.gamma_t[i] = nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1);
  }
  for (int j = 0; j < ny; ++j) {
    grid.ratio[j] = ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1);
  }
  grid.value.assign(static_cast<std::size_t>(nx) * ny, 1.0);

  const PulseSequence fid = PulseSequence::fid();
  const NoiseTarget smooth = NoiseTarget::phase_dot_smooth();

  const auto cell = [&](double x, double y) -> double {
    if (x <= 0.0 || y <= 0.0) return 1.0;
    switch (kind) {
      case LandscapeKind::fid_b:
        return fid_b_analytic(y, x).value;
      case LandscapeKind::fid_phi_linear:
        return fid_phi_analytic(y, x).value;
      case LandscapeKind::fid_se:
        return fid_se_analytic(y, x).value;
      case LandscapeKind::fid_phi_smooth:
        // chi depends on (x, y) only; evaluate at gamma = 1.
        return std::exp(-chi_time_domain(fid, smooth, OuParams{y, 1.0}, x));
      case LandscapeKind::sequence_exact:
        return std::exp(-chi_exact(*seq, x, y));
      case LandscapeKind::sequence_time_quad:
        return std::exp(-chi_time_domain(*seq, *target, OuParams{y, 1.0}, x));
    }
    return 1.0;
  };

  parallel_for(grid.value.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int ix = static_cast<int>(idx % nx);
      const int iy = static_cast<int>(idx / nx);
      grid.value[idx] = cell(grid.gamma_t[ix], grid.ratio[iy]);
    }
  });
  return grid;
}

}  // namespace qpg
