#include "qpg/drive_model.hpp"

#include <cmath>
#include <stdexcept>

#include "qpg/quadrature.hpp"

namespace qpg {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNormTol = 1e-9;
}  // namespace

DriveParams DriveParams::constant(double omega_a, double omega_b,
                                  double Omega_R, double varphi0) {
  DriveParams p;
  p.omega_a = omega_a;
  p.omega_b = [omega_b](double) { return omega_b; };
  p.Omega_R = [Omega_R](double) { return Omega_R; };
  p.varphi_R = [varphi0](double) { return varphi0; };
  p.Omega_b_integral = [omega_b](double t) { return omega_b * t; };
  return p;
}

EffectiveField effective_field(const DriveParams &p, double t) {
  const double wb = p.omega_b(t);
  const double wr = p.Omega_R(t);
  const double denom = p.omega_a + wb;
  if (!(denom > 0.0)) {
    throw std::invalid_argument(
        "effective_field: omega_a + omega_b(t) must be positive");
  }
  const double bz = p.omega_a - wb;          // B0 cos(theta)
  const double bx = 2.0 * wr * p.omega_a / denom;  // B0 sin(theta)
  const double b0 = std::hypot(bz, bx);
  if (b0 == 0.0) {
    throw std::invalid_argument(
        "effective_field: degenerate resonance omega_a = omega_b with "
        "Omega_R = 0, field direction undefined");
  }
  EffectiveField f;
  f.B0 = b0;
  f.theta = std::atan2(bx, bz);  // continuous branch, [0, pi] for bx >= 0
  f.phi = p.varphi_R(t);
  return f;
}

Mat2 hamiltonian_original(const DriveParams &p, double t) {
  const double coupling =
      p.Omega_R(t) * std::cos(p.Omega_b_integral(t) + p.varphi_R(t));
  return 0.5 * p.omega_a * pauli_z() + coupling * pauli_x();
}

Mat2 hamiltonian_rwa(const DriveParams &p, double t) {
  const double detuning = 0.5 * (p.omega_a - p.omega_b(t));
  const double phase = p.varphi_R(t);
  const double half_rabi = 0.5 * p.Omega_R(t);
  return detuning * pauli_z() +
         half_rabi * (std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y());
}

Mat2 hamiltonian_effective(const DriveParams &p, double t) {
  const EffectiveField f = effective_field(p, t);
  const Vec3 n(std::sin(f.theta) * std::cos(f.phi),
               std::sin(f.theta) * std::sin(f.phi), std::cos(f.theta));
  return 0.5 * f.B0 * pauli_dot(n);
}

double mrwa_validity_margin(const DriveParams &p, double t, double span) {
  const double h = std::max(1e-6 * span, 1e-12);
  const auto slope = [h, t](const Schedule &f) {
    return std::abs(f(t + h) - f(t - h)) / (2.0 * h);
  };
  const double fastest = std::max(
      {slope(p.omega_b), slope(p.varphi_R), slope(p.Omega_R)});
  return fastest / std::abs(p.omega_a + p.omega_b(t));
}

Mat2 counterdiabatic(const GateSchedule &s, double t) {
  const double th = s.theta(t);
  const double ph = s.phi(t);
  const double td = s.theta_dot(t);
  const double pd = s.phi_dot(t);
  const double st = std::sin(th), ct = std::cos(th);
  const double sp = std::sin(ph), cp = std::cos(ph);
  const Vec3 v(-td * sp - pd * st * ct * cp, td * cp - pd * st * ct * sp,
               pd * st * st);
  return 0.5 * pauli_dot(v);
}

Mat2 hamiltonian_total(const GateSchedule &s, double t) {
  const double th = s.theta(t);
  const double ph = s.phi(t);
  const Vec3 n(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
               std::cos(th));
  return 0.5 * s.B0 * pauli_dot(n) + counterdiabatic(s, t);
}

QubitState state_from_angles(double alpha1, double alpha2) {
  QubitState psi;
  psi << complexd(std::cos(alpha1), 0.0),
      std::sin(alpha1) * std::exp(complexd(0.0, alpha2));
  return psi;
}

namespace {

// Shared stepping core; Step is called with (t_mid, dt) for every substep.
template <typename Step>
void run_steps(double t0, double t1, double dt, const Step &step) {
  if (!(dt > 0.0)) throw std::invalid_argument("propagate: dt must be > 0");
  if (!(t1 > t0)) throw std::invalid_argument("propagate: need t1 > t0");
  double t = t0;
  while (t < t1) {
    const double h = std::min(dt, t1 - t);
    step(t + 0.5 * h, h);
    t += h;
  }
}

}  // namespace

Trajectory propagate(const std::function<Mat2(double)> &h, const QubitState &psi0,
                     double t0, double t1, double dt) {
  Trajectory traj;
  QubitState psi = psi0;
  double t = t0;
  traj.t.push_back(t);
  traj.states.push_back(psi);
  run_steps(t0, t1, dt, [&](double t_mid, double step) {
    psi = exp_minus_i_h(h(t_mid), step) * psi;
    t += step;
    if (std::abs(psi.norm() - 1.0) > kNormTol) {
      throw std::runtime_error(
          "propagate: norm drift beyond 1e-9 at t = " + std::to_string(t) +
          "; reduce dt");
    }
    traj.t.push_back(t);
    traj.states.push_back(psi);
  });
  return traj;
}

Mat2 propagate_unitary(const std::function<Mat2(double)> &h, double t0,
                       double t1, double dt) {
  Mat2 u = Mat2::Identity();
  run_steps(t0, t1, dt, [&](double t_mid, double step) {
    u = exp_minus_i_h(h(t_mid), step) * u;
  });
  if ((u * u.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() > kNormTol) {
    throw std::runtime_error("propagate_unitary: unitarity drift; reduce dt");
  }
  return u;
}

RabiTraces rabi_compare(const DriveParams &p, double t_max, int n_points) {
  if (n_points < 2) throw std::invalid_argument("rabi_compare: n_points >= 2");
  if (!(t_max > 0.0)) throw std::invalid_argument("rabi_compare: t_max > 0");

  // Fast scale of the problem sets the substep; the lab-frame Hamiltonian
  // oscillates at omega_b on top of the splitting omega_a.
  const double omega_fast = std::abs(p.omega_a) + std::abs(p.omega_b(0.0)) +
                            2.0 * std::abs(p.Omega_R(0.0));
  const double dt = 0.005 * 2.0 * kPi / std::max(omega_fast, 1.0 / t_max);

  RabiTraces out;
  out.t.resize(n_points);
  const double grid_dt = t_max / (n_points - 1);
  for (int i = 0; i < n_points; ++i) out.t[i] = i * grid_dt;

  const auto h_exact = [&p](double t) { return hamiltonian_original(p, t); };
  const auto h_rwa = [&p](double t) { return hamiltonian_rwa(p, t); };
  const auto h_mrwa = [&p](double t) { return hamiltonian_effective(p, t); };

  // S(0)|+> seeds the modified-RWA frame so all three start from lab |+>.
  const auto s_angle = [&p](double t) {
    return p.Omega_R(t) / (p.omega_a + p.omega_b(t)) *
           std::sin(p.Omega_b_integral(t) + p.varphi_R(t));
  };
  QubitState plus;
  plus << 1.0, 0.0;
  QubitState psi_exact = plus;
  QubitState psi_rwa = plus;
  QubitState psi_mrwa = exp_minus_i_h(pauli_x(), -s_angle(0.0)) * plus;

  out.exact.resize(n_points);
  out.rwa.resize(n_points);
  out.mrwa.resize(n_points);

  const auto step_to = [&](const std::function<Mat2(double)> &h, QubitState &psi,
                           double a, double b) {
    run_steps(a, b, dt, [&](double t_mid, double step) {
      psi = exp_minus_i_h(h(t_mid), step) * psi;
    });
  };

  for (int i = 0; i < n_points; ++i) {
    if (i > 0) {
      step_to(h_exact, psi_exact, out.t[i - 1], out.t[i]);
      step_to(h_rwa, psi_rwa, out.t[i - 1], out.t[i]);
      step_to(h_mrwa, psi_mrwa, out.t[i - 1], out.t[i]);
    }
    const double t = out.t[i];
    out.exact[i] = std::norm(psi_exact(0));
    // R(t) is diagonal: populations in the R frame equal lab populations.
    out.rwa[i] = std::norm(psi_rwa(0));
    // Lab state for the modified RWA: S^dag(t) R^dag(t) psi1(t).
    const double ob = p.Omega_b_integral(t);
    QubitState lab = psi_mrwa;
    lab(0) *= std::exp(complexd(0.0, -0.5 * ob));
    lab(1) *= std::exp(complexd(0.0, 0.5 * ob));
    lab = exp_minus_i_h(pauli_x(), s_angle(t)) * lab;
    out.mrwa[i] = std::norm(lab(0));
  }

  double acc_rwa = 0.0, acc_mrwa = 0.0;
  for (int i = 0; i < n_points; ++i) {
    acc_rwa += (out.rwa[i] - out.exact[i]) * (out.rwa[i] - out.exact[i]);
    acc_mrwa += (out.mrwa[i] - out.exact[i]) * (out.mrwa[i] - out.exact[i]);
  }
  out.l2_rwa = std::sqrt(acc_rwa / n_points);
  out.l2_mrwa = std::sqrt(acc_mrwa / n_points);
  return out;
}

GatePhases gate_phases(const GateSchedule &s) {
  s.validate();
  const double total_minus =
      0.5 * integrate(
                [&s](double t) {
                  return s.B0 - s.phi_dot(t) * (std::cos(s.theta(t)) - 1.0);
                },
                0.0, s.T, 1e-10);
  const double dyn_minus = 0.5 * s.B0 * s.T;

  GatePhases g;
  g.total_minus = total_minus;
  g.total_plus = -total_minus;
  g.dynamical_minus = dyn_minus;
  g.dynamical_plus = -dyn_minus;
  // Definitional split: geometric = total - dynamical, exactly.
  g.geometric_minus = total_minus - dyn_minus;
  g.geometric_plus = -g.geometric_minus;
  return g;
}

Mat2 gate_unitary(const GateSchedule &s) {
  s.validate();
  const double alpha = integrate(
      [&s](double t) { return s.B0 - s.phi_dot(t) * std::cos(s.theta(t)); },
      0.0, s.T, 1e-10);
  const double half = 0.5 * (alpha + (s.phi(s.T) - s.phi(0.0)));
  Mat2 u = Mat2::Zero();
  u(0, 0) = std::exp(complexd(0.0, -half));
  u(1, 1) = std::exp(complexd(0.0, half));
  return u;
}

Mat2 gate_unitary_propagated(const GateSchedule &s, double dt) {
  s.validate();
  return propagate_unitary([&s](double t) { return hamiltonian_total(s, t); },
                           0.0, s.T, dt);
}

}  // namespace qpg
