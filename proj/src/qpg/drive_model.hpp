#pragma once

#include <vector>

#include "qpg/linalg.hpp"
#include "qpg/schedule.hpp"

namespace qpg {

// Lab-frame parametric Rabi drive. Angular frequencies in rad/us (the paper
// convention "x pi MHz" maps to x*pi rad/us).
struct DriveParams {
  double omega_a = 0.0;        // qubit splitting
  Schedule omega_b;            // drive frequency
  Schedule Omega_R;            // Rabi frequency
  Schedule varphi_R;           // drive phase
  Schedule Omega_b_integral;   // t -> int_0^t omega_b(s) ds

  // Time-independent drive; the integral of omega_b is omega_b * t.
  static DriveParams constant(double omega_a, double omega_b, double Omega_R,
                              double varphi0 = 0.0);
};

// Effective-field parameters (B0, theta, phi) of the modified-RWA
// Hamiltonian at time t. theta is resolved with two-argument arctangent so
// the branch is continuous in t; throws when the field direction is
// undefined (omega_a = omega_b with Omega_R = 0).
struct EffectiveField {
  double B0 = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};
EffectiveField effective_field(const DriveParams &p, double t);

// H(t) = (omega_a/2) sz + Omega_R cos(Omega_b + varphi_R) sx.
Mat2 hamiltonian_original(const DriveParams &p, double t);

// Rotating-wave Hamiltonian after dropping the 2*Omega_b terms.
Mat2 hamiltonian_rwa(const DriveParams &p, double t);

// Modified-RWA Hamiltonian (B0/2) n(t).sigma keeping the first-order
// counter-rotating contribution.
Mat2 hamiltonian_effective(const DriveParams &p, double t);

// max(|d omega_b/dt|, |d varphi_R/dt|, |d Omega_R/dt|) / |omega_a + omega_b|;
// the modified-RWA derivation assumes this is << 1.
double mrwa_validity_margin(const DriveParams &p, double t, double span);

// Counterdiabatic correction (1/2) [n x dn/dt] . sigma for the schedule.
Mat2 counterdiabatic(const GateSchedule &s, double t);

// H1 + H_CD, the transitionless-driving corrected Hamiltonian.
Mat2 hamiltonian_total(const GateSchedule &s, double t);

// State on the {|+>, |->} basis; component 0 is the |+> amplitude.
using QubitState = Vec2;
QubitState state_from_angles(double alpha1, double alpha2);

struct Trajectory {
  std::vector<double> t;
  std::vector<QubitState> states;
};

// Midpoint matrix-exponential stepping: exactly unitary per step and
// second-order accurate. Grid points are t0 + k*dt with the last step
// shortened to land on t1; throws if the state norm drifts beyond 1e-9.
Trajectory propagate(const std::function<Mat2(double)> &h, const QubitState &psi0,
                     double t0, double t1, double dt);

// Same stepping applied to the full evolution operator.
Mat2 propagate_unitary(const std::function<Mat2(double)> &h, double t0,
                       double t1, double dt);

// Populations P+(t) from |+> under the original, RWA, and modified-RWA
// Hamiltonians, each propagated in its own frame and transformed back to the
// lab frame before the projection (R(t) is diagonal and drops out; the S(t)
// correction does not).
struct RabiTraces {
  std::vector<double> t;
  std::vector<double> exact;
  std::vector<double> rwa;
  std::vector<double> mrwa;
  double l2_rwa = 0.0;   // rms distance to the exact trace
  double l2_mrwa = 0.0;
};
RabiTraces rabi_compare(const DriveParams &p, double t_max, int n_points);

// Total, dynamical, and geometric phases of one cycle (Berry-phase split).
struct GatePhases {
  double total_plus = 0.0, total_minus = 0.0;
  double dynamical_plus = 0.0, dynamical_minus = 0.0;
  double geometric_plus = 0.0, geometric_minus = 0.0;
};
GatePhases gate_phases(const GateSchedule &s);

// Closed-form cycle unitary diag(e^{-i[alpha+phi(T)]/2}, e^{+i[alpha+phi(T)]/2})
// with alpha = int_0^T (B0 - phi_dot cos theta) dt, up to a global phase.
Mat2 gate_unitary(const GateSchedule &s);

// Numerical propagation of H1 + H_CD over the cycle, for cross-validation
// against gate_unitary.
Mat2 gate_unitary_propagated(const GateSchedule &s, double dt);

}  // namespace qpg
