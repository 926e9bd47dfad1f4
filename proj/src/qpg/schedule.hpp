#pragma once

#include <functional>

namespace qpg {

using Schedule = std::function<double(double)>;

// Central-difference derivative with a two-sided consistency check; throws
// std::domain_error where the schedule is not differentiable (kinks). `span`
// sets the stencil width relative to the schedule's natural time scale.
double differentiate(const Schedule &f, double t, double span);

// One gate cycle of the effective field: constant magnitude B0, polar angle
// theta sweeping 0 -> 2pi over the period T, azimuth phi.
struct GateSchedule {
  double B0 = 0.0;      // rad/us
  Schedule theta;
  Schedule theta_dot;
  Schedule phi;
  Schedule phi_dot;
  double omega = 0.0;   // base sweep rate of theta, rad/us
  double T = 0.0;       // us

  // theta = omega t, phi = phi_rate t, T = 2 pi / omega.
  static GateSchedule linear(double B0, double omega, double phi_rate);

  // theta = omega t - sin(omega t); same boundary values, reduced
  // integral of (1 - cos theta) over the cycle.
  static GateSchedule smoothed(double B0, double omega, double phi_rate);

  // Derivatives built by finite differences; evaluation throws at kinks.
  static GateSchedule with_numeric_derivatives(double B0, Schedule theta,
                                               Schedule phi, double omega,
                                               double T);

  // Checks theta(0) = 0 and theta(T) = 2 pi within tolerance.
  void validate(double tol = 1e-9) const;
};

}  // namespace qpg
