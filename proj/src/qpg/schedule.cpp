#include "qpg/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qpg {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double differentiate(const Schedule &f, double t, double span) {
  const double h = std::max(1e-6 * span, 1e-12);
  const double forward = (f(t + h) - f(t)) / h;
  const double backward = (f(t) - f(t - h)) / h;
  const double scale = std::abs(forward) + std::abs(backward) + 1.0;
  if (std::abs(forward - backward) > 1e-2 * scale) {
    throw std::domain_error("schedule not differentiable at t = " +
                            std::to_string(t));
  }
  // Richardson-extrapolated central difference, O(h^4).
  const double c1 = (f(t + h) - f(t - h)) / (2.0 * h);
  const double c2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
  return (4.0 * c2 - c1) / 3.0;
}

GateSchedule GateSchedule::linear(double B0, double omega, double phi_rate) {
  if (!(omega > 0.0)) throw std::invalid_argument("GateSchedule: omega must be > 0");
  GateSchedule s;
  s.B0 = B0;
  s.omega = omega;
  s.T = kTwoPi / omega;
  s.theta = [omega](double t) { return omega * t; };
  s.theta_dot = [omega](double) { return omega; };
  s.phi = [phi_rate](double t) { return phi_rate * t; };
  s.phi_dot = [phi_rate](double) { return phi_rate; };
  return s;
}

GateSchedule GateSchedule::smoothed(double B0, double omega, double phi_rate) {
  if (!(omega > 0.0)) throw std::invalid_argument("GateSchedule: omega must be > 0");
  GateSchedule s;
  s.B0 = B0;
  s.omega = omega;
  s.T = kTwoPi / omega;
  s.theta = [omega](double t) { return omega * t - std::sin(omega * t); };
  s.theta_dot = [omega](double t) { return omega * (1.0 - std::cos(omega * t)); };
  s.phi = [phi_rate](double t) { return phi_rate * t; };
  s.phi_dot = [phi_rate](double) { return phi_rate; };
  return s;
}

GateSchedule GateSchedule::with_numeric_derivatives(double B0, Schedule theta,
                                                    Schedule phi, double omega,
                                                    double T) {
  if (!(T > 0.0)) throw std::invalid_argument("GateSchedule: T must be > 0");
  GateSchedule s;
  s.B0 = B0;
  s.omega = omega;
  s.T = T;
  s.theta = theta;
  s.phi = phi;
  s.theta_dot = [theta, T](double t) { return differentiate(theta, t, T); };
  s.phi_dot = [phi, T](double t) { return differentiate(phi, t, T); };
  return s;
}

void GateSchedule::validate(double tol) const {
  if (!(T > 0.0)) throw std::invalid_argument("GateSchedule: T must be > 0");
  if (std::abs(theta(0.0)) > tol) {
    throw std::invalid_argument("GateSchedule: theta(0) must be 0");
  }
  if (std::abs(theta(T) - kTwoPi) > tol) {
    throw std::invalid_argument(
        "GateSchedule: cyclic boundary theta(T) = 2*pi violated, theta(T) = " +
        std::to_string(theta(T)));
  }
}

}  // namespace qpg
