#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qpg {

// Stationary Gaussian Ornstein-Uhlenbeck statistics:
//   <delta(t)> = 0,  C(tau) = (Gamma*gamma/2) exp(-gamma |tau|).
struct OuParams {
  double Gamma = 0.0;  // correlation intensity, rad^2/us
  double gamma = 1.0;  // memory rate, 1/us

  void validate() const;
};

// One sampled realization on a time grid.
struct NoisePath {
  std::vector<double> t;
  std::vector<double> value;
  std::uint64_t seed = 0;
};

double correlation(const OuParams &p, double tau);

// One-sided spectral density 2*Gamma*gamma^2 / (omega^2 + gamma^2);
// (1/2pi) * integral over [0, inf) recovers C(0) = Gamma*gamma/2.
double spectral_density(const OuParams &p, double omega);

// Exact stationary OU discretization on an increasing grid: the marginal at
// every point is N(0, Gamma*gamma/2) and lag correlations are exact for any
// step size. Deterministic given (params, times, seed).
std::vector<double> sample_ou_values(const OuParams &p,
                                     std::span<const double> times,
                                     std::uint64_t seed);

// Uniform-grid convenience wrapper: t_i = t0 + i*dt, i = 0..n_points-1.
NoisePath sample_ou(const OuParams &p, double t0, double dt, int n_points,
                    std::uint64_t seed);

}  // namespace qpg
