#pragma once

#include <cstdint>
#include <vector>

#include "qpg/dd_sequences.hpp"

namespace qpg {

// Exact decay exponent chi(x, y) for B-field noise under a pulse sequence,
// x = gamma*T, y = Gamma/gamma:
//   (y/2) [x - 1 + (-1)^n e^{-x} - 2 sum_{k=0..n+1} sum_{j=1..n}
//          (-1)^{|k-j|} e^{-|mu_k - mu_j| x}],   mu_0 = 0, mu_{n+1} = 1.
double chi_exact(const PulseSequence &seq, double x, double y);

// Coefficients of chi(x,y) = (y/2)(C0 + C1 x + C2 x^2 + C3 x^3 + ...).
// C0 = C1 = 0 for every valid sequence; C2 is a perfect square and vanishes
// exactly when the noise-free dynamical phase cancels.
struct ExpansionCoeffs {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
};
ExpansionCoeffs coefficients(const PulseSequence &seq);

// Dynamical-phase cancellation residual (-1)^n + 2 sum_k (-1)^{k-1} mu_k;
// zero iff the noise-free dynamical phase is eliminated.
double phase_constraint(const PulseSequence &seq);

// Closed recursion from the stationarity conditions of C3 under the phase
// constraint; evaluates to the CPMG-n sequence.
PulseSequence recursion_solution(int n);

struct OptimizationResult {
  std::vector<double> fractions;
  double c3_min = 0.0;
  double constraint_residual = 0.0;
  int iterations = 0;
  int starts = 0;
  int converged_starts = 0;
};

// Minimizes C3 over ordered fractions subject to the phase constraint
// (eliminated by solving for mu_n), from `starts` random feasible starts.
OptimizationResult optimize(int n, int starts = 20, double tol = 1e-6,
                            std::uint64_t seed = 20240901);

}  // namespace qpg
