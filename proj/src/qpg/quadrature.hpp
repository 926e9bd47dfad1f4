#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace qpg {

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string &what) : std::runtime_error(what) {}
};

// Globally adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
// Converges when the accumulated error estimate drops below
// max(abs_tol, rel_tol * |result|); throws QuadratureError with subdivision
// diagnostics otherwise.
double integrate(const std::function<double(double)> &f, double a, double b,
                 double abs_tol, double rel_tol = 1e-12,
                 int max_intervals = 200000);

}  // namespace qpg
