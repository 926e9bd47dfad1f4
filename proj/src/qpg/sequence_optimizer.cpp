#include "qpg/sequence_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpg/rng.hpp"

namespace qpg {

namespace {

// Fractions with the virtual endpoints mu_0 = 0 and mu_{n+1} = 1 attached.
std::vector<double> padded(const std::vector<double> &mu) {
  std::vector<double> full;
  full.reserve(mu.size() + 2);
  full.push_back(0.0);
  full.insert(full.end(), mu.begin(), mu.end());
  full.push_back(1.0);
  return full;
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double c3_of(const std::vector<double> &mu) {
  const int n = static_cast<int>(mu.size());
  const auto full = padded(mu);
  double sum = 0.0;
  for (int k = 0; k <= n + 1; ++k) {
    for (int j = 1; j <= n; ++j) {
      const double d = std::abs(full[k] - full[j]);
      sum += parity(std::abs(k - j)) * d * d * d;
    }
  }
  return parity(n + 1) / 6.0 + sum / 3.0;
}

// dC3/dmu_m for the inner pulses m = 1..n; d(|u|^3)/du = 3 u |u|.
std::vector<double> c3_gradient(const std::vector<double> &mu) {
  const int n = static_cast<int>(mu.size());
  const auto full = padded(mu);
  std::vector<double> grad(n, 0.0);
  const auto g = [](double u) { return u * std::abs(u); };
  for (int m = 1; m <= n; ++m) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) {
      acc += parity(std::abs(m - j)) * g(full[m] - full[j]);
    }
    for (int k = 0; k <= n + 1; ++k) {
      acc += parity(std::abs(k - m)) * g(full[m] - full[k]);
    }
    grad[m - 1] = acc;
  }
  return grad;
}

double constraint_of(const std::vector<double> &mu) {
  const int n = static_cast<int>(mu.size());
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += parity(k - 1) * mu[k - 1];
  return parity(n) + 2.0 * sum;
}

// mu_n from the eliminated phase constraint:
// mu_n = sum_{k=1}^{n-1} (-1)^{n-k-1} mu_k + 1/2.
double eliminated_last(const std::vector<double> &rest, int n) {
  double sum = 0.0;
  for (int k = 1; k <= n - 1; ++k) sum += parity(n - k - 1) * rest[k - 1];
  return sum + 0.5;
}

struct PenaltyObjective {
  int n;
  double rho;
  double margin;

  std::vector<double> assemble(const std::vector<double> &v) const {
    std::vector<double> mu(v.begin(), v.end());
    mu.push_back(eliminated_last(v, n));
    return mu;
  }

  // Strict ordering with a working margin; line search rejects anything else
  // so the quadratic penalty only acts inside the margin band.
  bool feasible(const std::vector<double> &v, double gap_floor) const {
    const auto mu = assemble(v);
    double prev = 0.0;
    for (const double m : mu) {
      if (m - prev < gap_floor) return false;
      prev = m;
    }
    return 1.0 - prev >= gap_floor;
  }

  double value(const std::vector<double> &v) const {
    const auto mu = assemble(v);
    double pen = 0.0;
    double prev = 0.0;
    for (const double m : mu) {
      const double gap = m - prev - margin;
      if (gap < 0.0) pen += gap * gap;
      prev = m;
    }
    const double top = 1.0 - prev - margin;
    if (top < 0.0) pen += top * top;
    return c3_of(mu) + rho * pen;
  }

  std::vector<double> gradient(const std::vector<double> &v) const {
    const auto mu = assemble(v);
    auto gmu = c3_gradient(mu);

    // Ordering-penalty gradient wrt the full fractions.
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
      const double gap = mu[i] - prev - margin;
      if (gap < 0.0) {
        gmu[i] += rho * 2.0 * gap;
        if (i > 0) gmu[i - 1] -= rho * 2.0 * gap;
      }
      prev = mu[i];
    }
    const double top = 1.0 - mu[n - 1] - margin;
    if (top < 0.0) gmu[n - 1] -= rho * 2.0 * top;

    // Chain rule through the eliminated mu_n.
    std::vector<double> grad(n - 1);
    for (int i = 1; i <= n - 1; ++i) {
      grad[i - 1] = gmu[i - 1] + gmu[n - 1] * parity(n - i - 1);
    }
    return grad;
  }
};

struct BfgsOutcome {
  std::vector<double> v;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  // No improvement found along steepest descent: stationary to machine
  // resolution (the ftol-style stopping criterion).
  bool exhausted = false;
};

// Dense BFGS with feasibility-respecting Armijo backtracking; dimensions
// here are at most n - 1.
BfgsOutcome bfgs(const PenaltyObjective &obj, std::vector<double> v,
                 int max_iter) {
  const int d = static_cast<int>(v.size());
  std::vector<std::vector<double>> h_inv(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) h_inv[i][i] = 1.0;

  const double gap_floor = 0.1 * obj.margin;
  double f = obj.value(v);
  auto grad = obj.gradient(v);
  int iter = 0;
  bool exhausted = false;
  for (; iter < max_iter; ++iter) {
    double gmax = 0.0;
    for (const double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax < 1e-13) break;

    std::vector<double> dir(d, 0.0);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) dir[i] -= h_inv[i][j] * grad[j];
    }
    double slope = 0.0;
    for (int i = 0; i < d; ++i) slope += dir[i] * grad[i];
    if (slope >= 0.0) {
      // Reset to steepest descent when the model loses positive definiteness.
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) h_inv[i][j] = (i == j) ? 1.0 : 0.0;
        dir[i] = -grad[i];
      }
      slope = 0.0;
      for (int i = 0; i < d; ++i) slope += dir[i] * grad[i];
    }

    std::vector<double> v_new(d);
    double f_new = f;
    bool accepted = false;
    bool tried_steepest = false;
    for (;;) {
      double step = 1.0;
      for (int ls = 0; ls < 80; ++ls) {
        for (int i = 0; i < d; ++i) v_new[i] = v[i] + step * dir[i];
        if (obj.feasible(v_new, gap_floor)) {
          f_new = obj.value(v_new);
          if (f_new <= f + 1e-4 * step * slope) {
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (accepted || tried_steepest) break;
      // Quasi-Newton direction failed; flush the model and retry downhill.
      tried_steepest = true;
      slope = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) h_inv[i][j] = (i == j) ? 1.0 : 0.0;
        dir[i] = -grad[i];
        slope -= grad[i] * grad[i];
      }
    }
    if (!accepted) {
      exhausted = tried_steepest;
      break;
    }

    const auto grad_new = obj.gradient(v_new);
    std::vector<double> s(d), yv(d);
    double sy = 0.0;
    for (int i = 0; i < d; ++i) {
      s[i] = v_new[i] - v[i];
      yv[i] = grad_new[i] - grad[i];
      sy += s[i] * yv[i];
    }
    if (sy > 1e-18) {
      // Sherman-Morrison BFGS update of the inverse Hessian.
      std::vector<double> hy(d, 0.0);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) hy[i] += h_inv[i][j] * yv[j];
      }
      double yhy = 0.0;
      for (int i = 0; i < d; ++i) yhy += yv[i] * hy[i];
      const double a = (sy + yhy) / (sy * sy);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          h_inv[i][j] += a * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }
      }
    }
    v = v_new;
    f = f_new;
    grad = grad_new;
  }

  BfgsOutcome out;
  out.v = std::move(v);
  out.value = f;
  out.iterations = iter;
  out.exhausted = exhausted;
  for (const double g : grad) out.grad_norm = std::max(out.grad_norm, std::abs(g));
  return out;
}

}  // namespace

double chi_exact(const PulseSequence &seq, double x, double y) {
  const int n = seq.size();
  const auto full = padded(seq.fractions());
  double sum = 0.0;
  for (int k = 0; k <= n + 1; ++k) {
    for (int j = 1; j <= n; ++j) {
      sum += parity(std::abs(k - j)) * std::exp(-std::abs(full[k] - full[j]) * x);
    }
  }
  return 0.5 * y * (x - 1.0 + parity(n) * std::exp(-x) - 2.0 * sum);
}

ExpansionCoeffs coefficients(const PulseSequence &seq) {
  const int n = seq.size();
  const auto full = padded(seq.fractions());
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int k = 0; k <= n + 1; ++k) {
    for (int j = 1; j <= n; ++j) {
      const double w = parity(std::abs(k - j));
      const double d = std::abs(full[k] - full[j]);
      s0 += w;
      s1 += w * d;
      s2 += w * d * d;
      s3 += w * d * d * d;
    }
  }
  ExpansionCoeffs c;
  c.c0 = -1.0 + parity(n) - 2.0 * s0;
  c.c1 = 1.0 - parity(n) + 2.0 * s1;
  c.c2 = 0.5 * parity(n) - s2;
  c.c3 = parity(n + 1) / 6.0 + s3 / 3.0;
  return c;
}

double phase_constraint(const PulseSequence &seq) {
  return constraint_of(seq.fractions());
}

PulseSequence recursion_solution(int n) {
  if (n < 1) throw std::invalid_argument("recursion_solution: n must be >= 1");
  std::vector<double> mu;
  mu.reserve(n);
  mu.push_back(1.0 / (2.0 * n));
  for (int m = 2; m <= n; ++m) {
    const int j = n - m;
    double sum = 0.0;
    for (int k = 1; k <= m - 1; ++k) sum += parity(m - k - 1) * mu[k - 1];
    mu.push_back((2.0 * j + 1.0) / (j + 1.0) * sum + 1.0 / (2.0 * j + 2.0));
  }
  return PulseSequence::custom(std::move(mu), "recursion" + std::to_string(n));
}

OptimizationResult optimize(int n, int starts, double tol, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("optimize: n must be >= 1");
  if (starts < 1) throw std::invalid_argument("optimize: starts must be >= 1");

  OptimizationResult result;
  result.starts = starts;

  if (n == 1) {
    // The constraint alone fixes the single pulse: -1 + 2 mu_1 = 0.
    result.fractions = {0.5};
    result.c3_min = c3_of(result.fractions);
    result.constraint_residual = 0.0;
    result.converged_starts = starts;
    return result;
  }

  const int d = n - 1;
  const double margin = 1e-9;
  Rng rng(derive_seed(seed, 0));

  const auto draw_start = [&]() {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      std::vector<double> v(d);
      for (auto &x : v) x = 0.01 + 0.98 * rng.uniform();
      std::sort(v.begin(), v.end());
      std::vector<double> mu(v);
      mu.push_back(eliminated_last(v, n));
      bool ok = mu.front() > 1e-3 && mu.back() < 1.0 - 1e-3;
      for (std::size_t i = 0; ok && i + 1 < mu.size(); ++i) {
        ok = mu[i + 1] - mu[i] > 1e-3;
      }
      if (ok) return v;
    }
    throw std::runtime_error("optimize: could not draw a feasible start");
  };

  bool have_best = false;
  std::vector<double> best_mu;
  double best_c3 = 0.0;

  // The minimizer is interior, so the quadratic penalty only guards the
  // ordering margin; the line search keeps iterates strictly feasible.
  const PenaltyObjective objective{n, 1e4, margin};

  for (int s = 0; s < starts; ++s) {
    auto v = draw_start();
    BfgsOutcome run = bfgs(objective, v, 500);
    v = run.v;
    result.iterations += run.iterations;
    // Fresh-Hessian restarts flush a stale quasi-Newton model.
    for (int polish = 0; polish < 6 && run.grad_norm > 1e-11; ++polish) {
      run = bfgs(objective, v, 500);
      if (run.v == v) break;
      v = run.v;
      result.iterations += run.iterations;
    }
    auto mu = PenaltyObjective{n, 0.0, margin}.assemble(v);
    bool ordered = mu.front() > 0.0 && mu.back() < 1.0;
    for (std::size_t i = 0; ordered && i + 1 < mu.size(); ++i) {
      ordered = mu[i + 1] > mu[i];
    }
    const bool converged =
        ordered && (run.grad_norm < std::min(1e-8, tol) || run.exhausted);
    if (converged) ++result.converged_starts;
    if (!ordered) continue;
    const double c3 = c3_of(mu);
    if (!have_best || c3 < best_c3 - 1e-15 ||
        (std::abs(c3 - best_c3) <= 1e-15 &&
         std::lexicographical_compare(mu.begin(), mu.end(), best_mu.begin(),
                                      best_mu.end()))) {
      have_best = true;
      best_c3 = c3;
      best_mu = mu;
    }
  }

  if (!have_best) {
    throw std::runtime_error("optimize: no start produced an ordered solution");
  }
  result.fractions = best_mu;
  result.c3_min = best_c3;
  result.constraint_residual = std::abs(constraint_of(best_mu));
  return result;
}

}  // namespace qpg
