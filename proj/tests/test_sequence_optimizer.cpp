#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qpg/fidelity_engine.hpp"
#include "qpg/rng.hpp"
#include "qpg/sequence_optimizer.hpp"

using namespace qpg;

namespace {

PulseSequence random_sequence(Rng &rng, int n) {
  if (n == 0) return PulseSequence::fid();
  std::vector<double> mu(n);
  for (;;) {
    for (auto &m : mu) m = rng.uniform();
    std::sort(mu.begin(), mu.end());
    bool ok = mu.front() > 1e-3 && mu.back() < 1.0 - 1e-3;
    for (int i = 0; ok && i + 1 < n; ++i) ok = mu[i + 1] - mu[i] > 1e-3;
    if (ok) break;
  }
  return PulseSequence::custom(mu);
}

// Degree-5 polynomial fit of chi(x, y=2)/y*2 at small x by Gaussian
// elimination; rows are powers of x_i.
std::vector<double> fit_series(const PulseSequence &seq) {
  const int m = 6;
  std::vector<double> xs(m);
  for (int i = 0; i < m; ++i) xs[i] = 2e-3 * (i + 1);
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    double p = 1.0;
    for (int j = 0; j < m; ++j) {
      a[i][j] = p;
      p *= xs[i];
    }
    a[i][m] = chi_exact(seq, xs[i], 2.0);  // y/2 = 1
  }
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<double> coeff(m);
  for (int i = 0; i < m; ++i) coeff[i] = a[i][m] / a[i][i];
  return coeff;
}

}  // namespace

TEST_SUITE_BEGIN("sequence_optimizer");

TEST_CASE("chi_exact reduces to the closed forms") {
  const auto fid = PulseSequence::fid();
  const auto se = PulseSequence::cpmg(1);
  for (double x : {0.1, 0.72, 1.0, 2.5, 5.0}) {
    for (double y : {0.5, 1.0, 4.0}) {
      const double fid_expect = 0.5 * y * (x + std::exp(-x) - 1.0);
      CHECK(chi_exact(fid, x, y) == doctest::Approx(fid_expect).epsilon(1e-12));
      const double se_expect =
          0.5 * y * (x - std::exp(-x) - 3.0 + 4.0 * std::exp(-0.5 * x));
      CHECK(chi_exact(se, x, y) == doctest::Approx(se_expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("chi_exact agrees with the time-domain quadrature") {
  Rng rng(314);
  const auto target = NoiseTarget::field_b();
  std::vector<PulseSequence> seqs{PulseSequence::cpmg(3), PulseSequence::udd(4),
                                  random_sequence(rng, 5)};
  for (const auto &seq : seqs) {
    for (const double x : {0.7, 2.0}) {
      const double y = 3.0;
      const double quad = chi_time_domain(seq, target, OuParams{y, 1.0}, x);
      CHECK(chi_exact(seq, x, y) == doctest::Approx(quad).epsilon(1e-8));
    }
  }
}

TEST_CASE("expansion coefficients at named sequences") {
  const auto c_fid = coefficients(PulseSequence::fid());
  CHECK(c_fid.c0 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c_fid.c1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c_fid.c2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c_fid.c3 == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));

  const auto c_se = coefficients(PulseSequence::cpmg(1));
  CHECK(std::abs(c_se.c2) < 1e-14);
  CHECK(c_se.c3 == doctest::Approx(1.0 / 12.0).epsilon(1e-13));

  for (int n = 1; n <= 10; ++n) {
    const auto c = coefficients(PulseSequence::cpmg(n));
    CHECK(std::abs(c.c2) < 1e-12);
    CHECK(std::abs(c.c3 - 1.0 / (12.0 * n * n)) < 1e-10);
  }
}

TEST_CASE("C0 and C1 vanish for arbitrary sequences") {
  Rng rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.next_u64() % 13);
    const auto c = coefficients(random_sequence(rng, n));
    CHECK(std::abs(c.c0) <= 1e-12);
    CHECK(std::abs(c.c1) <= 1e-12);
  }
}

TEST_CASE("C2 is half the squared constraint residual") {
  Rng rng(920);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 12);
    const auto seq = random_sequence(rng, n);
    const double residual = phase_constraint(seq);
    CHECK(coefficients(seq).c2 ==
          doctest::Approx(0.5 * residual * residual).epsilon(1e-12));
  }
}

TEST_CASE("coefficients agree with series extraction from chi_exact") {
  Rng rng(1618);
  std::vector<PulseSequence> seqs{PulseSequence::fid(), PulseSequence::cpmg(2),
                                  PulseSequence::udd(3), random_sequence(rng, 4)};
  for (const auto &seq : seqs) {
    const auto fit = fit_series(seq);
    const auto c = coefficients(seq);
    CHECK(std::abs(fit[2] - c.c2) < 1e-6);
    CHECK(std::abs(fit[3] - c.c3) < 1e-6);
  }
}

TEST_CASE("phase constraint values") {
  CHECK(phase_constraint(PulseSequence::fid()) == doctest::Approx(1.0));
  CHECK(phase_constraint(PulseSequence::cpmg(1)) == doctest::Approx(0.0));
  for (int n = 1; n <= 10; ++n) {
    CHECK(std::abs(phase_constraint(PulseSequence::cpmg(n))) < 1e-12);
    // Reflection-symmetric UDD cancels the dynamical phase as well.
    CHECK(std::abs(phase_constraint(PulseSequence::udd(n))) < 1e-12);
  }
  // An asymmetric sequence does not: n=2 with mu = (0.3, 0.5).
  CHECK(phase_constraint(PulseSequence::custom({0.3, 0.5})) ==
        doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("recursion reproduces CPMG") {
  for (int n : {1, 2, 3, 5, 12, 30}) {
    const auto got = recursion_solution(n).fractions();
    const auto expect = PulseSequence::cpmg(n).fractions();
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(got[k] - expect[k]) <= 1e-12);
    }
  }
  CHECK(recursion_solution(2).fractions() == std::vector<double>{0.25, 0.75});
}

TEST_CASE("perturbations of CPMG on the constraint surface raise C3") {
  Rng rng(40);
  for (int n : {2, 4, 7, 10}) {
    const double c3_ref = coefficients(PulseSequence::cpmg(n)).c3;
    for (int trial = 0; trial < 50; ++trial) {
      // Perturb the first n-1 pulses, restore mu_n from the constraint.
      auto mu = PulseSequence::cpmg(n).fractions();
      for (int k = 0; k + 1 < n; ++k) {
        mu[k] += 0.02 * (rng.uniform() - 0.5) / n;
      }
      double acc = 0.5;
      for (int k = 1; k <= n - 1; ++k) {
        acc += ((n - k - 1) % 2 == 0 ? 1.0 : -1.0) * mu[k - 1];
      }
      mu[n - 1] = acc;
      if (!std::is_sorted(mu.begin(), mu.end()) || mu.front() <= 0.0 ||
          mu.back() >= 1.0) {
        continue;
      }
      const auto seq = PulseSequence::custom(mu);
      if (std::abs(phase_constraint(seq)) > 1e-12) continue;
      CHECK(coefficients(seq).c3 >= c3_ref - 1e-14);
    }
  }
}

TEST_CASE("optimizer converges to CPMG from random starts") {
  for (int n = 1; n <= 6; ++n) {
    const auto result = optimize(n, 20, 1e-6, 123);
    REQUIRE(static_cast<int>(result.fractions.size()) == n);
    const auto expect = PulseSequence::cpmg(n).fractions();
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(result.fractions[k] - expect[k]) < 1e-6);
    }
    CHECK(std::abs(result.c3_min * 12.0 * n * n - 1.0) < 1e-6);
    CHECK(result.constraint_residual <= 1e-10);
    CHECK(result.converged_starts == result.starts);
  }
  CHECK_THROWS_AS(optimize(0), std::invalid_argument);
}

TEST_CASE("no feasible sequence eliminates C3") {
  // Random points on the constraint surface, built by eliminating mu_n.
  Rng rng(555);
  int tested = 0;
  while (tested < 60) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    std::vector<double> mu(n - 1);
    for (auto &m : mu) m = rng.uniform();
    std::sort(mu.begin(), mu.end());
    double acc = 0.5;
    for (int k = 1; k <= n - 1; ++k) {
      acc += ((n - k - 1) % 2 == 0 ? 1.0 : -1.0) * mu[k - 1];
    }
    mu.push_back(acc);
    if (!std::is_sorted(mu.begin(), mu.end())) continue;
    if (mu.front() <= 1e-6 || mu.back() >= 1.0 - 1e-6) continue;
    bool distinct = true;
    for (int k = 0; k + 1 < n; ++k) distinct = distinct && mu[k + 1] - mu[k] > 1e-6;
    if (!distinct) continue;
    ++tested;
    const auto seq = PulseSequence::custom(mu);
    CHECK(std::abs(phase_constraint(seq)) < 1e-12);
    CHECK(coefficients(seq).c3 >= 1.0 / (12.0 * n * n) - 1e-12);
  }
  // CPMG attains exactly the bound.
  for (int n : {2, 5, 9}) {
    CHECK(coefficients(PulseSequence::cpmg(n)).c3 ==
          doctest::Approx(1.0 / (12.0 * n * n)).epsilon(1e-10));
  }
}

TEST_SUITE_END();
