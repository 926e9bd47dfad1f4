#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qpg/fidelity_engine.hpp"
#include "qpg/quadrature.hpp"
#include "qpg/sequence_optimizer.hpp"

using namespace qpg;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_SUITE_BEGIN("fidelity_engine");

TEST_CASE("closed forms at pinned points") {
  CHECK(fid_b_analytic(1.0, 0.0).value == doctest::Approx(1.0));
  CHECK(fid_phi_analytic(2.5, 0.0).value == doctest::Approx(1.0));
  CHECK(fid_se_analytic(4.0, 0.0).value == doctest::Approx(1.0));

  // F_B(y=1, x=0.72), the paper's "over 0.90 at gamma T = 0.72" point.
  CHECK(fid_b_analytic(1.0, 0.72).value ==
        doctest::Approx(0.90178772209026).epsilon(1e-12));

  // F_SE(y=2, x=1): the Eq.-(30) value (the prose "over 0.98" does not match
  // the formula; the formula is authoritative).
  CHECK(fid_se_analytic(2.0, 1.0).value ==
        doctest::Approx(0.94342048186359).epsilon(1e-12));

  // F_phi(y=1, x=0.69), "over 0.90 at gamma T = 0.69".
  CHECK(fid_phi_analytic(1.0, 0.69).value > 0.90);

  // Leading-order CPMG formula.
  CHECK(fid_n_approx(1, 3.0, 0.5).chi == doctest::Approx(3.0 * 0.125 / 24.0));
  CHECK(fid_n_approx(10, 4.0, 4.0).value ==
        doctest::Approx(0.89882523147161).epsilon(1e-12));
  CHECK(fid_n_approx(1000000, 4.0, 4.0).value == doctest::Approx(1.0));

  CHECK_THROWS_AS(fid_b_analytic(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fid_n_approx(0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("short-time limits") {
  // F_B and F_phi both approach exp(-y x^2 / 4).
  for (const double x : {0.01, 0.03}) {
    const double leading = 0.25 * 2.0 * x * x;
    CHECK(fid_b_analytic(2.0, x).chi == doctest::Approx(leading).epsilon(0.02));
    CHECK(fid_phi_analytic(2.0, x).chi == doctest::Approx(leading).epsilon(0.02));
    // SE drops to third order, exp(-y x^3 / 24).
    CHECK(fid_se_analytic(2.0, x).chi ==
          doctest::Approx(2.0 * x * x * x / 24.0).epsilon(0.03));
  }
}

TEST_CASE("time-domain quadrature reproduces the closed forms") {
  const auto fid = PulseSequence::fid();
  const auto se = PulseSequence::cpmg(1);
  const auto field = NoiseTarget::field_b();
  const auto phase = NoiseTarget::phase_dot_linear();
  for (const double x : {0.5, 1.7, 4.0}) {
    for (const double y : {0.5, 4.0}) {
      const OuParams p{y, 1.0};
      CHECK(chi_time_domain(fid, field, p, x) ==
            doctest::Approx(fid_b_analytic(y, x).chi).epsilon(1e-7));
      CHECK(chi_time_domain(se, field, p, x) ==
            doctest::Approx(fid_se_analytic(y, x).chi).epsilon(1e-7));
      CHECK(chi_time_domain(fid, phase, p, x) ==
            doctest::Approx(fid_phi_analytic(y, x).chi).epsilon(1e-7));
    }
  }
  // Scale invariance: only (x, y) matter.
  const OuParams scaled{8.0, 2.0};  // y = 4
  CHECK(chi_time_domain(fid, field, scaled, 1.0) ==  // x = 2
        doctest::Approx(fid_b_analytic(4.0, 2.0).chi).epsilon(1e-8));
}

TEST_CASE("frequency-domain exponent equals the time-domain one") {
  const OuParams p{4.0, 1.0};
  const double T = 4.0;
  const auto field = NoiseTarget::field_b();
  for (const auto &seq :
       {PulseSequence::fid(), PulseSequence::cpmg(1), PulseSequence::cpmg(3)}) {
    const double chi_f = chi_freq_domain(seq, p, T);
    const double chi_t = chi_exact(seq, p.gamma * T, p.Gamma / p.gamma);
    CHECK(chi_f == doctest::Approx(chi_t).epsilon(2e-7));
  }
  CHECK(chi_freq_domain(PulseSequence::fid(), OuParams{0.0, 1.0}, 1.0) == 0.0);
}

TEST_CASE("T2 formulas and root solve") {
  CHECK(t2_fid_formula(OuParams{1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(t2_fid_formula(OuParams{4.0, 1.0}) == doctest::Approx(1.0));
  CHECK(t2_dd_formula(1, OuParams{1.0, 1.0}) ==
        doctest::Approx(2.8844991406148166).epsilon(1e-14));

  // Root solve on the exact FID exponent: chi(T2) = 1.
  const OuParams p{16.0, 1.0};
  const double t2 = t2_exact(PulseSequence::fid(), p);
  CHECK(chi_exact(PulseSequence::fid(), p.gamma * t2, 16.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Formula agrees within 15% in the short-time regime gamma*T2 <= 1.
  CHECK(t2 == doctest::Approx(t2_fid_formula(p)).epsilon(0.15));

  // DD scaling exponent 2/3 on a log-log fit.
  std::vector<double> lx, ly;
  const OuParams q{1.0, 1.0};
  for (int n = 2; n <= 20; ++n) {
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(t2_dd_formula(n, q)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double m = lx.size();
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("monte carlo: exact cases and oracle agreement") {
  const auto fid = PulseSequence::fid();
  const auto field = NoiseTarget::field_b();

  // Gamma = 0: fidelity 1 with zero spread.
  const auto clean = mc_fidelity(fid, field, OuParams{0.0, 1.0}, 1.0, 200, 9);
  CHECK(clean.value == 1.0);
  CHECK(clean.std_error == 0.0);
  CHECK(clean.chi == 0.0);

  // FID at (y, x) = (1, 0.72) against the analytic value.
  const double target_b = fid_b_analytic(1.0, 0.72).value;
  const auto mc_b =
      mc_fidelity(fid, field, OuParams{1.0, 1.0}, 0.72, 20000, 20240801);
  CHECK(std::abs(mc_b.value - target_b) < 3.0 * mc_b.std_error);
  CHECK(mc_b.std_error < 2e-3);
  CHECK(std::abs(mc_b.imag_mean) <= 3.0 * mc_b.imag_std_error + 1e-15);

  // CPMG3 at (4, 4) against the time-domain quadrature.
  const auto c3 = PulseSequence::cpmg(3);
  const OuParams p{4.0, 1.0};
  const double chi_ref = chi_time_domain(c3, field, p, 4.0);
  const auto mc_c3 = mc_fidelity(c3, field, p, 4.0, 20000, 7777);
  CHECK(std::abs(mc_c3.value - std::exp(-chi_ref)) < 3.0 * mc_c3.std_error);

  // Phase noise per the same machinery.
  const auto phase = NoiseTarget::phase_dot_linear();
  const double chi_phi = fid_phi_analytic(2.0, 1.0).chi;
  const auto mc_phi =
      mc_fidelity(fid, phase, OuParams{2.0, 1.0}, 1.0, 20000, 31415);
  CHECK(std::abs(mc_phi.value - std::exp(-chi_phi)) < 3.0 * mc_phi.std_error);

  // Determinism and thread-count independence.
  const auto again =
      mc_fidelity(fid, field, OuParams{1.0, 1.0}, 0.72, 2000, 555, 0, 1);
  const auto again4 =
      mc_fidelity(fid, field, OuParams{1.0, 1.0}, 0.72, 2000, 555, 0, 4);
  CHECK(again.value == again4.value);
  CHECK(again.std_error == again4.std_error);

  // Error paths.
  CHECK_THROWS_AS(mc_fidelity(fid, field, OuParams{1.0, 1.0}, 1.0, 50, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      mc_fidelity(PulseSequence::cpmg(10), field, OuParams{1.0, 1.0}, 1.0, 200,
                  1, /*grid_steps=*/5),
      std::invalid_argument);
}

TEST_CASE("input-state independence of the noise ratio") {
  const auto sched = GateSchedule::linear(3.0, 2.0 * kPi, kPi);
  const auto path = sample_ou(OuParams{2.0, 1.5}, 0.0, sched.T / 400.0, 401, 99);

  // Noise-free path: ratio is exactly 1.
  NoisePath zero = path;
  for (auto &v : zero.value) v = 0.0;
  const auto one = input_state_ratio(zero, sched, 0.7, 0.3);
  CHECK(std::abs(one - complexd(1.0, 0.0)) < 1e-12);

  // Same path, different input states: identical ratios.
  const auto r1 = input_state_ratio(path, sched, kPi / 3.0, 0.0);
  const auto r2 = input_state_ratio(path, sched, kPi / 5.0, 1.1);
  CHECK(std::abs(r1 - r2) < 1e-10);

  // Equals exp(-i * trapezoid integral of the path).
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.t.size(); ++i) {
    acc += 0.5 * (path.value[i] + path.value[i + 1]) * (path.t[i + 1] - path.t[i]);
  }
  CHECK(std::abs(r1 - std::exp(complexd(0.0, -acc))) < 1e-10);

  // Input states without coherence are rejected.
  CHECK_THROWS_AS(input_state_ratio(path, sched, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("landscape grids") {
  const auto grid = landscape(LandscapeKind::fid_b, nullptr, nullptr, 0.0, 4.0,
                              9, 0.0, 4.0, 5);
  REQUIRE(grid.gamma_t.size() == 9);
  REQUIRE(grid.ratio.size() == 5);
  REQUIRE(grid.value.size() == 45);
  // x = 0 column is exactly 1.
  for (std::size_t iy = 0; iy < 5; ++iy) {
    CHECK(grid.value[iy * 9 + 0] == 1.0);
  }
  // Monotone nonincreasing along both axes for the FID decay.
  for (std::size_t iy = 0; iy < 5; ++iy) {
    for (std::size_t ix = 1; ix < 9; ++ix) {
      CHECK(grid.value[iy * 9 + ix] <= grid.value[iy * 9 + ix - 1] + 1e-15);
    }
  }
  for (std::size_t iy = 1; iy < 5; ++iy) {
    for (std::size_t ix = 0; ix < 9; ++ix) {
      CHECK(grid.value[iy * 9 + ix] <= grid.value[(iy - 1) * 9 + ix] + 1e-15);
    }
  }
  // Spot value F_B(1, 2): grid spacing x: 0..4 in 9 -> x=2 at ix=4; y=1 at iy=1.
  CHECK(grid.value[1 * 9 + 4] ==
        doctest::Approx(fid_b_analytic(1.0, 2.0).value).epsilon(1e-12));

  CHECK_THROWS_AS(landscape(LandscapeKind::sequence_exact, nullptr, nullptr,
                            0.0, 1.0, 2, 0.0, 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("smoothed theta reduces the phase-noise exponent") {
  // Weight integral: T for theta = wt, (1 - J1(1)) T for wt - sin wt.
  const auto linear = NoiseTarget::phase_dot_linear();
  const auto smooth = NoiseTarget::phase_dot_smooth();
  const double wl = integrate([&](double u) { return linear.weight_frac(u); },
                              0.0, 1.0, 1e-12);
  const double ws = integrate([&](double u) { return smooth.weight_frac(u); },
                              0.0, 1.0, 1e-12);
  CHECK(wl == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ws < wl);
  CHECK(ws == doctest::Approx(1.0 - 0.44005058574493355).epsilon(1e-10));

  const auto fid = PulseSequence::fid();
  for (const double x : {0.5, 1.0, 2.0}) {
    for (const double y : {1.0, 3.1}) {
      const OuParams p{y, 1.0};
      CHECK(chi_time_domain(fid, smooth, p, x) <
            chi_time_domain(fid, linear, p, x));
    }
  }

  // Fig.-3(b) style points via the landscape path.
  const auto cell = landscape(LandscapeKind::fid_phi_smooth, nullptr, nullptr,
                              1.24, 1.24, 1, 1.0, 1.0, 1);
  CHECK(cell.value[0] >= 0.90);
}

TEST_SUITE_END();
