#include <cmath>
#include <complex>

#include "doctest.h"
#include "qpg/linalg.hpp"
#include "qpg/quadrature.hpp"
#include "qpg/rng.hpp"
#include "qpg/schedule.hpp"

using namespace qpg;

TEST_SUITE_BEGIN("foundations");

TEST_CASE("adaptive quadrature on smooth integrands") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Oscillatory integrand over many periods.
  const double expect = (1.0 - std::cos(500.0)) / 10.0;
  CHECK(integrate([](double x) { return std::sin(10.0 * x); }, 0.0, 50.0,
                  1e-11) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("adaptive quadrature resolves kinks") {
  const double got =
      integrate([](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0, 1.0, 1e-12);
  const double expect = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
  CHECK(got == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("quadrature input validation") {
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-8),
                  QuadratureError);
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-8) == 0.0);
}

TEST_CASE("rng streams are deterministic and decorrelated") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_equal_c = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_equal_c = any_equal_c || (va == c.next_u64());
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_c);

  CHECK(derive_seed(7, 0) == derive_seed(7, 0));
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 0) != derive_seed(8, 0));
}

TEST_CASE("normal sampler moments") {
  Rng rng(20240817);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, sum3 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sum2 += v * v;
    sum3 += v * v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double skew = sum3 / n;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(skew) < 3.0 * std::sqrt(15.0 / n));
}

TEST_CASE("pauli algebra") {
  CHECK((pauli_x() * pauli_y() - complexd(0, 1) * pauli_z()).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
  CHECK(is_hermitian(pauli_x()));
  CHECK(is_hermitian(pauli_dot(Vec3(0.3, -1.2, 0.7))));
}

TEST_CASE("exact exponential stepping is unitary") {
  // exp(-i sz pi/2) = diag(e^{-i pi/2}, e^{i pi/2})
  const Mat2 u = exp_minus_i_h(pauli_z(), M_PI / 2.0);
  CHECK(std::abs(u(0, 0) - std::exp(complexd(0, -M_PI / 2))) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::exp(complexd(0, M_PI / 2))) < 1e-15);
  CHECK(std::abs(u(0, 1)) == doctest::Approx(0.0));

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2 h = rng.normal() * pauli_x() + rng.normal() * pauli_y() +
                   rng.normal() * pauli_z() +
                   rng.normal() * Mat2::Identity();
    const Mat2 u_t = exp_minus_i_h(h, 0.37);
    CHECK((u_t * u_t.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK((exp_minus_i_h(pauli_x(), 0.0) - Mat2::Identity()).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
}

TEST_CASE("numeric differentiation flags kinks") {
  const Schedule smooth = [](double t) { return std::sin(t); };
  CHECK(differentiate(smooth, 0.7, 1.0) == doctest::Approx(std::cos(0.7)).epsilon(1e-9));

  const Schedule kinked = [](double t) { return std::abs(t - 1.0); };
  CHECK_THROWS_AS(differentiate(kinked, 1.0, 1.0), std::domain_error);
  CHECK(differentiate(kinked, 0.5, 1.0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("gate schedule boundary validation") {
  const auto ok = GateSchedule::linear(3.0, 2.0 * M_PI, M_PI);
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.T == doctest::Approx(1.0));

  auto broken = GateSchedule::linear(3.0, 2.0 * M_PI, M_PI);
  broken.T = 0.9;  // theta(T) != 2 pi
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  const auto smooth = GateSchedule::smoothed(3.0, 2.0 * M_PI, M_PI);
  CHECK_NOTHROW(smooth.validate());
  CHECK(smooth.theta(smooth.T) == doctest::Approx(2.0 * M_PI));
}

TEST_SUITE_END();
