#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace qpg {

using complexd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;

inline Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 pauli_y() {
  Mat2 m;
  m << 0, complexd(0, -1), complexd(0, 1), 0;
  return m;
}

inline Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

// a . sigma for a real 3-vector a.
inline Mat2 pauli_dot(const Vec3 &a) {
  Mat2 m;
  m << a.z(), complexd(a.x(), -a.y()), complexd(a.x(), a.y()), -a.z();
  return m;
}

inline bool is_hermitian(const Mat2 &m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// exp(-i H dt) for Hermitian H through the Pauli decomposition
// H = c*I + a.sigma; exactly unitary regardless of dt.
inline Mat2 exp_minus_i_h(const Mat2 &h, double dt) {
  const double c = 0.5 * std::real(h(0, 0) + h(1, 1));
  const double ax = std::real(h(0, 1));
  const double ay = -std::imag(h(0, 1));
  const double az = 0.5 * std::real(h(0, 0) - h(1, 1));
  const double r = std::sqrt(ax * ax + ay * ay + az * az);
  const complexd phase = std::exp(complexd(0, -c * dt));
  Mat2 u = std::cos(r * dt) * Mat2::Identity();
  if (r > 0.0) {
    u -= complexd(0, std::sin(r * dt) / r) * pauli_dot(Vec3(ax, ay, az));
  }
  return phase * u;
}

}  // namespace qpg
