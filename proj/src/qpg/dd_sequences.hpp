#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qpg {

// Ordered pi-pulse times of one gate cycle as fractions mu_k in (0,1),
// strictly increasing. n = 0 is free induction decay. The closing pi-pulse
// at t = T is bookkeeping of the gate composition and does not enter the
// switching function.
class PulseSequence {
 public:
  PulseSequence() : name_("fid") {}

  static PulseSequence fid() { return PulseSequence(); }
  static PulseSequence cpmg(int n);   // mu_k = (k - 1/2)/n
  static PulseSequence udd(int n);    // mu_j = sin^2(j pi / (2n+2))
  static PulseSequence custom(std::vector<double> fractions,
                              std::string name = "custom");

  int size() const { return static_cast<int>(fractions_.size()); }
  const std::vector<double> &fractions() const { return fractions_; }
  const std::string &name() const { return name_; }

  // Switching function f(T;t) at t = t_frac * T: (-1)^{#pulses <= t_frac}.
  double switching(double t_frac) const;

  // omega * ftilde(omega, T) as a function of z = omega*T:
  //   (1/i) [1 + (-1)^{n+1} e^{-iz} + 2 sum_k (-1)^k e^{-iz mu_k}].
  std::complex<double> omega_ftilde(double z) const;

  // Filter function F(z) = |omega ftilde|^2 / 2; F(0) = 0.
  double filter(double z) const;

  std::string to_json() const;
  static PulseSequence from_json(const std::string &text);

 private:
  PulseSequence(std::vector<double> fractions, std::string name);

  std::vector<double> fractions_;
  std::string name_;
};

}  // namespace qpg
