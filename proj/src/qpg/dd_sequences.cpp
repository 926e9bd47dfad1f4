#include "qpg/dd_sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qpg {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

PulseSequence::PulseSequence(std::vector<double> fractions, std::string name)
    : fractions_(std::move(fractions)), name_(std::move(name)) {
  double prev = 0.0;
  for (const double mu : fractions_) {
    if (!(mu > 0.0 && mu < 1.0)) {
      throw std::invalid_argument("pulse fraction " + std::to_string(mu) +
                                  " outside (0,1)");
    }
    if (!(mu > prev)) {
      throw std::invalid_argument(
          "pulse fractions must be strictly increasing (duplicate or unsorted "
          "entry " +
          std::to_string(mu) + ")");
    }
    prev = mu;
  }
}

PulseSequence PulseSequence::cpmg(int n) {
  if (n < 1) throw std::invalid_argument("cpmg: n must be >= 1");
  std::vector<double> mu(n);
  for (int k = 1; k <= n; ++k) mu[k - 1] = (k - 0.5) / n;
  return PulseSequence(std::move(mu), "cpmg" + std::to_string(n));
}

PulseSequence PulseSequence::udd(int n) {
  if (n < 1) throw std::invalid_argument("udd: n must be >= 1");
  std::vector<double> mu(n);
  for (int j = 1; j <= n; ++j) {
    const double s = std::sin(j * kPi / (2.0 * n + 2.0));
    mu[j - 1] = s * s;
  }
  return PulseSequence(std::move(mu), "udd" + std::to_string(n));
}

PulseSequence PulseSequence::custom(std::vector<double> fractions,
                                    std::string name) {
  return PulseSequence(std::move(fractions), std::move(name));
}

double PulseSequence::switching(double t_frac) const {
  const auto past = std::upper_bound(fractions_.begin(), fractions_.end(), t_frac);
  const auto count = past - fractions_.begin();
  return (count % 2 == 0) ? 1.0 : -1.0;
}

std::complex<double> PulseSequence::omega_ftilde(double z) const {
  const std::complex<double> i(0.0, 1.0);
  const int n = size();
  std::complex<double> h = 1.0 + ((n % 2 == 0) ? -1.0 : 1.0) * std::exp(-i * z);
  double sign = -1.0;  // (-1)^k, k = 1..n
  for (const double mu : fractions_) {
    h += 2.0 * sign * std::exp(-i * z * mu);
    sign = -sign;
  }
  return h / i;
}

double PulseSequence::filter(double z) const {
  return 0.5 * std::norm(omega_ftilde(z));
}

std::string PulseSequence::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["fractions"] = fractions_;
  return j.dump();
}

PulseSequence PulseSequence::from_json(const std::string &text) {
  const auto j = nlohmann::json::parse(text);
  return PulseSequence(j.at("fractions").get<std::vector<double>>(),
                       j.value("name", std::string("custom")));
}

}  // namespace qpg
