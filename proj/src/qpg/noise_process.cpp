#include "qpg/noise_process.hpp"

#include <cmath>
#include <stdexcept>

#include "qpg/rng.hpp"

namespace qpg {

void OuParams::validate() const {
  if (!(Gamma >= 0.0) || !std::isfinite(Gamma)) {
    throw std::invalid_argument("OuParams: Gamma must be finite and >= 0");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("OuParams: gamma must be finite and > 0");
  }
}

double correlation(const OuParams &p, double tau) {
  return 0.5 * p.Gamma * p.gamma * std::exp(-p.gamma * std::abs(tau));
}

double spectral_density(const OuParams &p, double omega) {
  return 2.0 * p.Gamma * p.gamma * p.gamma / (omega * omega + p.gamma * p.gamma);
}

std::vector<double> sample_ou_values(const OuParams &p,
                                     std::span<const double> times,
                                     std::uint64_t seed) {
  p.validate();
  std::vector<double> values(times.size());
  if (times.empty()) return values;

  const double stationary_sd = std::sqrt(0.5 * p.Gamma * p.gamma);
  Rng rng(seed);
  values[0] = stationary_sd * rng.normal();
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (!(dt > 0.0)) {
      throw std::invalid_argument("sample_ou: grid must be strictly increasing");
    }
    const double decay = std::exp(-p.gamma * dt);
    const double innovation_sd = stationary_sd * std::sqrt(1.0 - decay * decay);
    values[i] = values[i - 1] * decay + innovation_sd * rng.normal();
  }
  return values;
}

NoisePath sample_ou(const OuParams &p, double t0, double dt, int n_points,
                    std::uint64_t seed) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample_ou: dt must be > 0");
  if (n_points < 1) throw std::invalid_argument("sample_ou: n_points must be >= 1");
  NoisePath path;
  path.seed = seed;
  path.t.resize(n_points);
  for (int i = 0; i < n_points; ++i) path.t[i] = t0 + i * dt;
  path.value = sample_ou_values(p, path.t, seed);
  return path;
}

}  // namespace qpg
