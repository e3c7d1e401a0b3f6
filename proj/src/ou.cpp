#include "burgers/ou.hpp"

#include <cmath>
#include <stdexcept>

namespace burgers {

OUSpec OUSpec::power_law(std::uint32_t K, double gamma, Regularization reg) {
  OUSpec s;
  s.gamma = gamma;
  s.cutoff = K;
  s.q.resize(K);
  for (std::uint32_t k = 1; k <= K; ++k) {
    double qk = std::pow(static_cast<double>(k), gamma);
    if (reg == Regularization::gaussian_bump) {
      double x = static_cast<double>(k) / static_cast<double>(K);
      qk *= std::exp(-x * x);  // smooth psi with psi(0) = 1
    }
    s.q[k - 1] = qk;
  }
  return s;
}

OUSpec OUSpec::zero(std::uint32_t K) {
  OUSpec s;
  s.gamma = 0.0;
  s.cutoff = K;
  s.q.assign(K, 0.0);
  return s;
}

double ou_increment_sd(const OUSpec& spec, std::uint32_t k, double dt) {
  double kk = static_cast<double>(k) * static_cast<double>(k);
  // (1 - exp(-2 k^2 dt)) / (2 k^2), via expm1 for small arguments
  double var = -std::expm1(-2.0 * kk * dt) / (2.0 * kk);
  return spec.q_of(k) * std::sqrt(var);
}

SpectralField ou_step(const SpectralField& state, const OUSpec& spec, double dt,
                      const NoiseStream& noise, std::uint64_t stream, std::uint64_t step) {
  if (dt <= 0.0) throw std::invalid_argument("ou_step needs dt > 0");
  if (state.cutoff != spec.cutoff) throw std::invalid_argument("cutoff mismatch in ou_step");
  SpectralField out(state.cutoff);
  for (std::uint32_t k = 1; k <= state.cutoff; ++k) {
    double kk = static_cast<double>(k) * static_cast<double>(k);
    std::complex<double> xi = noise.complex_gaussian(stream, k, step);
    out.set_coeff(k, std::exp(-kk * dt) * state.coeff(k) + ou_increment_sd(spec, k, dt) * xi);
  }
  return out;
}

double ou_covariance_oracle(const OUSpec& spec, std::uint32_t k, double s, double t) {
  if (k < 1) throw std::invalid_argument("wavenumber must be >= 1");
  double kk = static_cast<double>(k) * static_cast<double>(k);
  double qk = spec.q_of(k);
  return qk * qk * (std::exp(-kk * std::abs(t - s)) - std::exp(-kk * (t + s))) / (2.0 * kk);
}

SpectralField ou_exact_sample(const OUSpec& spec, double t, const NoiseStream& noise,
                              std::uint64_t stream) {
  SpectralField z(spec.cutoff);
  for (std::uint32_t k = 1; k <= spec.cutoff; ++k) {
    double sd = std::sqrt(ou_mode_variance(spec, k, t));
    z.set_coeff(k, sd * noise.complex_gaussian(stream, k, 0));
  }
  z.time_tag = t;
  return z;
}

double wick_constant(const OUSpec& spec, double t) {
  double s = 0.0;
  for (std::uint32_t k = 1; k <= spec.cutoff; ++k) s += ou_mode_variance(spec, k, t);
  return 2.0 * s;  // modes +k and -k contribute equally
}

WickSquare wick_square(const SpectralField& field, const OUSpec& spec, double t) {
  WickSquare w{pointwise_product(field, field), wick_constant(spec, t)};
  return w;
}

}  // namespace burgers
