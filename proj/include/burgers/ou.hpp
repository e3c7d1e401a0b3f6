#pragma once

#include <cstdint>
#include <vector>

#include "burgers/field.hpp"
#include "burgers/rng.hpp"

namespace burgers {

enum class Regularization { sharp, gaussian_bump };

/// Diagonal noise specification q_k ~ |k|^gamma for the Ornstein-Uhlenbeck
/// process dz = -A z dt + Q dW in Fourier coordinates.
struct OUSpec {
  double gamma = 0.0;
  std::uint32_t cutoff = 0;
  std::vector<double> q;  // q[k-1] = q_k >= 0

  static OUSpec power_law(std::uint32_t K, double gamma,
                          Regularization reg = Regularization::sharp);
  static OUSpec zero(std::uint32_t K);

  double q_of(std::uint32_t k) const { return q[k - 1]; }
};

/// One exact transition of the OU law over a step of length dt:
///   c_k <- exp(-k^2 dt) c_k + q_k xi_k sqrt((1 - exp(-2 k^2 dt)) / (2 k^2)).
/// No time-discretization bias; draws are addressed by (stream, k, step).
SpectralField ou_step(const SpectralField& state, const OUSpec& spec, double dt,
                      const NoiseStream& noise, std::uint64_t stream, std::uint64_t step);

/// Standard deviation of the fresh-noise part of the exact transition.
double ou_increment_sd(const OUSpec& spec, std::uint32_t k, double dt);

/// E[ z_s(k) conj(z_t(k)) ] = q_k^2 (exp(-k^2|t-s|) - exp(-k^2(t+s))) / (2k^2)
/// for the zero-initial-condition process.
double ou_covariance_oracle(const OUSpec& spec, std::uint32_t k, double s, double t);
inline double ou_mode_variance(const OUSpec& spec, std::uint32_t k, double t) {
  return ou_covariance_oracle(spec, k, t, t);
}

/// Draw z_t started from zero in a single exact step.
SpectralField ou_exact_sample(const OUSpec& spec, double t, const NoiseStream& noise,
                              std::uint64_t stream);

struct WickSquare {
  SpectralField field;
  double removed_constant = 0.0;
};

/// (z)^{<>2} at time t: the squared field with the analytic expectation
/// E[(z_t)^2] = sum_{0<|k|<=K} q_k^2 (1-exp(-2k^2 t))/(2k^2) subtracted.
/// Products are mean-projected, so the constant only appears as metadata.
WickSquare wick_square(const SpectralField& field, const OUSpec& spec, double t);
double wick_constant(const OUSpec& spec, double t);

}  // namespace burgers
