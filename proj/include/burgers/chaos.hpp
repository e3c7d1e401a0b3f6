#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "burgers/ou.hpp"

namespace burgers {

/// Parameters fall outside the validity window of the requested covariance
/// estimate; the message names the violated inequality.
struct OutOfRegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChaosKind {
  wick2,            // (z^gamma)^{<>2}
  jz,               // J(z^gamma)
  zz_resonant,      // z^gamma o z^delta, independent factors
  jzz,              // J(z^gamma, z^delta), independent factors
  jz_circ_z,        // J(z^gamma) o z^gamma
  jz_circ_z_delta,  // J(z^gamma) o z^delta, independent z^delta
};

std::string chaos_kind_name(ChaosKind k);

struct ChaosParams {
  double gamma = 0.0;
  double delta = 0.0;  // second exponent where applicable
};

/// Predicted Fourier-covariance power law E|x(k)|^2 ~ |k|^{-p} with its
/// Holder-exponent reading p = 1 + 2 kappa.
struct DecaySpec {
  double power = 0.0;
  double holder_exponent = 0.0;
  std::uint32_t k_min = 1;
  std::uint32_t k_max = 0;
};

/// The decay exponent the second-moment estimates must reproduce:
///   wick2:            p = 3 - 4 gamma          (1/2 <= gamma < 3/4)
///   jz:               p = 5 - 4 gamma          (1/2 <= gamma < 1)
///   zz_resonant:      p = 3 - 2 gamma - 2 delta  (gamma + delta < 3/2)
///   jzz:              p = 5 - 2 gamma - 2 delta  (3/2 <= gamma + delta < 2)
///   jz_circ_z:        p = 6 - 6 gamma          (1/2 <= gamma < 1)
///   jz_circ_z_delta:  p = 6 - 4 gamma - 2 delta  (1/2 <= gamma < 1, 0 < delta < 1)
/// Throws OutOfRegimeError outside the stated window.
DecaySpec chaos_decay_oracle(ChaosKind kind, ChaosParams params);

/// Exact finite-cutoff second moment of the Wick square at time t:
///   E|w(k)|^2 = 2 sum_{k1+k2=k, 0<|k_i|<=K} v_t(k1) v_t(k2),
/// with v_t(k) the OU mode variance. Brute-force double sum.
double wick2_mode_variance_oracle(const OUSpec& spec, double t, std::int64_t k);

enum class SumMode { full, resonant };

/// sum_{k1+k2=k, 0<|k_i|<=K_sum} |k1|^{-a} |k2|^{-b}, restricted to dyadic
/// neighbors k1 ~ k2 in resonant mode. Out-of-hypothesis parameters are
/// allowed; divergence is then visible as growth in K_sum.
double convolution_sum_bruteforce(double a, double b, std::int64_t k, std::int64_t K_sum,
                                  SumMode mode);

}  // namespace burgers
