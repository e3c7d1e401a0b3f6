#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace burgers {

/// Counter-based Gaussian noise. Every draw is a pure function of
/// (seed, stream, mode, step, lane), so ensembles are reproducible for any
/// execution order or worker count, and distinct addresses are independent.
/// The Hermitian constraint W(-k) = conj(W(k)) is enforced structurally by
/// drawing only k >= 1.
struct NoiseStream {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  /// Independent sub-generator for one ensemble sample.
  NoiseStream for_sample(std::uint64_t sample) const {
    return NoiseStream{mix(seed ^ mix(sample + 0x53A3F872E4B1D20Dull))};
  }

  std::uint64_t word(std::uint64_t stream, std::uint64_t mode, std::uint64_t step,
                     std::uint64_t lane) const {
    std::uint64_t h = seed;
    h = mix(h ^ mix(stream + 0xA24BAED4963EE407ull));
    h = mix(h ^ mix(mode + 0x9FB21C651E98DF25ull));
    h = mix(h ^ mix(step + 0xD6E8FEB86659FD93ull));
    h = mix(h ^ mix(lane + 0xC2B2AE3D27D4EB4Full));
    return h;
  }

  static double to_open_unit(std::uint64_t w) {
    // (0,1), never exactly 0 or 1
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Two independent N(0,1) variates per address.
  void gaussian_pair(std::uint64_t stream, std::uint64_t mode, std::uint64_t step, double& g1,
                     double& g2) const {
    double u1 = to_open_unit(word(stream, mode, step, 0));
    double u2 = to_open_unit(word(stream, mode, step, 1));
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * std::numbers::pi * u2;
    g1 = r * std::cos(th);
    g2 = r * std::sin(th);
  }

  /// Standard complex Gaussian: E xi = 0, E|xi|^2 = 1, E xi^2 = 0.
  std::complex<double> complex_gaussian(std::uint64_t stream, std::uint64_t mode,
                                        std::uint64_t step) const {
    double g1, g2;
    gaussian_pair(stream, mode, step, g1, g2);
    return {g1 * std::numbers::sqrt2 / 2.0, g2 * std::numbers::sqrt2 / 2.0};
  }
};

/// Stream identifiers. Levels of the decomposition use their own index, the
/// remainder and the direct equation get reserved slots well above any level.
namespace stream_id {
constexpr std::uint64_t level(int i) { return static_cast<std::uint64_t>(i); }
constexpr std::uint64_t remainder = 1u << 16;   // W-tilde
constexpr std::uint64_t direct = (1u << 16) + 1;
constexpr std::uint64_t aux = (1u << 16) + 2;   // independent helper draws
}  // namespace stream_id

}  // namespace burgers
