#include <doctest.h>

#include <cmath>

#include "burgers/dyadic.hpp"
#include "burgers/fit.hpp"
#include "burgers/ou.hpp"
#include "burgers/rng.hpp"

using namespace burgers;

namespace {

// Gaussian field with prescribed mode variances.
SpectralField gaussian_with_variance(std::uint32_t K, std::uint64_t seed,
                                     const std::function<double(std::uint32_t)>& var) {
  NoiseStream ns{seed};
  SpectralField f(K);
  for (std::uint32_t k = 1; k <= K; ++k)
    f.set_coeff(k, std::sqrt(var(k)) * ns.complex_gaussian(1, k, 0));
  return f;
}

std::vector<std::vector<std::pair<int, double>>> block_ensemble(
    std::uint32_t K, std::size_t n, const std::function<double(std::uint32_t)>& var) {
  DyadicPartition p = DyadicPartition::sharp(K);
  std::vector<std::vector<std::pair<int, double>>> ens;
  for (std::size_t i = 0; i < n; ++i)
    ens.push_back(block_norms(gaussian_with_variance(K, 1000 + i, var), p));
  return ens;
}

}  // namespace

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> xs = {1, 2, 3, 4, 5}, ys;
  for (double x : xs) ys.push_back(3.0 - 2.0 * x);
  LineFit f = fit_line(xs, ys);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.slope_stderr < 1e-10);
}

TEST_CASE("exponent fit on a k^-2 spectrum gives 1/2") {
  auto ens = block_ensemble(256, 48, [](std::uint32_t k) { return std::pow(k, -2.0); });
  RegularityFit rf = besov_exponent_fit(ens, 2, 5);
  CHECK(std::abs(rf.exponent - 0.5) < 0.1);
  CHECK(rf.r_squared > 0.9);
}

TEST_CASE("exponent fit on a white spectrum gives -1/2") {
  auto ens = block_ensemble(256, 48, [](std::uint32_t) { return 1.0; });
  RegularityFit rf = besov_exponent_fit(ens, 2, 5);
  CHECK(std::abs(rf.exponent + 0.5) < 0.1);
}

TEST_CASE("exponent fit on an OU sample matches 1/2 - gamma") {
  const double gamma = 0.6;
  const std::uint32_t K = 256;
  OUSpec spec = OUSpec::power_law(K, gamma);
  DyadicPartition p = DyadicPartition::sharp(K);
  NoiseStream base{4242};
  std::vector<std::vector<std::pair<int, double>>> ens;
  for (std::size_t i = 0; i < 64; ++i)
    ens.push_back(block_norms(ou_exact_sample(spec, 1.0, base.for_sample(i), 3), p));
  RegularityFit rf = besov_exponent_fit(ens, 2, 5);
  CHECK(std::abs(rf.exponent - (0.5 - gamma)) < 0.1);
}

TEST_CASE("empty blocks shrink the range; too few blocks is an error") {
  // spectrum supported on blocks 2..5 only
  auto ens = block_ensemble(256, 32, [](std::uint32_t k) { return k >= 4 && k < 64 ? 1.0 : 0.0; });
  RegularityFit rf = besov_exponent_fit(ens, 0, 7);
  CHECK(rf.range_shrunk);
  CHECK(rf.j_min == 2);
  CHECK(rf.j_max == 5);

  auto tiny = block_ensemble(256, 32, [](std::uint32_t k) { return k < 8 ? 1.0 : 0.0; });
  CHECK_THROWS_AS(besov_exponent_fit(tiny, 0, 7), FitError);  // only 3 usable blocks

}

TEST_CASE("fewer than 30 samples is rejected") {
  auto ens = block_ensemble(64, 8, [](std::uint32_t) { return 1.0; });
  CHECK_THROWS_AS(besov_exponent_fit(ens, 0, 5), FitError);
}

TEST_CASE("mode decay fit recovers a power law") {
  std::vector<std::uint32_t> ks;
  std::vector<double> m2;
  for (std::uint32_t k = 4; k <= 32; ++k) {
    ks.push_back(k);
    m2.push_back(2.5 * std::pow(k, -1.7));
  }
  ModeDecayFit f = fit_mode_decay(ks, m2);
  CHECK(f.slope == doctest::Approx(-1.7).epsilon(1e-10));
  CHECK(f.r_squared > 0.999);
}
