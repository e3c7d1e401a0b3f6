#include <doctest.h>

#include <cmath>

#include "burgers/chaos.hpp"
#include "burgers/field.hpp"
#include "burgers/rng.hpp"

using namespace burgers;

TEST_CASE("decay oracle exponents") {
  CHECK(chaos_decay_oracle(ChaosKind::wick2, {0.6, 0}).power == doctest::Approx(0.6));
  CHECK(chaos_decay_oracle(ChaosKind::wick2, {0.6, 0}).holder_exponent == doctest::Approx(-0.2));
  CHECK(chaos_decay_oracle(ChaosKind::jz, {0.8, 0}).power == doctest::Approx(1.8));
  CHECK(chaos_decay_oracle(ChaosKind::jz, {0.85, 0}).power == doctest::Approx(1.6));
  CHECK(chaos_decay_oracle(ChaosKind::zz_resonant, {0.7, 0.7}).power == doctest::Approx(0.2));
  CHECK(chaos_decay_oracle(ChaosKind::jzz, {0.8, 0.8}).power == doctest::Approx(1.8));
  CHECK(chaos_decay_oracle(ChaosKind::jz_circ_z, {0.6, 0}).power == doctest::Approx(2.4));
  CHECK(chaos_decay_oracle(ChaosKind::jz_circ_z_delta, {0.8, 0.4}).power == doctest::Approx(2.0));
  // consistency p = 1 + 2 kappa
  DecaySpec d = chaos_decay_oracle(ChaosKind::jz, {0.9, 0});
  CHECK(d.power == doctest::Approx(1.0 + 2.0 * d.holder_exponent));
}

TEST_CASE("window violations name the broken inequality") {
  CHECK_THROWS_WITH_AS(chaos_decay_oracle(ChaosKind::zz_resonant, {0.8, 0.8}),
                       doctest::Contains("gamma + delta < 3/2"), OutOfRegimeError);
  CHECK_THROWS_AS(chaos_decay_oracle(ChaosKind::wick2, {0.8, 0}), OutOfRegimeError);
  CHECK_THROWS_AS(chaos_decay_oracle(ChaosKind::wick2, {0.4, 0}), OutOfRegimeError);
  CHECK_THROWS_AS(chaos_decay_oracle(ChaosKind::jz, {1.0, 0}), OutOfRegimeError);
  CHECK_THROWS_AS(chaos_decay_oracle(ChaosKind::jzz, {0.7, 0.7}), OutOfRegimeError);
}

TEST_CASE("wick pair-sum oracle matches a monte carlo square") {
  const std::uint32_t K = 16;
  const double gamma = 0.6, t = 1.0;
  OUSpec spec = OUSpec::power_law(K, gamma);
  NoiseStream base{2024};
  const std::size_t N = 20000;
  for (std::uint32_t k : {1u, 2u, 4u, 8u}) {
    std::vector<double> vals(N);
    for (std::size_t i = 0; i < N; ++i) {
      SpectralField z = ou_exact_sample(spec, t, base.for_sample(i), 0);
      vals[i] = std::norm(pointwise_product(z, z).coeff(k));
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= N;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    double se = std::sqrt(var / (N - 1) / N);
    double oracle = wick2_mode_variance_oracle(spec, t, k);
    CHECK(std::abs(mean - oracle) < 4.0 * se);
  }
}

TEST_CASE("convolution sums: bounded inside the hypothesis") {
  // a = b = 1.2, scaled by k^{a+b-1}: the observed constant stays bounded
  for (std::int64_t k : {2ll, 8ll, 32ll, 128ll}) {
    double s = convolution_sum_bruteforce(1.2, 1.2, k, 100000, SumMode::full);
    CHECK(s * std::pow(static_cast<double>(k), 1.4) < 50.0);
  }
  // fsum window a + b > 1, a, b < 1
  for (std::int64_t k : {2ll, 16ll, 128ll}) {
    double lo = convolution_sum_bruteforce(0.8, 0.9, k, 50000, SumMode::full);
    double hi = convolution_sum_bruteforce(0.8, 0.9, k, 100000, SumMode::full);
    CHECK(std::abs(hi / lo - 1.0) < 0.05);
    CHECK(hi * std::pow(static_cast<double>(k), 0.7) < 50.0);
  }
  // resonant variant only needs a + b > 1
  for (std::int64_t k : {2ll, 16ll, 128ll}) {
    double lo = convolution_sum_bruteforce(0.9, 0.9, k, 50000, SumMode::resonant);
    double hi = convolution_sum_bruteforce(0.9, 0.9, k, 100000, SumMode::resonant);
    CHECK(std::abs(hi / lo - 1.0) < 0.05);
  }
}

TEST_CASE("convolution sums: divergence outside the hypothesis") {
  double lo = convolution_sum_bruteforce(0.4, 0.4, 16, 50000, SumMode::full);
  double hi = convolution_sum_bruteforce(0.4, 0.4, 16, 100000, SumMode::full);
  CHECK(hi / lo > 1.1);  // grows without bound as K_sum doubles
}

TEST_CASE("borderline growth comparison at a + b = 1.2") {
  // a = b = 0.6: finite for fixed K_sum; decay across k close to k^{-0.2}
  double s8 = convolution_sum_bruteforce(0.6, 0.6, 8, 100000, SumMode::full);
  double s64 = convolution_sum_bruteforce(0.6, 0.6, 64, 100000, SumMode::full);
  double measured = std::log(s64 / s8) / std::log(8.0);
  CHECK(std::abs(measured + 0.2) < 0.1);
}
