#include <doctest.h>

#include <cmath>
#include <complex>

#include "burgers/field.hpp"
#include "burgers/rng.hpp"

using namespace burgers;
using cplx = std::complex<double>;

namespace {

SpectralField random_field(std::uint32_t K, std::uint64_t seed) {
  NoiseStream ns{seed};
  SpectralField f(K);
  for (std::uint32_t k = 1; k <= K; ++k) f.set_coeff(k, ns.complex_gaussian(0, k, 0));
  return f;
}

// Test-side oracle: the truncated product by direct summation over the
// Hermitian-completed spectra, zero mode dropped.
SpectralField convolution_oracle(const SpectralField& f, const SpectralField& g) {
  const std::int64_t K = f.cutoff;
  auto full = [&](const SpectralField& h, std::int64_t k) -> cplx {
    if (k == 0 || std::llabs(k) > K) return {0.0, 0.0};
    return k > 0 ? h.coeff(static_cast<std::uint32_t>(k))
                 : std::conj(h.coeff(static_cast<std::uint32_t>(-k)));
  };
  SpectralField out(f.cutoff);
  for (std::int64_t k = 1; k <= K; ++k) {
    cplx s{0.0, 0.0};
    for (std::int64_t k1 = -K; k1 <= K; ++k1) s += full(f, k1) * full(g, k - k1);
    out.set_coeff(static_cast<std::uint32_t>(k), s);
  }
  return out;
}

double max_coeff_err(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::uint32_t k = 1; k <= a.cutoff; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

}  // namespace

TEST_CASE("diagonal operators on single modes") {
  SpectralField e1 = SpectralField::mode(8, 1, {1.0, 0.0});
  SpectralField h = apply_diagonal(e1, heat_symbol(1.0));
  CHECK(h.coeff(1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  SpectralField e2 = SpectralField::mode(8, 2, {1.0, 0.0});
  SpectralField a = apply_diagonal(e2, a_power_symbol(0.5));
  CHECK(a.coeff(2).real() == doctest::Approx(2.0));

  SpectralField e3 = SpectralField::mode(8, 3, {0.0, 1.0});
  SpectralField d = apply_diagonal(e3, dx_symbol());
  CHECK(d.coeff(3).real() == doctest::Approx(-3.0));
  CHECK(d.coeff(3).imag() == doctest::Approx(0.0));
}

TEST_CASE("death state propagates through diagonal operators") {
  FieldState dead = DeathState{0.25};
  FieldState out = apply_diagonal(dead, heat_symbol(1.0));
  CHECK(is_dead(out));
  CHECK(std::get<DeathState>(out).blowup_time == 0.25);
}

TEST_CASE("product of cosines keeps the double mode and drops the mean") {
  SpectralField f = SpectralField::mode(8, 1, {0.5, 0.0});  // cos(x)
  SpectralField p = pointwise_product(f, f);
  CHECK(p.coeff(2).real() == doctest::Approx(0.25).epsilon(1e-14));
  for (std::uint32_t k : {1u, 3u, 4u, 5u, 6u, 7u, 8u}) CHECK(std::abs(p.coeff(k)) < 1e-14);
}

TEST_CASE("zero field annihilates products") {
  SpectralField f = random_field(8, 11);
  SpectralField z(8);
  CHECK(pointwise_product(f, z).is_zero());
}

TEST_CASE("dealiased product equals the direct convolution oracle") {
  SpectralField f = random_field(8, 21);
  SpectralField g = random_field(8, 22);
  SpectralField p = pointwise_product(f, g);
  SpectralField q = convolution_oracle(f, g);
  CHECK(max_coeff_err(p, q) < 1e-12);

  // and against plain grid-space multiplication on a 64-point grid
  auto fv = grid_values(f, 64);
  auto gv = grid_values(g, 64);
  std::vector<double> hv(64);
  for (std::size_t j = 0; j < 64; ++j) hv[j] = fv[j] * gv[j];
  SpectralField pg = field_from_grid(hv, 8);
  CHECK(max_coeff_err(p, pg) < 1e-12);
}

TEST_CASE("reality: grid round trip reproduces coefficients") {
  SpectralField f = random_field(32, 33);
  SpectralField back = field_from_grid(grid_values(f, 256), 32);
  double rel = max_coeff_err(f, back) / l2_norm(f);
  CHECK(rel < 1e-12);
}

TEST_CASE("parseval: grid mean square matches coefficient sum") {
  SpectralField f = random_field(16, 44);
  auto v = grid_values(f, 128);
  double ms = 0.0;
  for (double x : v) ms += x * x;
  ms /= v.size();
  CHECK(std::sqrt(ms) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("heat semigroup composes") {
  SpectralField f = random_field(16, 55);
  SpectralField a = apply_diagonal(apply_diagonal(f, heat_symbol(0.3)), heat_symbol(0.45));
  SpectralField b = apply_diagonal(f, heat_symbol(0.75));
  for (std::uint32_t k = 1; k <= 16; ++k)
    CHECK(std::abs(a.coeff(k) - b.coeff(k)) <= 1e-14 * std::abs(b.coeff(k)) + 1e-300);
}

TEST_CASE("sup norm of a single mode") {
  SpectralField e5 = SpectralField::mode(8, 5, {1.0, 0.0});  // 2 cos(5x)
  CHECK(sup_norm(e5) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("heat smoothing exponent between Holder scales") {
  // unit C^gamma block profile, one mode per dyadic block; smoothing into
  // C^delta with delta >= gamma costs t^{(gamma-delta)/2}
  const double gamma = -0.5, delta = 0.5;
  const std::uint32_t K = 512;
  SpectralField f(K);
  for (int j = 0; (1u << j) <= K / 2; ++j)
    f.set_coeff(1u << j, {0.5 * std::pow(2.0, -j * gamma), 0.0});

  std::vector<double> lx, ly;
  for (int m = 1; m <= 7; ++m) {
    double t = std::pow(4.0, -m);
    SpectralField ht = apply_diagonal(f, heat_symbol(t));
    double norm = 0.0;  // C^delta norm; each block holds exactly one mode
    for (int j = 0; (1u << j) <= K / 2; ++j) {
      double bv = 2.0 * std::abs(ht.coeff(1u << j));
      norm = std::max(norm, std::pow(2.0, j * delta) * bv);
    }
    lx.push_back(std::log(t));
    ly.push_back(std::log(norm));
  }
  double n = lx.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - (gamma - delta) / 2.0) < 0.1);
}

TEST_CASE("field path invariants") {
  FieldPath p;
  p.times = {0.0, 0.1, 0.2};
  p.states.emplace_back(SpectralField(4));
  p.states.emplace_back(DeathState{0.1});
  p.states.emplace_back(DeathState{0.1});
  p.death_time = 0.1;
  CHECK_NOTHROW(p.check_invariants());

  FieldPath bad = p;
  bad.states[2] = SpectralField(4);  // resurrection
  CHECK_THROWS_AS(bad.check_invariants(), std::invalid_argument);
}

TEST_CASE("cutoff mismatch is a configuration error") {
  SpectralField a(8), b(16);
  CHECK_THROWS_AS(pointwise_product(a, b), std::invalid_argument);
}
