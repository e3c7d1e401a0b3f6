#include <doctest.h>

#include <cmath>

#include "burgers/ou.hpp"
#include "burgers/solver.hpp"

using namespace burgers;

namespace {

SystemConfig small_config(double alpha, std::uint32_t K, double dt, double T, std::uint64_t seed) {
  SystemConfig cfg;
  cfg.plan = materialize_spectra(plan_schedule(alpha), K);
  cfg.cutoff = K;
  cfg.dt = dt;
  cfg.horizon = T;
  cfg.u0 = SpectralField(K);
  cfg.z0 = SpectralField(K);
  cfg.seed = seed;
  return cfg;
}

void zero_spectra(SystemConfig& cfg) {
  for (auto& q : cfg.plan.level_q) std::fill(q.begin(), q.end(), 0.0);
  std::fill(cfg.plan.remainder_q.begin(), cfg.plan.remainder_q.end(), 0.0);
  std::fill(cfg.plan.base_q.begin(), cfg.plan.base_q.end(), 0.0);
}

double rel_gap(const SpectralField& a, const SpectralField& b) {
  return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

}  // namespace

TEST_CASE("b nonlinearity of cos x") {
  SpectralField f = SpectralField::mode(8, 1, {0.5, 0.0});
  SpectralField b = b_nonlinearity(f);
  CHECK(b.coeff(2).real() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(b.coeff(2).imag() == doctest::Approx(0.5).epsilon(1e-13));  // -sin(2x)
  CHECK(l2_norm(b_nonlinearity(f, SpectralField(8))) == 0.0);
}

TEST_CASE("j_convolve integrates constant forcing exactly") {
  const std::uint32_t K = 4;
  FieldPath drift;
  const double dt = 0.01;
  for (int m = 0; m <= 100; ++m) {
    drift.times.push_back(m * dt);
    drift.states.emplace_back(SpectralField::mode(K, 1, {1.0, 0.0}));
  }
  FieldPath J = j_convolve(drift);
  for (int m = 0; m <= 100; ++m) {
    double expect = 1.0 - std::exp(-m * dt);
    CHECK(as_field(J.states[m]).coeff(1).real() == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("j_convolve of zero drift is zero") {
  FieldPath drift;
  for (int m = 0; m <= 10; ++m) {
    drift.times.push_back(m * 0.1);
    drift.states.emplace_back(SpectralField(4));
  }
  FieldPath J = j_convolve(drift);
  for (const auto& s : J.states) CHECK(as_field(s).is_zero());
}

TEST_CASE("j_convolve is first order on a time-linear drift") {
  const std::uint32_t K = 4;
  const double T = 1.0;
  auto terminal = [&](double dt) {
    FieldPath drift;
    std::size_t M = static_cast<std::size_t>(T / dt + 0.5);
    for (std::size_t m = 0; m <= M; ++m) {
      drift.times.push_back(m * dt);
      drift.states.emplace_back(SpectralField::mode(K, 2, {m * dt, 0.0}));
    }
    return as_field(j_convolve(drift).states[M]).coeff(2).real();
  };
  // exact integral for mode 2: int_0^1 e^{-4(1-s)} s ds
  double exact = 0.25 - (1.0 - std::exp(-4.0)) / 16.0;
  double e1 = std::abs(terminal(1e-2) - exact);
  double e2 = std::abs(terminal(5e-3) - exact);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));  // halving dt halves the error
}

TEST_CASE("j_convolve rejects nonuniform grids and dead nodes") {
  FieldPath drift;
  drift.times = {0.0, 0.1, 0.3};
  for (int i = 0; i < 3; ++i) drift.states.emplace_back(SpectralField(2));
  CHECK_THROWS_AS(j_convolve(drift), ConfigError);

  FieldPath dead;
  dead.times = {0.0, 0.1, 0.2};
  dead.states.emplace_back(SpectralField(2));
  dead.states.emplace_back(DeathState{0.1});
  dead.states.emplace_back(DeathState{0.1});
  dead.death_time = 0.1;
  CHECK_THROWS_AS(j_convolve(dead), ConfigError);
}

TEST_CASE("deterministic burgers decays in L2 and preserves zero") {
  SystemConfig cfg = small_config(0.6, 32, 1e-3, 0.2, 5);
  zero_spectra(cfg);
  cfg.u0 = SpectralField::mode(32, 1, {0.05, 0.0});
  FieldPath u = run_direct_burgers(cfg);
  double prev = 1e18;
  for (const auto& s : u.states) {
    double cur = l2_norm(as_field(s));
    CHECK(cur <= prev * (1.0 + 1e-12));
    prev = cur;
  }

  SystemConfig zc = small_config(0.6, 32, 1e-3, 0.2, 5);
  zero_spectra(zc);
  FieldPath z = run_direct_burgers(zc);
  for (const auto& s : z.states) CHECK(as_field(s).is_zero());
}

TEST_CASE("identical seeds reproduce identical paths") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 77);
  FieldPath a = run_direct_burgers(cfg);
  FieldPath b = run_direct_burgers(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t m = 0; m < a.size(); ++m)
    for (std::uint32_t k = 1; k <= 16; ++k)
      CHECK(as_field(a.states[m]).coeff(k) == as_field(b.states[m]).coeff(k));
}

TEST_CASE("all-zero noise gives all-zero level runs") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 7);
  zero_spectra(cfg);
  LevelRun run = run_frak_system(cfg, true);
  for (const auto& path : run.levels)
    for (const auto& s : path.states) CHECK(as_field(s).is_zero());
  for (const auto& s : run.remainder.states) CHECK(as_field(s).is_zero());
  for (const auto& s : run.eta->states) CHECK(as_field(s).is_zero());
  for (const auto& s : run.rho->states) CHECK(as_field(s).is_zero());
}

TEST_CASE("zero-noise reduction: sum equals the deterministic solve") {
  SystemConfig cfg = small_config(0.6, 32, 1e-3, 0.2, 9);
  zero_spectra(cfg);
  cfg.u0 = SpectralField::mode(32, 1, {0.2, 0.0}) + SpectralField::mode(32, 3, {0.0, 0.1});
  FieldPath direct = run_direct_burgers(cfg);
  for (SystemKind kind : {SystemKind::frak, SystemKind::x}) {
    LevelStepper s(cfg, kind, false);
    for (std::size_t m = 0; m < cfg.steps(); ++m) s.step();
    CHECK(rel_gap(s.reconstructed(), as_field(direct.states.back())) < 1e-10);
  }
}

TEST_CASE("coupled noise makes the sum reproduce the direct solve") {
  SystemConfig cfg = small_config(0.6, 32, 1e-3, 0.1, 13);
  cfg.u0 = SpectralField::mode(32, 2, {0.1, 0.05});
  DirectStepper d(cfg, NoiseCoupling::coupled);
  LevelStepper frak(cfg, SystemKind::frak, false);
  LevelStepper x(cfg, SystemKind::x, false);
  for (std::size_t m = 0; m < cfg.steps(); ++m) {
    d.step();
    frak.step();
    x.step();
  }
  CHECK(rel_gap(frak.reconstructed(), d.state()) < 1e-10);
  CHECK(rel_gap(x.reconstructed(), d.state()) < 1e-10);
}

TEST_CASE("for one level the two systems coincide") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 21);
  LevelStepper frak(cfg, SystemKind::frak, false);
  LevelStepper x(cfg, SystemKind::x, false);
  for (std::size_t m = 0; m < cfg.steps(); ++m) {
    frak.step();
    x.step();
  }
  for (std::uint32_t k = 1; k <= 16; ++k) {
    CHECK(frak.level(1).coeff(k) == x.level(1).coeff(k));
    CHECK(frak.remainder().coeff(k) == x.remainder().coeff(k));
  }
}

TEST_CASE("feed-forward: the remainder spectrum does not touch the levels") {
  SystemConfig a = small_config(0.8, 16, 1e-3, 0.05, 33);
  SystemConfig b = a;
  for (auto& q : b.plan.remainder_q) q *= 2.0;  // only the remainder noise changes
  LevelStepper sa(a, SystemKind::frak, false);
  LevelStepper sb(b, SystemKind::frak, false);
  for (std::size_t m = 0; m < a.steps(); ++m) {
    sa.step();
    sb.step();
  }
  for (int i = 0; i <= sa.levels(); ++i)
    for (std::uint32_t k = 1; k <= 16; ++k) CHECK(sa.level(i).coeff(k) == sb.level(i).coeff(k));
  // while the remainders differ
  double gap = 0.0;
  for (std::uint32_t k = 1; k <= 16; ++k)
    gap = std::max(gap, std::abs(sa.remainder().coeff(k) - sb.remainder().coeff(k)));
  CHECK(gap > 0.0);
}

TEST_CASE("eta matches the zero-start reference convolution pathwise") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 41);
  LevelStepper s(cfg, SystemKind::frak, true);
  for (std::size_t m = 0; m < cfg.steps(); ++m) s.step();
  for (std::uint32_t k = 1; k <= 16; ++k) CHECK(s.eta().coeff(k) == s.z_tilde().coeff(k));
}

TEST_CASE("eta + rho reproduces the host remainder") {
  for (SplitHost host : {SplitHost::frak, SplitHost::x}) {
    SystemConfig cfg = small_config(0.6, 32, 1e-3, 0.2, 43);
    cfg.u0 = SpectralField::mode(32, 1, {0.1, 0.0});
    LevelStepper s(cfg, host == SplitHost::frak ? SystemKind::frak : SystemKind::x, true);
    for (std::size_t m = 0; m < cfg.steps(); ++m) {
      s.step();
      if (!s.dead()) {
        SpectralField split_sum = s.eta() + s.rho();
        CHECK(rel_gap(split_sum, s.remainder()) < 1e-10);
      }
    }
  }
}

TEST_CASE("run_split_remainder returns the split paths") {
  SystemConfig cfg = small_config(0.6, 16, 2e-3, 0.05, 47);
  auto [eta, rho] = run_split_remainder(cfg, SplitHost::frak);
  CHECK(eta.size() == cfg.steps() + 1);
  CHECK(rho.size() == cfg.steps() + 1);
  CHECK(!eta.death_time);
}

TEST_CASE("explosive initial data reaches the death state") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 51);
  zero_spectra(cfg);
  cfg.u0 = SpectralField::mode(16, 1, {5e5, 0.0});
  cfg.blowup_threshold = 1e8;
  FieldPath u = run_direct_burgers(cfg);
  REQUIRE(u.death_time.has_value());
  u.check_invariants();
  CHECK(*u.death_time > 0.0);

  // raising the threshold never shortens the observed lifetime
  SystemConfig hi = cfg;
  hi.blowup_threshold = 1e10;
  FieldPath uhi = run_direct_burgers(hi);
  double t_lo = *u.death_time;
  double t_hi = uhi.death_time ? *uhi.death_time : 1e18;
  CHECK(t_hi >= t_lo);
}

TEST_CASE("levels keep evolving after the remainder dies") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 61);
  cfg.u0 = SpectralField::mode(16, 1, {5e5, 0.0});  // forces an early blow-up of R
  cfg.blowup_threshold = 1e6;
  LevelStepper s(cfg, SystemKind::frak, false);
  for (std::size_t m = 0; m < 10; ++m) s.step();
  REQUIRE(s.dead());
  SpectralField z0_before = s.z(0);
  SpectralField rem_before = s.remainder();
  s.step();
  CHECK(l2_norm(s.z(0) - z0_before) > 0.0);  // linear objects live on
  for (std::uint32_t k = 1; k <= 16; ++k) CHECK(s.remainder().coeff(k) == rem_before.coeff(k));
}

TEST_CASE("girsanov diagnostic closed form on a constant drift") {
  const std::uint32_t K = 8;
  FieldPath drift;
  const double dt = 1e-3;
  for (int m = 0; m <= 1000; ++m) {
    drift.times.push_back(m * dt);
    drift.states.emplace_back(SpectralField::mode(K, 1, {1.0, 0.0}));
  }
  GirsanovReport plain = girsanov_integrand_diagnostic(drift, 0.0, GirsanovMode::plain, 1.0);
  CHECK(plain.value == doctest::Approx(2.0).epsilon(1e-9));  // t * ||e_1||^2, ||e_1||^2 = 2

  GirsanovReport ts =
      girsanov_integrand_diagnostic(drift, 0.0, GirsanovMode::time_shifted, 1.0);
  CHECK(ts.value == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(5e-3));

  GirsanovReport cm = girsanov_integrand_diagnostic(drift, 0.0, GirsanovMode::cm_shift, 1.0);
  // J(e_1)_1 = (1 - e^{-1}) e_1, its A^{1/2}-weighted norm squared: 2 (1-e^{-1})^2
  double expect = 2.0 * (1.0 - std::exp(-1.0)) * (1.0 - std::exp(-1.0));
  CHECK(cm.value == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("girsanov diagnostic refuses dead paths") {
  FieldPath dead;
  dead.times = {0.0, 0.1};
  dead.states.emplace_back(SpectralField(4));
  dead.states.emplace_back(DeathState{0.1});
  dead.death_time = 0.1;
  CHECK_THROWS_AS(girsanov_integrand_diagnostic(dead, 0.5, GirsanovMode::plain, 0.1),
                  DiagnosticError);
}

TEST_CASE("fixed point regime classification") {
  CHECK(fixed_point_regime_check(-0.4, 0.6, 0.6).regime == FixedPointRegime::out_of_scope);
  FixedPointDecision w = fixed_point_regime_check(-0.4, 0.6, 0.0);
  CHECK(w.regime == FixedPointRegime::weighted);
  CHECK(w.rho == doctest::Approx(0.6));
  CHECK(w.theta == doctest::Approx(0.3));
  CHECK(fixed_point_regime_check(0.2, 0.5, 0.5).regime == FixedPointRegime::classical);
  CHECK(fixed_point_regime_check(-0.6, 0.3, 0.0).regime == FixedPointRegime::out_of_scope);
}

TEST_CASE("config validation") {
  SystemConfig cfg = small_config(0.6, 16, 1e-3, 0.05, 1);
  cfg.dt = 0.02;  // more than horizon/10
  CHECK_THROWS_AS(cfg.check(), ConfigError);

  SystemConfig direct_only = small_config(0.3, 16, 1e-3, 0.05, 1);
  CHECK_THROWS_AS(LevelStepper(direct_only, SystemKind::frak, false), ConfigError);
}
