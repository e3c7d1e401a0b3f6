#include "burgers/solver.hpp"

#include <cmath>
#include <sstream>

#include "burgers/ou.hpp"

namespace burgers {

namespace {

double phi1_of_minus(double x) {
  // phi1(-x) = (1 - exp(-x))/x, with the x -> 0 limit 1
  if (x < 1e-8) return 1.0 - 0.5 * x + x * x / 6.0;
  return -std::expm1(-x) / x;
}

/// e^{-dtA} state + dt phi1(-dtA) drift, per mode.
SpectralField etd1_advance(const SpectralField& state, const SpectralField& drift, double dt) {
  SpectralField out(state.cutoff);
  for (std::uint32_t k = 1; k <= state.cutoff; ++k) {
    double x = static_cast<double>(k) * static_cast<double>(k) * dt;
    out.set_coeff(k, std::exp(-x) * state.coeff(k) + phi1_of_minus(x) * dt * drift.coeff(k));
  }
  return out;
}

SpectralField heat_decay(const SpectralField& state, double dt) {
  SpectralField out(state.cutoff);
  for (std::uint32_t k = 1; k <= state.cutoff; ++k) {
    double kk = static_cast<double>(k) * static_cast<double>(k);
    out.set_coeff(k, std::exp(-kk * dt) * state.coeff(k));
  }
  return out;
}

/// Exact OU increment over one solver step, composed from `refine` sub-draws
/// addressed on the fine grid. The composition of exact sub-transitions is an
/// exact transition, so refinements of the same stream refine one realization.
void add_ou_increment(SpectralField& state, const std::vector<double>& q, double dt, int refine,
                      const NoiseStream& noise, std::uint64_t stream, std::uint64_t step_index) {
  const double dtf = dt / refine;
  for (std::uint32_t k = 1; k <= state.cutoff; ++k) {
    if (q[k - 1] == 0.0) continue;
    double kk = static_cast<double>(k) * static_cast<double>(k);
    double sd = q[k - 1] * std::sqrt(-std::expm1(-2.0 * kk * dtf) / (2.0 * kk));
    std::complex<double> acc{0.0, 0.0};
    for (int r = 0; r < refine; ++r) {
      double remaining = dt - (r + 1) * dtf;
      acc += std::exp(-kk * remaining) *
             noise.complex_gaussian(stream, k, step_index * static_cast<std::uint64_t>(refine) + r);
    }
    state.coeffs[k - 1] += sd * acc;
  }
}

}  // namespace

void SystemConfig::check() const {
  if (cutoff == 0) throw ConfigError("cutoff must be positive");
  if (!plan.materialized() || plan.cutoff != cutoff)
    throw ConfigError("plan spectra must be materialized at the run cutoff");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(dt <= horizon / 10.0)) throw ConfigError("dt must be at most horizon/10");
  if (u0.cutoff != cutoff || z0.cutoff != cutoff)
    throw ConfigError("initial conditions must share the run cutoff");
  if (noise_refine < 1) throw ConfigError("noise_refine must be >= 1");
}

LevelStepper::LevelStepper(const SystemConfig& cfg, SystemKind kind, bool with_split)
    : cfg_(cfg), kind_(kind), with_split_(with_split), noise_{cfg.seed}, n_(cfg.plan.n) {
  cfg_.check();
  if (n_ < 1) throw ConfigError("level systems need a plan with n >= 1");
  const std::uint32_t K = cfg_.cutoff;
  z_.assign(n_ + 1, SpectralField(K));
  ztilde_ = cfg_.z0;
  lev_.assign(n_ + 1, SpectralField(K));
  rem_ = cfg_.u0;
  eta_ = SpectralField(K);
  rho_ = cfg_.u0;
}

bool LevelStepper::exceeds_threshold(const SpectralField& f) const {
  return !f.all_finite() || sup_norm(f) > cfg_.blowup_threshold;
}

SpectralField LevelStepper::level_sum() const {
  SpectralField s = lev_[0];
  for (int i = 1; i <= n_; ++i) s += lev_[i];
  return s;
}

SpectralField LevelStepper::reconstructed() const { return level_sum() + rem_; }

void LevelStepper::step() {
  const double dt = cfg_.dt;
  const std::uint32_t K = cfg_.cutoff;

  // Partial sums at the current node. Level drifts read the Z levels in the
  // frak system and the system's own levels in the X system; the remainder
  // subtracts the Z partial sum in the frak system only.
  std::vector<SpectralField> zp(n_ + 1, SpectralField(K));
  std::vector<SpectralField> lp(n_ + 1, SpectralField(K));
  zp[0] = z_[0];
  lp[0] = lev_[0];
  for (int i = 1; i <= n_; ++i) {
    zp[i] = zp[i - 1] + z_[i];
    lp[i] = lp[i - 1] + lev_[i];
  }
  const std::vector<SpectralField>& drift_base = (kind_ == SystemKind::frak) ? zp : lp;

  // B of the partial sums needed by levels 1..n: B(P_0), ..., B(P_{n-1}).
  std::vector<SpectralField> bp;
  bp.reserve(n_);
  for (int i = 0; i < n_; ++i) bp.push_back(b_nonlinearity(drift_base[i]));

  std::vector<SpectralField> level_drift(n_ + 1, SpectralField(K));
  for (int i = 1; i <= n_; ++i) {
    level_drift[i] = bp[i - 1];
    if (i >= 2) level_drift[i] -= bp[i - 2];
  }

  // The nonlinear objects stop at the death state; the linear levels and
  // their Gaussian references exist for all time and keep evolving.
  SpectralField rem_drift(K), rho_drift(K);
  if (!dead_) {
    const SpectralField& sub = bp[n_ - 1];  // B(Z^(0,n-1)) or B(X^(0,n-1)) per system
    rem_drift = b_nonlinearity(lp[n_] + rem_) - sub;
    if (with_split_) {
      // B(P_n) - B(sub-base) + 2B(P_n, eta) + 2B(P_n, rho) + B(rho) + 2B(rho, eta) + B(eta)
      rho_drift = b_nonlinearity(lp[n_]) - sub;
      rho_drift += 2.0 * b_nonlinearity(lp[n_], eta_);
      rho_drift += 2.0 * b_nonlinearity(lp[n_], rho_);
      rho_drift += b_nonlinearity(rho_);
      rho_drift += 2.0 * b_nonlinearity(rho_, eta_);
      rho_drift += b_nonlinearity(eta_);
    }
  }

  // Advance. Each level and its Gaussian reference share one increment.
  for (int i = 0; i <= n_; ++i) {
    SpectralField inc(K);
    add_ou_increment(inc, cfg_.plan.level_q[i], dt, cfg_.noise_refine, noise_, stream_id::level(i),
                     m_);
    z_[i] = heat_decay(z_[i], dt) + inc;
    lev_[i] = etd1_advance(lev_[i], level_drift[i], dt) + inc;
  }
  SpectralField rinc(K);
  add_ou_increment(rinc, cfg_.plan.remainder_q, dt, cfg_.noise_refine, noise_, stream_id::remainder,
                   m_);
  ztilde_ = heat_decay(ztilde_, dt) + rinc;
  if (with_split_) eta_ = heat_decay(eta_, dt) + rinc;
  if (!dead_) {
    rem_ = etd1_advance(rem_, rem_drift, dt) + rinc;
    if (with_split_) rho_ = etd1_advance(rho_, rho_drift, dt);
  }
  ++m_;

  if (!dead_ && (exceeds_threshold(rem_) || (with_split_ && exceeds_threshold(rho_)))) {
    dead_ = true;
    death_time_ = time();
  }
}

DirectStepper::DirectStepper(const SystemConfig& cfg, NoiseCoupling coupling)
    : cfg_(cfg), coupling_(coupling), noise_{cfg.seed}, u_(cfg.u0) {
  cfg_.check();
}

void DirectStepper::step() {
  if (dead_) {
    ++m_;
    return;
  }
  SpectralField drift = b_nonlinearity(u_);
  u_ = etd1_advance(u_, drift, cfg_.dt);
  if (coupling_ == NoiseCoupling::independent) {
    add_ou_increment(u_, cfg_.plan.base_q, cfg_.dt, cfg_.noise_refine, noise_, stream_id::direct,
                     m_);
  } else {
    for (int i = 0; i <= cfg_.plan.n; ++i)
      add_ou_increment(u_, cfg_.plan.level_q[i], cfg_.dt, cfg_.noise_refine, noise_,
                       stream_id::level(i), m_);
    if (!cfg_.plan.remainder_q.empty())
      add_ou_increment(u_, cfg_.plan.remainder_q, cfg_.dt, cfg_.noise_refine, noise_,
                       stream_id::remainder, m_);
  }
  ++m_;
  if (!u_.all_finite() || sup_norm(u_) > cfg_.blowup_threshold) {
    dead_ = true;
    death_time_ = time();
  }
}

namespace {

void push_node(FieldPath& path, double t, const SpectralField& f, bool dead, double death_time) {
  path.times.push_back(t);
  if (dead) {
    path.states.emplace_back(DeathState{death_time});
    if (!path.death_time) path.death_time = t;
  } else {
    path.states.emplace_back(f);
  }
}

}  // namespace

FieldPath run_direct_burgers(const SystemConfig& cfg, NoiseCoupling coupling) {
  DirectStepper s(cfg, coupling);
  FieldPath path;
  push_node(path, 0.0, s.state(), false, 0.0);
  const std::size_t M = cfg.steps();
  for (std::size_t m = 0; m < M; ++m) {
    s.step();
    push_node(path, s.time(), s.state(), s.dead(), s.death_time());
  }
  return path;
}

namespace {

LevelRun run_level_system(const SystemConfig& cfg, SystemKind kind, bool with_split) {
  LevelStepper s(cfg, kind, with_split);
  const int n = s.levels();
  LevelRun run;
  run.levels.assign(n + 1, FieldPath{});
  run.z_levels.assign(n + 1, FieldPath{});
  if (with_split) {
    run.eta = FieldPath{};
    run.rho = FieldPath{};
  }

  auto record = [&]() {
    const double t = s.time();
    for (int i = 0; i <= n; ++i) {
      push_node(run.levels[i], t, s.level(i), false, 0.0);
      push_node(run.z_levels[i], t, s.z(i), false, 0.0);
    }
    push_node(run.z_tilde, t, s.z_tilde(), false, 0.0);
    push_node(run.remainder, t, s.remainder(), s.dead(), s.death_time());
    push_node(run.sum, t, s.dead() ? SpectralField(cfg.cutoff) : s.reconstructed(), s.dead(),
              s.death_time());
    if (with_split) {
      push_node(*run.eta, t, s.eta(), false, 0.0);
      push_node(*run.rho, t, s.rho(), s.dead(), s.death_time());
    }
  };

  record();
  const std::size_t M = cfg.steps();
  for (std::size_t m = 0; m < M; ++m) {
    s.step();
    record();
  }
  return run;
}

}  // namespace

LevelRun run_frak_system(const SystemConfig& cfg, bool with_split) {
  return run_level_system(cfg, SystemKind::frak, with_split);
}

LevelRun run_x_system(const SystemConfig& cfg, bool with_split) {
  return run_level_system(cfg, SystemKind::x, with_split);
}

std::pair<FieldPath, FieldPath> run_split_remainder(const SystemConfig& cfg, SplitHost host) {
  LevelRun run = run_level_system(
      cfg, host == SplitHost::frak ? SystemKind::frak : SystemKind::x, /*with_split=*/true);
  return {std::move(*run.eta), std::move(*run.rho)};
}

FieldPath j_convolve(const FieldPath& drift_path) {
  const std::size_t M = drift_path.size();
  if (M < 2) throw ConfigError("j_convolve needs at least two nodes");
  const double dt = drift_path.times[1] - drift_path.times[0];
  for (std::size_t m = 1; m < M; ++m) {
    double h = drift_path.times[m] - drift_path.times[m - 1];
    if (std::abs(h - dt) > 1e-9 * dt) throw ConfigError("j_convolve needs a uniform time grid");
    if (is_dead(drift_path.states[m])) throw ConfigError("j_convolve cannot integrate a dead path");
  }
  if (is_dead(drift_path.states[0])) throw ConfigError("j_convolve cannot integrate a dead path");

  const std::uint32_t K = as_field(drift_path.states[0]).cutoff;
  FieldPath out;
  out.times = drift_path.times;
  SpectralField J(K);
  out.states.emplace_back(J);
  for (std::size_t m = 0; m + 1 < M; ++m) {
    J = etd1_advance(J, as_field(drift_path.states[m]), dt);
    out.states.emplace_back(J);
  }
  return out;
}

SpectralField truncate_modes(const SpectralField& f, std::uint32_t K_new) {
  SpectralField out = f;
  for (std::uint32_t k = K_new + 1; k <= f.cutoff; ++k) out.set_coeff(k, {0.0, 0.0});
  return out;
}

namespace {

double weighted_l2_sq(const SpectralField& f, double mode_exponent, double extra_heat_time) {
  // 2 sum_k k^{2*mode_exponent} exp(-2 k^2 tau) |c_k|^2
  double s = 0.0;
  for (std::uint32_t k = 1; k <= f.cutoff; ++k) {
    double kk = static_cast<double>(k);
    double w = std::pow(kk, 2.0 * mode_exponent);
    if (extra_heat_time > 0.0) w *= std::exp(-2.0 * kk * kk * extra_heat_time);
    s += w * std::norm(f.coeff(k));
  }
  return 2.0 * s;
}

double girsanov_value(const FieldPath& path, std::size_t last, double beta, GirsanovMode mode,
                      double t, std::uint32_t K_trunc) {
  if (mode == GirsanovMode::cm_shift) {
    FieldPath head;
    head.times.assign(path.times.begin(), path.times.begin() + last + 1);
    for (std::size_t m = 0; m <= last; ++m)
      head.states.emplace_back(truncate_modes(as_field(path.states[m]), K_trunc));
    FieldPath J = j_convolve(head);
    return weighted_l2_sq(as_field(J.states[last]), 1.0 - beta, 0.0);
  }
  double acc = 0.0;
  for (std::size_t m = 0; m < last; ++m) {
    double w = path.times[m + 1] - path.times[m];
    SpectralField f = truncate_modes(as_field(path.states[m]), K_trunc);
    double tau = (mode == GirsanovMode::time_shifted) ? (t - path.times[m]) : 0.0;
    acc += w * weighted_l2_sq(f, -beta, tau);
  }
  return acc;
}

}  // namespace

GirsanovReport girsanov_integrand_diagnostic(const FieldPath& drift_path, double beta,
                                             GirsanovMode mode, double t) {
  if (drift_path.size() < 2) throw DiagnosticError("drift path too short");
  std::size_t last = 0;
  for (std::size_t m = 0; m < drift_path.size(); ++m) {
    if (drift_path.times[m] <= t + 1e-12) last = m;
  }
  for (std::size_t m = 0; m <= last; ++m) {
    if (is_dead(drift_path.states[m])) {
      std::ostringstream os;
      os << "drift path dead at tau_infty = " << *drift_path.death_time;
      throw DiagnosticError(os.str());
    }
  }
  const std::uint32_t K = as_field(drift_path.states[0]).cutoff;
  GirsanovReport rep;
  rep.cutoffs = {K / 4, K / 2, K};
  for (int i = 0; i < 3; ++i)
    rep.by_cutoff[i] = girsanov_value(drift_path, last, beta, mode, t, rep.cutoffs[i]);
  rep.value = rep.by_cutoff[2];
  return rep;
}

FixedPointDecision fixed_point_regime_check(double gamma, double sigma, double sigma0) {
  FixedPointDecision d;
  const bool shared = sigma > 0.0 && sigma + gamma > 0.0;
  if (shared && gamma + 1.0 > sigma && sigma0 >= sigma) {
    d.regime = FixedPointRegime::classical;
    return d;
  }
  if (shared && gamma > -0.5 && sigma0 > -1.0) {
    double rho = std::min(sigma, gamma + 1.0);
    double gap = rho - sigma0;
    if (gap > 0.0 && gap < 2.0) {
      d.regime = FixedPointRegime::weighted;
      d.rho = rho;
      d.theta = 0.5 * gap;
      return d;
    }
  }
  d.regime = FixedPointRegime::out_of_scope;
  return d;
}

}  // namespace burgers
