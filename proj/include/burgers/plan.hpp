#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace burgers {

struct UnsupportedRegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleBaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Number of levels n, exponent schedule alpha_0 > ... > alpha_n and beta_n,
/// and (after materialization) the per-level spectra q_{i,k}, the remainder
/// spectrum q~_k, and the base spectrum q_k, tied per mode by
///   q_k^2 = sum_i q_{i,k}^2 + q~_k^2.
struct LevelPlan {
  double alpha = 0.0;
  int n = 0;
  std::vector<double> alphas;      // alpha_0..alpha_n
  std::optional<double> beta_n;    // absent in the direct (n = 0) regime
  std::uint32_t cutoff = 0;        // 0 until spectra are materialized

  std::vector<std::vector<double>> level_q;  // level_q[i][k-1], i = 0..n
  std::vector<double> remainder_q;           // q~_k (empty when n = 0)
  std::vector<double> base_q;                // q_k

  bool materialized() const { return cutoff != 0; }
};

/// Least n admitting a valid schedule: 0 below the singular threshold 1/2,
/// otherwise the smallest n with alpha < (2n+1)/(2n+2). Throws
/// UnsupportedRegimeError for alpha >= 1.
int minimal_levels(double alpha);

/// Equal-slack schedule at minimal n: with L_i = (i+1) alpha - i and
/// g = (1/2 - L_n)/(2n), alpha_i = L_i + i g, and beta_n the midpoint of
/// (alpha - 1/2, alpha_n). Every schedule constraint holds by construction.
LevelPlan plan_schedule(double alpha);

/// All violated schedule/spectrum constraints, empty when the plan is valid.
std::vector<std::string> validate_plan(const LevelPlan& plan);

/// Informational: for each level, whether the regularity constraint
/// alpha_0 + alpha_{i-1} - alpha_i < 3/2 is implied (it must be whenever the
/// shift-absorption constraint < 1 holds).
std::vector<std::string> plan_redundancy_info(const LevelPlan& plan);

using BaseSpectrum = std::function<double(std::uint32_t)>;

/// q_{i,k} = |k|^{alpha_i}/sqrt(n+2) for i >= 1, q~_k = |k|^{beta_n}/sqrt(n+2),
/// and q_{0,k} the exact per-mode budget residual (checked positive). The
/// default base is q_k = |k|^alpha. Throws InfeasibleBaseError if some
/// residual is non-positive (possible only for perturbed bases).
LevelPlan materialize_spectra(LevelPlan plan, std::uint32_t K);
LevelPlan materialize_spectra(LevelPlan plan, std::uint32_t K, const BaseSpectrum& base);

std::string plan_to_json(const LevelPlan& plan);
LevelPlan plan_from_json(const std::string& text);

}  // namespace burgers
