#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "burgers/chaos.hpp"
#include "burgers/solver.hpp"

namespace burgers {

struct VerifyContext {
  std::uint64_t seed = 0x5eed0001u;
  int workers = 0;  // 0: hardware concurrency
};

enum class Verdict { pass, fail, out_of_regime };
std::string verdict_name(Verdict v);

struct FitPoint {
  std::string series;
  double x = 0.0;
  double y = 0.0;
};

/// One verified estimate: what was predicted, what was measured, and whether
/// the measurement lands inside the declared tolerance.
struct CheckReport {
  std::string check;
  std::string reference;  // which estimate this verifies; the "paper_ref" field
  double predicted = 0.0;
  double measured = 0.0;
  double ci = 0.0;  // one standard error where applicable
  double tolerance = 0.0;
  Verdict verdict = Verdict::fail;
  std::string details;
  std::vector<FitPoint> fit_points;
};

/// Second moments per key (Fourier mode or block index) with standard errors.
/// Oracle tables use the same shape with n_samples = 0 and zero stderr.
struct EnsembleStats {
  std::string kind;
  std::uint64_t n_samples = 0;
  std::vector<std::uint32_t> keys;
  std::vector<double> m2;
  std::vector<double> stderr_;
  std::string fingerprint;

  std::string to_csv() const;  // columns kind,k,j,n_samples,m2,stderr

  static EnsembleStats oracle_table(const std::string& kind, std::vector<std::uint32_t> keys,
                                    std::vector<double> values);
};

std::uint64_t fnv1a64(const std::string& s);

/// Runs fn(i) for i in [0,n) on a fixed block partition; the result layout
/// depends only on i, never on scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// --- checks -------------------------------------------------------------------

std::vector<CheckReport> check_ou_covariance(const VerifyContext& ctx);
std::vector<CheckReport> check_ou_regularity(const VerifyContext& ctx);
std::vector<CheckReport> check_chaos_decay(const VerifyContext& ctx, bool extended);
std::vector<CheckReport> check_mollifier_independence(const VerifyContext& ctx);
std::vector<CheckReport> check_planner_table(const VerifyContext& ctx);
std::vector<CheckReport> check_spectral_budget(const VerifyContext& ctx);
std::vector<CheckReport> check_decomposition_identity(const VerifyContext& ctx);
std::vector<CheckReport> check_canonical_regularity(const VerifyContext& ctx);
std::vector<CheckReport> check_girsanov(const VerifyContext& ctx);
std::vector<CheckReport> check_fsum(const VerifyContext& ctx);
std::vector<CheckReport> check_distributional_match(const VerifyContext& ctx);
std::vector<CheckReport> check_determinism(const VerifyContext& ctx);

std::vector<std::string> suite_names();
std::vector<CheckReport> run_suite(const std::string& name, const VerifyContext& ctx);

bool all_pass(const std::vector<CheckReport>& reports);
std::string reports_to_json(const std::vector<CheckReport>& reports, const VerifyContext& ctx,
                            const std::string& suite);
std::string reports_to_text(const std::vector<CheckReport>& reports);
std::string reports_to_fit_csv(const std::vector<CheckReport>& reports);

// shared helpers, exposed for tests
double rel_l2_error(const SpectralField& a, const SpectralField& b);
double ks_distance(std::vector<double> a, std::vector<double> b);
/// Permutation p-value for the two-sample Kolmogorov-Smirnov distance,
/// p = (1 + #{D_perm >= D_obs}) / (1 + n_perm); draws are counter-addressed.
double ks_permutation_pvalue(const std::vector<double>& a, const std::vector<double>& b,
                             int n_perm, std::uint64_t seed);

}  // namespace burgers
