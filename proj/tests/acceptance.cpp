// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "burgers/verify.hpp"

using namespace burgers;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& title,
                   const std::function<std::vector<CheckReport>(const VerifyContext&)>& fn,
                   const VerifyContext& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckReport> reports;
  std::string error;
  try {
    reports = fn(ctx);
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool ok = error.empty() && !reports.empty() && all_pass(reports);
  if (!ok) ++g_failures;
  std::printf("[%s] criterion %2d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              secs);
  if (!error.empty()) std::printf("       error: %s\n", error.c_str());
  for (const auto& r : reports) {
    if (r.verdict == Verdict::pass) continue;
    std::printf("       [%s] %s: predicted %.4g, measured %.4g (tol %.4g)\n",
                verdict_name(r.verdict).c_str(), r.check.c_str(), r.predicted, r.measured,
                r.tolerance);
    if (!r.details.empty()) std::printf("         %s\n", r.details.c_str());
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  VerifyContext ctx;
  ctx.seed = 0x5eed0001u;
  ctx.workers = 0;  // all cores

  run_criterion(1, "OU covariance vs closed form", check_ou_covariance, ctx);
  run_criterion(2, "OU regularity exponents", check_ou_regularity, ctx);
  run_criterion(3, "chaos object decay slopes",
                [](const VerifyContext& c) { return check_chaos_decay(c, false); }, ctx);
  run_criterion(4, "mollifier independence", check_mollifier_independence, ctx);
  run_criterion(5, "planner table", check_planner_table, ctx);
  run_criterion(6, "spectral budget", check_spectral_budget, ctx);
  run_criterion(7, "decomposition identity", check_decomposition_identity, ctx);
  run_criterion(8, "canonical regularity of levels", check_canonical_regularity, ctx);
  run_criterion(9, "shift-absorption diagnostics", check_girsanov, ctx);
  run_criterion(10, "convolution-sum bounds", check_fsum, ctx);
  run_criterion(11, "distributional match", check_distributional_match, ctx);
  run_criterion(12, "determinism", check_determinism, ctx);

  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
