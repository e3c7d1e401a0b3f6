#include <doctest.h>

#include <cmath>

#include "burgers/rng.hpp"
#include "burgers/verify.hpp"

using namespace burgers;

namespace {

VerifyContext quick_ctx() {
  VerifyContext ctx;
  ctx.seed = 0xfeed;
  ctx.workers = 2;
  return ctx;
}

}  // namespace

TEST_CASE("ks distance on separated and identical samples") {
  std::vector<double> a, b, c;
  NoiseStream ns{1};
  for (int i = 0; i < 500; ++i) {
    double g1, g2;
    ns.gaussian_pair(0, 0, i, g1, g2);
    a.push_back(g1);
    b.push_back(g2);
    c.push_back(g1 + 3.0);
  }
  CHECK(ks_distance(a, a) == 0.0);
  CHECK(ks_distance(a, b) < 0.12);
  CHECK(ks_distance(a, c) > 0.8);

  CHECK(ks_permutation_pvalue(a, b, 499, 9) > 0.01);
  CHECK(ks_permutation_pvalue(a, c, 499, 9) == doctest::Approx(1.0 / 500.0));
}

TEST_CASE("planner and budget checks pass") {
  VerifyContext ctx = quick_ctx();
  for (const auto& r : check_planner_table(ctx)) CHECK(r.verdict == Verdict::pass);
  for (const auto& r : check_spectral_budget(ctx)) CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("fsum checks pass") {
  VerifyContext ctx = quick_ctx();
  auto reports = check_fsum(ctx);
  CHECK(reports.size() == 6);
  for (const auto& r : reports) CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("determinism check passes") {
  VerifyContext ctx = quick_ctx();
  for (const auto& r : check_determinism(ctx)) CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("report serialization carries the contract fields") {
  VerifyContext ctx = quick_ctx();
  auto reports = check_spectral_budget(ctx);
  std::string json = reports_to_json(reports, ctx, "unit");
  for (const char* key : {"\"check\"", "\"paper_ref\"", "\"predicted\"", "\"measured\"",
                          "\"ci\"", "\"tolerance\"", "\"verdict\""})
    CHECK(json.find(key) != std::string::npos);
  std::string text = reports_to_text(reports);
  CHECK(text.find("[PASS]") != std::string::npos);
  CHECK(all_pass(reports));
}

TEST_CASE("moment tables carry the shared schema") {
  EnsembleStats oracle = EnsembleStats::oracle_table("wick2", {1, 2, 3}, {0.5, 0.25, 0.125});
  std::string csv = oracle.to_csv();
  CHECK(csv.rfind("kind,k,j,n_samples,m2,stderr\n", 0) == 0);
  CHECK(csv.find("wick2,1,-1,0,0.5,0") != std::string::npos);  // oracle rows: n_samples = 0
}

TEST_CASE("suite lookup rejects unknown names") {
  VerifyContext ctx = quick_ctx();
  CHECK_THROWS_AS(run_suite("nope", ctx), ConfigError);
  CHECK(suite_names().size() == 4);
}

TEST_CASE("parallel_for covers the index range once") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 3, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}
