#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "burgers/io.hpp"
#include "burgers/rng.hpp"

using namespace burgers;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("burgers_test_" + tag);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("spf1 round trip") {
  SpectralField f(6);
  NoiseStream ns{5};
  for (std::uint32_t k = 1; k <= 6; ++k) f.set_coeff(k, ns.complex_gaussian(0, k, 0));

  fs::path dir = temp_dir("spf1");
  write_spf1(dir / "plain.spf1", f);
  SpectralField g = read_spf1(dir / "plain.spf1");
  CHECK(g.cutoff == 6);
  CHECK(!g.time_tag);
  for (std::uint32_t k = 1; k <= 6; ++k) CHECK(g.coeff(k) == f.coeff(k));

  f.time_tag = 0.375;
  write_spf1(dir / "tagged.spf1", f);
  SpectralField h = read_spf1(dir / "tagged.spf1");
  REQUIRE(h.time_tag.has_value());
  CHECK(*h.time_tag == 0.375);

  std::ofstream bad(dir / "bad.spf1", std::ios::binary);
  bad << "NOPE";
  bad.close();
  CHECK_THROWS_AS(read_spf1(dir / "bad.spf1"), IoError);
}

TEST_CASE("field csv header and rows") {
  SpectralField f(3);
  f.set_coeff(2, {1.5, -2.5});
  fs::path dir = temp_dir("csv");
  write_field_csv(dir / "f.csv", f);
  std::string text = slurp(dir / "f.csv");
  CHECK(text.rfind("k,re,im\n", 0) == 0);
  CHECK(text.find("2,1.5,-2.5") != std::string::npos);
}

TEST_CASE("run artifacts are written and reread") {
  SystemConfig cfg;
  const std::uint32_t K = 16;
  cfg.plan = materialize_spectra(plan_schedule(0.6), K);
  cfg.cutoff = K;
  cfg.dt = 1e-3;
  cfg.horizon = 0.05;
  cfg.u0 = SpectralField(K);
  cfg.z0 = SpectralField(K);
  cfg.seed = 99;

  RunArtifactConfig art;
  art.system = "frak";
  art.snapshot_every = 25;

  fs::path dir = temp_dir("artifacts");
  write_run_artifacts(dir, cfg, art, run_frak_system(cfg, true));
  CHECK(fs::exists(dir / "plan.json"));
  CHECK(fs::exists(dir / "config.json"));
  CHECK(fs::exists(dir / "series.csv"));
  CHECK(fs::exists(dir / "R_000000.spf1"));

  LevelPlan replan = plan_from_json(slurp(dir / "plan.json"));
  CHECK(replan.n == cfg.plan.n);
  CHECK(replan.alphas == cfg.plan.alphas);

  std::string series = slurp(dir / "series.csv");
  CHECK(series.find("time,X0_l2") == 0);
  CHECK(series.find("eta_l2") != std::string::npos);
}

TEST_CASE("config json parses into a runnable system") {
  std::string text = R"({"alpha":0.6,"K":16,"dt":0.001,"T":0.05,"seed":7,"system":"x"})";
  double alpha = 0.0;
  SystemConfig cfg;
  RunArtifactConfig art;
  parse_config_json(text, alpha, cfg, art);
  CHECK(alpha == 0.6);
  CHECK(cfg.cutoff == 16);
  CHECK(art.system == "x");
  CHECK_NOTHROW(cfg.check());
}

TEST_CASE("same seed gives byte-identical series") {
  SystemConfig cfg;
  const std::uint32_t K = 16;
  cfg.plan = materialize_spectra(plan_schedule(0.6), K);
  cfg.cutoff = K;
  cfg.dt = 1e-3;
  cfg.horizon = 0.02;
  cfg.u0 = SpectralField(K);
  cfg.z0 = SpectralField(K);
  cfg.seed = 4242;
  RunArtifactConfig art;
  art.system = "direct";

  fs::path a = temp_dir("det_a");
  fs::path b = temp_dir("det_b");
  write_run_artifacts(a, cfg, art, run_direct_burgers(cfg));
  write_run_artifacts(b, cfg, art, run_direct_burgers(cfg));
  CHECK(slurp(a / "series.csv") == slurp(b / "series.csv"));
}
