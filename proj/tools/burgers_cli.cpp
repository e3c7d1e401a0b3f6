// Command-line front end: plan | simulate | verify | report.
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or
// configuration error, 3 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "burgers/io.hpp"
#include "burgers/plan.hpp"
#include "burgers/solver.hpp"
#include "burgers/verify.hpp"

namespace fs = std::filesystem;
using namespace burgers;

namespace {

fs::path default_out_root() {
  if (const char* env = std::getenv("BURGERS_LEVELS_OUT")) return fs::path(env);
  return fs::path(".");
}

std::string read_text_file(const fs::path& p) {
  std::ifstream is(p);
  if (!is) throw IoError("cannot read " + p.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_text_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot write " + p.string());
  os << text;
}

int cmd_plan(double alpha, const fs::path& out) {
  LevelPlan plan = plan_schedule(alpha);  // throws UnsupportedRegimeError for alpha >= 1
  plan = materialize_spectra(plan, 256);
  fs::create_directories(out);
  write_text_file(out / "plan.json", plan_to_json(plan) + "\n");

  std::cout << "alpha = " << plan.alpha << ", levels n = " << plan.n
            << (plan.n == 0 ? "  (direct regime)" : "") << "\n";
  for (std::size_t i = 0; i < plan.alphas.size(); ++i)
    std::cout << "  alpha_" << i << " = " << plan.alphas[i] << "\n";
  if (plan.beta_n) std::cout << "  beta_n  = " << *plan.beta_n << "\n";
  if (plan.n >= 1) {
    std::cout << "constraint margins:\n";
    for (int i = 1; i <= plan.n; ++i)
      std::cout << "  1 - (alpha_0 + alpha_" << i - 1 << " - alpha_" << i
                << ") = " << 1.0 - (plan.alphas[0] + plan.alphas[i - 1] - plan.alphas[i]) << "\n";
    std::cout << "  1/2 - (alpha_0 - beta_n) = " << 0.5 - (plan.alphas[0] - *plan.beta_n) << "\n";
    for (const auto& line : plan_redundancy_info(plan)) std::cout << "  " << line << "\n";
  }
  std::cout << "wrote " << (out / "plan.json").string() << "\n";
  return 0;
}

int cmd_simulate(const fs::path& config_path, const fs::path& out) {
  double alpha = 0.0;
  SystemConfig cfg;
  RunArtifactConfig art;
  parse_config_json(read_text_file(config_path), alpha, cfg, art);

  fs::create_directories(out);
  if (art.system == "direct") {
    FieldPath u = run_direct_burgers(cfg);
    write_run_artifacts(out, cfg, art, u);
  } else if (art.system == "frak") {
    if (cfg.plan.n < 1) throw ConfigError("frak system needs alpha >= 1/2 (n >= 1)");
    write_run_artifacts(out, cfg, art, run_frak_system(cfg, /*with_split=*/true));
  } else if (art.system == "x") {
    if (cfg.plan.n < 1) throw ConfigError("x system needs alpha >= 1/2 (n >= 1)");
    write_run_artifacts(out, cfg, art, run_x_system(cfg, /*with_split=*/true));
  } else {
    throw ConfigError("unknown system: " + art.system);
  }
  std::cout << "run artifacts in " << out.string() << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const fs::path& out, std::uint64_t seed, int workers) {
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("unknown suite: " + suite);
  VerifyContext ctx;
  ctx.seed = seed;
  ctx.workers = workers;
  std::vector<CheckReport> reports = run_suite(suite, ctx);

  fs::create_directories(out);
  write_text_file(out / "report.json", reports_to_json(reports, ctx, suite) + "\n");
  write_text_file(out / "report.txt", reports_to_text(reports));
  write_text_file(out / "fits.csv", reports_to_fit_csv(reports));
  std::cout << reports_to_text(reports);
  std::cout << "reports in " << out.string() << "\n";
  return all_pass(reports) ? 0 : 1;
}

int cmd_report(const fs::path& out) {
  std::string text = read_text_file(out / "report.txt");
  std::cout << text;
  return text.find("[FAIL]") == std::string::npos &&
                 text.find("[OUT_OF_REGIME]") == std::string::npos
             ? 0
             : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral level-decomposition toolkit for rough-noise Burgers dynamics"};
  app.require_subcommand(1);

  double alpha = 0.6;
  std::string config_path, suite = "fast", out_dir;
  std::uint64_t seed = 0x5eed0001u;
  int workers = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed for all random draws");
    sub->add_option("--workers", workers, "worker threads (0 = all cores)");
  };

  CLI::App* plan = app.add_subcommand("plan", "compute a level schedule for a noise exponent");
  plan->add_option("--alpha", alpha, "noise roughness exponent (< 1)")->required();
  add_common(plan);

  CLI::App* sim = app.add_subcommand("simulate", "run a system from a JSON config");
  sim->add_option("--config", config_path, "config file")->required();
  add_common(sim);

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", suite, "planner | fast | chaos | full");
  add_common(ver);

  CLI::App* rep = app.add_subcommand("report", "re-render reports from a verify directory");
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fs::path out = out_dir.empty() ? default_out_root() / "burgers-out" : fs::path(out_dir);
    if (plan->parsed()) return cmd_plan(alpha, out);
    if (sim->parsed()) return cmd_simulate(config_path, out);
    if (ver->parsed()) return cmd_verify(suite, out, seed, workers);
    if (rep->parsed()) return cmd_report(out);
  } catch (const UnsupportedRegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
