#include "burgers/plan.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace burgers {

int minimal_levels(double alpha) {
  if (alpha >= 1.0)
    throw UnsupportedRegimeError("noise exponent alpha must be < 1; got " + std::to_string(alpha));
  if (alpha < 0.5) return 0;
  // least n with alpha < (2n+1)/(2n+2); values within 1e-12 of a threshold
  // count as on it, so the schedule never degenerates to zero slack
  for (int n = 1;; ++n) {
    double threshold = (2.0 * n + 1.0) / (2.0 * n + 2.0);
    if (alpha < threshold - 1e-12) return n;
  }
}

LevelPlan plan_schedule(double alpha) {
  LevelPlan p;
  p.alpha = alpha;
  p.n = minimal_levels(alpha);
  p.alphas.assign(1, alpha);
  if (p.n == 0) return p;  // direct regime: single equation, no remainder split

  const int n = p.n;
  auto lower = [&](int i) { return (i + 1) * alpha - i; };  // L_i
  const double g = (0.5 - lower(n)) / (2.0 * n);
  for (int i = 1; i <= n; ++i) p.alphas.push_back(lower(i) + i * g);
  p.beta_n = 0.5 * ((alpha - 0.5) + p.alphas.back());
  return p;
}

std::vector<std::string> validate_plan(const LevelPlan& plan) {
  std::vector<std::string> bad;
  std::ostringstream os;
  auto flag = [&](const std::string& msg) { bad.push_back(msg); };

  if (plan.alphas.empty() || plan.alphas[0] != plan.alpha)
    flag("alpha_0 must equal alpha");
  if (static_cast<int>(plan.alphas.size()) != plan.n + 1)
    flag("schedule must list alpha_0..alpha_n");
  if (plan.n == 0) {
    if (plan.beta_n) flag("direct regime carries no beta_n");
  } else {
    if (!plan.beta_n) flag("beta_n missing");
  }
  if (!bad.empty()) return bad;

  const int n = plan.n;
  for (int i = 1; i <= n; ++i) {
    if (!(plan.alphas[i] < plan.alphas[i - 1])) {
      os.str("");
      os << "ordering violated: alpha_" << i << " >= alpha_" << i - 1;
      flag(os.str());
    }
  }
  if (n >= 1) {
    if (plan.beta_n && !(*plan.beta_n < plan.alphas[n])) flag("ordering violated: beta_n >= alpha_n");
    if (!(plan.alphas[n] < 0.5)) flag("level split violated: alpha_n >= 1/2");
    if (!(plan.alphas[n - 1] >= 0.5)) flag("level split violated: alpha_{n-1} < 1/2");
    for (int i = 1; i <= n; ++i) {
      double c = plan.alphas[0] + plan.alphas[i - 1] - plan.alphas[i];
      if (!(c < 1.0)) {
        os.str("");
        os << "shift-absorption constraint violated at level " << i
           << ": alpha_0 + alpha_" << i - 1 << " - alpha_" << i << " = " << c << " >= 1";
        flag(os.str());
      }
    }
    if (plan.beta_n && !(plan.alphas[0] - *plan.beta_n < 0.5))
      flag("remainder constraint violated: alpha_0 - beta_n >= 1/2");
  }

  if (plan.materialized()) {
    const std::uint32_t K = plan.cutoff;
    if (plan.level_q.size() != static_cast<std::size_t>(n + 1) || plan.base_q.size() != K)
      flag("materialized spectra have inconsistent shape");
    else {
      for (std::uint32_t k = 1; k <= K; ++k) {
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) sum += plan.level_q[i][k - 1] * plan.level_q[i][k - 1];
        if (!plan.remainder_q.empty()) sum += plan.remainder_q[k - 1] * plan.remainder_q[k - 1];
        double qq = plan.base_q[k - 1] * plan.base_q[k - 1];
        if (std::abs(sum - qq) > 1e-12 * std::max(1.0, qq)) {
          os.str("");
          os << "spectral budget violated at k = " << k;
          flag(os.str());
        }
        if (!(plan.level_q[0][k - 1] > 0.0)) {
          os.str("");
          os << "residual spectrum non-positive at k = " << k;
          flag(os.str());
        }
      }
    }
  }
  return bad;
}

std::vector<std::string> plan_redundancy_info(const LevelPlan& plan) {
  std::vector<std::string> info;
  std::ostringstream os;
  for (int i = 1; i <= plan.n; ++i) {
    double c = plan.alphas[0] + plan.alphas[i - 1] - plan.alphas[i];
    os.str("");
    os << "level " << i << ": regularity bound alpha_0 + alpha_" << i - 1 << " - alpha_" << i
       << " = " << c << (c < 1.5 ? " < 3/2 (implied)" : " >= 3/2 (NOT implied)");
    info.push_back(os.str());
  }
  return info;
}

LevelPlan materialize_spectra(LevelPlan plan, std::uint32_t K) {
  const double a = plan.alpha;
  return materialize_spectra(std::move(plan), K, [a](std::uint32_t k) {
    return std::pow(static_cast<double>(k), a);
  });
}

LevelPlan materialize_spectra(LevelPlan plan, std::uint32_t K, const BaseSpectrum& base) {
  auto bad = validate_plan(plan);
  if (!bad.empty()) throw std::invalid_argument("cannot materialize an invalid plan: " + bad[0]);

  const int n = plan.n;
  const double root = std::sqrt(static_cast<double>(n + 2));
  plan.cutoff = K;
  plan.base_q.resize(K);
  plan.level_q.assign(n + 1, std::vector<double>(K, 0.0));
  plan.remainder_q.assign(n >= 1 ? K : 0, 0.0);

  for (std::uint32_t k = 1; k <= K; ++k) {
    plan.base_q[k - 1] = base(k);
    double budget = plan.base_q[k - 1] * plan.base_q[k - 1];
    for (int i = 1; i <= n; ++i) {
      double qik = std::pow(static_cast<double>(k), plan.alphas[i]) / root;
      plan.level_q[i][k - 1] = qik;
      budget -= qik * qik;
    }
    if (n >= 1) {
      double qt = std::pow(static_cast<double>(k), *plan.beta_n) / root;
      plan.remainder_q[k - 1] = qt;
      budget -= qt * qt;
    }
    if (!(budget > 0.0)) {
      std::ostringstream os;
      os << "base spectrum leaves no residual at k = " << k << " (q0^2 = " << budget << ")";
      throw InfeasibleBaseError(os.str());
    }
    plan.level_q[0][k - 1] = std::sqrt(budget);
  }
  return plan;
}

std::string plan_to_json(const LevelPlan& plan) {
  nlohmann::json j;
  j["alpha"] = plan.alpha;
  j["n"] = plan.n;
  j["alphas"] = plan.alphas;
  if (plan.beta_n)
    j["beta_n"] = *plan.beta_n;
  else
    j["beta_n"] = nullptr;
  j["scheme"] = "equal-slack";
  j["K"] = plan.cutoff;
  return j.dump(2);
}

LevelPlan plan_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LevelPlan p;
  p.alpha = j.at("alpha").get<double>();
  p.n = j.at("n").get<int>();
  p.alphas = j.at("alphas").get<std::vector<double>>();
  if (!j.at("beta_n").is_null()) p.beta_n = j.at("beta_n").get<double>();
  std::uint32_t K = j.value("K", 0u);
  if (K > 0) p = materialize_spectra(std::move(p), K);
  return p;
}

}  // namespace burgers
