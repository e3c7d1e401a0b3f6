#include "burgers/chaos.hpp"

#include <cmath>
#include <cstdlib>

namespace burgers {

std::string chaos_kind_name(ChaosKind k) {
  switch (k) {
    case ChaosKind::wick2: return "wick2";
    case ChaosKind::jz: return "Jz";
    case ChaosKind::zz_resonant: return "zz_resonant";
    case ChaosKind::jzz: return "Jzz";
    case ChaosKind::jz_circ_z: return "JzCircZ";
    case ChaosKind::jz_circ_z_delta: return "JzCircZdelta";
  }
  return "?";
}

namespace {

[[noreturn]] void out_of_regime(const std::string& kind, const std::string& inequality,
                                double got) {
  throw OutOfRegimeError(kind + ": requires " + inequality + "; got " + std::to_string(got));
}

}  // namespace

DecaySpec chaos_decay_oracle(ChaosKind kind, ChaosParams p) {
  DecaySpec d;
  const double g = p.gamma, dl = p.delta;
  switch (kind) {
    case ChaosKind::wick2:
      if (g < 0.5) out_of_regime("wick2", "1/2 <= gamma", g);
      if (g >= 0.75) out_of_regime("wick2", "gamma < 3/4", g);
      d.power = 3.0 - 4.0 * g;
      break;
    case ChaosKind::jz:
      if (g < 0.5) out_of_regime("Jz", "1/2 <= gamma", g);
      if (g >= 1.0) out_of_regime("Jz", "gamma < 1", g);
      d.power = 5.0 - 4.0 * g;
      break;
    case ChaosKind::zz_resonant:
      if (g + dl >= 1.5) out_of_regime("zz_resonant", "gamma + delta < 3/2", g + dl);
      d.power = 3.0 - 2.0 * g - 2.0 * dl;
      break;
    case ChaosKind::jzz:
      if (g + dl < 1.5) out_of_regime("Jzz", "3/2 <= gamma + delta", g + dl);
      if (g + dl >= 2.0) out_of_regime("Jzz", "gamma + delta < 2", g + dl);
      d.power = 5.0 - 2.0 * g - 2.0 * dl;
      break;
    case ChaosKind::jz_circ_z:
      if (g < 0.5) out_of_regime("JzCircZ", "1/2 <= gamma", g);
      if (g >= 1.0) out_of_regime("JzCircZ", "gamma < 1", g);
      d.power = 6.0 - 6.0 * g;
      break;
    case ChaosKind::jz_circ_z_delta:
      if (g < 0.5) out_of_regime("JzCircZdelta", "1/2 <= gamma", g);
      if (g >= 1.0) out_of_regime("JzCircZdelta", "gamma < 1", g);
      if (dl <= 0.0 || dl >= 1.0) out_of_regime("JzCircZdelta", "0 < delta < 1", dl);
      d.power = 6.0 - 4.0 * g - 2.0 * dl;
      break;
  }
  d.holder_exponent = (d.power - 1.0) / 2.0;
  return d;
}

double wick2_mode_variance_oracle(const OUSpec& spec, double t, std::int64_t k) {
  const std::int64_t K = static_cast<std::int64_t>(spec.cutoff);
  auto v = [&](std::int64_t m) {
    return ou_mode_variance(spec, static_cast<std::uint32_t>(std::llabs(m)), t);
  };
  double s = 0.0;
  for (std::int64_t k1 = -K; k1 <= K; ++k1) {
    if (k1 == 0) continue;
    std::int64_t k2 = k - k1;
    if (k2 == 0 || std::llabs(k2) > K) continue;
    s += v(k1) * v(k2);
  }
  return 2.0 * s;
}

namespace {

bool dyadic_neighbors(std::int64_t k1, std::int64_t k2) {
  auto blk = [](std::int64_t k) {
    int j = 0;
    std::int64_t a = std::llabs(k);
    while ((std::int64_t{2} << j) <= a) ++j;
    return j;
  };
  return std::abs(blk(k1) - blk(k2)) <= 1;
}

}  // namespace

double convolution_sum_bruteforce(double a, double b, std::int64_t k, std::int64_t K_sum,
                                  SumMode mode) {
  double s = 0.0;
  for (std::int64_t k1 = -K_sum; k1 <= K_sum; ++k1) {
    if (k1 == 0) continue;
    std::int64_t k2 = k - k1;
    if (k2 == 0 || std::llabs(k2) > K_sum) continue;
    if (mode == SumMode::resonant && !dyadic_neighbors(k1, k2)) continue;
    s += std::pow(static_cast<double>(std::llabs(k1)), -a) *
         std::pow(static_cast<double>(std::llabs(k2)), -b);
  }
  return s;
}

}  // namespace burgers
