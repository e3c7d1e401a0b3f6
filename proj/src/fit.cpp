#include "burgers/fit.hpp"

#include <cmath>
#include <map>

namespace burgers {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 3) throw FitError("need at least 3 points for a line fit");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw FitError("degenerate abscissa in line fit");
  LineFit f;
  f.n = static_cast<int>(n);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += r * r;
  }
  f.slope_stderr = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
  f.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

RegularityFit besov_exponent_fit(const std::vector<std::vector<std::pair<int, double>>>& ensemble,
                                 int j_lo, int j_hi) {
  if (ensemble.size() < 30) throw FitError("need at least 30 samples for an exponent fit");
  // second moment of the block sup-norm per j
  std::map<int, std::pair<double, std::size_t>> acc;  // j -> (sum of norm^2, count)
  for (const auto& sample : ensemble) {
    for (const auto& [j, norm] : sample) {
      if (j < j_lo || j > j_hi) continue;
      auto& a = acc[j];
      a.first += norm * norm;
      a.second += 1;
    }
  }
  std::vector<double> xs, ys;
  int used_lo = j_hi + 1, used_hi = j_lo - 1;
  bool shrunk = false;
  for (int j = j_lo; j <= j_hi; ++j) {
    auto it = acc.find(j);
    if (it == acc.end() || it->second.second == 0 || it->second.first <= 0.0) {
      shrunk = true;  // empty block: drop it and record the shrink
      continue;
    }
    double m2 = it->second.first / static_cast<double>(it->second.second);
    // The sup of a Gaussian block with N_j ~ 2^j modes carries a
    // 2 ln(2 N_j) scale on top of the per-mode variance; remove it so the
    // slope reads the variance decay alone.
    double sup_scale = 2.0 * std::log(2.0 * std::ldexp(1.0, j));
    xs.push_back(static_cast<double>(j));
    ys.push_back(std::log2(m2 / sup_scale));
    used_lo = std::min(used_lo, j);
    used_hi = std::max(used_hi, j);
  }
  if (xs.size() < 4) throw FitError("fewer than 4 usable blocks in fit range");
  LineFit lf = fit_line(xs, ys);
  RegularityFit rf;
  rf.exponent = -lf.slope / 2.0;
  rf.stderr_ = lf.slope_stderr / 2.0;
  rf.r_squared = lf.r_squared;
  rf.j_min = used_lo;
  rf.j_max = used_hi;
  rf.range_shrunk = shrunk;
  return rf;
}

ModeDecayFit fit_mode_decay(const std::vector<std::uint32_t>& ks, const std::vector<double>& m2) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (m2[i] <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(ks[i])));
    ys.push_back(std::log(m2[i]));
  }
  LineFit lf = fit_line(xs, ys);
  ModeDecayFit f;
  f.slope = lf.slope;
  f.slope_stderr = lf.slope_stderr;
  f.r_squared = lf.r_squared;
  f.n = lf.n;
  return f;
}

}  // namespace burgers
