#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace burgers {

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  int n = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs n >= 3 for a
/// residual-based slope standard error.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// A fitted Holder/Besov exponent from dyadic block regression.
struct RegularityFit {
  double exponent = 0.0;  // kappa-hat; field in C^beta for beta < kappa-hat
  double stderr_ = 0.0;
  double r_squared = 0.0;
  int j_min = 0;
  int j_max = 0;
  bool range_shrunk = false;  // empty blocks were dropped from the request
};

/// Least-squares fit of log2 of ensemble second moments of block sup-norms
/// against j; kappa-hat = -slope/2. Requires >= 4 usable blocks in range.
/// `ensemble` holds one block_norms() result per sample.
RegularityFit besov_exponent_fit(const std::vector<std::vector<std::pair<int, double>>>& ensemble,
                                 int j_lo, int j_hi);

struct ModeDecayFit {
  double slope = 0.0;  // d log E|x(k)|^2 / d log k
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  int n = 0;
};

/// Fit log m2 against log k over the given mode band.
ModeDecayFit fit_mode_decay(const std::vector<std::uint32_t>& ks, const std::vector<double>& m2);

}  // namespace burgers
