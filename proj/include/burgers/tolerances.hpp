#pragma once

/// Every pass/fail threshold used by the verification checks, in one place.
namespace burgers::tol {

// exponent-fit tolerances per object class
inline constexpr double ou_exponent = 0.1;
inline constexpr double wick2_slope = 0.15;
inline constexpr double wick2_slope_at_half = 0.2;  // widened at gamma = 1/2
inline constexpr double jz_slope = 0.2;
inline constexpr double zz_resonant_slope = 0.2;
inline constexpr double theta_z_slope = 0.3;
inline constexpr double level_exponent = 0.1;
inline constexpr double remainder_exponent = 0.15;
inline constexpr double rho_exponent = 0.2;
inline constexpr double rho_eta_min_gap = 0.3;

// Monte Carlo agreement, in standard errors
inline constexpr double mc_sigmas = 3.0;

// decomposition identity
inline constexpr double decomposition_rel_l2 = 1e-2;
inline constexpr double decomposition_zero_noise = 1e-10;
inline constexpr double etd_order_lo = 0.8;
inline constexpr double etd_order_hi = 1.2;

// cutoff-growth diagnostics
inline constexpr double girsanov_stable_band = 0.1;  // |ratio - 1| <= band
inline constexpr double girsanov_growth_factor = 2.0;

// brute-force convolution sums
inline constexpr double fsum_stable_band = 0.05;
inline constexpr double fsum_observed_bound = 50.0;  // regression guard on sup_k S(k) k^{a+b-1}

// spectra
inline constexpr double budget_rel = 1e-12;

// statistics
inline constexpr double two_sample_alpha = 0.01;  // Bonferroni-corrected family level
inline constexpr double fit_min_r_squared = 0.9;

// fit band [k_min, K/4]
inline constexpr unsigned fit_band_k_min = 4;

}  // namespace burgers::tol
