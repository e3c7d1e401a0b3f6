#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace burgers {

/// A real, mean-zero field on the torus [0, 2*pi], stored as the Fourier
/// coefficients c_k for k = 1..K. Negative modes are implied by reality
/// (c_{-k} = conj(c_k)); the zero mode is identically zero and not stored.
struct SpectralField {
  std::uint32_t cutoff = 0;
  std::vector<std::complex<double>> coeffs;  // coeffs[k-1] = c_k
  std::optional<double> time_tag;

  SpectralField() = default;
  explicit SpectralField(std::uint32_t K) : cutoff(K), coeffs(K, {0.0, 0.0}) {}

  /// Single-mode field with c_k = c.
  static SpectralField mode(std::uint32_t K, std::uint32_t k, std::complex<double> c);

  std::complex<double> coeff(std::uint32_t k) const { return coeffs[k - 1]; }
  void set_coeff(std::uint32_t k, std::complex<double> c) { coeffs[k - 1] = c; }

  bool all_finite() const;
  bool is_zero() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Isolated post-blow-up state; carries no field data.
struct DeathState {
  double blowup_time = 0.0;
};

using FieldState = std::variant<SpectralField, DeathState>;

inline bool is_dead(const FieldState& s) { return std::holds_alternative<DeathState>(s); }
inline const SpectralField& as_field(const FieldState& s) { return std::get<SpectralField>(s); }

/// A trajectory on a strictly increasing time grid. Once a node is dead all
/// later nodes are dead, and death_time records the first dead node.
struct FieldPath {
  std::vector<double> times;
  std::vector<FieldState> states;
  std::optional<double> death_time;

  std::size_t size() const { return times.size(); }
  bool alive_at_index(std::size_t i) const { return !is_dead(states[i]); }
  /// Throws std::invalid_argument if the death/monotonicity invariants fail.
  void check_invariants() const;
};

// --- diagonal operators -----------------------------------------------------

using Symbol = std::function<std::complex<double>(std::uint32_t)>;

/// c_k <- symbol(k) * c_k. The caller guarantees symbol(-k) = conj(symbol(k));
/// only k >= 1 is ever evaluated.
SpectralField apply_diagonal(const SpectralField& f, const Symbol& symbol);
FieldState apply_diagonal(const FieldState& f, const Symbol& symbol);

Symbol heat_symbol(double t);          // exp(-k^2 t)
Symbol a_power_symbol(double delta);   // |k|^{2 delta}, the spectral power A^delta
Symbol dx_symbol();                    // i k

// --- products and grid realization -------------------------------------------

/// Exact circular convolution of the Hermitian-completed spectra, dealiased by
/// zero padding, truncated back to the shared cutoff, zero mode projected out.
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g);

/// B(f,g) = d/dx (f g).
SpectralField b_nonlinearity(const SpectralField& f, const SpectralField& g);
inline SpectralField b_nonlinearity(const SpectralField& f) { return b_nonlinearity(f, f); }

/// Real samples on the uniform grid x_j = 2*pi*j/n. n must be a power of two
/// with n > 2K; use 0 for the default oversampled size.
std::vector<double> grid_values(const SpectralField& f, std::size_t n = 0);

/// Recover c_1..c_K from real grid samples (n a power of two, n > 2K).
SpectralField field_from_grid(const std::vector<double>& values, std::uint32_t K);

/// Grid maximum of |f| on a 4(2K+1)-point (rounded up) grid.
double sup_norm(const SpectralField& f);

/// sqrt(2 sum |c_k|^2), i.e. the L^2 norm under the mean-square normalization
/// (1/2pi) int |f|^2 dx.
double l2_norm(const SpectralField& f);
double l2_norm_sq(const SpectralField& f);

std::size_t product_grid_size(std::uint32_t K);
std::size_t supnorm_grid_size(std::uint32_t K);

}  // namespace burgers
