#include "burgers/field.hpp"

#include <cmath>
#include <stdexcept>

#include "burgers/fft.hpp"

namespace burgers {

SpectralField SpectralField::mode(std::uint32_t K, std::uint32_t k, std::complex<double> c) {
  if (k < 1 || k > K) throw std::invalid_argument("mode index outside 1..K");
  SpectralField f(K);
  f.set_coeff(k, c);
  return f;
}

bool SpectralField::all_finite() const {
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

bool SpectralField::is_zero() const {
  for (const auto& c : coeffs) {
    if (c != std::complex<double>{0.0, 0.0}) return false;
  }
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (o.cutoff != cutoff) throw std::invalid_argument("cutoff mismatch");
  for (std::uint32_t i = 0; i < cutoff; ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (o.cutoff != cutoff) throw std::invalid_argument("cutoff mismatch");
  for (std::uint32_t i = 0; i < cutoff; ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

void FieldPath::check_invariants() const {
  if (times.size() != states.size()) throw std::invalid_argument("times/states length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("time grid not strictly increasing");
    if (is_dead(states[i - 1]) && !is_dead(states[i]))
      throw std::invalid_argument("resurrection after death state");
  }
  bool any_dead = false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (is_dead(states[i])) {
      if (!any_dead) {
        any_dead = true;
        if (!death_time || *death_time != times[i])
          throw std::invalid_argument("death_time does not match first dead node");
      }
    }
  }
  if (!any_dead && death_time) throw std::invalid_argument("death_time set on fully alive path");
}

SpectralField apply_diagonal(const SpectralField& f, const Symbol& symbol) {
  SpectralField out(f.cutoff);
  out.time_tag = f.time_tag;
  for (std::uint32_t k = 1; k <= f.cutoff; ++k) out.set_coeff(k, symbol(k) * f.coeff(k));
  return out;
}

FieldState apply_diagonal(const FieldState& f, const Symbol& symbol) {
  if (is_dead(f)) return f;  // signal propagation, not failure
  return apply_diagonal(as_field(f), symbol);
}

Symbol heat_symbol(double t) {
  return [t](std::uint32_t k) -> std::complex<double> {
    double kk = static_cast<double>(k);
    return {std::exp(-kk * kk * t), 0.0};
  };
}

Symbol a_power_symbol(double delta) {
  return [delta](std::uint32_t k) -> std::complex<double> {
    return {std::pow(static_cast<double>(k), 2.0 * delta), 0.0};
  };
}

Symbol dx_symbol() {
  return [](std::uint32_t k) -> std::complex<double> { return {0.0, static_cast<double>(k)}; };
}

std::size_t product_grid_size(std::uint32_t K) {
  // n - 2K > K keeps every retained mode free of circular aliasing.
  return next_pow2(3 * static_cast<std::size_t>(K) + 2);
}

std::size_t supnorm_grid_size(std::uint32_t K) {
  return next_pow2(4 * (2 * static_cast<std::size_t>(K) + 1));
}

std::vector<double> grid_values(const SpectralField& f, std::size_t n) {
  if (n == 0) n = product_grid_size(f.cutoff);
  if ((n & (n - 1)) != 0 || n <= 2 * static_cast<std::size_t>(f.cutoff))
    throw std::invalid_argument("grid size must be a power of two exceeding 2K");
  std::vector<std::complex<double>> spec(n, {0.0, 0.0});
  for (std::uint32_t k = 1; k <= f.cutoff; ++k) {
    spec[k] = f.coeff(k);
    spec[n - k] = std::conj(f.coeff(k));
  }
  fft_inplace(spec, /*inverse=*/true);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = spec[j].real();
  return out;
}

SpectralField field_from_grid(const std::vector<double>& values, std::uint32_t K) {
  const std::size_t n = values.size();
  if ((n & (n - 1)) != 0 || n <= 2 * static_cast<std::size_t>(K))
    throw std::invalid_argument("grid size must be a power of two exceeding 2K");
  std::vector<std::complex<double>> spec(n);
  for (std::size_t j = 0; j < n; ++j) spec[j] = {values[j], 0.0};
  fft_inplace(spec, /*inverse=*/false);
  SpectralField f(K);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::uint32_t k = 1; k <= K; ++k) f.set_coeff(k, spec[k] * inv_n);
  return f;
}

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g) {
  if (f.cutoff != g.cutoff) throw std::invalid_argument("cutoff mismatch in product");
  const std::size_t n = product_grid_size(f.cutoff);
  std::vector<double> a = grid_values(f, n);
  std::vector<double> b = grid_values(g, n);
  for (std::size_t j = 0; j < n; ++j) a[j] *= b[j];
  return field_from_grid(a, f.cutoff);  // zero mode dropped: mean projected out
}

SpectralField b_nonlinearity(const SpectralField& f, const SpectralField& g) {
  return apply_diagonal(pointwise_product(f, g), dx_symbol());
}

double sup_norm(const SpectralField& f) {
  std::vector<double> v = grid_values(f, supnorm_grid_size(f.cutoff));
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2_norm_sq(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs) s += std::norm(c);
  return 2.0 * s;
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

}  // namespace burgers
