#include "burgers/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace burgers {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

// Twiddle tables are cached per size; generation is deterministic, so the
// transform gives bit-identical results regardless of caller thread.
const std::vector<std::complex<double>>& twiddles(std::size_t n) {
  thread_local std::vector<std::vector<std::complex<double>>> cache;
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  if (cache.size() <= log2n) cache.resize(log2n + 1);
  auto& tab = cache[log2n];
  if (tab.empty()) {
    tab.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
      double ang = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      tab[j] = {std::cos(ang), std::sin(ang)};
    }
  }
  return tab;
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const auto& tw = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> w = tw[j * stride];
        if (inverse) w = std::conj(w);
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace burgers
