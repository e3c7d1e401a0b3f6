#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace burgers {

// In-place iterative radix-2 transform. n must be a power of two.
// forward:  a[k] <- sum_j a[j] exp(-2*pi*i*j*k/n)   (no normalization)
// inverse:  a[j] <- sum_k a[k] exp(+2*pi*i*j*k/n)   (no normalization)
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace burgers
