#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "burgers/field.hpp"

namespace burgers {

enum class PartitionMode { sharp, smooth };

/// Assignment of wavenumbers to dyadic blocks. Sharp blocks are the annuli
/// 2^j <= k < 2^{j+1}; the smooth variant uses a C^infinity partition of unity
/// whose weight for block j is supported on (2^j, 2^{j+2}), i.e. at most two
/// adjacent sharp blocks. In both modes the weights over j sum to one for
/// every stored wavenumber.
struct DyadicPartition {
  std::uint32_t cutoff = 0;
  PartitionMode mode = PartitionMode::sharp;

  static DyadicPartition sharp(std::uint32_t K) { return {K, PartitionMode::sharp}; }
  static DyadicPartition smooth(std::uint32_t K) { return {K, PartitionMode::smooth}; }

  /// Sharp block index floor(log2 k), k >= 1.
  static int block_of(std::uint32_t k);

  int j_max() const;  // largest block with nonzero weight for some k <= K
  double weight(int j, std::uint32_t k) const;
};

/// Delta_j f.
SpectralField block_field(const SpectralField& f, const DyadicPartition& p, int j);

/// (j, sup-norm of Delta_j f) for j = 0..j_max.
std::vector<std::pair<int, double>> block_norms(const SpectralField& f, const DyadicPartition& p);

struct BonyParts {
  SpectralField para_lt;   // sum_{i < j-1} Delta_i f Delta_j g
  SpectralField resonant;  // sum_{|i-j| <= 1} Delta_i f Delta_j g
  SpectralField para_gt;   // sum_{i > j+1} Delta_i f Delta_j g
};

BonyParts bony_decompose(const SpectralField& f, const SpectralField& g, const DyadicPartition& p);

/// Resonant product f o g alone.
SpectralField resonant_product(const SpectralField& f, const SpectralField& g,
                               const DyadicPartition& p);

/// Modes 1..k_max of the sharp-partition resonant product by direct pair
/// summation; equal to resonant_product on those modes at any cutoff.
SpectralField resonant_band(const SpectralField& f, const SpectralField& g, std::uint32_t k_max);

}  // namespace burgers
