#include "burgers/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace burgers {

namespace {

// Smooth transition: 1 for x <= 1, 0 for x >= 2, C^infinity in between.
double smooth_cutoff(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  auto bump = [](double u) { return std::exp(-1.0 / u); };
  double a = bump(2.0 - x);
  double b = bump(x - 1.0);
  return a / (a + b);
}

}  // namespace

int DyadicPartition::block_of(std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("wavenumber must be >= 1");
  int j = 0;
  while ((std::uint32_t{2} << j) <= k) ++j;  // 2^j <= k < 2^{j+1}
  return j;
}

int DyadicPartition::j_max() const {
  int jm = block_of(cutoff);
  // The smooth weight for block j extends down to k > 2^j only, so the top
  // sharp block index also bounds the smooth range.
  return jm;
}

double DyadicPartition::weight(int j, std::uint32_t k) const {
  if (k < 1 || k > cutoff) return 0.0;
  if (mode == PartitionMode::sharp) return block_of(k) == j ? 1.0 : 0.0;
  // phi_j = chi(2^{-j-1} k) - chi(2^{-j} k); telescopes to 1 over j >= -1,
  // and the j = -1 term chi(k) vanishes for k >= 2 and equals the j = 0
  // weight complement at k = 1. Fold the j = -1 mass into block 0 so the
  // stored range j >= 0 still sums to one (there is no k < 1 here).
  double kk = static_cast<double>(k);
  double w = smooth_cutoff(std::ldexp(kk, -(j + 1))) - smooth_cutoff(std::ldexp(kk, -j));
  if (j == 0) w += smooth_cutoff(kk);
  return w;
}

SpectralField block_field(const SpectralField& f, const DyadicPartition& p, int j) {
  SpectralField out(f.cutoff);
  for (std::uint32_t k = 1; k <= f.cutoff; ++k) out.set_coeff(k, p.weight(j, k) * f.coeff(k));
  return out;
}

std::vector<std::pair<int, double>> block_norms(const SpectralField& f, const DyadicPartition& p) {
  std::vector<std::pair<int, double>> out;
  for (int j = 0; j <= p.j_max(); ++j) out.emplace_back(j, sup_norm(block_field(f, p, j)));
  return out;
}

BonyParts bony_decompose(const SpectralField& f, const SpectralField& g, const DyadicPartition& p) {
  if (f.cutoff != g.cutoff) throw std::invalid_argument("cutoff mismatch in product");
  const int jm = p.j_max();

  std::vector<SpectralField> fb, gb;
  fb.reserve(jm + 1);
  gb.reserve(jm + 1);
  for (int j = 0; j <= jm; ++j) {
    fb.push_back(block_field(f, p, j));
    gb.push_back(block_field(g, p, j));
  }
  // Running sums S_m = sum_{i <= m} Delta_i, so each paraproduct needs one
  // product per block instead of one per block pair.
  std::vector<SpectralField> fs(jm + 1, SpectralField(f.cutoff));
  std::vector<SpectralField> gs(jm + 1, SpectralField(f.cutoff));
  for (int j = 0; j <= jm; ++j) {
    fs[j] = (j == 0) ? fb[0] : fs[j - 1] + fb[j];
    gs[j] = (j == 0) ? gb[0] : gs[j - 1] + gb[j];
  }

  BonyParts parts{SpectralField(f.cutoff), SpectralField(f.cutoff), SpectralField(f.cutoff)};
  for (int j = 0; j <= jm; ++j) {
    if (j >= 2) parts.para_lt += pointwise_product(fs[j - 2], gb[j]);
    SpectralField gnear = gb[j];
    if (j >= 1) gnear += gb[j - 1];
    if (j + 1 <= jm) gnear += gb[j + 1];
    parts.resonant += pointwise_product(fb[j], gnear);
    if (j >= 2) parts.para_gt += pointwise_product(fb[j], gs[j - 2]);
  }
  return parts;
}

SpectralField resonant_product(const SpectralField& f, const SpectralField& g,
                               const DyadicPartition& p) {
  const int jm = p.j_max();
  SpectralField out(f.cutoff);
  for (int j = 0; j <= jm; ++j) {
    SpectralField gnear = block_field(g, p, j);
    if (j >= 1) gnear += block_field(g, p, j - 1);
    if (j + 1 <= jm) gnear += block_field(g, p, j + 1);
    out += pointwise_product(block_field(f, p, j), gnear);
  }
  return out;
}

SpectralField resonant_band(const SpectralField& f, const SpectralField& g, std::uint32_t k_max) {
  if (f.cutoff != g.cutoff) throw std::invalid_argument("cutoff mismatch in product");
  const std::int64_t K = f.cutoff;
  auto full = [K](const SpectralField& h, std::int64_t k) -> std::complex<double> {
    return k > 0 ? h.coeff(static_cast<std::uint32_t>(k))
                 : std::conj(h.coeff(static_cast<std::uint32_t>(-k)));
  };
  auto jb = [](std::int64_t k) {
    int j = 0;
    std::int64_t a = k < 0 ? -k : k;
    while ((std::int64_t{2} << j) <= a) ++j;
    return j;
  };
  SpectralField out(f.cutoff);
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(k_max); ++k) {
    std::complex<double> s{0.0, 0.0};
    for (std::int64_t k1 = -K; k1 <= K; ++k1) {
      if (k1 == 0) continue;
      std::int64_t k2 = k - k1;
      if (k2 == 0 || std::llabs(k2) > K) continue;
      if (std::abs(jb(k1) - jb(k2)) > 1) continue;
      s += full(f, k1) * full(g, k2);
    }
    out.set_coeff(static_cast<std::uint32_t>(k), s);
  }
  return out;
}

}  // namespace burgers
