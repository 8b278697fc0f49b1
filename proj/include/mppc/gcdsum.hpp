#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mppc/energy.hpp"
#include "mppc/sequences.hpp"

namespace mppc {

// Finitely supported nonnegative weight function on the naturals.
class WeightedSupport {
public:
  // entries may be unsorted and may repeat; repeats are summed
  explicit WeightedSupport(std::vector<std::pair<std::uint64_t, double>> entries);
  static WeightedSupport uniform(const std::vector<std::uint64_t>& elements);
  static WeightedSupport from_representation(const RepresentationWeights& r);
  // "value:weight" per line; '#' lines skipped; bare "value" means weight 1
  static WeightedSupport load(const std::string& path);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<std::uint64_t, double>>& entries() const {
    return entries_;
  }
  std::uint64_t max_element() const {
    return entries_.empty() ? 0 : entries_.back().first;
  }
  double norm1() const { return norm1_; }
  double norm2sq() const { return norm2sq_; }

private:
  std::vector<std::pair<std::uint64_t, double>> entries_;  // sorted by element
  double norm1_ = 0.0;
  double norm2sq_ = 0.0;
};

enum class GcdSumMethod { naive, divisor_sieve };

struct GcdSumValue {
  double sigma = 0.0;
  double value = 0.0;
  GcdSumMethod method = GcdSumMethod::naive;
  std::size_t support_size = 0;
};

// S_f(sigma) = sum_{a,b} f(a) f(b) gcd(a,b)^{2 sigma} / (ab)^sigma,
// 0 < sigma <= 1.

// Direct double loop with a gcd per pair; compensated accumulation over
// fixed row blocks, parallel across blocks. Guarded to 20000 support points.
GcdSumValue gcd_sum_naive(const WeightedSupport& f, double sigma);

// Divisor sieve: S_f(sigma) = sum_d J(d) (sum_{d|a} f(a) a^-sigma)^2 where
// J(d) = prod_{p^k || d} (p^{2 sigma k} - p^{2 sigma (k-1)}) inverts the gcd
// power over the divisor lattice. Near-linear in sum tau(a); needs a
// smallest-prime-factor table up to max(support).
GcdSumValue gcd_sum_sieve(const WeightedSupport& f, double sigma);

// Picks the naive path for small supports, sieve otherwise.
GcdSumValue gcd_sum(const WeightedSupport& f, double sigma);

// S_f(sigma) with f the positive-difference representation counts of A.
GcdSumValue difference_set_gcd_sum(const IntegerSequence& a, double sigma);

}  // namespace mppc
