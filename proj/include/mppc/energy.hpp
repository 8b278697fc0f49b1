#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "mppc/sequences.hpp"

namespace mppc {

enum class DomainTag { differences, positive_differences };

// Ordered-pair difference counts r(v) = #{(a,b) in A^2 : a-b = v}. Only
// v > 0 is stored: r(-v) = r(v) and r(0) = |A|, so accessors reconstruct the
// full map when the tag covers it. positive_differences drops v <= 0
// entirely (the weight function fed to the gcd sums).
class RepresentationWeights {
public:
  RepresentationWeights(DomainTag tag, std::size_t set_size,
                        std::vector<std::pair<std::uint64_t, std::uint64_t>> pos,
                        std::vector<std::pair<mpz_class, std::uint64_t>> pos_big);

  DomainTag tag() const { return tag_; }
  std::size_t set_size() const { return set_size_; }
  bool small() const { return small_; }

  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& positive_u64()
      const;
  const std::vector<std::pair<mpz_class, std::uint64_t>>& positive_big() const {
    return pos_big_;
  }

  // weight at v, honoring tag symmetry; 0 off the domain
  std::uint64_t count(const mpz_class& v) const;
  std::uint64_t count(std::int64_t v) const { return count(mpz_class(static_cast<long>(v))); }

  std::size_t support_size() const;  // distinct v with weight > 0 in the domain
  mpz_class total_weight() const;    // sum of weights over the domain

private:
  DomainTag tag_;
  std::size_t set_size_;
  bool small_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pos_u64_;  // sorted
  std::vector<std::pair<mpz_class, std::uint64_t>> pos_big_;      // sorted
};

RepresentationWeights representation_function(const IntegerSequence& a,
                                              DomainTag tag);

struct EnergyReport {
  std::size_t n = 0;
  mpz_class energy;
  mpz_class lower;          // n^2
  mpz_class upper;          // n^3
  double normalized = 0.0;  // energy * (log n)^c / n^3
  double c_exponent = 0.0;
};

// E(A) = #{(a,b,c,d) : a+b = c+d} = sum_v r(v)^2, by difference counting.
// Exact integers throughout; parallel over the outer pair index.
EnergyReport additive_energy(const IntegerSequence& a, double c_exponent = 0.0);

// Independent route: hash a+b sums and square their counts. Serial; kept as
// the reference the difference path is validated against.
mpz_class additive_energy_via_sums(const IntegerSequence& a);

// Third route: difference counts as the autocorrelation of the indicator
// vector, via FFT. Only available when the spread max(A) - min(A) is at
// most 2^27 (the transform is O(U log U) in the spread, not in N). Counts
// are recovered by rounding; the accumulated transform error is orders of
// magnitude below 1/2 for any budget-sized input.
mpz_class additive_energy_fft(const IntegerSequence& a);

// sum over quadruples of support elements with ab = cd of
// f(a)f(b)f(c)f(d), via hashing products ab -> sum f(a)f(b) and summing
// squares. Requires positive_differences weights.
mpz_class fourth_moment_multiplicative(const RepresentationWeights& f);

struct GrowthRow {
  std::size_t n = 0;
  mpz_class energy;
  double ratio = 0.0;  // energy * (log n)^c / n^3
  bool exceeds_cube_bound = false;
};

std::vector<GrowthRow> energy_growth_profile(const IntegerSequence& seq,
                                             const std::vector<std::size_t>& n_grid,
                                             double c_exponent);

}  // namespace mppc
