#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mppc {

// Strictly increasing prefix of a sequence of naturals. Terms are exact
// integers of any size; a plain 64-bit mirror is kept when every term fits,
// which the counting kernels use.
class IntegerSequence {
public:
  IntegerSequence(std::vector<mpz_class> terms, std::string label);

  std::size_t size() const { return terms_.size(); }
  const mpz_class& term(std::size_t i) const { return terms_[i]; }
  const std::vector<mpz_class>& terms() const { return terms_; }
  const mpz_class& back() const { return terms_.back(); }
  const std::string& label() const { return label_; }

  bool fits_u64() const { return fits_u64_; }
  // Throws SizeError when some term exceeds 64 bits.
  const std::vector<std::uint64_t>& as_u64() const;

  IntegerSequence prefix(std::size_t n) const;

private:
  std::vector<mpz_class> terms_;
  std::vector<std::uint64_t> u64_;
  bool fits_u64_ = false;
  std::string label_;
};

// (1^d, 2^d, ..., n^d) in exact arithmetic.
IntegerSequence gen_power(unsigned d, std::uint64_t n);

// n terms floor(m (log m)^k) for m = 3, 4, ...; the first two indices are
// dropped because (log 1)^k = 0 and log 2 < 1 break strict increase. Each
// floor is certified by evaluating the product with directed rounding at
// escalating precisions (80, 160, 320, 512 bits); a value within 2^-40 of an
// integer at every level raises PrecisionError.
IntegerSequence gen_nlogk(double k, std::uint64_t n);

// Text file: one integer per line, or two-column "index value" lines
// (b-file form); '#' lines and blank lines are skipped.
IntegerSequence load_sequence(const std::string& path);

}  // namespace mppc
