#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mppc {

// Primes <= n by sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

bool is_prime_u64(std::uint64_t n);

// Smallest-prime-factor table up to an inclusive limit; backs factorization
// and divisor enumeration for the divisor-sieve gcd-sum path.
class SpfTable {
public:
  explicit SpfTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }

  // (prime, exponent) pairs of n, 1 <= n <= limit. n = 1 yields no factors.
  std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) const;

  // All divisors of n, unordered.
  std::vector<std::uint64_t> divisors(std::uint64_t n) const;

private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace mppc
