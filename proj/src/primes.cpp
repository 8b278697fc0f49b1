#include "mppc/primes.hpp"

#include <stdexcept>

#include "mppc/errors.hpp"

namespace mppc {

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  if (n > 0xFFFFFFFFull) throw SizeError("prime sieve limit above 2^32");
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i) {
    if (comp[i]) continue;
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  for (std::uint64_t i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  // trial division with a 2,3-wheel; fine for the sizes this library sees
  for (std::uint64_t d = 7; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 4) == 0) return false;
  }
  return true;
}

SpfTable::SpfTable(std::uint64_t limit) : limit_(limit) {
  if (limit > 0xFFFFFFFFull) throw SieveLimitError("spf table limit above 2^32");
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

std::vector<std::pair<std::uint64_t, unsigned>> SpfTable::factor(
    std::uint64_t n) const {
  if (n == 0 || n > limit_)
    throw SieveLimitError("factor request outside spf table range");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::vector<std::uint64_t> SpfTable::divisors(std::uint64_t n) const {
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace mppc
