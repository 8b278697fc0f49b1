#include "mppc/util.hpp"

#include <cstdlib>
#include <string>

namespace mppc {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return std::stoull(v);
  } catch (...) {
    return fallback;
  }
}

}  // namespace

std::uint64_t Budgets::pair_budget() {
  static const std::uint64_t v = env_u64("MPPC_PAIR_BUDGET", 400'000'000ull);
  return v;
}

std::uint64_t Budgets::sieve_limit() {
  static const std::uint64_t v = env_u64("MPPC_SIEVE_LIMIT", 100'000'000ull);
  return v;
}

}  // namespace mppc
