#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mppc {

// Neumaier-compensated accumulator for long positive/mixed sums.
class NeumaierSum {
public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Sums f(i) over [0, n). The range is cut into fixed-size blocks, each block
// is accumulated serially in index order, and block results are combined in
// block order. Blocks run in parallel, so the value is independent of the
// number of worker threads.
template <class F>
double blocked_sum(std::size_t n, F&& f, std::size_t block = 4096) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    NeumaierSum acc;
    const std::size_t lo = static_cast<std::size_t>(b) * block;
    const std::size_t hi = std::min(n, lo + block);
    for (std::size_t i = lo; i < hi; ++i) acc.add(f(i));
    partial[static_cast<std::size_t>(b)] = acc.value();
  }
  NeumaierSum total;
  for (double v : partial) total.add(v);
  return total.value();
}

// Work budgets, overridable through the environment:
//   MPPC_PAIR_BUDGET  — max |A|^2 for quadratic difference/product scans
//   MPPC_SIEVE_LIMIT  — max support element for divisor-sieve paths
struct Budgets {
  static std::uint64_t pair_budget();
  static std::uint64_t sieve_limit();
};

// gcd for plain 64-bit operands (binary algorithm).
inline std::uint64_t binary_gcd(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

// n^x for n >= 1 evaluated in extended precision; relative error well below
// the 1e-12 budget the gcd-sum paths assume.
inline double pow_real(std::uint64_t n, double x) {
  return static_cast<double>(
      expl(static_cast<long double>(x) * logl(static_cast<long double>(n))));
}

}  // namespace mppc
