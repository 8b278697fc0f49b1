#include "mppc/specfun.hpp"

#include <cmath>

#include "mppc/errors.hpp"
#include "mppc/primes.hpp"
#include "mppc/util.hpp"

namespace mppc {

namespace {

// B_{2k} / (2k)! for k = 1..15.
constexpr double kBernoulliOverFact[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23, 2.2679524523376831e-24,
};

}  // namespace

double zeta_euler_maclaurin(double s) {
  if (!(s > 1.0)) throw DomainError("zeta_euler_maclaurin requires s > 1");
  const int cutoff = 32;
  long double acc = 0.0L;
  for (int n = 1; n < cutoff; ++n) acc += powl(static_cast<long double>(n), -s);
  const long double nn = static_cast<long double>(cutoff);
  const long double npow = powl(nn, -s);
  acc += nn * npow / (s - 1.0L);  // integral tail
  acc += 0.5L * npow;
  // Euler-Maclaurin corrections: term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  long double rising = s;           // s(s+1)...(s+2k-2)
  long double scale = npow * nn;    // N^{-s-2k+1}
  for (int k = 1; k <= 15; ++k) {
    scale /= nn * nn;
    const long double term = kBernoulliOverFact[k - 1] * rising * scale;
    acc += term;
    if (fabsl(term) < 1e-18L * acc) break;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
  }
  return static_cast<double>(acc);
}

double log_bessel_i0(double t) {
  if (t < 0.0) throw DomainError("log_bessel_i0 requires t >= 0");
  const long double x = static_cast<long double>(t) * t / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 20000; ++k) {
    term *= x / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-20L * sum) return static_cast<double>(logl(sum));
  }
  throw SeriesError("I0 series did not converge within the term budget");
}

double zeta_prime_product(double s, std::uint64_t prime_limit) {
  if (!(s > 0.0)) throw DomainError("zeta_prime_product requires s > 0");
  const auto primes = primes_up_to(prime_limit);
  // accumulate logs in fixed order; exp at the end
  const double log_sum = blocked_sum(primes.size(), [&](std::size_t i) {
    return -std::log1p(-pow_real(primes[i], -s));
  });
  return std::exp(log_sum);
}

}  // namespace mppc
