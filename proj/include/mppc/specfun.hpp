#pragma once

#include <cstdint>

namespace mppc {

// Riemann zeta for real s > 1 by Euler-Maclaurin summation. The correction
// series is cut when the next term drops below 1e-18 relative; for real s
// the remainder is bounded by the first omitted term, so the absolute error
// stays below 1e-12 throughout (1, 60].
double zeta_euler_maclaurin(double s);

// log I0(t) with the modified Bessel function summed as
// sum_k (t/2)^{2k} / (k!)^2 to machine convergence. Throws SeriesError if
// the terms fail to decrease within the term budget.
double log_bessel_i0(double t);

// Truncated Euler product zeta_P(s) = prod_{p <= P} (1 - p^-s)^{-1}, s > 0.
double zeta_prime_product(double s, std::uint64_t prime_limit);

}  // namespace mppc
