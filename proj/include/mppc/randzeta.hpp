#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "mppc/gcdsum.hpp"

namespace mppc {

// Parameters for the random Euler product with independent uniform
// circle-valued weights at each prime, truncated at prime_limit.
struct RandomZetaConfig {
  double sigma = 0.6;              // in (1/2, 3/4)
  std::uint64_t prime_limit = 2;   // P >= 2
  unsigned l = 1;                  // moment order, >= 1
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

// E_l(p) = (1/2pi) int_0^{2pi} (p^{2s} / (p^{2s} + 1 - 2 p^s cos t))^l dt,
// the 2l-th absolute moment of a single Euler factor. Evaluated by doubling
// trapezoid refinement (the integrand is analytic and periodic) and checked
// against the series sum_k binom(l+k-1,k)^2 p^{-2sk} to 1e-10 relative;
// disagreement or a stalled refinement raises QuadratureError.
double per_prime_moment(std::uint64_t p, double sigma, unsigned l);
double per_prime_moment_series(std::uint64_t p, double sigma, unsigned l);

// sum_{p <= P} log E_l(p): the log-moment of the truncated product.
// Deterministic; parallel over primes with fixed-order combination.
double exact_truncated_moment(const RandomZetaConfig& cfg);

// Angle source: theta_p for sample i is keyed by (seed, i, p), so any
// subsample is reproducible in isolation and independent of worker layout.
class ZetaSampler {
public:
  ZetaSampler(std::uint64_t seed, std::uint64_t prime_limit);

  std::uint64_t prime_limit() const { return prime_limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  double angle(std::uint64_t sample_index, std::uint64_t p) const;
  // p^-sigma for each prime, in prime order; feeds the overload below
  std::vector<double> inv_powers(double sigma) const;
  // truncated product over primes <= P of (1 - e^{i theta_p} / p^sigma)^-1
  std::complex<double> zeta_sample(std::uint64_t sample_index, double sigma) const;
  std::complex<double> zeta_sample(std::uint64_t sample_index,
                                   const std::vector<double>& inv_ps) const;
  // X(n) = prod_{p^r || n} X(p)^r; SmoothnessError if some factor exceeds P
  std::complex<double> weight(std::uint64_t sample_index, std::uint64_t n) const;

private:
  std::uint64_t seed_;
  std::uint64_t prime_limit_;
  std::vector<std::uint32_t> primes_;
};

// cfg.samples values of zeta_{X,P}(sigma).
std::vector<std::complex<double>> sample_zeta(const RandomZetaConfig& cfg);

// D(X) = sum_a f(a) X(a) for one sample.
std::complex<double> dirichlet_weight_sum(const WeightedSupport& f,
                                          const ZetaSampler& sampler,
                                          std::uint64_t sample_index);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t samples = 0;
};

struct IdentityCheckResult {
  MonteCarloEstimate mc;    // E |D(X) zeta_{X,P}(sigma)|^2
  double exact = 0.0;       // zeta_P(2 sigma) * S_f(sigma)
  double z_score = 0.0;
};

// Monte Carlo check of E|D zeta_{X,P}|^2 = zeta_P(2 sigma) S_f(sigma), which
// is exact for P-smooth support (the pairing argument that proves the full
// identity only ever produces P-smooth Dirichlet indices).
IdentityCheckResult identity_check(const WeightedSupport& f, double sigma,
                                   std::uint64_t prime_limit, std::size_t samples,
                                   std::uint64_t seed);

// Monte Carlo estimate of E|D(X)|^4 = sum_{ab=cd} f(a)f(b)f(c)f(d).
MonteCarloEstimate fourth_moment_dirichlet(const WeightedSupport& f,
                                           std::size_t samples, std::uint64_t seed,
                                           std::uint64_t prime_limit);

// The exact product-hash value of sum_{ab=cd} f(a)f(b)f(c)f(d) for real
// weights; the integer-weight case cross-checks fourth_moment_multiplicative.
double exact_fourth_moment(const WeightedSupport& f);

// Moment report for the CLI: exact log-moment against the bound
// (l^2 + beta l) log((sigma - 1/2)^-1), plus optional MC of |zeta|^{2l}.
struct MomentEstimate {
  std::optional<double> exact_log;
  double bound_rhs = 0.0;
  bool bound_holds = false;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::size_t samples = 0;
};

MomentEstimate moment_report(const RandomZetaConfig& cfg);

}  // namespace mppc
