#include "mppc/randzeta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "mppc/bounds.hpp"
#include "mppc/errors.hpp"
#include "mppc/primes.hpp"
#include "mppc/rng.hpp"
#include "mppc/specfun.hpp"
#include "mppc/util.hpp"

namespace mppc {

namespace {

using u64 = std::uint64_t;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long double ipow(long double base, unsigned e) {
  long double r = 1.0L;
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

struct MomentStats {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

MomentStats mean_and_stderr(const std::vector<double>& v) {
  NeumaierSum s;
  for (double x : v) s.add(x);
  const double mean = s.value() / static_cast<double>(v.size());
  NeumaierSum sq;
  for (double x : v) sq.add((x - mean) * (x - mean));
  const double var = v.size() > 1 ? sq.value() / static_cast<double>(v.size() - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace

void RandomZetaConfig::validate() const {
  if (!(sigma > 0.5) || !(sigma < 0.75))
    throw DomainError("sigma must lie in (1/2, 3/4)");
  if (prime_limit < 2) throw DomainError("prime limit must be >= 2");
  if (l < 1) throw DomainError("moment order l must be >= 1");
}

double per_prime_moment_series(std::uint64_t p, double sigma, unsigned l) {
  if (!(sigma > 0.5) || !(sigma < 1.0))
    throw DomainError("per-prime moment needs sigma in (1/2, 1)");
  if (l < 1) throw DomainError("moment order l must be >= 1");
  const long double q =
      expl(-2.0L * static_cast<long double>(sigma) * logl(static_cast<long double>(p)));
  // term_k = binom(l+k-1, k)^2 q^k
  long double term = 1.0L;
  long double sum = 1.0L;
  for (unsigned k = 1; k < 200000; ++k) {
    const long double ratio = static_cast<long double>(l + k - 1) / k;
    term *= ratio * ratio * q;
    sum += term;
    if (term < 1e-19L * sum && static_cast<long double>(l + k) / (k + 1) *
                                       static_cast<long double>(l + k) / (k + 1) * q <
                                   1.0L)
      return static_cast<double>(sum);
  }
  throw SeriesError("per-prime moment series did not converge");
}

double per_prime_moment(std::uint64_t p, double sigma, unsigned l) {
  if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (!(sigma > 0.5) || !(sigma < 1.0))
    throw DomainError("per-prime moment needs sigma in (1/2, 1)");
  if (l < 1) throw DomainError("moment order l must be >= 1");

  const long double ps = expl(static_cast<long double>(sigma) *
                              logl(static_cast<long double>(p)));
  const long double c = ps * ps;  // p^{2 sigma}
  const long double b = 2.0L * ps;
  const auto integrand = [&](long double theta) {
    return ipow(c / (c + 1.0L - b * cosl(theta)), l);
  };

  // trapezoid on the full period, doubling nodes; spectrally accurate here
  std::size_t n = 32;
  long double sum = 0.0L;
  for (std::size_t k = 0; k < n; ++k)
    sum += integrand(kTwoPi * static_cast<long double>(k) / static_cast<long double>(n));
  long double value = sum / static_cast<long double>(n);
  unsigned stable = 0;
  while (stable < 2) {
    if (n > (1u << 22))
      throw QuadratureError("trapezoid refinement stalled for p = " + std::to_string(p));
    for (std::size_t k = 0; k < n; ++k)
      sum += integrand(kTwoPi * (static_cast<long double>(k) + 0.5L) /
                       static_cast<long double>(n));
    n *= 2;
    const long double next = sum / static_cast<long double>(n);
    stable = fabsl(next - value) <= 1e-14L * fabsl(next) ? stable + 1 : 0;
    value = next;
  }

  const double series = per_prime_moment_series(p, sigma, l);
  const double quad = static_cast<double>(value);
  if (std::abs(quad - series) > 1e-10 * series)
    throw QuadratureError("quadrature/series disagreement for p = " +
                          std::to_string(p));
  return quad;
}

double exact_truncated_moment(const RandomZetaConfig& cfg) {
  cfg.validate();
  const auto primes = primes_up_to(cfg.prime_limit);
  // a throw must not escape the parallel blocks; record and rethrow outside
  std::atomic<std::uint64_t> failed{0};
  const double sum = blocked_sum(
      primes.size(),
      [&](std::size_t i) {
        try {
          return std::log(per_prime_moment(primes[i], cfg.sigma, cfg.l));
        } catch (const Error&) {
          failed.store(primes[i], std::memory_order_relaxed);
          return 0.0;
        }
      },
      256);
  if (failed != 0)
    throw QuadratureError("per-prime moment failed at p = " +
                          std::to_string(failed.load()));
  return sum;
}

ZetaSampler::ZetaSampler(std::uint64_t seed, std::uint64_t prime_limit)
    : seed_(seed), prime_limit_(prime_limit), primes_(primes_up_to(prime_limit)) {
  if (prime_limit < 2) throw DomainError("prime limit must be >= 2");
}

double ZetaSampler::angle(std::uint64_t sample_index, std::uint64_t p) const {
  return kTwoPi * uniform53(counter_hash(seed_, sample_index, p));
}

std::vector<double> ZetaSampler::inv_powers(double sigma) const {
  std::vector<double> out(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i)
    out[i] = pow_real(primes_[i], -sigma);
  return out;
}

std::complex<double> ZetaSampler::zeta_sample(std::uint64_t sample_index,
                                              const std::vector<double>& inv_ps) const {
  std::complex<double> prod = 1.0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const double theta = angle(sample_index, primes_[i]);
    prod /= 1.0 - std::polar(inv_ps[i], theta);
  }
  return prod;
}

std::complex<double> ZetaSampler::zeta_sample(std::uint64_t sample_index,
                                              double sigma) const {
  return zeta_sample(sample_index, inv_powers(sigma));
}

std::complex<double> ZetaSampler::weight(std::uint64_t sample_index,
                                         std::uint64_t n) const {
  if (n == 0) throw DomainError("weight index must be >= 1");
  double theta = 0.0;
  u64 rest = n;
  for (const std::uint32_t p : primes_) {
    if (static_cast<u64>(p) * p > rest) break;
    unsigned r = 0;
    while (rest % p == 0) {
      rest /= p;
      ++r;
    }
    if (r != 0) theta += static_cast<double>(r) * angle(sample_index, p);
  }
  if (rest > 1) {
    if (rest > prime_limit_)
      throw SmoothnessError("support element " + std::to_string(n) +
                            " has prime factor " + std::to_string(rest) +
                            " above P = " + std::to_string(prime_limit_));
    theta += angle(sample_index, rest);
  }
  return std::polar(1.0, theta);
}

std::vector<std::complex<double>> sample_zeta(const RandomZetaConfig& cfg) {
  cfg.validate();
  const ZetaSampler sampler(cfg.seed, cfg.prime_limit);
  const auto inv_ps = sampler.inv_powers(cfg.sigma);
  std::vector<std::complex<double>> out(cfg.samples);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cfg.samples); ++i)
    out[static_cast<std::size_t>(i)] =
        sampler.zeta_sample(static_cast<u64>(i), inv_ps);
  return out;
}

std::complex<double> dirichlet_weight_sum(const WeightedSupport& f,
                                          const ZetaSampler& sampler,
                                          std::uint64_t sample_index) {
  std::complex<double> sum = 0.0;
  for (const auto& [a, w] : f.entries()) sum += w * sampler.weight(sample_index, a);
  return sum;
}

namespace {

// per-sample |D zeta|^2 or |D|^4 runner shared by the two MC checks
std::vector<double> run_samples(const WeightedSupport& f, double sigma,
                                std::uint64_t prime_limit, std::size_t samples,
                                std::uint64_t seed, bool with_zeta) {
  if (samples < 2) throw DomainError("need at least 2 samples");
  const ZetaSampler sampler(seed, prime_limit);
  // validate smoothness once, up front
  for (const auto& [a, w] : f.entries()) (void)sampler.weight(0, a);
  const auto inv_ps = with_zeta ? sampler.inv_powers(sigma) : std::vector<double>{};

  std::vector<double> vals(samples);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(samples); ++i) {
    const u64 idx = static_cast<u64>(i);
    const std::complex<double> d = dirichlet_weight_sum(f, sampler, idx);
    if (with_zeta) {
      const std::complex<double> z = sampler.zeta_sample(idx, inv_ps);
      vals[static_cast<std::size_t>(i)] = std::norm(d * z);
    } else {
      const double n2 = std::norm(d);
      vals[static_cast<std::size_t>(i)] = n2 * n2;
    }
  }
  return vals;
}

}  // namespace

IdentityCheckResult identity_check(const WeightedSupport& f, double sigma,
                                   std::uint64_t prime_limit, std::size_t samples,
                                   std::uint64_t seed) {
  if (!(sigma > 0.5) || !(sigma < 1.0))
    throw DomainError("identity check needs sigma in (1/2, 1)");

  IdentityCheckResult r;
  if (f.empty()) {
    r.mc.samples = samples;
    return r;  // both sides vanish
  }
  const auto vals = run_samples(f, sigma, prime_limit, samples, seed, true);
  const auto stats = mean_and_stderr(vals);
  r.mc = {stats.mean, stats.stderr_mean, samples};
  r.exact = zeta_prime_product(2.0 * sigma, prime_limit) * gcd_sum(f, sigma).value;
  r.z_score = stats.stderr_mean > 0.0 ? (stats.mean - r.exact) / stats.stderr_mean : 0.0;
  return r;
}

MonteCarloEstimate fourth_moment_dirichlet(const WeightedSupport& f,
                                           std::size_t samples, std::uint64_t seed,
                                           std::uint64_t prime_limit) {
  if (f.empty()) return {0.0, 0.0, samples};
  const auto vals = run_samples(f, 0.6, prime_limit, samples, seed, false);
  const auto stats = mean_and_stderr(vals);
  return {stats.mean, stats.stderr_mean, samples};
}

double exact_fourth_moment(const WeightedSupport& f) {
  const std::size_t m = f.size();
  if (m == 0) return 0.0;
  const u64 budget = Budgets::pair_budget();
  if (static_cast<u64>(m) > budget / m)
    throw SizeError("support^2 exceeds the hash budget");
  if (f.max_element() > 0xFFFFFFFFull)
    throw SizeError("exact fourth moment needs elements below 2^32");

  std::unordered_map<u64, double> prod;
  prod.reserve(std::min<std::size_t>(m * m, std::size_t{1} << 22));
  for (const auto& [a, wa] : f.entries())
    for (const auto& [b, wb] : f.entries()) prod[a * b] += wa * wb;

  std::vector<std::pair<u64, double>> terms(prod.begin(), prod.end());
  std::sort(terms.begin(), terms.end());
  NeumaierSum sum;
  for (const auto& [k, w] : terms) sum.add(w * w);
  return sum.value();
}

MomentEstimate moment_report(const RandomZetaConfig& cfg) {
  cfg.validate();
  MomentEstimate est;
  est.exact_log = exact_truncated_moment(cfg);
  const double beta = compute_beta();
  est.bound_rhs = (static_cast<double>(cfg.l) * cfg.l + beta * cfg.l) *
                  std::log(1.0 / (cfg.sigma - 0.5));
  est.bound_holds = *est.exact_log <= est.bound_rhs;
  est.samples = cfg.samples;
  if (cfg.samples >= 2) {
    const auto zs = sample_zeta(cfg);
    std::vector<double> vals(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i)
      vals[i] = static_cast<double>(ipow(std::norm(zs[i]), cfg.l));
    const auto stats = mean_and_stderr(vals);
    est.mc_mean = stats.mean;
    est.mc_stderr = stats.stderr_mean;
  }
  return est;
}

}  // namespace mppc
