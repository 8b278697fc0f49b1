#include "mppc/gcdsum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mppc/errors.hpp"
#include "mppc/primes.hpp"
#include "mppc/util.hpp"

namespace mppc {

namespace {

using u64 = std::uint64_t;

constexpr std::size_t kNaiveGuard = 20000;
constexpr u64 kDenseDivisorLimit = 1ull << 24;

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || sigma > 1.0)
    throw DomainError("gcd sum requires 0 < sigma <= 1");
}

// x^{2 sigma}; exact at sigma = 1/2
long double pow_two_sigma(u64 x, double two_sigma) {
  if (two_sigma == 1.0) return static_cast<long double>(x);
  return expl(static_cast<long double>(two_sigma) *
              logl(static_cast<long double>(x)));
}

// J(d) = prod over p^k || d of (p^{2s k} - p^{2s(k-1)}).
double gcd_power_kernel(const SpfTable& spf, u64 d, double two_sigma) {
  long double j = 1.0L;
  u64 rest = d;
  while (rest > 1) {
    const u64 p = spf.spf(rest);
    unsigned k = 0;
    u64 pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
      ++k;
    }
    j *= pow_two_sigma(pk, two_sigma) - pow_two_sigma(pk / p, two_sigma);
  }
  return static_cast<double>(j);
}

}  // namespace

WeightedSupport::WeightedSupport(
    std::vector<std::pair<std::uint64_t, double>> entries) {
  for (const auto& [n, w] : entries) {
    if (n < 1) throw DomainError("support element below 1");
    if (!(w >= 0.0)) throw DomainError("negative or NaN weight");
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& [n, w] : entries) {
    if (w == 0.0) continue;
    if (!entries_.empty() && entries_.back().first == n)
      entries_.back().second += w;
    else
      entries_.emplace_back(n, w);
  }
  NeumaierSum n1, n2;
  for (const auto& [n, w] : entries_) {
    n1.add(w);
    n2.add(w * w);
  }
  norm1_ = n1.value();
  norm2sq_ = n2.value();
}

WeightedSupport WeightedSupport::uniform(const std::vector<std::uint64_t>& elements) {
  std::vector<std::pair<u64, double>> e;
  e.reserve(elements.size());
  for (u64 n : elements) e.emplace_back(n, 1.0);
  return WeightedSupport(std::move(e));
}

WeightedSupport WeightedSupport::from_representation(const RepresentationWeights& r) {
  if (r.tag() != DomainTag::positive_differences)
    throw DomainError("support conversion expects positive_differences weights");
  std::vector<std::pair<u64, double>> e;
  e.reserve(r.positive_u64().size());
  for (const auto& [v, c] : r.positive_u64())
    e.emplace_back(v, static_cast<double>(c));
  return WeightedSupport(std::move(e));
}

WeightedSupport WeightedSupport::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open support file: " + path);
  std::vector<std::pair<u64, double>> e;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    const auto colon = tok.find(':');
    try {
      if (colon == std::string::npos) {
        e.emplace_back(std::stoull(tok), 1.0);
      } else {
        e.emplace_back(std::stoull(tok.substr(0, colon)),
                       std::stod(tok.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw ParseError("malformed support entry at line " + std::to_string(lineno));
    }
  }
  return WeightedSupport(std::move(e));
}

GcdSumValue gcd_sum_naive(const WeightedSupport& f, double sigma) {
  check_sigma(sigma);
  if (f.size() > kNaiveGuard)
    throw SizeError("naive gcd sum limited to 20000 support points");

  const auto& e = f.entries();
  const std::size_t n = e.size();

  // a^-sigma once per element
  std::vector<double> ipow(n);
  for (std::size_t i = 0; i < n; ++i) ipow[i] = pow_real(e[i].first, -sigma);

  // diagonal terms are exactly the squared weights
  NeumaierSum diag;
  for (const auto& [a, w] : e) diag.add(w * w);

  const double two_sigma = 2.0 * sigma;
  const double off =
      blocked_sum(n,
                  [&](std::size_t i) {
                    NeumaierSum row;
                    const auto& [ai, wi] = e[i];
                    for (std::size_t j = i + 1; j < n; ++j) {
                      const auto& [aj, wj] = e[j];
                      const u64 g = binary_gcd(ai, aj);
                      const double gp =
                          g == 1 ? 1.0
                                 : static_cast<double>(pow_two_sigma(g, two_sigma));
                      row.add(wi * wj * gp * ipow[i] * ipow[j]);
                    }
                    return row.value();
                  },
                  64);

  GcdSumValue v;
  v.sigma = sigma;
  v.value = diag.value() + 2.0 * off;
  v.method = GcdSumMethod::naive;
  v.support_size = n;
  return v;
}

GcdSumValue gcd_sum_sieve(const WeightedSupport& f, double sigma) {
  check_sigma(sigma);
  GcdSumValue v;
  v.sigma = sigma;
  v.method = GcdSumMethod::divisor_sieve;
  v.support_size = f.size();
  if (f.empty()) return v;

  const u64 max_elem = f.max_element();
  if (max_elem > Budgets::sieve_limit())
    throw SieveLimitError("support element " + std::to_string(max_elem) +
                          " above the sieve limit; raise MPPC_SIEVE_LIMIT");
  const SpfTable spf(max_elem);
  const double two_sigma = 2.0 * sigma;

  // g[d] = sum over support multiples of d of f(a) a^-sigma
  if (max_elem <= kDenseDivisorLimit) {
    std::vector<double> g(max_elem + 1, 0.0);
    for (const auto& [a, w] : f.entries()) {
      const double wa = w * pow_real(a, -sigma);
      for (u64 d : spf.divisors(a)) g[d] += wa;
    }
    v.value = blocked_sum(max_elem, [&](std::size_t i) {
      const u64 d = i + 1;
      if (g[d] == 0.0) return 0.0;
      return gcd_power_kernel(spf, d, two_sigma) * g[d] * g[d];
    });
  } else {
    std::unordered_map<u64, double> g;
    g.reserve(f.size() * 8);
    for (const auto& [a, w] : f.entries()) {
      const double wa = w * pow_real(a, -sigma);
      for (u64 d : spf.divisors(a)) g[d] += wa;
    }
    std::vector<std::pair<u64, double>> terms(g.begin(), g.end());
    std::sort(terms.begin(), terms.end());
    v.value = blocked_sum(terms.size(), [&](std::size_t i) {
      const auto& [d, gd] = terms[i];
      return gcd_power_kernel(spf, d, two_sigma) * gd * gd;
    });
  }
  return v;
}

GcdSumValue gcd_sum(const WeightedSupport& f, double sigma) {
  if (f.size() <= 2000) return gcd_sum_naive(f, sigma);
  if (f.max_element() <= Budgets::sieve_limit()) return gcd_sum_sieve(f, sigma);
  return gcd_sum_naive(f, sigma);  // its own guard rejects oversized supports
}

GcdSumValue difference_set_gcd_sum(const IntegerSequence& a, double sigma) {
  const auto rep = representation_function(a, DomainTag::positive_differences);
  const auto f = WeightedSupport::from_representation(rep);
  return gcd_sum(f, sigma);
}

}  // namespace mppc
