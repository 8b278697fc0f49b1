#include "mppc/energy.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <complex>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

#include "mppc/errors.hpp"
#include "mppc/rng.hpp"
#include "mppc/util.hpp"

namespace mppc {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kDenseLimit = 1ull << 27;       // dense count array cutoff
constexpr u64 kThreadLocalDense = 1ull << 25; // per-thread copies below this

mpz_class mpz_from_u128(u128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64));
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), hi.get_mpz_t(), 64);
  out += mpz_class(static_cast<unsigned long>(v));
  return out;
}

void check_pair_budget(std::size_t n) {
  const u64 budget = Budgets::pair_budget();
  if (static_cast<u64>(n) > budget / n)
    throw SizeError("|A|^2 exceeds the pair budget (" + std::to_string(budget) +
                    "); raise MPPC_PAIR_BUDGET to override");
}

// Difference counts of an increasing u64 sequence, v > 0 only.
// Dense array when the spread allows, hash map otherwise.
struct DiffCounts {
  bool dense = false;
  u64 max_diff = 0;
  std::vector<u32> counts;                 // dense: counts[v]
  std::unordered_map<u64, u64> hashed;     // sparse
};

DiffCounts diff_counts_u64(const std::vector<u64>& a) {
  const std::size_t n = a.size();
  DiffCounts dc;
  dc.max_diff = a.back() - a.front();
  dc.dense = dc.max_diff <= kDenseLimit;

  if (dc.dense) {
    dc.counts.assign(dc.max_diff + 1, 0);
    if (dc.max_diff <= kThreadLocalDense) {
#pragma omp parallel
      {
        std::vector<u32> local(dc.max_diff + 1, 0);
#pragma omp for schedule(dynamic, 64) nowait
        for (std::ptrdiff_t j = 1; j < static_cast<std::ptrdiff_t>(n); ++j)
          for (std::ptrdiff_t i = 0; i < j; ++i)
            ++local[a[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(i)]];
#pragma omp critical
        {
          for (std::size_t v = 0; v <= dc.max_diff; ++v) dc.counts[v] += local[v];
        }
      }
    } else {
#pragma omp parallel for schedule(dynamic, 64)
      for (std::ptrdiff_t j = 1; j < static_cast<std::ptrdiff_t>(n); ++j)
        for (std::ptrdiff_t i = 0; i < j; ++i) {
          const u64 v = a[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(i)];
#pragma omp atomic update
          ++dc.counts[v];
        }
    }
  } else {
    const int nt = omp_get_max_threads();
    std::vector<std::unordered_map<u64, u64>> local(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
    {
      auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
      mine.reserve(n);
#pragma omp for schedule(dynamic, 64)
      for (std::ptrdiff_t j = 1; j < static_cast<std::ptrdiff_t>(n); ++j)
        for (std::ptrdiff_t i = 0; i < j; ++i)
          ++mine[a[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(i)]];
    }
    dc.hashed = std::move(local[0]);
    for (std::size_t t = 1; t < local.size(); ++t)
      for (const auto& [v, c] : local[t]) dc.hashed[v] += c;
  }
  return dc;
}

// sum of squared counts, exact
u128 sum_sq_dense(const std::vector<u32>& counts) {
  const std::size_t n = counts.size();
  const std::size_t block = 1 << 16;
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<u128> partial(nblocks, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    u128 acc = 0;
    const std::size_t lo = static_cast<std::size_t>(b) * block;
    const std::size_t hi = std::min(n, lo + block);
    for (std::size_t i = lo; i < hi; ++i)
      acc += static_cast<u128>(counts[i]) * counts[i];
    partial[static_cast<std::size_t>(b)] = acc;
  }
  u128 total = 0;
  for (u128 p : partial) total += p;
  return total;
}

std::map<mpz_class, u64> diff_counts_big(const IntegerSequence& a) {
  std::map<mpz_class, u64> counts;
  const std::size_t n = a.size();
  mpz_class d;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      d = a.term(j) - a.term(i);
      ++counts[d];
    }
  return counts;
}

struct Hash128 {
  std::size_t operator()(u128 v) const {
    return static_cast<std::size_t>(
        mix64(static_cast<u64>(v) ^ mix64(static_cast<u64>(v >> 64))));
  }
};

}  // namespace

RepresentationWeights::RepresentationWeights(
    DomainTag tag, std::size_t set_size,
    std::vector<std::pair<u64, u64>> pos,
    std::vector<std::pair<mpz_class, u64>> pos_big)
    : tag_(tag), set_size_(set_size), small_(pos_big.empty()),
      pos_u64_(std::move(pos)), pos_big_(std::move(pos_big)) {}

const std::vector<std::pair<u64, u64>>& RepresentationWeights::positive_u64()
    const {
  if (!small_) throw SizeError("representation support exceeds 64 bits");
  return pos_u64_;
}

std::uint64_t RepresentationWeights::count(const mpz_class& v) const {
  if (v == 0) return tag_ == DomainTag::differences ? set_size_ : 0;
  mpz_class av = abs(v);
  if (v < 0 && tag_ == DomainTag::positive_differences) return 0;
  if (small_) {
    if (!av.fits_ulong_p()) return 0;
    const u64 key = mpz_get_ui(av.get_mpz_t());
    const auto it = std::lower_bound(
        pos_u64_.begin(), pos_u64_.end(), key,
        [](const auto& e, u64 k) { return e.first < k; });
    return it != pos_u64_.end() && it->first == key ? it->second : 0;
  }
  const auto it = std::lower_bound(
      pos_big_.begin(), pos_big_.end(), av,
      [](const auto& e, const mpz_class& k) { return e.first < k; });
  return it != pos_big_.end() && it->first == av ? it->second : 0;
}

std::size_t RepresentationWeights::support_size() const {
  const std::size_t pos = small_ ? pos_u64_.size() : pos_big_.size();
  return tag_ == DomainTag::differences ? 2 * pos + 1 : pos;
}

mpz_class RepresentationWeights::total_weight() const {
  u128 pos_sum = 0;
  if (small_)
    for (const auto& [v, c] : pos_u64_) pos_sum += c;
  else
    for (const auto& [v, c] : pos_big_) pos_sum += c;
  mpz_class total = mpz_from_u128(pos_sum);
  if (tag_ == DomainTag::differences) total = 2 * total + set_size_;
  return total;
}

RepresentationWeights representation_function(const IntegerSequence& a,
                                              DomainTag tag) {
  check_pair_budget(a.size());

  std::vector<std::pair<u64, u64>> pos;
  std::vector<std::pair<mpz_class, u64>> pos_big;

  if (a.fits_u64()) {
    auto dc = diff_counts_u64(a.as_u64());
    if (dc.dense) {
      for (u64 v = 1; v <= dc.max_diff; ++v)
        if (dc.counts[v] != 0) pos.emplace_back(v, dc.counts[v]);
    } else {
      pos.assign(dc.hashed.begin(), dc.hashed.end());
      std::sort(pos.begin(), pos.end());
    }
  } else {
    auto counts = diff_counts_big(a);
    pos_big.assign(counts.begin(), counts.end());
  }
  return RepresentationWeights(tag, a.size(), std::move(pos), std::move(pos_big));
}

EnergyReport additive_energy(const IntegerSequence& a, double c_exponent) {
  check_pair_budget(a.size());
  const std::size_t n = a.size();

  u128 pos_sq = 0;
  if (a.fits_u64()) {
    auto dc = diff_counts_u64(a.as_u64());
    if (dc.dense) {
      pos_sq = sum_sq_dense(dc.counts);
    } else {
      for (const auto& [v, c] : dc.hashed) pos_sq += static_cast<u128>(c) * c;
    }
  } else {
    for (const auto& [v, c] : diff_counts_big(a))
      pos_sq += static_cast<u128>(c) * c;
  }

  EnergyReport rep;
  rep.n = n;
  // E = r(0)^2 + 2 sum_{v>0} r(v)^2
  rep.energy = mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n) +
               2 * mpz_from_u128(pos_sq);
  rep.lower = mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n);
  rep.upper = rep.lower * static_cast<unsigned long>(n);
  rep.c_exponent = c_exponent;
  rep.normalized = mpz_get_d(rep.energy.get_mpz_t()) *
                   std::pow(std::log(static_cast<double>(n)), c_exponent) /
                   std::pow(static_cast<double>(n), 3.0);
  return rep;
}

mpz_class additive_energy_fft(const IntegerSequence& a) {
  if (!a.fits_u64())
    throw SizeError("fft energy route needs terms below 2^64");
  const auto& t = a.as_u64();
  const u64 spread = t.back() - t.front();
  if (spread > kDenseLimit)
    throw SizeError("fft energy route limited to spread 2^27");
  const std::size_t n = t.size();

  // indicator of A - min(A), zero padded to kill circular wraparound
  std::size_t len = 1;
  while (len < 2 * (spread + 1)) len <<= 1;
  std::vector<double> buf(len, 0.0);
  for (u64 x : t) buf[x - t.front()] = 1.0;

  // the FFTW planner is not thread-safe (executions are); serialize it
  static std::mutex planner_mutex;
  std::vector<std::complex<double>> spectrum(len / 2 + 1);
  fftw_plan fwd, bwd;
  {
    const std::lock_guard<std::mutex> lock(planner_mutex);
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(len), buf.data(),
                               reinterpret_cast<fftw_complex*>(spectrum.data()),
                               FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(len),
                               reinterpret_cast<fftw_complex*>(spectrum.data()),
                               buf.data(), FFTW_ESTIMATE);
  }
  fftw_execute(fwd);
  for (auto& c : spectrum) c = std::norm(c);
  fftw_execute(bwd);
  {
    const std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }

  // buf[v] = len * r(v) for v >= 0; r(0) = n
  const double scale = 1.0 / static_cast<double>(len);
  u128 pos_sq = 0;
  for (u64 v = 1; v <= spread; ++v) {
    const u64 c = static_cast<u64>(std::llround(buf[v] * scale));
    pos_sq += static_cast<u128>(c) * c;
  }
  return mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n) +
         2 * mpz_from_u128(pos_sq);
}

mpz_class additive_energy_via_sums(const IntegerSequence& a) {
  check_pair_budget(a.size());
  const std::size_t n = a.size();

  u128 total = 0;
  if (a.fits_u64()) {
    const auto& t = a.as_u64();
    const u64 min_sum = 2 * t.front();
    const u64 max_sum = 2 * t.back();
    if (t.back() <= (kDenseLimit >> 1)) {
      std::vector<u32> counts(max_sum - min_sum + 1, 0);
      for (std::size_t i = 0; i < n; ++i) {
        counts[2 * t[i] - min_sum] += 1;
        for (std::size_t j = i + 1; j < n; ++j) counts[t[i] + t[j] - min_sum] += 2;
      }
      for (u32 c : counts) total += static_cast<u128>(c) * c;
    } else {
      std::unordered_map<u64, u64> counts;
      counts.reserve(n * 2);
      for (std::size_t i = 0; i < n; ++i) {
        counts[2 * t[i]] += 1;
        for (std::size_t j = i + 1; j < n; ++j) counts[t[i] + t[j]] += 2;
      }
      for (const auto& [w, c] : counts) total += static_cast<u128>(c) * c;
    }
  } else {
    std::map<mpz_class, u64> counts;
    mpz_class w;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        w = a.term(i) + a.term(j);
        counts[w] += i == j ? 1 : 2;
      }
    for (const auto& [w, c] : counts) total += static_cast<u128>(c) * c;
  }
  return mpz_from_u128(total);
}

mpz_class fourth_moment_multiplicative(const RepresentationWeights& f) {
  if (f.tag() != DomainTag::positive_differences)
    throw DomainError("fourth moment requires positive_differences weights");

  const std::size_t m = f.small() ? f.positive_u64().size() : f.positive_big().size();
  if (m == 0) return 0;
  const u64 budget = Budgets::pair_budget();
  if (static_cast<u64>(m) > budget / m)
    throw SizeError("support^2 exceeds the hash budget; raise MPPC_PAIR_BUDGET");

  // P[ab] = sum f(a) f(b); result = sum_m P[m]^2. Weight sums stay within
  // 64 bits as long as ||f||_1 <= 2^32, which the budget implies for counts.
  u128 total = 0;
  if (f.small()) {
    const auto& e = f.positive_u64();
    u128 norm1 = 0;
    for (const auto& [v, c] : e) norm1 += c;
    if (norm1 > (1ull << 32))
      throw SizeError("||f||_1 too large for exact 64-bit product hashing");

    const std::size_t reserve_hint =
        std::min<std::size_t>(m * m, std::size_t{1} << 22);
    const bool key64 = e.back().first <= 0xFFFFFFFFull;
    if (key64) {
      std::unordered_map<u64, u64> prod;
      prod.reserve(reserve_hint);
      for (const auto& [va, ca] : e)
        for (const auto& [vb, cb] : e) prod[va * vb] += ca * cb;
      for (const auto& [k, w] : prod) total += static_cast<u128>(w) * w;
    } else {
      std::unordered_map<u128, u64, Hash128> prod;
      prod.reserve(reserve_hint);
      for (const auto& [va, ca] : e)
        for (const auto& [vb, cb] : e)
          prod[static_cast<u128>(va) * vb] += ca * cb;
      for (const auto& [k, w] : prod) total += static_cast<u128>(w) * w;
    }
  } else {
    std::map<mpz_class, u64> prod;
    mpz_class key;
    for (const auto& [va, ca] : f.positive_big())
      for (const auto& [vb, cb] : f.positive_big()) {
        key = va * vb;
        prod[key] += ca * cb;
      }
    for (const auto& [k, w] : prod) total += static_cast<u128>(w) * w;
  }
  return mpz_from_u128(total);
}

std::vector<GrowthRow> energy_growth_profile(const IntegerSequence& seq,
                                             const std::vector<std::size_t>& n_grid,
                                             double c_exponent) {
  if (n_grid.empty()) throw DomainError("empty N grid");
  std::vector<GrowthRow> rows;
  rows.reserve(n_grid.size());
  for (std::size_t n : n_grid) {
    const auto rep = additive_energy(seq.prefix(n), c_exponent);
    rows.push_back({n, rep.energy, rep.normalized, rep.normalized > 1.0});
  }
  return rows;
}

}  // namespace mppc
