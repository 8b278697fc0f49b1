#include "mppc/paircorr.hpp"

#include <algorithm>
#include <cmath>

#include "mppc/errors.hpp"
#include "mppc/util.hpp"

namespace mppc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kHalfCircle = 1ull << 63;

// s/N and tolerances mapped onto the 2^-64 fixed-point grid.
struct FixedThreshold {
  u64 threshold;   // floor((s/n) * 2^64), saturated
  u64 tolerance;   // fixed-point width of the boundary band
  bool everything; // s/n >= 1/2: every pair is within distance
};

FixedThreshold make_threshold(double s, std::size_t n, double error_bound) {
  FixedThreshold t;
  const double h = s / static_cast<double>(n);
  t.everything = h >= 0.5;
  if (t.everything) {
    t.threshold = ~0ull;
  } else {
    t.threshold = static_cast<u64>(static_cast<long double>(h) * 0x1.0p64L);
  }
  // distance of two points can drift by twice the per-point bound; one more
  // quantum covers the threshold truncation above
  const double tol = 2.0 * error_bound;
  t.tolerance = static_cast<u64>(std::ceil(std::ldexp(tol, 64))) + 1;
  return t;
}

u64 saturating_add(u64 a, u64 b) { return a + b < a ? ~0ull : a + b; }

}  // namespace

namespace detail {

std::uint64_t count_within_sorted(const std::vector<u64>& x, u64 threshold) {
  const std::size_t n = x.size();
  if (n < 2) return 0;
  if (threshold >= kHalfCircle) return static_cast<u64>(n) * (n - 1);

  // unwrap the circle: y_{k+n} = y_k + 2^64
  std::vector<u128> y(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i];
    y[i + n] = static_cast<u128>(x[i]) + (static_cast<u128>(1) << 64);
  }

  u64 within = 0;
#pragma omp parallel for schedule(static) reduction(+ : within)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const u128 hi = y[static_cast<std::size_t>(i)] + threshold;
    // the window never reaches i+n because the full turn 2^64 > threshold
    const auto end = std::upper_bound(y.begin() + i + 1,
                                      y.begin() + i + static_cast<std::ptrdiff_t>(n), hi);
    within += static_cast<u64>(end - (y.begin() + i + 1));
  }
  // each unordered pair contributes one forward gap <= threshold < 2^63;
  // the ordered count doubles it
  return 2 * within;
}

std::uint64_t count_within_two_pointer(const std::vector<u64>& x, u64 threshold) {
  const std::size_t n = x.size();
  if (n < 2) return 0;
  if (threshold >= kHalfCircle) return static_cast<u64>(n) * (n - 1);

  std::vector<u128> y(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i];
    y[i + n] = static_cast<u128>(x[i]) + (static_cast<u128>(1) << 64);
  }

  u64 within = 0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i + 1) j = i + 1;
    const u128 hi = y[i] + threshold;
    while (j < 2 * n && y[j] <= hi) ++j;
    within += j - i - 1;
  }
  return 2 * within;
}

}  // namespace detail

namespace {

u64 count_within(const std::vector<u64>& sorted_pts, u64 threshold) {
  return detail::count_within_sorted(sorted_pts, threshold);
}

PairCorrelationResult finish(const PointSet& pts, double s, u64 pair_count,
                             u64 boundary) {
  PairCorrelationResult r;
  r.s = s;
  r.n = pts.size();
  r.pair_count = pair_count;
  r.value = static_cast<double>(pair_count) / static_cast<double>(pts.size());
  r.boundary_pairs = boundary;
  return r;
}

void check_preconditions(const PointSet& pts, double s) {
  if (!(s > 0.0)) throw DomainError("pair correlation requires s > 0");
  const double h = s / static_cast<double>(pts.size());
  if (!(h > 2.0 * pts.error_bound()))
    throw PrecisionError("threshold s/N below twice the point error bound");
}

}  // namespace

PairCorrelationResult pair_correlation(const PointSet& pts, double s) {
  check_preconditions(pts, s);
  const auto t = make_threshold(s, pts.size(), pts.error_bound());

  std::vector<u64> x = pts.fixed();
  std::sort(x.begin(), x.end());

  const u64 count = count_within(x, t.threshold);
  const u64 upper = count_within(x, saturating_add(t.threshold, t.tolerance));
  const u64 lower = t.threshold > t.tolerance
                        ? count_within(x, t.threshold - t.tolerance - 1)
                        : 0;
  return finish(pts, s, count, upper - lower);
}

PairCorrelationResult pair_correlation_brute(const PointSet& pts, double s) {
  check_preconditions(pts, s);
  const std::size_t n = pts.size();
  if (n > 20000) throw SizeError("brute-force pair correlation limited to N <= 20000");
  const auto t = make_threshold(s, n, pts.error_bound());
  const auto& x = pts.fixed();

  u64 count = 0, boundary = 0;
  const u64 upper = saturating_add(t.threshold, t.tolerance);
  const u64 lower = t.threshold > t.tolerance ? t.threshold - t.tolerance : 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const u64 d = x[i] > x[j] ? x[i] - x[j] : x[j] - x[i];
      const u64 dist = std::min(d, 0 - d);
      if (dist <= t.threshold) count += 2;
      if (dist >= lower && dist <= upper) boundary += 2;
    }
  }
  return finish(pts, s, count, boundary);
}

VarianceEstimate variance_over_alpha(const IntegerSequence& seq, double s,
                                     std::size_t m, std::uint64_t seed) {
  if (m < 2) throw DomainError("variance_over_alpha requires M >= 2");
  const std::size_t n = seq.size();
  const double target =
      2.0 * s * static_cast<double>(n - 1) / static_cast<double>(n);

  const auto alphas = sample_alpha(seed, m);
  // precision preconditions are sample-independent; validating one sample
  // here keeps exceptions out of the parallel region below
  (void)pair_correlation(frac_parts(seq, alphas[0]), s);

  std::vector<double> values(m);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const PointSet pts = frac_parts(seq, alphas[static_cast<std::size_t>(i)]);
    values[static_cast<std::size_t>(i)] = pair_correlation(pts, s).value;
  }

  NeumaierSum mean_acc, var_acc;
  for (double v : values) {
    mean_acc.add(v);
    var_acc.add((v - target) * (v - target));
  }

  VarianceEstimate est;
  est.s = s;
  est.n = n;
  est.samples = m;
  est.mean = mean_acc.value() / static_cast<double>(m);
  est.variance = var_acc.value() / static_cast<double>(m);
  est.target = target;
  return est;
}

std::vector<ConvergenceRow> ppc_convergence_report(
    const IntegerSequence& seq, double s, const std::vector<std::size_t>& n_grid,
    std::size_t m, std::uint64_t seed) {
  if (n_grid.empty()) throw DomainError("empty N grid");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw DomainError("N grid must increase");
  if (n_grid.back() > seq.size())
    throw DomainError("N grid exceeds sequence length");

  std::vector<ConvergenceRow> rows;
  rows.reserve(n_grid.size());
  for (std::size_t n : n_grid) {
    const auto est = variance_over_alpha(seq.prefix(n), s, m, seed);
    rows.push_back({n, s, est.mean, est.target, est.variance, m, seed});
  }
  return rows;
}

}  // namespace mppc
