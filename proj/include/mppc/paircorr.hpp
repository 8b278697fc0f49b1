#pragma once

#include <cstdint>
#include <vector>

#include "mppc/pointset.hpp"
#include "mppc/sequences.hpp"

namespace mppc {

struct PairCorrelationResult {
  double s = 0.0;
  std::size_t n = 0;
  std::uint64_t pair_count = 0;  // ordered pairs of distinct indices
  double value = 0.0;            // pair_count / n
  // Pairs whose circle distance lies within twice the per-point error bound
  // of the threshold s/n. They are counted in pair_count (the comparison is
  // closed) and reported here so callers can bound the ambiguity.
  std::uint64_t boundary_pairs = 0;
};

// #{(n,m): n != m, ||x_n - x_m|| <= s/N} / N on the stored fixed-point
// points. Sorted window counting, O(N log N); parallel over the outer index.
PairCorrelationResult pair_correlation(const PointSet& pts, double s);

// Same contract by direct double loop over ordered pairs; the serial
// reference for the window kernel. Guarded to n <= 20000.
PairCorrelationResult pair_correlation_brute(const PointSet& pts, double s);

struct VarianceEstimate {
  double s = 0.0;
  std::size_t n = 0;
  std::size_t samples = 0;  // M
  double mean = 0.0;        // mean of R2 over the alpha samples
  double variance = 0.0;    // mean of (R2 - target)^2, population form
  double target = 0.0;      // 2s(N-1)/N
};

// Monte Carlo estimate of the integral of (R2(s,alpha,N) - 2s(N-1)/N)^2
// over alpha in [0,1), with M samples from sample_alpha(seed, M). Samples
// run in parallel; results are worker-count independent.
VarianceEstimate variance_over_alpha(const IntegerSequence& seq, double s,
                                     std::size_t m, std::uint64_t seed);

struct ConvergenceRow {
  std::size_t n = 0;
  double s = 0.0;
  double mean_r2 = 0.0;
  double target = 0.0;
  double variance = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Per-prefix statistics across an increasing N grid.
std::vector<ConvergenceRow> ppc_convergence_report(
    const IntegerSequence& seq, double s, const std::vector<std::size_t>& n_grid,
    std::size_t m, std::uint64_t seed);

namespace detail {
// Ordered pairs with fixed-point circle distance <= threshold;
// the two variants must agree exactly on every input.
std::uint64_t count_within_sorted(const std::vector<std::uint64_t>& sorted_pts,
                                  std::uint64_t threshold);
std::uint64_t count_within_two_pointer(
    const std::vector<std::uint64_t>& sorted_pts, std::uint64_t threshold);
}  // namespace detail

}  // namespace mppc
