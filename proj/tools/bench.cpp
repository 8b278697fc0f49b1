// Timing harness comparing the OpenMP kernels against their serial
// references on representative workloads. Numbers are wall-clock; every
// pairing also cross-checks that both routes produce the same result.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "mppc/bounds.hpp"
#include "mppc/energy.hpp"
#include "mppc/gcdsum.hpp"
#include "mppc/paircorr.hpp"
#include "mppc/pointset.hpp"
#include "mppc/rng.hpp"
#include "mppc/sequences.hpp"

using namespace mppc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.3f s %10.3f s %7.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  const int max_threads = omp_get_max_threads();
  std::printf("threads: 1 vs %d%s\n\n", max_threads, quick ? " (quick)" : "");
  std::printf("%-34s %12s %12s %8s\n", "kernel", "serial", "parallel", "speedup");

  // pair counting: sorted window scan, serial two-pointer vs parallel search
  {
    const std::size_t n = quick ? 200000 : 2000000;
    std::vector<std::uint64_t> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = counter_hash(1, i, 0);
    std::sort(pts.begin(), pts.end());
    const std::uint64_t threshold = ~0ull / static_cast<std::uint64_t>(n) * 4;
    std::uint64_t a = 0, b = 0;
    const double ts = timed([&] { a = detail::count_within_two_pointer(pts, threshold); });
    const double tp = timed([&] { b = detail::count_within_sorted(pts, threshold); });
    row("pair window count", ts, tp, a == b);
  }

  // additive energy: serial sum-hash route vs parallel difference route
  {
    const auto seq = gen_nlogk(3.0, quick ? 3000 : 8000);
    mpz_class a, b;
    const double ts = timed([&] { a = additive_energy_via_sums(seq); });
    const double tp = timed([&] { b = additive_energy(seq).energy; });
    row("additive energy", ts, tp, a == b);
  }

  // gcd sum: quadratic naive vs divisor sieve (both parallel internally);
  // the positive-difference support is ~N^2/2 points
  {
    const auto seq = gen_power(2, quick ? 120 : 200);
    const auto f = WeightedSupport::from_representation(
        representation_function(seq, DomainTag::positive_differences));
    double a = 0.0, b = 0.0;
    const double ts = timed([&] { a = gcd_sum_naive(f, 0.5).value; });
    const double tp = timed([&] { b = gcd_sum_sieve(f, 0.5).value; });
    row("gcd sum naive vs sieve", ts, tp, std::abs(a - b) <= 1e-9 * a);
  }

  // alpha-variance Monte Carlo: one thread vs all
  {
    const auto seq = gen_power(2, quick ? 500 : 2000);
    const std::size_t m = quick ? 24 : 96;
    VarianceEstimate one, all;
    (void)variance_over_alpha(seq, 1.0, m, 7);  // warm caches
    omp_set_num_threads(1);
    const double ts = timed([&] { one = variance_over_alpha(seq, 1.0, m, 7); });
    omp_set_num_threads(max_threads);
    const double tp = timed([&] { all = variance_over_alpha(seq, 1.0, m, 7); });
    row("alpha-variance MC", ts, tp,
        one.variance == all.variance && one.mean == all.mean);
  }

  // inequality grid scan: one thread vs all
  {
    const std::size_t nodes = quick ? 2000 : 6000;
    LemmaReport one, all;
    (void)verify_lemma_beta_inequality(nodes, nodes);  // warm caches
    omp_set_num_threads(1);
    const double ts = timed([&] { one = verify_lemma_beta_inequality(nodes, nodes); });
    omp_set_num_threads(max_threads);
    const double tp = timed([&] { all = verify_lemma_beta_inequality(nodes, nodes); });
    row("inequality grid scan", ts, tp,
        one.min_margin == all.min_margin &&
            one.worst_point == all.worst_point);
  }

  return 0;
}
