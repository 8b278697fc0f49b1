#include <doctest.h>

#include <cmath>
#include <vector>

#include "mppc/errors.hpp"
#include "mppc/paircorr.hpp"
#include "test_helpers.hpp"

using namespace mppc;

namespace {

PointSet lattice(std::size_t n) {
  std::vector<double> pts(n);
  for (std::size_t j = 0; j < n; ++j)
    pts[j] = static_cast<double>(j) / static_cast<double>(n);
  return PointSet::from_points(pts, 0.0, "lattice");
}

PointSet random_points(std::uint64_t case_id, std::size_t n) {
  test::CaseRng rng(case_id ^ 0x5eedull);
  std::vector<std::uint64_t> fixed(n);
  for (auto& x : fixed) x = rng.next_u64();
  return PointSet(std::move(fixed), 0x1.0p-60, "random");
}

}  // namespace

TEST_CASE("pair correlation hand values") {
  const auto two = PointSet::from_points({0.0, 0.5}, 0.0, "t");
  const auto r1 = pair_correlation(two, 0.5);  // threshold 0.25 < distance
  CHECK(r1.pair_count == 0);
  CHECK(r1.value == 0.0);
  const auto r2 = pair_correlation(two, 1.1);  // threshold 0.55 >= 0.5
  CHECK(r2.pair_count == 2);
  CHECK(r2.value == 1.0);
}

TEST_CASE("lattice points give 2 floor(s) exactly") {
  for (std::size_t n : {10ull, 64ull, 1000ull}) {
    const auto pts = lattice(n);
    for (double s : {0.5, 1.5, 2.5}) {
      const auto r = pair_correlation(pts, s);
      CHECK(r.value == 2.0 * std::floor(s));
      CHECK(r.boundary_pairs == 0);
      const auto rb = pair_correlation_brute(pts, s);
      CHECK(rb.pair_count == r.pair_count);
    }
    // integer s sits on the lattice gap itself: the count is quantization
    // ambiguous and must be flagged, not silently resolved
    CHECK(pair_correlation(pts, 1.0).boundary_pairs > 0);
  }
}

TEST_CASE("fast path equals brute force up to N = 5000") {
  for (std::size_t n : {2000ull, 5000ull}) {
    const auto pts = random_points(n, n);
    for (double s : {0.3, 2.0, 170.0}) {
      const auto fast = pair_correlation(pts, s);
      const auto brute = pair_correlation_brute(pts, s);
      CHECK(fast.pair_count == brute.pair_count);
      CHECK(fast.boundary_pairs == brute.boundary_pairs);
    }
  }
}

TEST_CASE("fast path equals brute force on random sets") {
  for (std::uint64_t c = 0; c < 60; ++c) {
    test::CaseRng rng(c);
    const std::size_t n = 2 + rng.below(400);
    const auto pts = random_points(c, n);
    const double s = 0.01 + rng.uniform() * 0.7 * static_cast<double>(n);
    const auto fast = pair_correlation(pts, s);
    const auto brute = pair_correlation_brute(pts, s);
    CHECK(fast.pair_count == brute.pair_count);
    CHECK(fast.boundary_pairs == brute.boundary_pairs);
    CHECK(fast.value == brute.value);
    CHECK(fast.pair_count % 2 == 0);
    CHECK(fast.pair_count <= static_cast<std::uint64_t>(n) * (n - 1));
  }
}

TEST_CASE("window kernel variants agree") {
  for (std::uint64_t c = 0; c < 40; ++c) {
    test::CaseRng rng(c + 1000);
    const std::size_t n = 2 + rng.below(600);
    auto pts = random_points(c + 1000, n).fixed();
    std::sort(pts.begin(), pts.end());
    const std::uint64_t threshold = rng.next_u64() >> (1 + rng.below(30));
    CHECK(detail::count_within_sorted(pts, threshold) ==
          detail::count_within_two_pointer(pts, threshold));
  }
}

TEST_CASE("R2 is monotone nondecreasing in s") {
  const auto pts = random_points(77, 300);
  double prev = 0.0;
  for (double s = 0.1; s < 40.0; s *= 1.7) {
    const double v = pair_correlation(pts, s).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("R2 is invariant under common rotation") {
  for (std::uint64_t c = 0; c < 20; ++c) {
    test::CaseRng rng(c + 31);
    const std::size_t n = 2 + rng.below(300);
    const auto base = random_points(c + 31, n);
    const std::uint64_t shift = rng.next_u64();
    std::vector<std::uint64_t> rotated = base.fixed();
    for (auto& x : rotated) x += shift;  // mod 2^64 by wraparound
    const PointSet rot(std::move(rotated), base.error_bound(), "rotated");
    const double s = 0.2 + rng.uniform() * static_cast<double>(n) / 4.0;
    CHECK(pair_correlation(base, s).pair_count ==
          pair_correlation(rot, s).pair_count);
  }
}

TEST_CASE("guards and degenerate cases") {
  const auto single = PointSet::from_points({0.3}, 0.0, "t");
  CHECK(pair_correlation_brute(single, 1.0).pair_count == 0);
  CHECK_THROWS_AS(pair_correlation(single, 0.0), DomainError);
  CHECK_THROWS_AS(pair_correlation(single, -1.0), DomainError);

  // threshold s/N below twice the error bound
  const auto coarse = PointSet::from_points({0.0, 0.5}, 0x1.0p-51, "t");
  CHECK_THROWS_AS(pair_correlation(coarse, 0x1.0p-50), PrecisionError);

  std::vector<std::uint64_t> big(20001, 0);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = i << 32;
  const PointSet too_big(std::move(big), 0x1.0p-60, "t");
  CHECK_THROWS_AS(pair_correlation_brute(too_big, 1.0), SizeError);
}

TEST_CASE("variance over alpha is deterministic and centered correctly") {
  const auto seq = gen_power(2, 200);
  const auto a = variance_over_alpha(seq, 1.0, 8, 42);
  const auto b = variance_over_alpha(seq, 1.0, 8, 42);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.target == doctest::Approx(2.0 * 199.0 / 200.0));
  CHECK(a.variance >= 0.0);

  const auto other_seed = variance_over_alpha(seq, 1.0, 8, 43);
  CHECK(a.mean != other_seed.mean);

  CHECK_THROWS_AS(variance_over_alpha(seq, 1.0, 1, 42), DomainError);
}

TEST_CASE("squares hold near the expected pair count at moderate size") {
  const auto seq = gen_power(2, 2000);
  const auto est = variance_over_alpha(seq, 1.0, 200, 20240603);
  CHECK(std::abs(est.mean - 2.0) < 0.15);
}

TEST_CASE("convergence report rows") {
  const auto seq = gen_power(2, 800);
  const auto rows = ppc_convergence_report(seq, 0.5, {200, 400, 800}, 24, 7);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.s == 0.5);
    CHECK(r.target == doctest::Approx(2.0 * 0.5 * (r.n - 1.0) / r.n));
    CHECK(r.samples == 24);
    CHECK(std::abs(r.mean_r2 - 1.0) < 0.5);
  }

  const auto one = ppc_convergence_report(seq, 1.0, {100}, 8, 7);
  CHECK(one.size() == 1);

  CHECK_THROWS_AS(ppc_convergence_report(seq, 1.0, {200, 100}, 8, 7), DomainError);
  CHECK_THROWS_AS(ppc_convergence_report(seq, 1.0, {2000}, 8, 7), DomainError);
  CHECK_THROWS_AS(ppc_convergence_report(seq, 1.0, {}, 8, 7), DomainError);
}
