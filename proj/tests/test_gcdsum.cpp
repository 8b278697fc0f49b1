#include <doctest.h>

#include <cmath>

#include "mppc/errors.hpp"
#include "mppc/gcdsum.hpp"
#include "test_helpers.hpp"

using namespace mppc;

namespace {

WeightedSupport random_support(std::uint64_t case_id, std::size_t max_size,
                               std::uint64_t max_elem) {
  test::CaseRng rng(case_id ^ 0x9cdull);
  const std::size_t n = 1 + rng.below(max_size);
  std::vector<std::pair<std::uint64_t, double>> e;
  for (std::size_t i = 0; i < n; ++i)
    e.emplace_back(1 + rng.below(max_elem), 2.0 * rng.uniform());
  return WeightedSupport(std::move(e));
}

IntegerSequence seq_of(std::vector<std::uint64_t> v) {
  std::vector<mpz_class> terms;
  for (auto x : v) terms.emplace_back(static_cast<unsigned long>(x));
  return IntegerSequence(std::move(terms), "t");
}

}  // namespace

TEST_CASE("point mass gives exactly one") {
  for (std::uint64_t n : {1ull, 7ull, 360360ull}) {
    for (double sigma : {0.25, 0.5, 0.75, 1.0}) {
      const auto f = WeightedSupport::uniform({n});
      CHECK(gcd_sum_naive(f, sigma).value == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(gcd_sum_sieve(f, sigma).value == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-point hand value 2 + sqrt 2") {
  const double expect = 3.4142135623730950;  // 2 + sqrt 2
  const auto f = WeightedSupport::uniform({1, 2});
  CHECK(gcd_sum_naive(f, 0.5).value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(gcd_sum_sieve(f, 0.5).value == doctest::Approx(expect).epsilon(1e-12));
  // dilated copy {2,4} evaluates to the same sum
  const auto g = WeightedSupport::uniform({2, 4});
  CHECK(gcd_sum_naive(g, 0.5).value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(gcd_sum_sieve(g, 0.5).value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("naive and sieve paths agree on random supports") {
  for (std::uint64_t c = 0; c < 40; ++c) {
    for (double sigma : {0.5, 0.6, 0.75, 1.0}) {
      const auto f = random_support(c, 200, 1000000);
      const double a = gcd_sum_naive(f, sigma).value;
      const double b = gcd_sum_sieve(f, sigma).value;
      CHECK(std::abs(a - b) <= 1e-9 * std::max(a, b));
    }
  }
}

TEST_CASE("dilation leaves the sum unchanged") {
  for (std::uint64_t c = 0; c < 20; ++c) {
    for (std::uint64_t lambda : {2ull, 3ull, 7ull}) {
      const auto f = random_support(c, 120, 100000);
      std::vector<std::pair<std::uint64_t, double>> scaled;
      for (const auto& [n, w] : f.entries()) scaled.emplace_back(n * lambda, w);
      const WeightedSupport g(std::move(scaled));
      const double a = gcd_sum_naive(f, 0.6).value;
      const double b = gcd_sum_naive(g, 0.6).value;
      CHECK(std::abs(a - b) <= 1e-10 * std::max(a, b));
    }
  }
}

TEST_CASE("diagonal lower bound and weight monotonicity") {
  for (std::uint64_t c = 0; c < 20; ++c) {
    const auto f = random_support(c, 80, 50000);
    const double base = gcd_sum_naive(f, 0.7).value;
    CHECK(base >= f.norm2sq() - 1e-12 * f.norm2sq());

    auto entries = f.entries();
    entries[c % entries.size()].second += 0.5;
    const WeightedSupport g(std::move(entries));
    CHECK(gcd_sum_naive(g, 0.7).value >= base - 1e-12 * base);
  }
}

TEST_CASE("difference-set gcd sum hand values") {
  CHECK(difference_set_gcd_sum(seq_of({1, 2}), 0.5).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  // support f(1) = 2, f(2) = 1: 4 + 1 + 2 * (2 / sqrt 2) = 5 + 2 sqrt 2
  CHECK(difference_set_gcd_sum(seq_of({1, 2, 3}), 0.5).value ==
        doctest::Approx(7.8284271247461901).epsilon(1e-12));

  const auto rep = representation_function(seq_of({1, 2, 4, 8}),
                                           DomainTag::positive_differences);
  const auto f = WeightedSupport::from_representation(rep);
  const double naive = gcd_sum_naive(f, 0.5).value;
  const double sieve = gcd_sum_sieve(f, 0.5).value;
  CHECK(std::abs(naive - sieve) <= 1e-9 * naive);
}

TEST_CASE("guards: sigma domain, naive size, sieve limit") {
  const auto f = WeightedSupport::uniform({1, 2, 3});
  CHECK_THROWS_AS(gcd_sum_naive(f, 0.0), DomainError);
  CHECK_THROWS_AS(gcd_sum_naive(f, 1.5), DomainError);

  std::vector<std::uint64_t> many(20001);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = i + 1;
  CHECK_THROWS_AS(gcd_sum_naive(WeightedSupport::uniform(many), 0.5), SizeError);

  CHECK_THROWS_AS(
      gcd_sum_sieve(WeightedSupport::uniform({100000001ull}), 0.5),
      SieveLimitError);
}

TEST_CASE("weighted support validation, norms and merging") {
  CHECK_THROWS_AS(WeightedSupport({{0, 1.0}}), DomainError);
  CHECK_THROWS_AS(WeightedSupport({{3, -1.0}}), DomainError);

  const WeightedSupport f({{4, 1.5}, {2, 1.0}, {4, 0.5}, {9, 0.0}});
  REQUIRE(f.size() == 2);  // zero weight dropped, duplicates merged
  CHECK(f.entries()[0] == std::pair<std::uint64_t, double>{2, 1.0});
  CHECK(f.entries()[1].second == doctest::Approx(2.0));
  CHECK(f.norm1() == doctest::Approx(3.0));
  CHECK(f.norm2sq() == doctest::Approx(5.0));
  CHECK(f.max_element() == 4);
}

TEST_CASE("support files parse value:weight lines") {
  test::TempFile good("support.txt", "# weights\n3:2.5\n7\n10:1\n");
  const auto f = WeightedSupport::load(good.path());
  REQUIRE(f.size() == 3);
  CHECK(f.entries()[0] == std::pair<std::uint64_t, double>{3, 2.5});
  CHECK(f.entries()[1] == std::pair<std::uint64_t, double>{7, 1.0});

  test::TempFile bad("support_bad.txt", "3:x\n");
  CHECK_THROWS_AS(WeightedSupport::load(bad.path()), ParseError);
  CHECK_THROWS_AS(WeightedSupport::load("missing_support.txt"), ParseError);
}

TEST_CASE("representation conversion demands the positive tag") {
  const auto rep = representation_function(seq_of({1, 2, 3}), DomainTag::differences);
  CHECK_THROWS_AS(WeightedSupport::from_representation(rep), DomainError);
}

TEST_CASE("empty support evaluates to zero") {
  const auto rep = representation_function(seq_of({5}), DomainTag::positive_differences);
  const auto f = WeightedSupport::from_representation(rep);
  CHECK(f.empty());
  CHECK(gcd_sum_sieve(f, 0.5).value == 0.0);
  CHECK(gcd_sum_naive(f, 0.5).value == 0.0);
  CHECK(difference_set_gcd_sum(seq_of({5}), 0.5).value == 0.0);
}
