#include <doctest.h>

#include <cmath>

#include "mppc/errors.hpp"
#include "mppc/pointset.hpp"
#include "test_helpers.hpp"

using namespace mppc;

namespace {

// independent exact reduction for small rationals: {a p / q} as a 64-bit
// fixed-point value, all in 128-bit integer arithmetic
std::uint64_t rational_fixed_oracle(std::uint64_t a, std::uint64_t p,
                                    std::uint64_t q) {
  using u128 = unsigned __int128;
  const std::uint64_t r = static_cast<std::uint64_t>(
      (static_cast<u128>(a) * p) % q);
  return static_cast<std::uint64_t>((static_cast<u128>(r) << 64) / q);
}

}  // namespace

TEST_CASE("frac_parts with rational alpha reduces exactly") {
  const auto seq = gen_power(1, 3);
  const auto pts = frac_parts(seq, RealParameter::rational(1, 3));
  REQUIRE(pts.size() == 3);
  CHECK(pts.point(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(pts.point(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(pts.point(2) == doctest::Approx(0.0));
  CHECK(pts.error_bound() <= 0x1.0p-60);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(pts.fixed_at(i) == rational_fixed_oracle(i + 1, 1, 3));
}

TEST_CASE("frac_parts with alpha = 0 is identically zero") {
  const auto pts = frac_parts(gen_power(1, 3), RealParameter::rational(0, 1));
  for (std::size_t i = 0; i < 3; ++i) CHECK(pts.point(i) == 0.0);
}

TEST_CASE("decimal alpha parses to the exact rational") {
  const auto alpha = RealParameter::parse("0.618");
  CHECK(alpha.is_rational());
  CHECK(alpha.num() == 309);
  CHECK(alpha.den() == 500);
  const auto pts = frac_parts(gen_power(1, 3), alpha);
  CHECK(pts.point(0) == doctest::Approx(0.618).epsilon(1e-12));
  CHECK(pts.point(1) == doctest::Approx(0.236).epsilon(1e-12));
  CHECK(pts.point(2) == doctest::Approx(0.854).epsilon(1e-12));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(pts.fixed_at(i) == rational_fixed_oracle(i + 1, 309, 500));
}

TEST_CASE("rational agrees with exact rational arithmetic on random cases") {
  for (std::uint64_t c = 0; c < 50; ++c) {
    test::CaseRng rng(c);
    const std::uint64_t q = 2 + rng.below(100000);
    const std::uint64_t p = rng.below(q);
    const auto seq = gen_power(1 + rng.below(3), 2 + rng.below(40));
    const auto pts = frac_parts(seq, RealParameter::rational(p, q));
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const std::uint64_t a = seq.as_u64()[i];
      CHECK(pts.fixed_at(i) == rational_fixed_oracle(a, p, q));
    }
  }
}

TEST_CASE("fixed-point and rational paths agree for dyadic alpha") {
  for (std::uint64_t c = 0; c < 30; ++c) {
    test::CaseRng rng(c);
    const unsigned j = 3 + static_cast<unsigned>(rng.below(58));
    const std::uint64_t k = rng.below(1ull << j);
    const auto seq = gen_power(2, 50);

    mpz_class den = 0;
    mpz_setbit(den.get_mpz_t(), j);
    const auto rational_pts =
        frac_parts(seq, RealParameter::rational(mpz_class(std::to_string(k)), den));

    mpz_class fixed_val = mpz_class(std::to_string(k));
    mpz_mul_2exp(fixed_val.get_mpz_t(), fixed_val.get_mpz_t(), 256 - j);
    const auto fixed_pts =
        frac_parts(seq, RealParameter::fixed_point(fixed_val, 256));

    const double tol = rational_pts.error_bound() + fixed_pts.error_bound();
    for (std::size_t i = 0; i < seq.size(); ++i)
      CHECK(std::abs(rational_pts.point(i) - fixed_pts.point(i)) <= tol);
  }
}

TEST_CASE("fixed-point alpha demands enough bits for the largest term") {
  const auto huge = gen_power(200, 2);  // top term has 201 bits
  CHECK_THROWS_AS(frac_parts(huge, RealParameter::random_sample(1, 0, 256)),
                  PrecisionError);
  CHECK_NOTHROW(frac_parts(huge, RealParameter::random_sample(1, 0, 320)));
}

TEST_CASE("alpha parser accepts the documented forms") {
  CHECK(RealParameter::parse("309/500").den() == 500);
  CHECK(RealParameter::parse("7/3").num() == 1);  // reduced mod 1
  CHECK_FALSE(RealParameter::parse("random:42").is_rational());
  CHECK(RealParameter::parse("1").approx() == 0.0);  // integer reduces to 0
  CHECK_THROWS_AS(RealParameter::parse("abc"), ParseError);
  CHECK_THROWS_AS(RealParameter::parse("1/0"), DomainError);
  CHECK_THROWS_AS(RealParameter::parse("random:x"), ParseError);
}

TEST_CASE("sample_alpha is deterministic with a stable prefix") {
  const auto a = sample_alpha(7, 3);
  const auto b = sample_alpha(7, 3);
  const auto c = sample_alpha(7, 5);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].fixed_value() == b[i].fixed_value());
    CHECK(a[i].fixed_value() == c[i].fixed_value());
  }
  const auto d = sample_alpha(8, 1);
  CHECK(a[0].fixed_value() != d[0].fixed_value());
  CHECK_THROWS_AS(sample_alpha(7, 0), DomainError);
}

TEST_CASE("sampled alpha has the full configured precision") {
  const auto a = RealParameter::random_sample(123, 0, 256);
  CHECK(a.fixed_bits() == 256);
  CHECK(mpz_sizeinbase(a.fixed_value().get_mpz_t(), 2) > 190);  // top bits set w.h.p.
  CHECK(a.approx() >= 0.0);
  CHECK(a.approx() < 1.0);
}

TEST_CASE("nearest_int_distance hand values") {
  CHECK(nearest_int_distance(0.1, 0.9) == doctest::Approx(0.2));
  CHECK(nearest_int_distance(0.25, 0.25) == 0.0);
  CHECK(nearest_int_distance(0.0, 0.5) == 0.5);
}

TEST_CASE("nearest_int_distance is symmetric, bounded, zero iff equal") {
  for (std::uint64_t c = 0; c < 200; ++c) {
    test::CaseRng rng(c);
    const double x = rng.uniform(), y = rng.uniform();
    const double d = nearest_int_distance(x, y);
    CHECK(d == nearest_int_distance(y, x));
    CHECK(d >= 0.0);
    CHECK(d <= 0.5);
    CHECK((d == 0.0) == (x == y));
  }
}

TEST_CASE("point sets enforce the construction bounds") {
  CHECK_THROWS_AS(PointSet::from_points({}, 0.0, "t"), DomainError);
  CHECK_THROWS_AS(PointSet::from_points({0.5, 1.0}, 0.0, "t"), DomainError);
  CHECK_THROWS_AS(PointSet::from_points({0.5}, 0x1.0p-49, "t"), PrecisionError);
  const auto ps = PointSet::from_points({0.0, 0.25, 0.999999}, 0.0, "t");
  CHECK(ps.error_bound() > 0.0);  // storage quantum is always accounted
  CHECK(ps.point(1) == doctest::Approx(0.25));
}
