#include <doctest.h>
#include <mpfr.h>

#include "mppc/errors.hpp"
#include "mppc/sequences.hpp"
#include "test_helpers.hpp"

using namespace mppc;

namespace {

// independent oracle: floor of m (log m)^k straight at 512 bits
mpz_class nlogk_oracle(unsigned long m, double k) {
  mpfr_t x, kk;
  mpfr_init2(x, 512);
  mpfr_init2(kk, 64);
  mpfr_set_d(kk, k, MPFR_RNDN);
  mpfr_set_ui(x, m, MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_pow(x, x, kk, MPFR_RNDN);
  mpfr_mul_ui(x, x, m, MPFR_RNDN);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDD);
  mpfr_clears(x, kk, (mpfr_ptr) nullptr);
  return out;
}

}  // namespace

TEST_CASE("gen_power matches hand values") {
  const auto id = gen_power(1, 3);
  REQUIRE(id.size() == 3);
  CHECK(id.term(0) == 1);
  CHECK(id.term(1) == 2);
  CHECK(id.term(2) == 3);

  const auto sq = gen_power(2, 4);
  CHECK(sq.term(3) == 16);
  CHECK(sq.as_u64() == std::vector<std::uint64_t>{1, 4, 9, 16});

  const auto cu = gen_power(3, 3);
  CHECK(cu.term(2) == 27);
}

TEST_CASE("gen_power stays exact beyond 64 bits") {
  const auto s = gen_power(40, 5);
  CHECK_FALSE(s.fits_u64());
  mpz_class expect;
  mpz_ui_pow_ui(expect.get_mpz_t(), 5, 40);
  CHECK(s.term(4) == expect);
  CHECK_THROWS_AS(s.as_u64(), SizeError);
}

TEST_CASE("gen_power rejects bad parameters") {
  CHECK_THROWS_AS(gen_power(0, 3), DomainError);
  CHECK_THROWS_AS(gen_power(2, 0), DomainError);
}

TEST_CASE("gen_nlogk starts at m = 3 and matches hand values") {
  const auto s = gen_nlogk(1.0, 5);
  REQUIRE(s.size() == 5);
  CHECK(s.term(0) == 3);  // floor(3 log 3) = floor(3.2958)
  CHECK(s.label() == "nlogk:k=1,n0=3");

  // k = 2 at m = 10: floor(10 (log 10)^2) = 53
  const auto s2 = gen_nlogk(2.0, 8);
  CHECK(s2.term(7) == 53);
}

TEST_CASE("gen_nlogk rejects k < 1 and tiny n") {
  CHECK_THROWS_AS(gen_nlogk(0.0, 10), DomainError);
  CHECK_THROWS_AS(gen_nlogk(0.99, 10), DomainError);
  CHECK_THROWS_AS(gen_nlogk(1.5, 2), DomainError);
}

TEST_CASE("gen_nlogk agrees with the 512-bit oracle on random indices") {
  for (std::uint64_t c = 0; c < 20; ++c) {
    test::CaseRng rng(c);
    const double k = 1.0 + 4.0 * rng.uniform();
    const std::uint64_t n = 10 + rng.below(200);
    const auto s = gen_nlogk(k, n);
    for (int t = 0; t < 8; ++t) {
      const std::size_t i = rng.below(n);
      CHECK(s.term(i) == nlogk_oracle(3 + i, k));
    }
  }
  // a large fractional exponent, where the floors are far from trivial
  const auto s = gen_nlogk(14.155, 60);
  for (std::size_t i : {0ull, 17ull, 42ull, 59ull})
    CHECK(s.term(i) == nlogk_oracle(3 + i, 14.155));
}

TEST_CASE("generators are deterministic") {
  const auto a = gen_nlogk(3.0, 50);
  const auto b = gen_nlogk(3.0, 50);
  CHECK(a.terms() == b.terms());
  CHECK(gen_power(2, 50).terms() == gen_power(2, 50).terms());
}

TEST_CASE("generator outputs are strictly increasing") {
  for (std::uint64_t c = 0; c < 10; ++c) {
    test::CaseRng rng(c);
    const auto s = gen_nlogk(1.0 + 6.0 * rng.uniform(), 5 + rng.below(120));
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.term(i - 1) < s.term(i));
  }
}

TEST_CASE("load_sequence reads plain lists") {
  test::TempFile f("plain.txt", "1\n2\n4\n8\n");
  const auto s = load_sequence(f.path());
  CHECK(s.as_u64() == std::vector<std::uint64_t>{1, 2, 4, 8});
}

TEST_CASE("load_sequence reads two-column b-files and comments") {
  test::TempFile f("bfile.txt", "# header\n1 1\n2 3\n\n3 7\n");
  const auto s = load_sequence(f.path());
  CHECK(s.as_u64() == std::vector<std::uint64_t>{1, 3, 7});
}

TEST_CASE("load_sequence reports non-increasing values with the index") {
  test::TempFile f("dup.txt", "5\n5\n");
  try {
    load_sequence(f.path());
    FAIL("expected NotIncreasingError");
  } catch (const NotIncreasingError& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
}

TEST_CASE("load_sequence rejects malformed input") {
  test::TempFile f1("bad.txt", "1\ntwo\n");
  CHECK_THROWS_AS(load_sequence(f1.path()), ParseError);
  test::TempFile f2("cols.txt", "1 2 3\n");
  CHECK_THROWS_AS(load_sequence(f2.path()), ParseError);
  test::TempFile f3("neg.txt", "-4\n");
  CHECK_THROWS_AS(load_sequence(f3.path()), ParseError);
  test::TempFile f4("badidx.txt", "2 10\n1 20\n");
  CHECK_THROWS_AS(load_sequence(f4.path()), ParseError);
  CHECK_THROWS_AS(load_sequence("does_not_exist.txt"), ParseError);
  test::TempFile f5("empty.txt", "# nothing\n");
  CHECK_THROWS_AS(load_sequence(f5.path()), ParseError);
}

TEST_CASE("prefix keeps the label and the leading terms") {
  const auto s = gen_power(2, 10);
  const auto p = s.prefix(4);
  CHECK(p.size() == 4);
  CHECK(p.term(3) == 16);
  CHECK(p.label() == s.label());
  CHECK_THROWS_AS(s.prefix(0), DomainError);
  CHECK_THROWS_AS(s.prefix(11), DomainError);
}
