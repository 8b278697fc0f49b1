#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mppc/errors.hpp"
#include "mppc/specfun.hpp"

using namespace mppc;

TEST_CASE("zeta values against high-precision references") {
  // references computed to 40 digits with an independent bignum evaluation
  CHECK(zeta_euler_maclaurin(2.0) ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-14));
  CHECK(zeta_euler_maclaurin(1.2) == doctest::Approx(5.5915824411777508).epsilon(1e-13));
  CHECK(zeta_euler_maclaurin(1.5) == doctest::Approx(2.6123753486854883).epsilon(1e-13));
  CHECK(zeta_euler_maclaurin(1.48) == doctest::Approx(2.6943513893797802).epsilon(1e-13));
  CHECK(zeta_euler_maclaurin(1.1) == doctest::Approx(10.584448464950810).epsilon(1e-13));
  CHECK_THROWS_AS(zeta_euler_maclaurin(1.0), DomainError);
  CHECK_THROWS_AS(zeta_euler_maclaurin(0.3), DomainError);
}

TEST_CASE("zeta minus the pole tends to the Euler constant") {
  const double s = 1.0 + 1e-7;
  CHECK(zeta_euler_maclaurin(s) - 1.0 / (s - 1.0) ==
        doctest::Approx(0.57721566490153286).epsilon(1e-6));
}

TEST_CASE("log I0 against series references") {
  CHECK(log_bessel_i0(0.0) == 0.0);
  CHECK(log_bessel_i0(2.0) == doctest::Approx(std::log(2.2795853023360673)).epsilon(1e-13));
  CHECK(log_bessel_i0(10.0) == doctest::Approx(std::log(2815.7166284662545)).epsilon(1e-13));
  CHECK(25.0 * 25.0 / 4.0 * 4.0 >= log_bessel_i0(50.0));  // stays finite near the top
  CHECK_THROWS_AS(log_bessel_i0(-1.0), DomainError);
}

TEST_CASE("prime product matches a direct evaluation") {
  // prod over p in {2,3,5,7,11,13,17,19} of (1 - p^-1.5)^-1
  double direct = 1.0;
  for (double p : {2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0})
    direct /= 1.0 - std::pow(p, -1.5);
  CHECK(zeta_prime_product(1.5, 19) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(zeta_prime_product(1.5, 19) == doctest::Approx(2.3991073654923240).epsilon(1e-13));
  // truncation grows toward the full zeta value
  CHECK(zeta_prime_product(1.5, 1000) < 2.6123753486854883);
  CHECK(zeta_prime_product(1.5, 1000) > zeta_prime_product(1.5, 19));
}
