#include "mppc/pointset.hpp"

#include <cmath>
#include <sstream>

#include "mppc/errors.hpp"
#include "mppc/rng.hpp"

namespace mppc {

namespace {

constexpr double kErrorCeiling = 0x1.0p-50;  // demanded by downstream statistics
constexpr double kQuantum = 0x1.0p-64;

}  // namespace

RealParameter RealParameter::rational(mpz_class num, mpz_class den) {
  if (den <= 0) throw DomainError("rational alpha needs positive denominator");
  RealParameter a;
  a.rational_ = true;
  mpz_fdiv_r(a.num_.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());  // mod 1
  a.den_ = std::move(den);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.num_.get_mpz_t(), a.den_.get_mpz_t());
  a.num_ /= g;
  a.den_ /= g;
  a.describe_ = "rational:" + a.num_.get_str() + "/" + a.den_.get_str();
  return a;
}

RealParameter RealParameter::fixed_point(mpz_class value, unsigned bits) {
  if (bits < 64) throw DomainError("fixed-point alpha needs bits >= 64");
  RealParameter a;
  a.rational_ = false;
  a.bits_ = bits;
  mpz_fdiv_r_2exp(a.num_.get_mpz_t(), value.get_mpz_t(), bits);  // mod 1
  a.describe_ = "fixed" + std::to_string(bits);
  return a;
}

RealParameter RealParameter::random_sample(std::uint64_t seed,
                                           std::uint64_t index, unsigned bits) {
  if (bits < 64) throw DomainError("fixed-point alpha needs bits >= 64");
  const unsigned words = (bits + 63) / 64;
  mpz_class v = 0;
  for (unsigned w = 0; w < words; ++w) {
    mpz_class word = mpz_class(counter_hash(seed, index, w) >> (w + 1 == words ? (64 * words - bits) : 0));
    mpz_mul_2exp(word.get_mpz_t(), word.get_mpz_t(), 64 * w);
    v += word;
  }
  RealParameter a = fixed_point(std::move(v), bits);
  std::ostringstream d;
  d << "random:seed=" << seed << ",i=" << index << ",b=" << bits;
  a.describe_ = d.str();
  return a;
}

RealParameter RealParameter::parse(const std::string& text) {
  if (text.rfind("random:", 0) == 0) {
    const std::string s = text.substr(7);
    try {
      return random_sample(std::stoull(s), 0);
    } catch (const std::exception&) {
      throw ParseError("bad seed in alpha spec '" + text + "'");
    }
  }
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    try {
      return rational(mpz_class(text.substr(0, slash), 10),
                      mpz_class(text.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational alpha '" + text + "'");
    }
  }
  // decimal literal -> exact rational digits/10^k
  const auto dot = text.find('.');
  std::string digits = dot == std::string::npos
                           ? text
                           : text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_digits =
      dot == std::string::npos ? 0 : text.size() - dot - 1;
  if (digits.empty() ||
      digits.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("unrecognized alpha '" + text + "'");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
  return rational(mpz_class(digits, 10), std::move(den));
}

double RealParameter::approx() const {
  if (rational_) {
    return mpz_get_d(num_.get_mpz_t()) / mpz_get_d(den_.get_mpz_t());
  }
  return std::ldexp(mpz_get_d(num_.get_mpz_t()), -static_cast<int>(bits_));
}

std::vector<RealParameter> sample_alpha(std::uint64_t seed, std::size_t count,
                                        unsigned bits) {
  if (count < 1) throw DomainError("sample_alpha requires count >= 1");
  std::vector<RealParameter> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(RealParameter::random_sample(seed, i, bits));
  return out;
}

PointSet::PointSet(std::vector<std::uint64_t> fixed, double error_bound,
                   std::string source)
    : fixed_(std::move(fixed)), error_bound_(error_bound),
      source_(std::move(source)) {
  if (fixed_.empty()) throw DomainError("empty point set");
  if (!(error_bound_ >= 0.0) || error_bound_ >= kErrorCeiling)
    throw PrecisionError("point error bound " + std::to_string(error_bound_) +
                         " not below 2^-50");
}

PointSet PointSet::from_points(const std::vector<double>& pts,
                               double error_bound, std::string source) {
  std::vector<std::uint64_t> fixed;
  fixed.reserve(pts.size());
  for (double p : pts) {
    if (!(p >= 0.0) || p >= 1.0)
      throw DomainError("point outside [0,1): " + std::to_string(p));
    // exact for doubles with ulp >= 2^-64; truncation below that is covered
    // by the added quantum
    fixed.push_back(static_cast<std::uint64_t>(
        static_cast<long double>(p) * 0x1.0p64L));
  }
  return PointSet(std::move(fixed), error_bound + kQuantum, std::move(source));
}

PointSet frac_parts(const IntegerSequence& seq, const RealParameter& alpha) {
  const std::size_t n = seq.size();
  std::vector<std::uint64_t> fixed(n);
  double core_error;

  if (alpha.is_rational()) {
    const mpz_class& p = alpha.num();
    const mpz_class& q = alpha.den();
    mpz_class r, scaled;
    for (std::size_t i = 0; i < n; ++i) {
      r = seq.term(i) * p;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
      mpz_mul_2exp(scaled.get_mpz_t(), r.get_mpz_t(), 64);
      mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_mpz_t());
      fixed[i] = mpz_get_ui(scaled.get_mpz_t());
    }
    core_error = 0.0;  // reduction is exact; only storage quantization remains
  } else {
    const unsigned bits = alpha.fixed_bits();
    const std::size_t need = mpz_sizeinbase(seq.back().get_mpz_t(), 2) + 64;
    if (bits < need)
      throw PrecisionError("alpha has " + std::to_string(bits) +
                           " fractional bits, need >= " + std::to_string(need) +
                           " for max term");
    mpz_class prod;
    for (std::size_t i = 0; i < n; ++i) {
      prod = seq.term(i) * alpha.fixed_value();
      mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), bits);
      mpz_fdiv_q_2exp(prod.get_mpz_t(), prod.get_mpz_t(), bits - 64);
      fixed[i] = mpz_get_ui(prod.get_mpz_t());
    }
    core_error = std::ldexp(mpz_get_d(seq.back().get_mpz_t()),
                            -static_cast<int>(bits));
  }

  return PointSet(std::move(fixed), core_error + kQuantum,
                  seq.label() + "|" + alpha.describe());
}

double nearest_int_distance(double x, double y) {
  const double d = std::abs(x - y);
  return std::min(d, 1.0 - d);
}

}  // namespace mppc
