#include "mppc/sequences.hpp"

#include <mpfr.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "mppc/errors.hpp"

namespace mppc {

IntegerSequence::IntegerSequence(std::vector<mpz_class> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
  if (terms_.empty()) throw DomainError("sequence must have at least one term");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i] < 1)
      throw DomainError("sequence term below 1 at index " + std::to_string(i + 1));
    if (i > 0 && terms_[i] <= terms_[i - 1])
      throw NotIncreasingError("sequence not strictly increasing at index " +
                               std::to_string(i + 1));
  }
  fits_u64_ = mpz_sizeinbase(terms_.back().get_mpz_t(), 2) <= 64;
  if (fits_u64_) {
    u64_.reserve(terms_.size());
    for (const auto& t : terms_) u64_.push_back(mpz_get_ui(t.get_mpz_t()));
  }
}

const std::vector<std::uint64_t>& IntegerSequence::as_u64() const {
  if (!fits_u64_) throw SizeError("sequence terms exceed 64 bits: " + label_);
  return u64_;
}

IntegerSequence IntegerSequence::prefix(std::size_t n) const {
  if (n == 0 || n > terms_.size())
    throw DomainError("prefix length outside [1, size]");
  return IntegerSequence(std::vector<mpz_class>(terms_.begin(), terms_.begin() + n),
                         label_);
}

IntegerSequence gen_power(unsigned d, std::uint64_t n) {
  if (d < 1) throw DomainError("gen_power requires d >= 1");
  if (n < 1) throw DomainError("gen_power requires n >= 1");
  std::vector<mpz_class> terms;
  terms.reserve(n);
  for (std::uint64_t m = 1; m <= n; ++m) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), m, d);
    terms.push_back(std::move(t));
  }
  return IntegerSequence(std::move(terms), "power:d=" + std::to_string(d));
}

namespace {

// Encloses m (log m)^k in [lo, hi] at the given precision via directed
// rounding (log m > 1 and k >= 1, so pow is increasing in the base and
// rounding directions compose). Returns true when both endpoints share a
// floor and sit at least 2^-40 away from the nearest integer.
bool certified_floor(std::uint64_t m, double k, mpfr_prec_t prec, mpz_class* out) {
  mpfr_t kk, lo, hi, frac;
  mpfr_init2(kk, 64);
  mpfr_init2(lo, prec);
  mpfr_init2(hi, prec);
  mpfr_init2(frac, prec);
  mpfr_set_d(kk, k, MPFR_RNDN);  // doubles are exact in 64 bits

  auto eval = [&](mpfr_t res, mpfr_rnd_t rnd) {
    mpfr_set_ui(res, m, rnd);
    mpfr_log(res, res, rnd);
    mpfr_pow(res, res, kk, rnd);
    mpfr_mul_ui(res, res, m, rnd);
  };
  eval(lo, MPFR_RNDD);
  eval(hi, MPFR_RNDU);

  bool ok = false;
  mpz_class flo, fhi;
  mpfr_get_z(flo.get_mpz_t(), lo, MPFR_RNDD);
  mpfr_get_z(fhi.get_mpz_t(), hi, MPFR_RNDD);
  if (flo == fhi) {
    mpfr_frac(frac, lo, MPFR_RNDN);
    const double f = mpfr_get_d(frac, MPFR_RNDN);
    const double dist = std::min(f, 1.0 - f);
    if (dist >= 0x1.0p-40) {
      *out = flo;
      ok = true;
    }
  }
  mpfr_clears(kk, lo, hi, frac, (mpfr_ptr) nullptr);
  return ok;
}

mpz_class nlogk_term(std::uint64_t m, double k) {
  mpz_class prev, cur;
  bool have_prev = false;
  for (mpfr_prec_t prec : {80, 160, 320, 512}) {
    if (certified_floor(m, k, prec, &cur)) {
      if (have_prev && cur == prev) return cur;
      prev = cur;
      have_prev = true;
    } else {
      have_prev = false;
    }
  }
  throw PrecisionError("floor of " + std::to_string(m) +
                       "*(log)^k not certified at 512 bits");
}

}  // namespace

IntegerSequence gen_nlogk(double k, std::uint64_t n) {
  if (!(k >= 1.0)) throw DomainError("gen_nlogk requires k >= 1");
  if (n < 3) throw DomainError("gen_nlogk requires n >= 3");
  const std::uint64_t n0 = 3;
  std::vector<mpz_class> terms;
  terms.reserve(n);
  for (std::uint64_t m = n0; m < n0 + n; ++m) {
    mpz_class t = nlogk_term(m, k);
    if (!terms.empty() && t <= terms.back())
      throw NotIncreasingError("nlogk terms collide at m = " + std::to_string(m));
    terms.push_back(std::move(t));
  }
  std::ostringstream label;
  label << "nlogk:k=" << k << ",n0=" << n0;
  return IntegerSequence(std::move(terms), label.str());
}

IntegerSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sequence file: " + path);

  std::vector<mpz_class> terms;
  mpz_class prev_index;
  bool have_index = false;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const auto at = [&] { return " at line " + std::to_string(lineno); };
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) {
      if (t[0] == '#') break;  // trailing comment
      tok.push_back(t);
    }
    if (tok.empty()) continue;
    if (tok.size() > 2) throw ParseError("more than two columns" + at());

    mpz_class value;
    try {
      value = mpz_class(tok.back(), 10);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed integer '" + tok.back() + "'" + at());
    }
    if (tok.size() == 2) {
      mpz_class idx;
      try {
        idx = mpz_class(tok.front(), 10);
      } catch (const std::invalid_argument&) {
        throw ParseError("malformed index '" + tok.front() + "'" + at());
      }
      // indices are discarded, but must be in order
      if (have_index && idx <= prev_index)
        throw ParseError("b-file indices not increasing" + at());
      prev_index = idx;
      have_index = true;
    }
    if (value < 1) throw ParseError("nonpositive term" + at());
    if (!terms.empty() && value <= terms.back())
      throw NotIncreasingError("values not strictly increasing at index " +
                               std::to_string(terms.size() + 1));
    terms.push_back(std::move(value));
  }
  if (terms.empty()) throw ParseError("no terms in " + path);

  const auto slash = path.find_last_of('/');
  return IntegerSequence(std::move(terms),
                         "file:" + (slash == std::string::npos
                                        ? path
                                        : path.substr(slash + 1)));
}

}  // namespace mppc
