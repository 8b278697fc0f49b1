#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mppc/sequences.hpp"

namespace mppc {

// The dilation parameter alpha, reduced mod 1. Two exact representations:
// a rational p/q, or a fixed-point value v/2^bits with bits >= 64.
class RealParameter {
public:
  static RealParameter rational(mpz_class num, mpz_class den);
  static RealParameter fixed_point(mpz_class value, unsigned bits);
  // Sample index `index` of the seeded stream; depends only on (seed, index).
  static RealParameter random_sample(std::uint64_t seed, std::uint64_t index,
                                     unsigned bits = 256);
  // Accepts "0.618", "309/500" or "random:<seed>".
  static RealParameter parse(const std::string& text);

  bool is_rational() const { return rational_; }
  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  const mpz_class& fixed_value() const { return num_; }
  unsigned fixed_bits() const { return bits_; }

  double approx() const;
  const std::string& describe() const { return describe_; }

private:
  RealParameter() = default;
  bool rational_ = true;
  mpz_class num_;  // rational numerator, or the fixed-point integer
  mpz_class den_;
  unsigned bits_ = 0;
  std::string describe_;
};

// Uniform samples in [0,1) at the configured fixed-point precision; sample i
// depends only on (seed, i), never on count or worker layout.
std::vector<RealParameter> sample_alpha(std::uint64_t seed, std::size_t count,
                                        unsigned bits = 256);

// Points of [0,1) stored as 64-bit fixed-point values x/2^64 with a certified
// absolute error bound per point. Distances between stored points are then
// exact integer arithmetic; only the bound relates them to the ideal reals.
class PointSet {
public:
  PointSet(std::vector<std::uint64_t> fixed, double error_bound,
           std::string source);
  static PointSet from_points(const std::vector<double>& pts,
                              double error_bound, std::string source);

  std::size_t size() const { return fixed_.size(); }
  std::uint64_t fixed_at(std::size_t i) const { return fixed_[i]; }
  const std::vector<std::uint64_t>& fixed() const { return fixed_; }
  double point(std::size_t i) const {
    return static_cast<double>(fixed_[i]) * 0x1.0p-64;
  }
  double error_bound() const { return error_bound_; }
  const std::string& source() const { return source_; }

private:
  std::vector<std::uint64_t> fixed_;
  double error_bound_;
  std::string source_;
};

// {a_n alpha} for every term. Rational alpha reduces exactly; fixed-point
// alpha carries error <= a_N 2^-bits and requires bits >= bits(a_N) + 64.
// Storage quantization adds 2^-64, accounted for in the bound.
PointSet frac_parts(const IntegerSequence& seq, const RealParameter& alpha);

// min(|x-y|, 1-|x-y|) for x, y in [0,1).
double nearest_int_distance(double x, double y);

}  // namespace mppc
