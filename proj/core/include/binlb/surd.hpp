#pragma once

#include <string>

#include "binlb/layered.hpp"

namespace binlb {

/// Exact element a + b*sqrt(d) of the quadratic field Q(sqrt(d)), d a
/// positive non-square integer shared by both operands of every operation.
class QuadraticSurd {
 public:
  QuadraticSurd(Rational a, Rational b, Integer d);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Integer& radicand() const { return d_; }

  QuadraticSurd operator+(const QuadraticSurd& o) const;
  QuadraticSurd operator-(const QuadraticSurd& o) const;
  QuadraticSurd operator*(const QuadraticSurd& o) const;
  QuadraticSurd operator/(const QuadraticSurd& o) const;
  QuadraticSurd operator+(const Rational& q) const;
  QuadraticSurd operator-(const Rational& q) const;
  QuadraticSurd operator*(const Rational& q) const;
  QuadraticSurd operator/(const Rational& q) const;
  friend QuadraticSurd operator-(const Rational& q, const QuadraticSurd& x) { return x * Rational(-1) + q; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  int sign() const;

  /// Rational within 10^-digits of the true value (truncated toward -inf).
  Rational approximate(unsigned digits) const;
  std::string decimal(unsigned digits) const;

 private:
  void check_same_field(const QuadraticSurd& o) const;

  Rational a_, b_;
  Integer d_;
};

/// floor(sqrt(x) * 10^digits) / 10^digits for a non-negative rational x.
Rational sqrt_floor(const Rational& x, unsigned digits);

/// Fixed-point decimal rendering of a rational, truncated.
std::string decimal_string(const Rational& q, unsigned digits);

}  // namespace binlb
