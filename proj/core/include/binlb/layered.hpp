#pragma once

// Exact numbers of the form  base + sum_e c_e * k^(-e)  with arbitrary
// precision exponents e >= 1. The tiny layers are never materialized: the
// sign of a value is read off lexicographically (base first, then the atom
// with the smallest exponent), guarded by a separation certificate that
// checks k is large enough for the expression at hand.

#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace binlb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when k is too small to decide a comparison soundly.
class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LayeredValue {
 public:
  /// exponent -> nonzero coefficient, ascending exponent = descending magnitude.
  using AtomMap = std::map<Integer, Rational>;

  LayeredValue() = default;
  LayeredValue(Rational base);  // NOLINT(google-explicit-constructor)
  LayeredValue(Rational base, AtomMap atoms);

  /// c * k^(-exponent); exponent must be >= 1.
  static LayeredValue atom(Integer exponent, Rational coefficient = 1);

  const Rational& base() const { return base_; }
  const AtomMap& atoms() const { return atoms_; }
  bool is_zero() const { return sgn(base_) == 0 && atoms_.empty(); }
  bool is_rational() const { return atoms_.empty(); }

  LayeredValue& operator+=(const LayeredValue& other);
  LayeredValue& operator-=(const LayeredValue& other);

  friend LayeredValue operator+(LayeredValue x, const LayeredValue& y) { return x += y; }
  friend LayeredValue operator-(LayeredValue x, const LayeredValue& y) { return x -= y; }
  friend LayeredValue operator-(const LayeredValue& x) { return x.scaled(-1); }

  LayeredValue scaled(const Rational& q) const;

  /// Structural equality; coincides with numeric equality because atoms are
  /// kept canonical (no zero coefficients, exponents >= 1).
  friend bool operator==(const LayeredValue&, const LayeredValue&) = default;

  /// Human readable form, e.g. "1/7 + 1/7*k^-24".
  std::string to_string() const;

 private:
  void merge(const LayeredValue& other, int sign);

  Rational base_;
  AtomMap atoms_;
};

LayeredValue scale(const LayeredValue& x, const Rational& q);
LayeredValue sum(std::span<const LayeredValue> values);

/// Holds the global parameter k and decides the order of layered values.
class ArithmeticContext {
 public:
  explicit ArithmeticContext(Integer k);

  const Integer& k() const { return k_; }

  /// Sign of x - y. Throws CertificateViolation when the difference has a
  /// leading term c0*k^(-e0), next exponent e1 and trailing terms whose count
  /// T and largest magnitude C_max violate  k^(e1 - e0) > 2*T*C_max/|c0|.
  std::strong_ordering compare(const LayeredValue& x, const LayeredValue& y) const;
  std::strong_ordering sign(const LayeredValue& x) const;

  bool less(const LayeredValue& x, const LayeredValue& y) const { return compare(x, y) < 0; }
  bool less_equal(const LayeredValue& x, const LayeredValue& y) const { return compare(x, y) <= 0; }
  bool greater(const LayeredValue& x, const LayeredValue& y) const { return compare(x, y) > 0; }

  /// Exact rational value of x for small exponents. Only usable when the
  /// exponents fit in an unsigned long; intended for tests and diagnostics.
  Rational materialize(const LayeredValue& x) const;

 private:
  bool power_exceeds(const Integer& gap, const Rational& bound) const;

  Integer k_;
};

/// num/den in canonical form (den != 0).
Rational fraction(const Integer& num, const Integer& den);

std::string to_string(const Rational& q);
double to_double(const Rational& q);
/// Parses "3/2", "-7", "1.0715" exactly. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

}  // namespace binlb
