#include "binlb/surd.hpp"

#include <stdexcept>

namespace binlb {

namespace {

Integer pow10(unsigned digits) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, digits);
  return out;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

QuadraticSurd::QuadraticSurd(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ <= 1 || mpz_perfect_square_p(d_.get_mpz_t())) {
    throw std::invalid_argument("QuadraticSurd: radicand must be a positive non-square");
  }
}

void QuadraticSurd::check_same_field(const QuadraticSurd& o) const {
  if (d_ != o.d_) throw std::invalid_argument("QuadraticSurd: mixed radicands");
}

QuadraticSurd QuadraticSurd::operator+(const QuadraticSurd& o) const {
  check_same_field(o);
  return {a_ + o.a_, b_ + o.b_, d_};
}

QuadraticSurd QuadraticSurd::operator-(const QuadraticSurd& o) const {
  check_same_field(o);
  return {a_ - o.a_, b_ - o.b_, d_};
}

QuadraticSurd QuadraticSurd::operator*(const QuadraticSurd& o) const {
  check_same_field(o);
  return {a_ * o.a_ + b_ * o.b_ * Rational(d_), a_ * o.b_ + b_ * o.a_, d_};
}

QuadraticSurd QuadraticSurd::operator/(const QuadraticSurd& o) const {
  check_same_field(o);
  // multiply by the conjugate; the norm a^2 - b^2 d is nonzero off zero
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d_);
  if (sgn(norm) == 0) throw std::domain_error("QuadraticSurd: division by zero");
  QuadraticSurd conj(o.a_, -o.b_, d_);
  return (*this * conj) / norm;
}

QuadraticSurd QuadraticSurd::operator+(const Rational& q) const { return {a_ + q, b_, d_}; }
QuadraticSurd QuadraticSurd::operator-(const Rational& q) const { return {a_ - q, b_, d_}; }
QuadraticSurd QuadraticSurd::operator*(const Rational& q) const { return {a_ * q, b_ * q, d_}; }
QuadraticSurd QuadraticSurd::operator/(const Rational& q) const {
  if (sgn(q) == 0) throw std::domain_error("QuadraticSurd: division by zero");
  return {a_ / q, b_ / q, d_};
}

int QuadraticSurd::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 d
  const int c = cmp(a_ * a_, b_ * b_ * Rational(d_));
  return c > 0 ? sa : sb;
}

Rational sqrt_floor(const Rational& x, unsigned digits) {
  if (sgn(x) < 0) throw std::domain_error("sqrt_floor: negative argument");
  const Integer scale = pow10(digits);
  // floor(sqrt(num/den) * scale) = floor(sqrt(num * scale^2 / den))
  Integer inner = floor_div(x.get_num() * scale * scale, x.get_den());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), inner.get_mpz_t());
  return fraction(root, scale);
}

Rational QuadraticSurd::approximate(unsigned digits) const {
  // b*sqrt(d) = sign(b) * sqrt(b^2 d); add two guard digits then truncate.
  const unsigned guard = digits + 2;
  Rational root = sqrt_floor(b_ * b_ * Rational(d_), guard);
  if (sgn(b_) < 0) root = -root - Rational(1, pow10(guard));
  Rational value = a_ + root;
  const Integer scale = pow10(digits);
  Rational scaled = value * Rational(scale);
  Integer fl = floor_div(scaled.get_num(), scaled.get_den());
  Rational out(fl, scale);
  out.canonicalize();
  return out;
}

std::string decimal_string(const Rational& q, unsigned digits) {
  const Integer scale = pow10(digits);
  Rational scaled = abs(q) * Rational(scale);
  Integer fl = floor_div(scaled.get_num(), scaled.get_den());
  std::string s = fl.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  if (sgn(q) < 0) s.insert(0, "-");
  return s;
}

std::string QuadraticSurd::decimal(unsigned digits) const { return decimal_string(approximate(digits + 3), digits); }

}  // namespace binlb
