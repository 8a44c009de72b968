#include "binlb/layered.hpp"

#include <regex>
#include <sstream>
#include <utility>
#include <vector>

namespace binlb {

LayeredValue::LayeredValue(Rational base) : base_(std::move(base)) { base_.canonicalize(); }

LayeredValue::LayeredValue(Rational base, AtomMap atoms) : base_(std::move(base)) {
  base_.canonicalize();
  for (auto& [e, c] : atoms) {
    if (e < 1) throw std::invalid_argument("LayeredValue: atom exponent must be >= 1");
    if (sgn(c) != 0) atoms_.emplace_hint(atoms_.end(), e, c);
  }
}

LayeredValue LayeredValue::atom(Integer exponent, Rational coefficient) {
  AtomMap atoms;
  atoms.emplace(std::move(exponent), std::move(coefficient));
  return LayeredValue(Rational(0), std::move(atoms));
}

void LayeredValue::merge(const LayeredValue& other, int sign) {
  if (sign > 0) {
    base_ += other.base_;
  } else {
    base_ -= other.base_;
  }
  auto it = atoms_.begin();
  for (const auto& [e, c] : other.atoms_) {
    while (it != atoms_.end() && it->first < e) ++it;
    if (it != atoms_.end() && it->first == e) {
      if (sign > 0) {
        it->second += c;
      } else {
        it->second -= c;
      }
      if (sgn(it->second) == 0) {
        it = atoms_.erase(it);
      } else {
        ++it;
      }
    } else {
      it = atoms_.emplace_hint(it, e, sign > 0 ? Rational(c) : Rational(-c));
      ++it;
    }
  }
}

LayeredValue& LayeredValue::operator+=(const LayeredValue& other) {
  merge(other, +1);
  return *this;
}

LayeredValue& LayeredValue::operator-=(const LayeredValue& other) {
  merge(other, -1);
  return *this;
}

LayeredValue LayeredValue::scaled(const Rational& q) const {
  if (sgn(q) == 0) return {};
  LayeredValue out;
  out.base_ = base_ * q;
  for (const auto& [e, c] : atoms_) out.atoms_.emplace_hint(out.atoms_.end(), e, c * q);
  return out;
}

std::string LayeredValue::to_string() const {
  std::ostringstream os;
  os << binlb::to_string(base_);
  for (const auto& [e, c] : atoms_) {
    os << (sgn(c) < 0 ? " - " : " + ") << binlb::to_string(abs(c)) << "*k^-" << e.get_str();
  }
  return os.str();
}

LayeredValue scale(const LayeredValue& x, const Rational& q) { return x.scaled(q); }

LayeredValue sum(std::span<const LayeredValue> values) {
  LayeredValue total;
  for (const auto& v : values) total += v;
  return total;
}

ArithmeticContext::ArithmeticContext(Integer k) : k_(std::move(k)) {
  if (k_ < 2) throw std::invalid_argument("ArithmeticContext: k must be >= 2");
}

// k^gap > bound, with gap >= 1. Huge gaps are decided by bit length alone.
bool ArithmeticContext::power_exceeds(const Integer& gap, const Rational& bound) const {
  if (sgn(bound) <= 0) return true;
  const Integer& p = bound.get_num();
  const Integer& q = bound.get_den();
  const auto p_bits = mpz_sizeinbase(p.get_mpz_t(), 2);
  // k >= 2, so k^gap >= 2^gap > p >= p/q once gap > bits(p).
  if (gap > static_cast<unsigned long>(p_bits)) return true;
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), k_.get_mpz_t(), gap.get_ui());
  return power * q > p;
}

std::strong_ordering ArithmeticContext::sign(const LayeredValue& x) const {
  // Terms in descending magnitude: exponent 0 holds the base.
  const Rational* lead = nullptr;
  Integer lead_exp = 0;
  auto it = x.atoms().begin();
  if (sgn(x.base()) != 0) {
    lead = &x.base();
  } else if (it != x.atoms().end()) {
    lead = &it->second;
    lead_exp = it->first;
    ++it;
  }
  if (lead == nullptr) return std::strong_ordering::equal;

  if (it != x.atoms().end()) {
    Rational c_max = 0;
    std::size_t trailing = 0;
    for (auto rest = it; rest != x.atoms().end(); ++rest, ++trailing) {
      Rational mag = abs(rest->second);
      if (mag > c_max) c_max = mag;
    }
    Rational bound = Rational(2 * trailing) * c_max / abs(*lead);
    Integer gap = it->first - lead_exp;
    if (!power_exceeds(gap, bound)) {
      std::ostringstream os;
      os << "separation certificate violated: k = " << k_.get_str() << " does not satisfy k^"
         << gap.get_str() << " > " << to_string(bound) << " for " << x.to_string();
      throw CertificateViolation(os.str());
    }
  }
  return sgn(*lead) > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::strong_ordering ArithmeticContext::compare(const LayeredValue& x, const LayeredValue& y) const {
  if (x.is_rational() && y.is_rational()) {
    int c = cmp(x.base(), y.base());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return sign(x - y);
}

Rational ArithmeticContext::materialize(const LayeredValue& x) const {
  Rational out = x.base();
  for (const auto& [e, c] : x.atoms()) {
    if (!e.fits_ulong_p()) throw std::out_of_range("materialize: exponent too large");
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), k_.get_mpz_t(), e.get_ui());
    out += c / Rational(power);
  }
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational fraction(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("fraction: zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?)(\d+)(?:\.(\d*))?(?:/(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern) || (m[3].matched && m[4].matched)) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  Integer num(m[2].str());
  Integer den = 1;
  if (m[3].matched) {
    const std::string frac = m[3].str();
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  }
  if (m[4].matched) den = Integer(m[4].str());
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Rational out(m[1].str() == "-" ? Integer(-num) : num, den);
  out.canonicalize();
  return out;
}

}  // namespace binlb
