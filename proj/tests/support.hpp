#pragma once

// Shared helpers for the test binaries: independent oracles and small
// builders. Nothing here calls into the code under test for its answers.

#include <cstdint>
#include <random>
#include <vector>

#include "binlb/layered.hpp"

namespace binlb::testing {

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// base + sum c * k^-e evaluated with plain GMP rationals.
inline Rational evaluate(const LayeredValue& x, const Integer& k) {
  Rational out = x.base();
  for (const auto& [e, c] : x.atoms()) {
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), k.get_mpz_t(), e.get_ui());
    Rational term(c.get_num(), c.get_den() * power);
    term.canonicalize();
    out += term;
  }
  return out;
}

/// Random value with small base and up to three atoms of exponent <= 12.
class ValueGenerator {
 public:
  explicit ValueGenerator(std::uint64_t seed) : rng_(seed) {}

  Rational small_rational(long max_num, long max_den, bool nonzero) {
    for (;;) {
      const long num = std::uniform_int_distribution<long>(-max_num, max_num)(rng_);
      const long den = std::uniform_int_distribution<long>(1, max_den)(rng_);
      if (!nonzero || num != 0) return q(num, den);
    }
  }

  LayeredValue value(const Rational* shared_base = nullptr) {
    Rational base = shared_base ? *shared_base : small_rational(20, 12, false);
    LayeredValue::AtomMap atoms;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng_);
    for (int i = 0; i < n; ++i) {
      const long e = std::uniform_int_distribution<long>(1, 12)(rng_);
      atoms[Integer(e)] += small_rational(9, 5, true);
    }
    return LayeredValue(base, atoms);
  }

  Integer k() { return Integer(std::uniform_int_distribution<long>(2, 100)(rng_)); }
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace binlb::testing
