#include <doctest.h>

#include "binlb/layered.hpp"
#include "binlb/surd.hpp"
#include "support.hpp"

using namespace binlb;
using binlb::testing::evaluate;
using binlb::testing::q;

namespace {

LayeredValue lv(Rational base, std::initializer_list<std::pair<long, Rational>> atoms = {}) {
  LayeredValue::AtomMap m;
  for (const auto& [e, c] : atoms) m[Integer(e)] = c;
  return LayeredValue(std::move(base), std::move(m));
}

}  // namespace

TEST_CASE("add merges atoms and drops cancelled ones") {
  CHECK(lv(q(1, 2)) + lv(q(1, 2)) == lv(q(1)));
  const auto cancelled = lv(q(1, 7), {{5, q(1, 7)}}) + lv(q(0), {{5, q(-1, 7)}});
  CHECK(cancelled == lv(q(1, 7)));
  CHECK(cancelled.atoms().empty());
  const auto merged = lv(q(0), {{3, q(1)}}) + lv(q(0), {{4, q(2)}});
  CHECK(merged == lv(q(0), {{3, q(1)}, {4, q(2)}}));
  CHECK((lv(q(1, 3), {{2, q(1)}}) - lv(q(1, 3), {{2, q(1)}})).is_zero());
}

TEST_CASE("scale multiplies every component") {
  CHECK(scale(lv(q(1, 7), {{9, q(1, 7)}}), q(7)) == lv(q(1), {{9, q(1)}}));
  CHECK(scale(lv(q(3, 5), {{2, q(4)}}), q(0)).is_zero());
  CHECK(scale(lv(q(5, 14), {{2, q(-3, 14)}}), q(2)) == lv(q(5, 7), {{2, q(-3, 7)}}));
}

TEST_CASE("constructor validates exponents") {
  CHECK_THROWS_AS(LayeredValue::atom(Integer(0)), std::invalid_argument);
  CHECK_THROWS_AS(lv(q(0), {{-3, q(1)}}), std::invalid_argument);
  CHECK(LayeredValue::atom(Integer(4), q(0)).is_zero());
}

TEST_CASE("compare examples") {
  const ArithmeticContext ctx(Integer(1000));
  CHECK(ctx.compare(lv(q(1, 2), {{5, q(1)}}), lv(q(1, 2))) > 0);
  CHECK(ctx.compare(lv(q(1)), lv(q(1), {{7, q(-1, 14)}})) > 0);
  CHECK(ctx.compare(lv(q(1, 3)), lv(q(1, 3))) == 0);
  CHECK(ctx.compare(lv(q(1, 3), {{1, q(-50)}}), lv(q(1, 2))) < 0);
}

TEST_CASE("certificate for k^-3 against 2k^-4 needs k > 4") {
  const auto x = lv(q(1, 7), {{3, q(1)}});
  const auto y = lv(q(1, 7), {{4, q(2)}});
  CHECK(ArithmeticContext(Integer(5)).compare(x, y) > 0);
  CHECK(ArithmeticContext(Integer(1000)).compare(x, y) > 0);
  CHECK_THROWS_AS(ArithmeticContext(Integer(4)).compare(x, y), CertificateViolation);
  CHECK_THROWS_AS(ArithmeticContext(Integer(3)).compare(x, y), CertificateViolation);
  // the decided sign is right for the concrete k
  CHECK(evaluate(x - y, Integer(5)) > 0);
}

TEST_CASE("astronomical exponents are decided without materializing") {
  const ArithmeticContext ctx(Integer(17'000'000'000L));
  const Integer e1 = Integer(1) << 2060;
  const Integer e2 = e1 + 2;
  const auto big = LayeredValue(q(1, 7)) + LayeredValue::atom(e1, q(1, 7));
  const auto small = LayeredValue(q(1, 7)) + LayeredValue::atom(e2, q(1, 7));
  CHECK(ctx.greater(big, small));
  CHECK(ctx.less(small, big));
  const Integer far = Integer(1) << 4000;
  CHECK(ctx.greater(LayeredValue::atom(e1), LayeredValue::atom(far, Rational(Integer(1) << 3000))));
  CHECK_THROWS_AS(ctx.materialize(big), std::out_of_range);
}

TEST_CASE("compare is antisymmetric, transitive and translation invariant") {
  binlb::testing::ValueGenerator gen(42);
  int decided = 0;
  for (int i = 0; i < 3000; ++i) {
    const ArithmeticContext ctx(Integer(1000) + gen.k());
    const Rational shared = gen.small_rational(5, 3, false);
    const auto x = gen.value(gen.coin() ? &shared : nullptr);
    const auto y = gen.value(gen.coin() ? &shared : nullptr);
    const auto z = gen.value(gen.coin() ? &shared : nullptr);
    try {
      const auto xy = ctx.compare(x, y);
      const auto yx = ctx.compare(y, x);
      CHECK((xy < 0) == (yx > 0));
      CHECK((xy == 0) == (yx == 0));
      const auto yz = ctx.compare(y, z);
      if (xy < 0 && yz < 0) CHECK(ctx.compare(x, z) < 0);
      CHECK(ctx.compare(x + z, y + z) == xy);
      ++decided;
    } catch (const CertificateViolation&) {
    }
  }
  CHECK(decided > 2500);
}

TEST_CASE("add and scale never store zero coefficients") {
  binlb::testing::ValueGenerator gen(7);
  for (int i = 0; i < 2000; ++i) {
    const auto x = gen.value();
    const auto y = gen.value();
    for (const auto& v : {x + y, x - y, x.scaled(gen.small_rational(3, 3, false)), x - x}) {
      for (const auto& [e, c] : v.atoms()) {
        CHECK(sgn(c) != 0);
        CHECK(e >= 1);
      }
    }
  }
}

TEST_CASE("compare agrees with direct rational evaluation") {
  binlb::testing::ValueGenerator gen(2024);
  int agreed = 0, violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const Integer k = gen.k();
    const ArithmeticContext ctx(k);
    const Rational shared = gen.small_rational(5, 3, false);
    const bool same_base = gen.coin();
    const auto x = gen.value(same_base ? &shared : nullptr);
    const auto y = gen.value(same_base ? &shared : nullptr);
    try {
      const auto got = ctx.compare(x, y);
      const int want = cmp(evaluate(x, k), evaluate(y, k));
      CHECK((got < 0) == (want < 0));
      CHECK((got == 0) == (want == 0));
      ++agreed;
    } catch (const CertificateViolation&) {
      ++violations;
    }
  }
  CHECK(agreed > 5000);
  MESSAGE(agreed << " decided, " << violations << " refused");
}

TEST_CASE("materialize matches the oracle") {
  binlb::testing::ValueGenerator gen(5);
  for (int i = 0; i < 200; ++i) {
    const Integer k = gen.k();
    const auto x = gen.value();
    CHECK(ArithmeticContext(k).materialize(x) == evaluate(x, k));
  }
}

TEST_CASE("sum of a sequence") {
  std::vector<LayeredValue> v{lv(q(1, 7), {{3, q(1)}}), lv(q(2, 7)), lv(q(0), {{3, q(-1)}, {5, q(2)}})};
  CHECK(sum(v) == lv(q(3, 7), {{5, q(2)}}));
  CHECK(sum({}).is_zero());
}

TEST_CASE("to_string") {
  CHECK(lv(q(1, 7), {{24, q(1, 7)}}).to_string() == "1/7 + 1/7*k^-24");
  CHECK(LayeredValue().to_string() == "0");
}

TEST_CASE("parse_rational and fraction") {
  CHECK(parse_rational("3/2") == q(3, 2));
  CHECK(parse_rational("1.6") == q(8, 5));
  CHECK(parse_rational("-7") == q(-7));
  CHECK(parse_rational(" 1.07152386690879 ") == Rational(Integer(107152386690879L), Integer(100000000000000L)));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(fraction(20, 20) == 1);
  CHECK(fraction(20, 20).get_den() == 1);
}

TEST_CASE("quadratic surds") {
  const Integer d = 1387369;
  const QuadraticSurd r(q(1363, 120), q(-1, 120), d);
  CHECK(r.sign() > 0);
  CHECK((r - r).is_zero());
  CHECK(((r * r) / r - r).is_zero());
  CHECK(r.decimal(13) == "1.5427809064729");
  CHECK_THROWS_AS(QuadraticSurd(q(1), q(1), Integer(49)), std::invalid_argument);
  // sqrt(2) - 1.41421356 > 0
  CHECK(QuadraticSurd(q(-141421356, 100000000), q(1), Integer(2)).sign() > 0);
  CHECK(QuadraticSurd(q(-141421357, 100000000), q(1), Integer(2)).sign() < 0);
  CHECK(sqrt_floor(q(2), 5) == q(141421, 100000));
  CHECK(decimal_string(q(-1, 8), 2) == "-0.12");
}
