#include <doctest.h>

#include "binlb/analysis.hpp"
#include "support.hpp"

using namespace binlb;
using binlb::testing::q;

namespace {

UnionContents c3_with(std::int64_t c3, std::int64_t b11, std::int64_t b21, std::int64_t b31) {
  UnionContents s;
  s.c[3] = c3;
  s.b11 = b11;
  s.b21 = b21;
  s.b31 = b31;
  return s;
}

}  // namespace

TEST_CASE("price certificate for t = 3") {
  const auto cert = certify_prices(3);
  CHECK(cert.ok());
  CHECK(cert.types.size() == 5);
  const WeightSystem ws(3, 1);
  for (const auto& ct : cert.types) {
    CAPTURE(ct.type.name());
    CHECK(ct.max_price == ct.closed_form);
    CHECK(ct.patterns > 0);
    // the witness is feasible and realizes the maximum
    CHECK(pattern_feasible(3, ct.witness));
    CHECK(classify_bin(ct.witness) == ct.type);
    CHECK(ws.realized_price(ct.witness) == ct.max_price);
  }
  const auto table = cert.table();
  CHECK(table.price(BinType::of_level(3)) == Affine{7, 0});
  CHECK(table.price(BinType::of_level(2)) == Affine{q(48, 7), 0});
  CHECK(table.price(BinType::of_level(1)) == Affine{5, 1});
  CHECK(table.price(BinType::double_bin()) == Affine{2, 0});
  CHECK(table.price(BinType::single()) == Affine{1, 0});
}

TEST_CASE("feasibility of type-3 patterns") {
  CHECK(pattern_feasible(3, c3_with(294, 0, 0, 0)));
  CHECK_FALSE(pattern_feasible(3, c3_with(295, 0, 0, 0)));
  CHECK(pattern_feasible(3, c3_with(84, 1, 2, 2)));
  CHECK_FALSE(pattern_feasible(3, c3_with(85, 0, 0, 2)));
  CHECK(WeightSystem(3, 1).realized_price(c3_with(294, 0, 0, 0)) == Affine{7, 0});
  CHECK(WeightSystem(3, 1).realized_price(c3_with(84, 1, 2, 2)) == Affine{7, 0});
}

TEST_CASE("forbidden combinations all overflow") {
  const auto forbidden = forbidden_combinations(3);
  CHECK(forbidden.size() >= 10);
  for (const auto& f : forbidden) {
    CAPTURE(f.name);
    CHECK(f.infeasible);
    CHECK_FALSE(pattern_feasible(3, f.pattern));
  }
}

TEST_CASE("breakpoint method agrees with exhaustive enumeration") {
  const auto a = certify_prices(3, CertifyMethod::exhaustive);
  const auto b = certify_prices(3, CertifyMethod::breakpoint);
  REQUIRE(a.types.size() == b.types.size());
  for (std::size_t i = 0; i < a.types.size(); ++i) {
    CHECK(a.types[i].type == b.types[i].type);
    CHECK(a.types[i].max_price == b.types[i].max_price);
  }
}

TEST_CASE("certificate at t = 4") {
  const auto cert = certify_prices(4, CertifyMethod::breakpoint);
  CHECK(cert.ok());
  CHECK(cert.table().price(BinType::of_level(3)) == Affine{7 - q(1, 49), 0});
  CHECK(cert.table().price(BinType::of_level(4)) == Affine{7, 0});
}
