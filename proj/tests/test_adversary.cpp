#include <doctest.h>

#include "binlb/adversary.hpp"
#include "binlb/construction.hpp"
#include "support.hpp"

using namespace binlb;
using binlb::testing::q;

namespace {

const BatchLabel kA = BatchLabel::of(BatchKind::A);

// Puts everything into bin 0.
class StuffOneBin final : public CopyableAlgorithm<StuffOneBin> {
 public:
  std::string name() const override { return "stuff"; }
  std::size_t place(const LayeredValue&) override {
    bins_ = 1;
    return 0;
  }
  std::size_t bin_count() const override { return bins_; }

 private:
  std::size_t bins_ = 0;
};

// Answers with a bin index it never opened.
class SkipsIndex final : public CopyableAlgorithm<SkipsIndex> {
 public:
  std::string name() const override { return "skip"; }
  std::size_t place(const LayeredValue&) override { return ++bins_; }
  std::size_t bin_count() const override { return bins_; }

 private:
  std::size_t bins_ = 0;
};

Integer atom_exponent(const LayeredValue& a) {
  REQUIRE(a.atoms().size() == 1);
  return a.atoms().begin()->first;
}

}  // namespace

TEST_CASE("construction parameters") {
  const auto p = ConstructionParams::make(3, 1);
  CHECK(p.n == 2058);
  CHECK(p.eps == Rational(1) / (2 * Rational(Integer(2058) * 2058 * 2058)));
  CHECK(p.k == Integer(2) * 2058 * 2058 * 2058);
  CHECK(ConstructionParams::make(4, 2).n == 2 * 6 * 2401);
  CHECK_THROWS_AS(ConstructionParams::make(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ConstructionParams::make(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(ConstructionParams::with_n(3, 2000), std::invalid_argument);
  CHECK_THROWS_AS(ConstructionParams::make(3, 1, Rational(1) / Rational(Integer(2058) * 2058 * 2058)),
                  std::invalid_argument);
  CHECK_NOTHROW(ConstructionParams::make(3, 1, q(1, 10'000'000'000L)));
}

TEST_CASE("item sizes") {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto c3 = c_size(p, 3);
  const auto c2 = c_size(p, 2);
  CHECK(ctx.greater(c3, LayeredValue(q(1, 295))));
  CHECK(ctx.less(c3 + c2, LayeredValue(q(1, 42) - 293 * p.eps)));
  CHECK(c_batch_sizes(p).size() == 2);
  CHECK_THROWS_AS(c_size(p, 1), std::out_of_range);

  const auto gamma = LayeredValue::atom(Integer(1) << 2070);
  CHECK(ctx.greater(b_size(p, BatchKind::B31, gamma), LayeredValue(q(35714, 100000))));
  CHECK(ctx.less(b_size(p, BatchKind::B21, gamma), LayeredValue(q(33334, 100000))));
  CHECK(ctx.greater(b_size(p, BatchKind::B32, gamma), LayeredValue(q(1, 2))));
  CHECK(ctx.greater(b_size(p, BatchKind::B11, gamma), LayeredValue(q(1, 2))));
  // two B31 with a large and a small A-item overflow, one B31 and B32 fit
  const Integer g = Integer(1) << 2070;
  const auto pair = a_size(p, g - 2) + a_size(p, g);
  CHECK(ctx.greater(b_size(p, BatchKind::B31, gamma).scaled(2) + pair, LayeredValue(q(1))));
  CHECK(ctx.less_equal(b_size(p, BatchKind::B31, gamma).scaled(2) + a_size(p, g).scaled(2), LayeredValue(q(1))));
  CHECK(ctx.less_equal(b_size(p, BatchKind::B31, gamma) + b_size(p, BatchKind::B32, gamma), LayeredValue(q(1))));
  CHECK_THROWS_AS(b_size(p, BatchKind::A, gamma), std::invalid_argument);
}

TEST_CASE("adaptive generator steps") {
  auto gen = AdaptiveGenerator::for_items(2);
  CHECK(gen.lo() == 16);
  CHECK(gen.hi() == 32);
  CHECK(gen.next_exponent() == 24);
  SUBCASE("large moves the lower end") {
    gen.classify(true);
    CHECK(gen.next_exponent() == 28);
  }
  SUBCASE("small moves the upper end") {
    gen.classify(false);
    CHECK(gen.next_exponent() == 19);
  }
}

TEST_CASE("every large/small pattern keeps the gap") {
  const ArithmeticContext ctx(Integer(10));
  for (std::size_t n = 1; n <= 8; ++n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      auto gen = AdaptiveGenerator::for_items(n);
      const Integer lo0 = gen.lo(), hi0 = gen.hi();
      std::vector<Integer> large, small;
      for (std::size_t i = 0; i < n; ++i) {
        const Integer e = gen.next_exponent();
        const bool is_large = (mask >> i) & 1u;
        gen.classify(is_large);
        (is_large ? large : small).push_back(e);
        CHECK(e > lo0);
        CHECK(e < hi0);
      }
      CHECK(gen.large_count() == large.size());
      CHECK(gen.interval_invariant_holds());
      CHECK(gen.gap_property_holds());
      // a_large > k * a_small, decided by exact comparison at k = 10
      for (const auto& el : large) {
        for (const auto& es : small) {
          CHECK(es >= el + 2);
          CHECK(ctx.greater(LayeredValue::atom(el), LayeredValue::atom(es, q(10))));
        }
      }
      if (small.empty()) {
        CHECK(gen.gamma_exponent() == gen.hi() + 1);
      } else {
        CHECK(gen.gamma_exponent() == *std::min_element(small.begin(), small.end()));
      }
    }
  }
}

TEST_CASE("b batch plan counts") {
  const auto p = ConstructionParams::make(3, 1);
  const auto gamma = LayeredValue::atom(Integer(1) << 2070);
  const auto all_large = b_batch_plan(p, gamma, p.n);
  CHECK(all_large.n31 == 0);
  CHECK(all_large.n32 == p.n / 3);
  const auto none = b_batch_plan(p, gamma, 0);
  CHECK(none.n31 == 7 * p.n / 6);
  CHECK(none.n32 == 7 * p.n / 6);
  CHECK(none.n11 == p.n / 3);
  CHECK(none.n21 == p.n);
  CHECK(none.n22 == p.n);
  const auto some = b_batch_plan(p, gamma, 5);
  CHECK(some.n31 == (7 * p.n - 35) / 6);
  CHECK(some.n32 == (7 * p.n - 25) / 6);
}

TEST_CASE("always-new-bin hits 294 at the first stopping point") {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto run = run_tree(p, algorithm_factory("always-new", ctx));
  const auto& r = run.report;
  CHECK(r.points.size() == 8);
  CHECK(r.points.front().alg_cost == 2058);
  CHECK(r.points.front().opt_upper == 7);
  CHECK(r.points.front().ratio == 294);
  CHECK(r.max_ratio == 294);
  CHECK(r.argmax == BatchLabel::c(3));
  CHECK(r.checks.ok());
}

TEST_CASE("first-fit run satisfies every structural check") {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto run = run_tree(p, algorithm_factory("first-fit", ctx));
  const auto& r = run.report;
  CHECK(r.checks.ok());
  CHECK(r.checks.failures.empty());
  CHECK(r.n_large == run.stats.nu(kA));
  REQUIRE(r.points.size() == 8);

  Rational best = 0;
  for (const auto& pt : r.points) {
    CHECK(pt.ratio == Rational(pt.alg_cost) / pt.opt_upper);
    CHECK(pt.opt_upper >= pt.opt_formula);
    CHECK(pt.opt_upper < pt.opt_formula + 3);
    CHECK(pt.alg_cost == run.stats.cost.at(pt.point));
    best = std::max(best, pt.ratio);
  }
  CHECK(r.max_ratio == best);

  // gap oracle over the A-items actually presented
  std::vector<Integer> large, small;
  for (const auto& it : run.transcript.items) {
    if (it.batch != kA) continue;
    (it.large ? large : small).push_back(atom_exponent(it.size));
  }
  CHECK(static_cast<std::int64_t>(large.size()) == r.n_large);
  CHECK(large.size() + small.size() == static_cast<std::size_t>(p.n));
  if (!large.empty() && !small.empty()) {
    CHECK(*std::min_element(small.begin(), small.end()) >= *std::max_element(large.begin(), large.end()) + 2);
  }
  CHECK(r.gamma_exponent == (small.empty() ? r.gamma_exponent : *std::min_element(small.begin(), small.end())));
}

TEST_CASE("next-fit is not better than first-fit on this input") {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto ff = run_tree(p, algorithm_factory("first-fit", ctx));
  const auto nf = run_tree(p, algorithm_factory("next-fit", ctx));
  CHECK(nf.report.max_ratio >= ff.report.max_ratio);
}

TEST_CASE("contract violations are reported") {
  const auto p = ConstructionParams::make(3, 1);
  CHECK_THROWS_AS(run_tree(p, [] { return std::make_unique<StuffOneBin>(); }), OverflowRejection);
  CHECK_THROWS_AS(run_tree(p, [] { return std::make_unique<SkipsIndex>(); }), std::out_of_range);
}

TEST_CASE("chain of inequalities on a real run") {
  const auto p = ConstructionParams::make(3, 1);
  const auto ctx = p.context();
  const auto run = run_tree(p, algorithm_factory("best-fit", ctx));
  const auto chain = check_chain(run, q(3, 2));
  CHECK(chain.ratio_above_chain);
  CHECK(chain.chain_near_finite);
  CHECK(chain.max_ratio >= chain.chain_bound);
  CHECK(chain.n_frac == Rational(run.report.n_large) / p.n);
}

TEST_CASE("fork modes") {
  CHECK(to_string(ForkMode::snapshot) == "snapshot");
  CHECK(to_string(ForkMode::replay) == "replay");
}
