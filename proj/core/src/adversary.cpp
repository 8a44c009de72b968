#include "binlb/adversary.hpp"

#include <algorithm>

#include "binlb/opt_bounds.hpp"

namespace binlb {

std::string to_string(ForkMode mode) { return mode == ForkMode::snapshot ? "snapshot" : "replay"; }

namespace {

struct Player {
  const ConstructionParams& p;
  Transcript& tr;

  std::size_t new_item(BatchLabel label, LayeredValue size) {
    tr.items.push_back(Item{tr.items.size(), label, std::move(size), false});
    return tr.items.size() - 1;
  }

  // Returns true when the item opened a bin.
  static bool play(OnlineAlgorithm& alg, PackingState& state, LineTranscript& line, const Item& item) {
    const std::size_t choice = alg.place(item.size);
    const bool opened = state.place(item, choice);
    if (alg.bin_count() != state.bin_count()) {
      throw std::logic_error(alg.name() + " reports " + std::to_string(alg.bin_count()) + " bins, harness sees " +
                             std::to_string(state.bin_count()));
    }
    line.placements.push_back(Placement{item.id, choice});
    return opened;
  }

  void batch(OnlineAlgorithm& alg, PackingState& state, LineTranscript& line, BatchLabel label,
             const LayeredValue& size, std::int64_t count) {
    BatchSpan span{label, line.placements.size(), 0};
    for (std::int64_t i = 0; i < count; ++i) play(alg, state, line, tr.items[new_item(label, size)]);
    span.end = line.placements.size();
    line.batches.push_back(span);
  }
};

bool extends(const PackingState& trunk, const PackingState& branch) {
  if (branch.bin_count() < trunk.bin_count()) return false;
  for (std::size_t i = 0; i < trunk.bin_count(); ++i) {
    const auto& a = trunk.bins()[i].contents;
    const auto& b = branch.bins()[i].contents;
    if (b.size() < a.size() || !std::equal(a.begin(), a.end(), b.begin())) return false;
  }
  return true;
}

void fail(AdversaryChecks& c, bool& flag, bool ok, const std::string& what) {
  flag = ok;
  if (!ok) c.failures.push_back(what);
}

void run_checks(RunResult& run, const ConstructionParams& p, const ArithmeticContext& ctx,
                const AdaptiveGenerator& gen, bool extended) {
  auto& c = run.report.checks;

  bool gap = gen.gap_property_holds();
  const Integer* max_large = nullptr;
  const Integer* min_small = nullptr;
  for (const auto& it : gen.issued()) {
    if (it.large && (!max_large || it.exponent > *max_large)) max_large = &it.exponent;
    if (!it.large && (!min_small || it.exponent < *min_small)) min_small = &it.exponent;
  }
  if (gap && max_large && min_small) {
    gap = ctx.greater(LayeredValue::atom(*max_large), LayeredValue::atom(*min_small, Rational(p.k)));
  }
  fail(c, c.gap_property, gap, "gap property");
  fail(c, c.interval_invariant, gen.interval_invariant_holds(), "interval invariant");

  bool sizes = true;
  const Integer lo = Integer(1) << static_cast<mp_bitcnt_t>(p.n + 2);
  const Integer hi = Integer(1) << static_cast<mp_bitcnt_t>(p.n + 3);
  const LayeredValue a_lo((1 + p.eps) / 7), a_hi((1 + 2 * p.eps) / 7);
  for (const auto& it : gen.issued()) {
    sizes = sizes && it.exponent > lo && it.exponent < hi;
    const LayeredValue s = a_size(p, it.exponent);
    sizes = sizes && ctx.greater(s, a_lo) && ctx.less(s, a_hi);
  }
  const Rational ct_floor = Rational(1) / Rational(6 * pow_int(7, static_cast<unsigned long>(p.t - 1)) + 1);
  sizes = sizes && c_size(p, p.t).base() > ct_floor;
  const auto& plan = run.report.plan;
  sizes = sizes && ctx.greater(plan.b32, Rational(1, 2)) && ctx.greater(plan.b31, fraction(35714, 100000)) &&
          ctx.less(plan.b21, fraction(33334, 100000)) && ctx.greater(plan.b11, Rational(1, 2)) &&
          ctx.greater(plan.b22, Rational(1, 2));
  fail(c, c.sizes_in_intervals, sizes, "sizes in open intervals");

  fail(c, c.gamma, check_gamma(p, ctx, gen, run.gamma).ok(), "gamma bounds");
  fail(c, c.branches_extend_trunk, extended, "branches extend the trunk");

  const auto& s = run.stats;
  fail(c, c.n_large_is_nu1,
       s.n_large == s.nu_1 && s.n_large == static_cast<std::int64_t>(gen.large_count()), "n_L = nu_1");

  bool costs = true;
  for (const auto& [point, cost] : alg_costs(s, p.t)) {
    auto it = s.cost.find(point);
    costs = costs && it != s.cost.end() && Rational(it->second) == cost;
  }
  fail(c, c.cost_formulas, costs, "ALG cost formulas");
}

}  // namespace

RunResult run_tree(const ConstructionParams& p, const AlgorithmFactory& factory, ForkMode mode) {
  p.validate();
  const ArithmeticContext ctx = p.context();
  RunResult run;
  Transcript& tr = run.transcript;
  tr.t = p.t;
  tr.trunk.branch = Branch::trunk;
  Player player{p, tr};

  auto alg = factory();
  PackingState trunk(ctx);
  for (int j = p.t; j >= 2; --j) player.batch(*alg, trunk, tr.trunk, BatchLabel::c(j), c_size(p, j), p.n);

  auto gen = AdaptiveGenerator::for_items(static_cast<std::size_t>(p.n));
  {
    const BatchLabel label = BatchLabel::of(BatchKind::A);
    BatchSpan span{label, tr.trunk.placements.size(), 0};
    for (std::int64_t i = 0; i < p.n; ++i) {
      const Integer& e = gen.next_exponent();
      const std::size_t id = player.new_item(label, a_size(p, e));
      const bool opened = Player::play(*alg, trunk, tr.trunk, tr.items[id]);
      gen.classify(opened);
      tr.items[id].large = opened;
    }
    span.end = tr.trunk.placements.size();
    tr.trunk.batches.push_back(span);
  }

  const std::int64_t n_large = static_cast<std::int64_t>(gen.large_count());
  run.gamma = LayeredValue::atom(gen.gamma_exponent());
  const BBatchPlan plan = b_batch_plan(p, run.gamma, n_large);

  const bool use_snapshot = mode == ForkMode::snapshot && alg->can_snapshot();
  std::unique_ptr<OnlineAlgorithm> snap = use_snapshot ? alg->snapshot() : nullptr;
  const std::size_t trunk_items = tr.trunk.placements.size();

  bool extended = true;
  const std::array<std::vector<BatchKind>, 3> branch_batches{{
      {BatchKind::B11},
      {BatchKind::B21, BatchKind::B22},
      {BatchKind::B31, BatchKind::B32},
  }};
  for (std::size_t b = 0; b < 3; ++b) {
    OnlineAlgorithm* current = alg.get();
    std::unique_ptr<OnlineAlgorithm> fresh;
    if (use_snapshot) {
      alg->restore(*snap);
    } else {
      fresh = factory();
      current = fresh.get();
      for (std::size_t i = 0; i < trunk_items; ++i) {
        const auto& placed = tr.trunk.placements[i];
        if (current->place(tr.items[placed.item].size) != placed.bin) {
          throw std::logic_error(current->name() + " diverged while replaying the trunk");
        }
      }
    }
    if (current->bin_count() != trunk.bin_count()) extended = false;

    auto& line = tr.branches[b];
    line.branch = static_cast<Branch>(b + 1);
    PackingState state = trunk;
    for (auto kind : branch_batches[b]) {
      player.batch(*current, state, line, BatchLabel::of(kind), plan.size(kind), plan.count(kind));
    }
    extended = extended && extends(trunk, state);
  }

  run.stats = stats(tr);
  auto& r = run.report;
  r.algorithm = alg->name();
  r.fork = use_snapshot ? ForkMode::snapshot : ForkMode::replay;
  r.params = p;
  r.n_large = n_large;
  r.plan = plan;
  r.gamma_exponent = gen.gamma_exponent();
  bool first = true;
  for (const auto& point : stopping_points(p.t)) {
    StoppingPointResult row;
    row.point = point;
    row.alg_cost = run.stats.cost.at(point);
    row.opt_upper = opt_upper_bound(point, p, n_large);
    row.opt_formula = opt_formula(point, p, n_large);
    row.ratio = Rational(row.alg_cost) / row.opt_upper;
    if (first || row.ratio > r.max_ratio) {
      r.max_ratio = row.ratio;
      r.argmax = point;
      first = false;
    }
    r.points.push_back(std::move(row));
  }
  run_checks(run, p, ctx, gen, extended);
  return run;
}

ChainCheck check_chain(const RunResult& run, const Rational& w, const Rational& tolerance) {
  const auto& r = run.report;
  const auto& p = r.params;
  ChainCheck out;
  out.w = w;
  out.n_frac = fraction(r.n_large, p.n);
  out.total_weight = total_weight_issued(p, w, r.n_large, r.plan);
  std::map<StoppingPoint, Rational> upper;
  for (const auto& row : r.points) upper[row.point] = row.opt_upper;
  for (const auto& m : multipliers(p.t, w)) out.denominator += m.value * upper.at(m.point);
  out.chain_bound = out.total_weight / out.denominator;
  out.finite_bound = bound_finite_t(p.t, w, out.n_frac);
  out.max_ratio = r.max_ratio;
  out.tolerance = tolerance;
  out.ratio_above_chain = out.max_ratio >= out.chain_bound;
  out.chain_near_finite = out.chain_bound >= out.finite_bound - tolerance;
  return out;
}

}  // namespace binlb
