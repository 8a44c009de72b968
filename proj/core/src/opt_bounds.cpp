#include "binlb/opt_bounds.hpp"

#include <deque>
#include <limits>
#include <map>
#include <string>

namespace binlb {

namespace {

std::int64_t pow7(int e) { return pow_int(7, static_cast<unsigned long>(e)).get_si(); }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Item categories used by the bin-group recipes. C levels are encoded as
// their level j (2..t); the rest use negative tags.
enum Category : int {
  kLargeA = -1,
  kSmallA = -2,
  kB11 = -3,
  kB21 = -4,
  kB22 = -5,
  kB31 = -6,
  kB32 = -7,
};

int category_of(const Item& item) {
  switch (item.batch.kind) {
    case BatchKind::C: return item.batch.level;
    case BatchKind::A: return item.large ? kLargeA : kSmallA;
    case BatchKind::B11: return kB11;
    case BatchKind::B21: return kB21;
    case BatchKind::B22: return kB22;
    case BatchKind::B31: return kB31;
    case BatchKind::B32: return kB32;
  }
  return 0;
}

// `quota` items taken from the union of `categories` (in listed order).
struct Quota {
  std::vector<int> categories;
  std::int64_t count = 0;
};

struct BinGroup {
  std::int64_t bins = 0;
  std::vector<Quota> quotas;
};

std::vector<int> c_levels(const ConstructionParams& p, int lowest) {
  std::vector<int> out;
  for (int j = p.t; j >= lowest; --j) out.push_back(j);
  return out;
}

// One quota per C level present at the stopping point.
void add_c_quotas(BinGroup& g, const ConstructionParams& p, int lowest, std::int64_t each) {
  for (int j : c_levels(p, lowest)) g.quotas.push_back(Quota{{j}, each});
}

std::vector<BinGroup> recipe(const StoppingPoint& point, const ConstructionParams& p, std::int64_t n_large) {
  const std::int64_t n = p.n;
  const std::int64_t n_small = n - n_large;
  std::vector<BinGroup> groups;
  auto trunk_group = [&](std::int64_t bins, std::int64_t each) {
    BinGroup g{bins, {}};
    add_c_quotas(g, p, 2, each);
    g.quotas.push_back(Quota{{kLargeA, kSmallA}, each});
    return g;
  };
  switch (point.kind) {
    case BatchKind::C: {
      const std::int64_t per_bin = 6 * pow7(point.level - 1);
      BinGroup g{n / per_bin, {}};
      add_c_quotas(g, p, point.level, per_bin);
      groups.push_back(g);
      break;
    }
    case BatchKind::A: groups.push_back(trunk_group(n / 6, 6)); break;
    case BatchKind::B11: {
      auto g = trunk_group(n / 3, 3);
      g.quotas.push_back(Quota{{kB11}, 1});
      groups.push_back(g);
      break;
    }
    case BatchKind::B21: {
      auto g = trunk_group(n / 2, 2);
      g.quotas.push_back(Quota{{kB21}, 2});
      groups.push_back(g);
      break;
    }
    case BatchKind::B22: {
      auto g = trunk_group(n, 1);
      g.quotas.push_back(Quota{{kB21}, 1});
      g.quotas.push_back(Quota{{kB22}, 1});
      groups.push_back(g);
      break;
    }
    case BatchKind::B31:
    case BatchKind::B32: {
      // B32 bins hold half of a B31 bin plus one B32-item.
      const bool half = point.kind == BatchKind::B32;
      const std::int64_t scale = half ? 1 : 2;
      BinGroup large{ceil_div(n_large, 3 * scale), {}};
      add_c_quotas(large, p, 2, 3 * scale);
      large.quotas.push_back(Quota{{kLargeA}, 3 * scale});
      BinGroup paired{half ? n_small : ceil_div(n_small, 2), {}};
      paired.quotas.push_back(Quota{{kB31}, scale});
      paired.quotas.push_back(Quota{{kSmallA}, scale});
      BinGroup filler{ceil_div(n_small, 6 * scale), {}};
      filler.quotas.push_back(Quota{{kB31}, scale});
      add_c_quotas(filler, p, 2, 6 * scale);
      for (auto* g : {&large, &paired, &filler}) {
        if (half) g->quotas.push_back(Quota{{kB32}, 1});
        groups.push_back(*g);
      }
      break;
    }
  }
  return groups;
}

}  // namespace

Rational opt_formula(const StoppingPoint& point, const ConstructionParams& p, std::int64_t n_large) {
  const Rational n(p.n);
  switch (point.kind) {
    case BatchKind::C: return n / (6 * pow7(point.level - 1));
    case BatchKind::A: return n / 6;
    case BatchKind::B11: return n / 3;
    case BatchKind::B21: return n / 2;
    case BatchKind::B22: return n;
    case BatchKind::B31: return (7 * n - 5 * n_large) / 12;
    case BatchKind::B32: return (7 * n - 5 * n_large) / 6;
  }
  return 0;
}

Rational opt_upper_bound(const StoppingPoint& point, const ConstructionParams& p, std::int64_t n_large) {
  std::int64_t bins = 0;
  for (const auto& g : recipe(point, p, n_large)) bins += g.bins;
  return Rational(bins);
}

void validate_solution(const OfflineSolution& sol, std::span<const Item> items, const ArithmeticContext& ctx,
                       const std::optional<LayeredValue>& cap) {
  std::map<std::size_t, const Item*> by_id;
  for (const auto& item : items) by_id.emplace(item.id, &item);
  std::map<std::size_t, int> seen;
  const LayeredValue limit = cap ? *cap : LayeredValue(Rational(1));
  for (std::size_t b = 0; b < sol.bins.size(); ++b) {
    LayeredValue load;
    for (auto id : sol.bins[b]) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw InfeasibleConstruction(sol.point.name() + ": bin " + std::to_string(b) + " holds unknown item " +
                                     std::to_string(id));
      }
      if (++seen[id] > 1) {
        throw InfeasibleConstruction(sol.point.name() + ": item " + std::to_string(id) + " packed twice");
      }
      load += it->second->size;
    }
    if (ctx.greater(load, limit)) {
      throw InfeasibleConstruction(sol.point.name() + ": bin " + std::to_string(b) + " has load " +
                                   load.to_string() + " above " + limit.to_string());
    }
  }
  if (seen.size() != by_id.size()) {
    throw InfeasibleConstruction(sol.point.name() + ": " + std::to_string(by_id.size() - seen.size()) +
                                 " items not packed");
  }
}

OfflineSolution construct_solution(const StoppingPoint& point, std::span<const Item> items,
                                   const ConstructionParams& p, const LayeredValue& gamma,
                                   const ArithmeticContext& ctx) {
  std::map<int, std::deque<std::size_t>> pool;
  std::int64_t n_large = 0;
  for (const auto& item : items) {
    pool[category_of(item)].push_back(item.id);
    if (item.batch.kind == BatchKind::A && item.large) ++n_large;
  }

  OfflineSolution sol{point, {}};
  for (const auto& group : recipe(point, p, n_large)) {
    for (std::int64_t b = 0; b < group.bins; ++b) {
      std::vector<std::size_t> bin;
      for (const auto& q : group.quotas) {
        std::int64_t need = q.count;
        for (int cat : q.categories) {
          auto& queue = pool[cat];
          while (need > 0 && !queue.empty()) {
            bin.push_back(queue.front());
            queue.pop_front();
            --need;
          }
        }
      }
      if (!bin.empty()) sol.bins.push_back(std::move(bin));
    }
  }
  // Anything the recipe did not absorb goes one item per bin.
  for (auto& [cat, queue] : pool) {
    for (auto id : queue) sol.bins.push_back({id});
    queue.clear();
  }

  std::optional<LayeredValue> cap;
  if (point.kind == BatchKind::B31) cap = LayeredValue(Rational(1)) - gamma.scaled(Rational(1, 7));
  validate_solution(sol, items, ctx, cap);
  return sol;
}

Rational first_batch_opt_lower(const ConstructionParams& p) {
  const Integer per_bin = 6 * pow_int(7, static_cast<unsigned long>(p.t - 1));
  const Rational threshold = Rational(1) / Rational(per_bin + 1);
  if (!(c_size(p, p.t).base() > threshold)) {
    throw InfeasibleConstruction("C_t does not exceed 1/(6*7^(t-1)+1)");
  }
  return Rational(p.n) / Rational(per_bin);
}

int exact_opt(std::span<const LayeredValue> sizes, const ArithmeticContext& ctx) {
  const std::size_t n = sizes.size();
  if (n > 16) throw std::invalid_argument("exact_opt supports at most 16 items");
  if (n == 0) return 0;
  const std::size_t full = (std::size_t{1} << n) - 1;
  const LayeredValue one(Rational(1));

  std::vector<char> feasible(full + 1, 0);
  std::vector<LayeredValue> load(full + 1);
  feasible[0] = 1;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const std::size_t rest = mask ^ low;
    if (!feasible[rest]) continue;
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(low));
    load[mask] = load[rest] + sizes[bit];
    feasible[mask] = ctx.less_equal(load[mask], one) ? 1 : 0;
  }
  load.clear();

  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(full + 1, kInf);
  best[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const std::size_t others = mask ^ low;
    // Subsets of mask that contain its lowest item.
    for (std::size_t sub = others;; sub = (sub - 1) & others) {
      const std::size_t s = sub | low;
      if (feasible[s] && best[mask ^ s] + 1 < best[mask]) best[mask] = best[mask ^ s] + 1;
      if (sub == 0) break;
    }
  }
  return best[full];
}

}  // namespace binlb
