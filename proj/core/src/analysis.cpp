#include "binlb/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "binlb/opt_bounds.hpp"

namespace binlb {

namespace {

Rational inv_pow7(int e) { return Rational(1) / Rational(pow_int(7, static_cast<unsigned long>(e))); }

const Integer kRadicand = 1387369;

}  // namespace

std::string Affine::to_string() const {
  if (sgn(per_w) == 0) return binlb::to_string(constant);
  std::string out = per_w == 1 ? "w" : binlb::to_string(per_w) + "*w";
  if (sgn(constant) != 0) out += (sgn(constant) > 0 ? " + " : " - ") + binlb::to_string(abs(constant));
  return out;
}

// ---------------------------------------------------------------- union contents

void UnionContents::add(const Item& item) {
  switch (item.batch.kind) {
    case BatchKind::C: ++c[item.batch.level]; break;
    case BatchKind::A: ++(item.large ? large_a : small_a); break;
    case BatchKind::B11: ++b11; break;
    case BatchKind::B21: ++b21; break;
    case BatchKind::B22: ++b22; break;
    case BatchKind::B31: ++b31; break;
    case BatchKind::B32: ++b32; break;
  }
}

std::int64_t UnionContents::size() const {
  std::int64_t n = large_a + small_a + b11 + b21 + b22 + b31 + b32;
  for (const auto& [j, v] : c) n += v;
  return n;
}

std::string UnionContents::to_string() const {
  std::ostringstream os;
  const char* sep = "";
  auto put = [&](const std::string& name, std::int64_t v) {
    if (v == 0) return;
    os << sep << v << "x" << name;
    sep = " ";
  };
  for (auto it = c.rbegin(); it != c.rend(); ++it) put("C" + std::to_string(it->first), it->second);
  put("A_large", large_a);
  put("A_small", small_a);
  put("B11", b11);
  put("B21", b21);
  put("B22", b22);
  put("B31", b31);
  put("B32", b32);
  return os.str();
}

std::string BinType::name() const {
  switch (kind) {
    case BinTypeKind::level: return "type" + std::to_string(level);
    case BinTypeKind::double_bin: return "double";
    case BinTypeKind::single: return "single";
  }
  return "?";
}

BinType classify_bin(const UnionContents& s) {
  int smallest_c = 0;
  for (const auto& [j, v] : s.c) {
    if (v > 0) smallest_c = std::max(smallest_c, j);
  }
  if (smallest_c > 0) return BinType::of_level(smallest_c);
  if (s.large_a + s.small_a > 0) return BinType::of_level(1);
  if (s.b21 + s.b31 > 0) return BinType::double_bin();
  if (s.b11 + s.b22 + s.b32 > 0) return BinType::single();
  throw std::invalid_argument("classify_bin: empty bin");
}

// ---------------------------------------------------------------- weights

WeightSystem::WeightSystem(int t, Rational w) : t_(t), w_(std::move(w)) {
  if (t_ < 3) throw std::invalid_argument("weights need t >= 3");
  if (w_ < 1 || w_ > Rational(3, 2)) throw std::invalid_argument("w must lie in [1, 1.5]");
}

Rational WeightSystem::c_weight(int j) const {
  if (j == t_) return Rational(1) / Rational(6 * pow_int(7, static_cast<unsigned long>(t_ - 2)));
  return inv_pow7(j - 1);
}

Affine WeightSystem::weight(const Item& item) const {
  switch (item.batch.kind) {
    case BatchKind::C: return {c_weight(item.batch.level), 0};
    case BatchKind::A: return item.large ? Affine{0, 1} : Affine{1, 0};
    default: return {1, 0};
  }
}

Affine WeightSystem::realized_price(const UnionContents& s) const {
  Affine price;
  for (const auto& [j, v] : s.c) price.constant += c_weight(j) * v;
  price.per_w += s.large_a;
  price.constant += s.small_a + s.b11 + s.b21 + s.b22 + s.b31 + s.b32;
  return price;
}

bool WeightSystem::trunk_weight_identity() const {
  Rational total = c_weight(t_);
  for (int j = 2; j <= t_ - 1; ++j) total += c_weight(j);
  return total == Rational(1, 6);
}

PriceTable PriceTable::closed_form(int t) {
  PriceTable table;
  table.t_ = t;
  table.entries_[BinType::single()] = {1, 0};
  table.entries_[BinType::double_bin()] = {2, 0};
  table.entries_[BinType::of_level(1)] = {5, 1};
  for (int j = 2; j <= t - 1; ++j) table.entries_[BinType::of_level(j)] = {7 - inv_pow7(j - 1), 0};
  table.entries_[BinType::of_level(t)] = {7, 0};
  return table;
}

PriceTable PriceTable::from_entries(int t, std::map<BinType, Affine> entries) {
  PriceTable table;
  table.t_ = t;
  table.entries_ = std::move(entries);
  return table;
}

const Affine& PriceTable::price(const BinType& type) const {
  auto it = entries_.find(type);
  if (it == entries_.end()) throw std::out_of_range("no price for bin " + type.name());
  return it->second;
}

// ---------------------------------------------------------------- transcripts

std::vector<UnionBin> union_bins(const Transcript& tr) {
  std::size_t trunk_bins = 0;
  for (const auto& p : tr.trunk.placements) trunk_bins = std::max(trunk_bins, p.bin + 1);
  std::vector<UnionBin> bins(trunk_bins);
  for (std::size_t i = 0; i < trunk_bins; ++i) bins[i].bin = i;
  for (const auto& p : tr.trunk.placements) bins[p.bin].contents.add(tr.items.at(p.item));

  for (const auto& line : tr.branches) {
    std::map<std::size_t, UnionBin> fresh;
    for (const auto& p : line.placements) {
      const Item& item = tr.items.at(p.item);
      if (p.bin < trunk_bins) {
        bins[p.bin].contents.add(item);
      } else {
        auto& ub = fresh[p.bin];
        ub.opened_in = line.branch;
        ub.bin = p.bin;
        ub.contents.add(item);
      }
    }
    for (auto& [id, ub] : fresh) bins.push_back(std::move(ub));
  }
  return bins;
}

WeightPriceCheck check_weight_price_inequality(const Transcript& tr, const WeightSystem& weights,
                                               const PriceTable& table) {
  WeightPriceCheck out;
  const Rational& w = weights.w();
  for (const auto& item : tr.items) out.total_weight += weights.weight(item).at(w);

  const auto s = stats(tr);
  out.per_bin_within_table = true;
  std::map<BinType, std::int64_t> by_type;
  for (const auto& ub : union_bins(tr)) {
    const BinType type = classify_bin(ub.contents);
    ++by_type[type];
    const Affine price = weights.realized_price(ub.contents);
    out.total_price += price.at(w);
    const Affine& cap = table.price(type);
    // affine in w: the endpoints of [1, 3/2] cover the whole range
    if (price.at(1) > cap.at(1) || price.at(Rational(3, 2)) > cap.at(Rational(3, 2))) {
      out.per_bin_within_table = false;
      out.violations.push_back(to_string(ub.opened_in) + " bin " + std::to_string(ub.bin) + " (" + type.name() +
                               ") realizes " + price.to_string() + " above " + cap.to_string());
    }
  }

  // The bin type of a bin is fixed by the batch that opened it.
  std::map<BinType, std::int64_t> expected;
  for (int j = 2; j <= tr.t; ++j) expected[BinType::of_level(j)] = s.nu(BatchLabel::c(j));
  expected[BinType::of_level(1)] = s.nu_1;
  expected[BinType::double_bin()] = s.nu_21 + s.nu_31;
  expected[BinType::single()] = s.nu_11 + s.nu_22 + s.nu_32;
  for (const auto& [type, count] : expected) {
    if (by_type[type] != count) {
      out.per_bin_within_table = false;
      out.violations.push_back(type.name() + ": " + std::to_string(by_type[type]) + " bins, nu predicts " +
                               std::to_string(count));
    }
    out.bound += table.price(type).at(w) * count;
  }

  out.weight_equals_price = out.total_weight == out.total_price;
  out.weight_below_bound = out.total_weight <= out.bound;
  return out;
}

// ---------------------------------------------------------------- combination

std::vector<Multiplier> multipliers(int t, const Rational& w) {
  std::vector<Multiplier> out;
  for (const auto& point : stopping_points(t)) {
    Rational m;
    if (point.kind == BatchKind::C) {
      const int j = point.level;
      if (j == t) {
        m = inv_pow7(t - 2);
      } else if (j >= 3) {
        m = 6 * inv_pow7(j - 1);
      } else {
        m = Rational(13, 7) - w;
      }
    } else if (point.kind == BatchKind::A) {
      m = w;
    } else {
      m = 1;
    }
    out.push_back({point, m});
  }
  return out;
}

std::map<StoppingPoint, Rational> alg_costs(const TranscriptStats& s, int t) {
  std::map<StoppingPoint, Rational> out;
  Rational running = 0;
  for (int j = t; j >= 2; --j) {
    running += s.nu(BatchLabel::c(j));
    out[BatchLabel::c(j)] = running;
  }
  const Rational delta = running + s.nu_1;
  out[BatchLabel::of(BatchKind::A)] = delta;
  out[BatchLabel::of(BatchKind::B11)] = delta + s.nu_11;
  out[BatchLabel::of(BatchKind::B21)] = delta + s.nu_21;
  out[BatchLabel::of(BatchKind::B22)] = delta + s.nu_21 + s.nu_22;
  out[BatchLabel::of(BatchKind::B31)] = delta + s.nu_31;
  out[BatchLabel::of(BatchKind::B32)] = delta + s.nu_31 + s.nu_32;
  return out;
}

Rational multiplier_combination(const TranscriptStats& s, int t, const Rational& w) {
  const auto costs = alg_costs(s, t);
  Rational total = 0;
  for (const auto& m : multipliers(t, w)) total += m.value * costs.at(m.point);
  return total;
}

Rational price_combination(const TranscriptStats& s, int t, const Rational& w) {
  const auto table = PriceTable::closed_form(t);
  Rational total = 0;
  for (int j = 2; j <= t; ++j) total += table.price(BinType::of_level(j)).at(w) * s.nu(BatchLabel::c(j));
  total += table.price(BinType::of_level(1)).at(w) * s.nu_1;
  total += Rational(s.nu_11 + 2 * s.nu_21 + s.nu_22 + 2 * s.nu_31 + s.nu_32);
  return total;
}

Rational rhs_coefficient(int t, const Rational& w, std::int64_t n, std::int64_t n_large) {
  ConstructionParams p;
  p.t = t;
  p.n = n;
  Rational total = 0;
  for (const auto& m : multipliers(t, w)) total += m.value * opt_formula(m.point, p, n_large);
  return total / n;
}

Rational rhs_closed_form(int t, const Rational& w, const Rational& n_frac) {
  const Rational tail = Rational(1) / (7 * 48 * Rational(pow_int(49, static_cast<unsigned long>(t - 2))));
  return fraction(2133, 588) - Rational(5, 4) * n_frac + tail + Rational(1, 48 * 49) + w / 7;
}

Rational total_weight_formula(const Rational& w, std::int64_t n, std::int64_t n_large) {
  return w * n_large - 3 * Rational(n_large) + fraction(35 * n, 6);
}

Rational total_weight_issued(const ConstructionParams& p, const Rational& w, std::int64_t n_large,
                             const BBatchPlan& plan) {
  const WeightSystem ws(p.t, w);
  Rational total = 0;
  for (int j = 2; j <= p.t; ++j) total += ws.c_weight(j) * p.n;
  total += w * n_large + Rational(p.n - n_large);
  total += Rational(plan.n11 + plan.n21 + plan.n22 + plan.n31 + plan.n32);
  return total;
}

Rational bound_finite_t(int t, const Rational& w, const Rational& n_frac) {
  const Rational denom = rhs_closed_form(t, w, n_frac);
  if (sgn(denom) <= 0) throw std::domain_error("bound denominator is not positive");
  return (w * n_frac - 3 * n_frac + Rational(35, 6)) / denom;
}

Rational bound_asymptotic(const Rational& w, const Rational& n_frac) {
  const Rational denom = fraction(8533, 2352) - Rational(5, 4) * n_frac + w / 7;
  if (sgn(denom) <= 0) throw std::domain_error("bound denominator is not positive");
  return (w * n_frac - 3 * n_frac + Rational(35, 6)) / denom;
}

Rational inner_min(const Rational& w) {
  Rational at0 = bound_asymptotic(w, 0);
  Rational at1 = bound_asymptotic(w, 1);
  return at0 < at1 ? at0 : at1;
}

// ---------------------------------------------------------------- optimization

namespace {

QuadraticSurd r_star_exact() { return {Rational(1363, 120), Rational(-1, 120), kRadicand}; }
QuadraticSurd w_star_exact() { return {Rational(-1075, 96), Rational(1, 96), kRadicand}; }

Rational round_to_grid(const Rational& x, const Integer& scale) {
  Rational scaled = x * Rational(scale);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(fl, scale);
  out.canonicalize();
  return out;
}

}  // namespace

Rational w_star_approx(unsigned digits) { return w_star_exact().approximate(digits); }
Rational r_star_approx(unsigned digits) { return r_star_exact().approximate(digits); }

OptimizeResult optimize_bound(unsigned digits) {
  const QuadraticSurd r = r_star_exact();
  const QuadraticSurd w = w_star_exact();
  const QuadraticSurd w_residual = w - (Rational(3) - r * Rational(5, 4));
  const QuadraticSurd balance = Rational(35, 6) - r * ((w / Rational(7)) + fraction(8533, 2352));
  const QuadraticSurd flat = w - Rational(3) + r * Rational(5, 4);
  const QuadraticSurd quadratic =
      r * r * Rational(5, 28) - r * (fraction(8533, 2352) + Rational(3, 7)) + Rational(35, 6);

  OptimizeResult out{r, w, w_residual, balance, flat, quadratic.is_zero(), 0, 0, 0};

  Integer grid;
  mpz_ui_pow_ui(grid.get_mpz_t(), 10, digits + 6);
  Integer tol_den;
  mpz_ui_pow_ui(tol_den.get_mpz_t(), 10, digits);
  const Rational tolerance(1, tol_den);
  // (3 - sqrt 5)/2
  const Rational rho = (Rational(3) - sqrt_floor(Rational(5), digits + 10)) / 2;

  Rational lo = 1, hi = Rational(3, 2);
  Rational c = round_to_grid(lo + rho * (hi - lo), grid);
  Rational d = round_to_grid(hi - rho * (hi - lo), grid);
  Rational fc = inner_min(c), fd = inner_min(d);
  while (hi - lo > tolerance) {
    ++out.iterations;
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = round_to_grid(hi - rho * (hi - lo), grid);
      if (d <= c) d = (c + hi) / 2;
      fd = inner_min(d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = round_to_grid(lo + rho * (hi - lo), grid);
      if (c >= d) c = (lo + d) / 2;
      fc = inner_min(c);
    }
  }
  out.w_search = (lo + hi) / 2;
  out.r_search = inner_min(out.w_search);
  return out;
}

std::vector<SweepRow> bound_sweep(int w_steps, int n_steps) {
  std::vector<SweepRow> rows;
  for (int i = 0; i <= w_steps; ++i) {
    const Rational w = 1 + fraction(i, 2 * w_steps);
    for (int j = 0; j <= n_steps; ++j) {
      const Rational n = fraction(j, n_steps);
      rows.push_back({w, n, bound_asymptotic(w, n)});
    }
  }
  return rows;
}

}  // namespace binlb
