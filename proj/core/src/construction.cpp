#include "binlb/construction.hpp"

#include <string>

namespace binlb {

Integer pow_int(long base, unsigned long exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return out;
}

Rational pow_rat(const Rational& base, unsigned long exp) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

namespace {

Integer ceil_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::int64_t period(int t) { return 6 * pow_int(7, static_cast<unsigned long>(t)).get_si(); }

}  // namespace

ConstructionParams ConstructionParams::with_n(int t, std::int64_t n, std::optional<Rational> eps) {
  if (t < 3) throw std::invalid_argument("t must be >= 3");
  ConstructionParams p;
  p.t = t;
  p.n = n;
  p.m = n / period(t);
  p.eps = eps ? *eps : Rational(1) / (2 * Rational(pow_int(2058, static_cast<unsigned long>(t))));
  p.eps.canonicalize();
  if (sgn(p.eps) <= 0) throw std::invalid_argument("eps must be positive");
  p.k = ceil_div(p.eps.get_den(), p.eps.get_num());
  p.validate();
  return p;
}

ConstructionParams ConstructionParams::make(int t, std::int64_t m, std::optional<Rational> eps) {
  if (t < 3) throw std::invalid_argument("t must be >= 3");
  if (m < 1) throw std::invalid_argument("M must be >= 1");
  return with_n(t, m * period(t), std::move(eps));
}

void ConstructionParams::validate() const {
  if (t < 3) throw std::invalid_argument("t must be >= 3");
  if (n <= 0 || n % period(t) != 0) {
    throw std::invalid_argument("N = " + std::to_string(n) + " is not a positive multiple of 6*7^t");
  }
  if (m < 1) throw std::invalid_argument("M must be >= 1");
  const Rational limit = Rational(1) / Rational(pow_int(2058, static_cast<unsigned long>(t)));
  if (!(sgn(eps) > 0 && eps < limit)) throw std::invalid_argument("eps must lie in (0, 1/2058^t)");
  if (k != ceil_div(eps.get_den(), eps.get_num())) throw std::invalid_argument("k must equal ceil(1/eps)");
}

LayeredValue c_size(const ConstructionParams& p, int j) {
  if (j == p.t) {
    return LayeredValue(Rational(1) / Rational(6 * pow_int(7, static_cast<unsigned long>(p.t - 1))) -
                        294 * p.eps);
  }
  if (j < 2 || j > p.t) throw std::out_of_range("C_j needs 2 <= j <= t");
  return LayeredValue((1 + 28 * p.eps) / Rational(pow_int(7, static_cast<unsigned long>(j))));
}

LayeredValue a_size(const ConstructionParams& p, const Integer& exponent) {
  return LayeredValue((1 + p.eps) / 7) + LayeredValue::atom(exponent, Rational(1, 7));
}

LayeredValue b_size(const ConstructionParams& p, BatchKind kind, const LayeredValue& gamma) {
  switch (kind) {
    case BatchKind::B11: return LayeredValue((1 + 2 * p.eps) / 2);
    case BatchKind::B21: return LayeredValue((1 + p.eps) / 3);
    case BatchKind::B22: return LayeredValue((1 + p.eps) / 2);
    case BatchKind::B31: return LayeredValue((5 - 2 * p.eps) / 14) - gamma.scaled(Rational(3, 14));
    case BatchKind::B32: return LayeredValue(Rational(1, 2)) + gamma.scaled(Rational(1, 14));
    default: break;
  }
  throw std::invalid_argument("b_size: not a B batch");
}

std::vector<LayeredValue> c_batch_sizes(const ConstructionParams& p) {
  std::vector<LayeredValue> out;
  for (int j = p.t; j >= 2; --j) out.push_back(c_size(p, j));
  return out;
}

// ---------------------------------------------------------------- AdaptiveGenerator

AdaptiveGenerator::AdaptiveGenerator(Integer lo, Integer hi, std::size_t capacity)
    : lo_(std::move(lo)), hi_(std::move(hi)), capacity_(capacity) {}

AdaptiveGenerator AdaptiveGenerator::for_items(std::size_t n) {
  Integer lo = Integer(1) << static_cast<mp_bitcnt_t>(n + 2);
  Integer hi = Integer(1) << static_cast<mp_bitcnt_t>(n + 3);
  return AdaptiveGenerator(std::move(lo), std::move(hi), n);
}

const Integer& AdaptiveGenerator::next_exponent() {
  if (pending_) throw std::logic_error("next_exponent: previous item not classified");
  if (issued_.size() >= capacity_) throw IntervalExhausted("all A-items already issued");
  if (hi_ - lo_ < 2) throw IntervalExhausted("exponent interval has no interior point");
  Integer mid = lo_ + hi_;
  mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
  issued_.push_back(Issued{std::move(mid), false});
  pending_ = true;
  return issued_.back().exponent;
}

void AdaptiveGenerator::classify(bool into_empty_bin) {
  if (!pending_) throw std::logic_error("classify: no pending item");
  auto& item = issued_.back();
  item.large = into_empty_bin;
  if (into_empty_bin) {
    lo_ = item.exponent + 1;
  } else {
    hi_ = item.exponent - 1;
  }
  pending_ = false;
}

std::size_t AdaptiveGenerator::large_count() const {
  std::size_t n = 0;
  for (const auto& i : issued_) n += i.large ? 1 : 0;
  return n;
}

bool AdaptiveGenerator::interval_invariant_holds() const {
  for (std::size_t i = 0; i < issued_.size(); ++i) {
    if (pending_ && i + 1 == issued_.size()) break;
    const auto& it = issued_[i];
    if (it.large ? !(it.exponent <= lo_ - 1) : !(it.exponent >= hi_ + 1)) return false;
  }
  return true;
}

bool AdaptiveGenerator::gap_property_holds() const {
  const Integer* max_large = nullptr;
  const Integer* min_small = nullptr;
  for (const auto& it : issued_) {
    if (it.large) {
      if (!max_large || it.exponent > *max_large) max_large = &it.exponent;
    } else if (!min_small || it.exponent < *min_small) {
      min_small = &it.exponent;
    }
  }
  if (!max_large || !min_small) return true;
  return *min_small >= *max_large + 2;
}

Integer AdaptiveGenerator::gamma_exponent() const {
  const Integer* min_small = nullptr;
  for (const auto& it : issued_) {
    if (!it.large && (!min_small || it.exponent < *min_small)) min_small = &it.exponent;
  }
  return min_small ? *min_small : hi_ + 1;
}

// ---------------------------------------------------------------- B batches

const LayeredValue& BBatchPlan::size(BatchKind kind) const {
  switch (kind) {
    case BatchKind::B11: return b11;
    case BatchKind::B21: return b21;
    case BatchKind::B22: return b22;
    case BatchKind::B31: return b31;
    case BatchKind::B32: return b32;
    default: break;
  }
  throw std::invalid_argument("not a B batch");
}

std::int64_t BBatchPlan::count(BatchKind kind) const {
  switch (kind) {
    case BatchKind::B11: return n11;
    case BatchKind::B21: return n21;
    case BatchKind::B22: return n22;
    case BatchKind::B31: return n31;
    case BatchKind::B32: return n32;
    default: break;
  }
  throw std::invalid_argument("not a B batch");
}

BBatchPlan b_batch_plan(const ConstructionParams& p, const LayeredValue& gamma, std::int64_t n_large) {
  if (n_large < 0 || n_large > p.n) throw std::out_of_range("n_L must lie in [0, N]");
  BBatchPlan plan;
  plan.b11 = b_size(p, BatchKind::B11, gamma);
  plan.b21 = b_size(p, BatchKind::B21, gamma);
  plan.b22 = b_size(p, BatchKind::B22, gamma);
  plan.b31 = b_size(p, BatchKind::B31, gamma);
  plan.b32 = b_size(p, BatchKind::B32, gamma);
  plan.n11 = p.n / 3;
  plan.n21 = p.n;
  plan.n22 = p.n;
  plan.n31 = (7 * p.n - 7 * n_large) / 6;
  plan.n32 = (7 * p.n - 5 * n_large) / 6;
  return plan;
}

GammaCheck check_gamma(const ConstructionParams& p, const ArithmeticContext& ctx,
                       const AdaptiveGenerator& gen, const LayeredValue& gamma) {
  GammaCheck out{true, true, false};
  const LayeredValue small_cap = LayeredValue((1 + p.eps) / 7) + gamma.scaled(Rational(1, 7));
  const LayeredValue large_floor = LayeredValue((1 + p.eps) / 7) + gamma.scaled(Rational(4, 7));
  for (const auto& it : gen.issued()) {
    const LayeredValue size = a_size(p, it.exponent);
    if (it.large) {
      out.large_above = out.large_above && ctx.greater(size, large_floor);
    } else {
      out.small_below = out.small_below && ctx.less_equal(size, small_cap);
    }
  }
  out.below_eps_quarter = ctx.less(gamma, LayeredValue(p.eps / 4));
  return out;
}

// ---------------------------------------------------------------- scripted input

std::vector<Item> ScriptedInput::presented(const StoppingPoint& point) const {
  std::vector<Item> out;
  for (const auto& item : items) {
    const auto& b = item.batch;
    bool keep = false;
    if (point.kind == BatchKind::C) {
      keep = b.kind == BatchKind::C && b.level >= point.level;
    } else if (b.branch() == Branch::trunk) {
      keep = true;
    } else if (b.branch() == point.branch()) {
      keep = b.kind <= point.kind;  // B21 before B22, B31 before B32
    }
    if (keep) out.push_back(item);
  }
  return out;
}

ScriptedInput scripted_input(const ConstructionParams& p, std::int64_t n_large) {
  if (n_large < 0 || n_large > p.n) throw std::out_of_range("n_L must lie in [0, N]");
  ScriptedInput in;
  auto push = [&](BatchLabel label, LayeredValue size, bool large = false) {
    in.items.push_back(Item{in.items.size(), label, std::move(size), large});
  };
  for (int j = p.t; j >= 2; --j) {
    const auto size = c_size(p, j);
    for (std::int64_t i = 0; i < p.n; ++i) push(BatchLabel::c(j), size);
  }
  auto gen = AdaptiveGenerator::for_items(static_cast<std::size_t>(p.n));
  std::vector<std::size_t> a_ids;
  for (std::int64_t i = 0; i < p.n; ++i) {
    const bool large = (i + 1) * n_large / p.n > i * n_large / p.n;
    const Integer e = gen.next_exponent();
    gen.classify(large);
    push(BatchLabel::of(BatchKind::A), a_size(p, e), large);
  }
  in.n_large = n_large;
  in.gamma_exponent = gen.gamma_exponent();
  in.gamma = LayeredValue::atom(in.gamma_exponent);
  in.plan = b_batch_plan(p, in.gamma, n_large);
  for (auto kind : {BatchKind::B11, BatchKind::B21, BatchKind::B22, BatchKind::B31, BatchKind::B32}) {
    for (std::int64_t i = 0; i < in.plan.count(kind); ++i) push(BatchLabel::of(kind), in.plan.size(kind));
  }
  return in;
}

}  // namespace binlb
