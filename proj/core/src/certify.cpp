#include <algorithm>
#include <functional>

#include "binlb/analysis.hpp"

namespace binlb {

namespace {

// Limit sizes: every A-item sits a fresh atom η above its lower end, so
// "strictly above (1+eps)/7" is decided exactly.
struct LimitSizes {
  ConstructionParams p;
  ArithmeticContext ctx;
  std::map<int, LayeredValue> c;
  LayeredValue large_a, small_a, b11, b21, b22, b31, b32;

  LimitSizes(int t, const CertifyOptions& o) : p(ConstructionParams::make(t, 1, o.eps)), ctx(p.context()) {
    if (!(o.eta_exponent > o.gamma_exponent)) throw std::invalid_argument("eta must lie below gamma");
    const LayeredValue gamma = LayeredValue::atom(o.gamma_exponent);
    const LayeredValue eta = LayeredValue::atom(o.eta_exponent, Rational(1, 7));
    for (int j = 2; j <= t; ++j) c[j] = c_size(p, j);
    const LayeredValue base((1 + p.eps) / 7);
    small_a = base + eta;
    large_a = base + gamma.scaled(Rational(4, 7)) + eta;
    b11 = b_size(p, BatchKind::B11, gamma);
    b21 = b_size(p, BatchKind::B21, gamma);
    b22 = b_size(p, BatchKind::B22, gamma);
    b31 = b_size(p, BatchKind::B31, gamma);
    b32 = b_size(p, BatchKind::B32, gamma);
  }

  LayeredValue trunk_load(const UnionContents& s) const {
    LayeredValue load;
    for (const auto& [j, v] : s.c) load += c.at(j).scaled(Rational(v));
    load += large_a.scaled(Rational(s.large_a));
    load += small_a.scaled(Rational(s.small_a));
    return load;
  }

  LayeredValue b_load(const UnionContents& s) const {
    return b11.scaled(Rational(s.b11)) + b21.scaled(Rational(s.b21)) + b22.scaled(Rational(s.b22)) +
           b31.scaled(Rational(s.b31)) + b32.scaled(Rational(s.b32));
  }

  bool fits(const LayeredValue& load) const { return ctx.less_equal(load, LayeredValue(Rational(1))); }
};

// The B-items one continuation may add to a bin.
struct Addition {
  UnionContents items;
  LayeredValue load;
  std::int64_t count = 0;
};

using Options = std::vector<Addition>;

UnionContents items(std::int64_t b11, std::int64_t b21, std::int64_t b22, std::int64_t b31, std::int64_t b32,
                    std::int64_t large_a = 0, std::int64_t small_a = 0) {
  UnionContents s;
  s.b11 = b11;
  s.b21 = b21;
  s.b22 = b22;
  s.b31 = b31;
  s.b32 = b32;
  s.large_a = large_a;
  s.small_a = small_a;
  return s;
}

std::array<Options, 3> branch_options(const LimitSizes& L) {
  std::array<Options, 3> out;
  auto add = [&](int branch, UnionContents s) {
    const std::int64_t count = s.size();
    out[branch].push_back(Addition{s, L.b_load(s), count});
  };
  for (int a = 0; a <= 2; ++a) add(0, items(a, 0, 0, 0, 0));
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 2; ++b) add(1, items(0, a, b, 0, 0));
  }
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 2; ++b) add(2, items(0, 0, 0, a, b));
  }
  // Every B-item weighs 1: the first feasible option by count is the best.
  for (auto& opts : out) {
    std::stable_sort(opts.begin(), opts.end(), [](const Addition& x, const Addition& y) { return x.count > y.count; });
  }
  return out;
}

UnionContents merged(UnionContents s, const UnionContents& add) {
  s.b11 += add.b11;
  s.b21 += add.b21;
  s.b22 += add.b22;
  s.b31 += add.b31;
  s.b32 += add.b32;
  return s;
}

class Enumerator {
 public:
  Enumerator(int t, CertifyMethod method, const CertifyOptions& options)
      : t_(t), method_(method), L_(t, options), options_(branch_options(L_)), weights_(t, 1) {}

  CertifiedType run(const BinType& type) {
    current_ = CertifiedType{type, {}, PriceTable::closed_form(t_).price(type), {}, 0};
    found_ = false;
    switch (type.kind) {
      case BinTypeKind::level:
        if (type.level == 1) {
          UnionContents trunk;
          trunk.large_a = 1;
          for (std::int64_t s = 0; s <= 6; ++s) {
            trunk.small_a = s;
            const LayeredValue load = L_.trunk_load(trunk);
            if (!L_.fits(load)) break;
            consider(trunk, LayeredValue(Rational(1)) - load);
          }
        } else {
          enumerate_level(type.level);
        }
        break;
      case BinTypeKind::double_bin:
      case BinTypeKind::single:
        for (const auto& opts : options_) {
          for (const auto& o : opts) {
            if (o.count == 0 || !L_.fits(o.load)) continue;
            if (classify_bin(o.items) != type) continue;
            record(o.items);
          }
        }
        break;
    }
    if (!found_) throw CertificationFailure("no feasible pattern of " + type.name());
    return current_;
  }

 private:
  // Outer kinds in order: small A, C_2, ..., C_(j-1); C_j innermost with
  // at least one item.
  void enumerate_level(int j) {
    std::vector<int> outer;
    for (int i = 2; i < j; ++i) outer.push_back(i);
    UnionContents trunk;
    std::function<void(std::size_t, const LayeredValue&)> rec = [&](std::size_t depth, const LayeredValue& room) {
      if (depth == outer.size()) {
        inner(j, trunk, room);
        return;
      }
      const int level = outer[depth];
      const LayeredValue& size = L_.c.at(level);
      LayeredValue r = room;
      for (std::int64_t x = 0;; ++x) {
        if (x > 0) {
          r -= size;
          if (L_.ctx.sign(r) < 0) break;
        }
        trunk.c[level] = x;
        rec(depth + 1, r);
      }
      trunk.c.erase(level);
    };
    for (std::int64_t s = 0; s <= 6; ++s) {
      trunk.small_a = s;
      const LayeredValue room = LayeredValue(Rational(1)) - L_.small_a.scaled(Rational(s));
      if (L_.ctx.sign(room) < 0) break;
      rec(0, room);
    }
  }

  // Largest x >= 0 with x * size <= room (size a positive rational).
  std::int64_t cap(const LayeredValue& room, const LayeredValue& size) const {
    if (L_.ctx.sign(room) < 0) return -1;
    const Rational q = room.base() / size.base();
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    std::int64_t x = fl.get_si();
    while (x > 0 && L_.ctx.greater(size.scaled(Rational(x)), room)) --x;
    while (L_.ctx.less_equal(size.scaled(Rational(x + 1)), room)) ++x;
    return x;
  }

  void inner(int j, UnionContents& trunk, const LayeredValue& room) {
    const LayeredValue& size = L_.c.at(j);
    const std::int64_t hi = cap(room, size);
    if (hi < 1) return;
    auto eval = [&](std::int64_t x) {
      trunk.c[j] = x;
      consider(trunk, room - size.scaled(Rational(x)));
    };
    if (method_ == CertifyMethod::exhaustive) {
      for (std::int64_t x = 1; x <= hi; ++x) eval(x);
    } else {
      // The price is increasing in x between the points where some branch
      // option stops fitting, so only those caps and hi need evaluating.
      std::vector<std::int64_t> points{hi};
      for (const auto& opts : options_) {
        for (const auto& o : opts) {
          const std::int64_t c = cap(room - o.load, size);
          if (c >= 1 && c < hi) points.push_back(c);
        }
      }
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      for (auto x : points) eval(x);
      current_.patterns += hi - static_cast<std::int64_t>(points.size());
    }
    trunk.c.erase(j);
  }

  void consider(const UnionContents& trunk, const LayeredValue& room) {
    UnionContents all = trunk;
    for (const auto& opts : options_) {
      for (const auto& o : opts) {
        if (L_.ctx.less_equal(o.load, room)) {
          all = merged(std::move(all), o.items);
          break;
        }
      }
    }
    record(all);
  }

  void record(const UnionContents& s) {
    ++current_.patterns;
    const Affine price = weights_.realized_price(s);
    if (!found_ || price.per_w > current_.max_price.per_w ||
        (price.per_w == current_.max_price.per_w && price.constant > current_.max_price.constant)) {
      current_.max_price = price;
      current_.witness = s;
      found_ = true;
    }
  }

  int t_;
  CertifyMethod method_;
  LimitSizes L_;
  std::array<Options, 3> options_;
  WeightSystem weights_;
  CertifiedType current_;
  bool found_ = false;
};

std::vector<BinType> all_types(int t) {
  std::vector<BinType> out;
  for (int j = t; j >= 1; --j) out.push_back(BinType::of_level(j));
  out.push_back(BinType::double_bin());
  out.push_back(BinType::single());
  return out;
}

}  // namespace

PriceTable PriceCertificate::table() const {
  std::map<BinType, Affine> entries;
  for (const auto& ct : types) entries[ct.type] = ct.max_price;
  return PriceTable::from_entries(t, std::move(entries));
}

bool PriceCertificate::ok() const {
  for (const auto& ct : types) {
    if (!(ct.max_price == ct.closed_form)) return false;
  }
  for (const auto& f : forbidden) {
    if (!f.infeasible) return false;
  }
  return !types.empty();
}

PriceCertificate certify_prices(int t, CertifyMethod method, const CertifyOptions& options) {
  if (t < 3) throw std::invalid_argument("certification needs t >= 3");
  Enumerator en(t, method, options);
  PriceCertificate cert;
  cert.t = t;
  cert.method = method;
  for (const auto& type : all_types(t)) {
    auto ct = en.run(type);
    const bool above = ct.max_price.per_w > ct.closed_form.per_w ||
                       (ct.max_price.per_w == ct.closed_form.per_w && ct.max_price.constant > ct.closed_form.constant);
    if (above) {
      throw CertificationFailure(type.name() + " pattern " + ct.witness.to_string() + " has price " +
                                 ct.max_price.to_string() + " above " + ct.closed_form.to_string());
    }
    if (!(ct.max_price == ct.closed_form)) {
      throw CertificationFailure(type.name() + " reaches only " + ct.max_price.to_string() + ", expected " +
                                 ct.closed_form.to_string());
    }
    cert.types.push_back(std::move(ct));
  }
  cert.forbidden = forbidden_combinations(t, options);
  for (const auto& f : cert.forbidden) {
    if (!f.infeasible) throw CertificationFailure(f.name + " fits in one bin");
  }
  return cert;
}

std::vector<ForbiddenCheck> forbidden_combinations(int t, const CertifyOptions& options) {
  const LimitSizes L(t, options);
  std::vector<ForbiddenCheck> out;
  auto check = [&](std::string name, UnionContents s) {
    const LayeredValue load = L.trunk_load(s) + L.b_load(s);
    out.push_back(ForbiddenCheck{std::move(name), s, load, !L.fits(load)});
  };
  auto with_c = [](int j, std::int64_t n, UnionContents s) {
    s.c[j] = n;
    return s;
  };
  auto label = [](std::int64_t n, const std::string& what, const std::string& rest) {
    return std::to_string(n) + " " + what + " + " + rest;
  };

  const std::int64_t s = pow_int(7, static_cast<unsigned long>(t - 2)).get_si();
  const std::string ct = "C" + std::to_string(t);
  check(label(12 * s + 1, ct, "2 B31"), with_c(t, 12 * s + 1, items(0, 0, 0, 2, 0)));
  check(label(14 * s + 1, ct, "2 B21"), with_c(t, 14 * s + 1, items(0, 2, 0, 0, 0)));
  check(label(21 * s + 1, ct, "B11"), with_c(t, 21 * s + 1, items(1, 0, 0, 0, 0)));
  check(label(28 * s + 1, ct, "B21"), with_c(t, 28 * s + 1, items(0, 1, 0, 0, 0)));
  check(label(28 * s + 1, ct, "B31"), with_c(t, 28 * s + 1, items(0, 0, 0, 1, 0)));

  for (int j = 2; j <= t - 1; ++j) {
    const std::int64_t p = pow_int(7, static_cast<unsigned long>(j)).get_si();
    const std::int64_t u = p / 7;
    const std::string cj = "C" + std::to_string(j);
    check(label(2 * u, cj, "2 B31"), with_c(j, 2 * u, items(0, 0, 0, 2, 0)));
    check(label((p + 2) / 3, cj, "2 B21"), with_c(j, (p + 2) / 3, items(0, 2, 0, 0, 0)));
    check(label((p + 1) / 2, cj, "B11"), with_c(j, (p + 1) / 2, items(1, 0, 0, 0, 0)));
    check(label((9 * u + 1) / 2, cj, "B31"), with_c(j, (9 * u + 1) / 2, items(0, 0, 0, 1, 0)));
    check(label((2 * p + 1) / 3, cj, "B21"), with_c(j, (2 * p + 1) / 3, items(0, 1, 0, 0, 0)));
  }

  check("large A + 1 small A + 2 B31", items(0, 0, 0, 2, 0, 1, 1));
  check("large A + 4 small A + B21", items(0, 1, 0, 0, 0, 1, 4));
  check("large A + 3 small A + B11", items(1, 0, 0, 0, 0, 1, 3));
  check("large A + 3 small A + 2 B21", items(0, 2, 0, 0, 0, 1, 3));
  check("large A + 3 small A + 2 B31", items(0, 0, 0, 2, 0, 1, 3));
  return out;
}

bool pattern_feasible(int t, const UnionContents& pattern, const CertifyOptions& options) {
  const LimitSizes L(t, options);
  const LayeredValue trunk = L.trunk_load(pattern);
  return L.fits(trunk + L.b_load(items(pattern.b11, 0, 0, 0, 0))) &&
         L.fits(trunk + L.b_load(items(0, pattern.b21, pattern.b22, 0, 0))) &&
         L.fits(trunk + L.b_load(items(0, 0, 0, pattern.b31, pattern.b32)));
}

}  // namespace binlb
