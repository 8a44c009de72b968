#pragma once

// Weights, bin types, prices and the bound they imply.
//
// Every item gets a weight; a bin D of the algorithm is priced by the total
// weight of S(D), the union of its contents over all continuations of the
// input. Prices are affine in w, the weight of a large A-item, so they are
// carried as (constant, coefficient of w) pairs.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "binlb/construction.hpp"
#include "binlb/layered.hpp"
#include "binlb/packing.hpp"
#include "binlb/surd.hpp"

namespace binlb {

struct Affine {
  Rational constant = 0;
  Rational per_w = 0;

  Rational at(const Rational& w) const { return constant + per_w * w; }
  std::string to_string() const;

  Affine& operator+=(const Affine& o) {
    constant += o.constant;
    per_w += o.per_w;
    return *this;
  }
  friend Affine operator+(Affine a, const Affine& b) { return a += b; }
  friend Affine operator*(const Rational& q, const Affine& a) { return {q * a.constant, q * a.per_w}; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// S(D) as item counts. C-items are keyed by level j.
struct UnionContents {
  std::map<int, std::int64_t> c;
  std::int64_t large_a = 0, small_a = 0;
  std::int64_t b11 = 0, b21 = 0, b22 = 0, b31 = 0, b32 = 0;

  void add(const Item& item);
  std::int64_t size() const;
  std::string to_string() const;
  friend bool operator==(const UnionContents&, const UnionContents&) = default;
};

enum class BinTypeKind { level, double_bin, single };

/// Type j (1 <= j <= t), double or single.
struct BinType {
  BinTypeKind kind = BinTypeKind::single;
  int level = 0;

  static BinType of_level(int j) { return {BinTypeKind::level, j}; }
  static BinType double_bin() { return {BinTypeKind::double_bin, 0}; }
  static BinType single() { return {BinTypeKind::single, 0}; }

  std::string name() const;
  friend bool operator==(const BinType&, const BinType&) = default;
  friend auto operator<=>(const BinType&, const BinType&) = default;
};

/// The unique type of a non-empty union pattern, decided by its smallest item.
BinType classify_bin(const UnionContents& contents);

class WeightSystem {
 public:
  /// Throws std::invalid_argument unless t >= 3 and 1 <= w <= 3/2.
  WeightSystem(int t, Rational w);

  int t() const { return t_; }
  const Rational& w() const { return w_; }

  /// Weight of a C_j item: 1/7^(j-1) for j < t, 1/(6*7^(t-2)) for j = t.
  Rational c_weight(int j) const;
  Affine weight(const Item& item) const;
  /// Total weight of the union pattern.
  Affine realized_price(const UnionContents& contents) const;

  /// 1/(6*7^(t-2)) + sum_{j=2}^{t-1} 1/7^(j-1) == 1/6.
  bool trunk_weight_identity() const;

 private:
  int t_;
  Rational w_;
};

/// Closed-form supremum prices: W_s = 1, W_d = 2, W_1 = w + 5,
/// W_j = 7 - 1/7^(j-1) for 2 <= j <= t-1, W_t = 7.
class PriceTable {
 public:
  static PriceTable closed_form(int t);
  static PriceTable from_entries(int t, std::map<BinType, Affine> entries);

  int t() const { return t_; }
  const Affine& price(const BinType& type) const;
  const std::map<BinType, Affine>& entries() const { return entries_; }

 private:
  int t_ = 0;
  std::map<BinType, Affine> entries_;
};

/// One bin of the algorithm with its union contents over all branches.
struct UnionBin {
  Branch opened_in = Branch::trunk;
  std::size_t bin = 0;
  UnionContents contents;
};

std::vector<UnionBin> union_bins(const Transcript& transcript);

struct WeightPriceCheck {
  Rational total_weight;  // W, every item counted once
  Rational total_price;   // sum of realized prices
  Rational bound;         // sum_j W_j nu_j + W_d(nu21+nu31) + W_s(nu11+nu22+nu32)
  bool weight_equals_price = false;
  bool weight_below_bound = false;
  bool per_bin_within_table = false;
  std::vector<std::string> violations;

  Rational slack() const { return bound - total_weight; }
  bool ok() const { return weight_equals_price && weight_below_bound && per_bin_within_table; }
};

WeightPriceCheck check_weight_price_inequality(const Transcript& transcript, const WeightSystem& weights,
                                               const PriceTable& table);

// ---------------------------------------------------------------- combination

struct Multiplier {
  StoppingPoint point;
  Rational value;
};

/// Multipliers of the per-stopping-point constraints: 1/7^(t-2) for C_t,
/// 6/7^(j-1) for 3 <= j <= t-1, 13/7 - w for C_2, w for A, 1 for every B point.
std::vector<Multiplier> multipliers(int t, const Rational& w);

/// ALG cost at each stopping point from the nu counts:
/// ALG_j = sum_{i>=j} nu_i, ALG_11 = D + nu11, ALG_22 = D + nu21 + nu22, ...
std::map<StoppingPoint, Rational> alg_costs(const TranscriptStats& s, int t);

/// sum over points of multiplier * ALG.
Rational multiplier_combination(const TranscriptStats& s, int t, const Rational& w);
/// sum_j W_j nu_j + nu11 + 2 nu21 + nu22 + 2 nu31 + nu32.
Rational price_combination(const TranscriptStats& s, int t, const Rational& w);

/// sum over points of multiplier * opt_formula / N.
Rational rhs_coefficient(int t, const Rational& w, std::int64_t n, std::int64_t n_large);
/// 2133/588 - 5/4 n' + 1/(7*48*49^(t-2)) + 1/(48*49) + w/7.
Rational rhs_closed_form(int t, const Rational& w, const Rational& n_frac);

/// W = w nL - 3 nL + 35N/6 (ideal counts).
Rational total_weight_formula(const Rational& w, std::int64_t n, std::int64_t n_large);
/// W from the counts actually issued (floors on the branch-3 batches).
Rational total_weight_issued(const ConstructionParams& p, const Rational& w, std::int64_t n_large,
                             const BBatchPlan& plan);

/// (w n' - 3n' + 35/6) / rhs_closed_form(t, w, n').
Rational bound_finite_t(int t, const Rational& w, const Rational& n_frac);
/// (w n' - 3n' + 35/6) / (8533/2352 - 5/4 n' + w/7).
Rational bound_asymptotic(const Rational& w, const Rational& n_frac);
/// min over n' in [0, 1]; the ratio of affine functions is monotone in n'.
Rational inner_min(const Rational& w);

struct OptimizeResult {
  QuadraticSurd r_star;  // (1363 - sqrt(1387369)) / 120
  QuadraticSurd w_star;  // (sqrt(1387369) - 1075) / 96
  QuadraticSurd w_residual;      // w* - (3 - 5/4 r*)
  QuadraticSurd balance_residual;  // 35/6 - r*(8533/2352 + w*/7)
  QuadraticSurd flat_coefficient;  // w* - 3 + 5/4 r*, coefficient of n'
  bool r_star_root = false;  // r* solves its defining quadratic
  Rational w_search;         // golden-section maximizer
  Rational r_search;         // inner_min(w_search)
  int iterations = 0;
};

/// Golden-section search for max_w min_n' of the asymptotic bound, plus the
/// closed-form identities in exact Q(sqrt(1387369)) arithmetic.
OptimizeResult optimize_bound(unsigned digits = 30);

/// Rational approximations of the closed forms (truncated at `digits`).
Rational w_star_approx(unsigned digits = 40);
Rational r_star_approx(unsigned digits = 40);

struct SweepRow {
  Rational w;
  Rational n_frac;
  Rational bound;
};

std::vector<SweepRow> bound_sweep(int w_steps = 10, int n_steps = 4);

// ---------------------------------------------------------------- certification

class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CertifyMethod {
  exhaustive,  // every trunk count vector
  breakpoint,  // inner count of the smallest item solved at its breakpoints
};

struct CertifyOptions {
  std::optional<Rational> eps;   // defaults to the construction default for t
  Integer gamma_exponent = 5;    // representative γ = k^-5
  Integer eta_exponent = 11;     // openness atom η = k^-11, below γ
};

struct CertifiedType {
  BinType type;
  Affine max_price;
  Affine closed_form;
  UnionContents witness;
  std::int64_t patterns = 0;
};

struct ForbiddenCheck {
  std::string name;
  UnionContents pattern;  // every listed item in one continuation
  LayeredValue load;
  bool infeasible = false;
};

struct PriceCertificate {
  int t = 0;
  CertifyMethod method = CertifyMethod::exhaustive;
  std::vector<CertifiedType> types;
  std::vector<ForbiddenCheck> forbidden;

  PriceTable table() const;
  bool ok() const;
};

/// Enumerates union patterns per bin type with limit sizes and returns the
/// maximal price of each. Throws CertificationFailure if some pattern beats
/// the closed form or the closed form is not attained.
PriceCertificate certify_prices(int t, CertifyMethod method = CertifyMethod::exhaustive,
                                const CertifyOptions& options = {});

/// The infeasible combinations behind the price bounds, each checked exactly.
std::vector<ForbiddenCheck> forbidden_combinations(int t, const CertifyOptions& options = {});

/// Exact feasibility of a union pattern: trunk plus each branch's additions
/// must fit in one bin, using the limit sizes of the certification.
bool pattern_feasible(int t, const UnionContents& pattern, const CertifyOptions& options = {});

}  // namespace binlb
