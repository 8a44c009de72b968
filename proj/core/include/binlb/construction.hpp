#pragma once

// Parameters and item sizes of the branching lower-bound input, and the
// adaptive generator that issues A-item sizes against an online algorithm.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "binlb/layered.hpp"
#include "binlb/packing.hpp"

namespace binlb {

struct ConstructionParams {
  int t = 3;
  std::int64_t m = 1;
  std::int64_t n = 0;  // items per trunk batch; multiple of 6*7^t
  Rational eps;        // must satisfy eps < 1/2058^t
  Integer k;           // ceil(1/eps)

  /// n = m * 6 * 7^t; eps defaults to 1/(2 * 2058^t).
  static ConstructionParams make(int t, std::int64_t m, std::optional<Rational> eps = std::nullopt);
  /// Explicit n (must be a positive multiple of 6*7^t).
  static ConstructionParams with_n(int t, std::int64_t n, std::optional<Rational> eps = std::nullopt);

  /// Throws std::invalid_argument describing the first violated requirement.
  void validate() const;
  ArithmeticContext context() const { return ArithmeticContext(k); }
};

Integer pow_int(long base, unsigned long exp);
Rational pow_rat(const Rational& base, unsigned long exp);

/// Sizes as exact layered values. γ enters B31 and B32.
LayeredValue c_size(const ConstructionParams& p, int j);
LayeredValue a_size(const ConstructionParams& p, const Integer& exponent);
LayeredValue b_size(const ConstructionParams& p, BatchKind kind, const LayeredValue& gamma);

/// C_t ... C_2 in presentation order.
std::vector<LayeredValue> c_batch_sizes(const ConstructionParams& p);

class IntervalExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Issues exponents e_i (a_i = k^-e_i) so that every A-item packed into an
/// empty bin ("large") has a_large > k * a_small for every A-item packed into
/// a non-empty bin ("small"). Exponents are midpoints of the open integer
/// interval (lo, hi); a large item moves lo to e, a small one moves hi to e.
class AdaptiveGenerator {
 public:
  struct Issued {
    Integer exponent;
    bool large = false;
  };

  AdaptiveGenerator(Integer lo, Integer hi, std::size_t capacity);
  /// The interval (2^(n+2), 2^(n+3)) for n items.
  static AdaptiveGenerator for_items(std::size_t n);

  /// Midpoint of (lo, hi), rounded down. Must be followed by classify().
  const Integer& next_exponent();
  void classify(bool into_empty_bin);

  const Integer& lo() const { return lo_; }
  const Integer& hi() const { return hi_; }
  const std::vector<Issued>& issued() const { return issued_; }
  std::size_t large_count() const;

  /// Every past large item has e <= lo - 1 and every small one e >= hi + 1
  /// (in the closed-bound convention lo := e + 1, hi := e - 1).
  bool interval_invariant_holds() const;
  /// e_small >= e_large + 2 for all pairs, i.e. a_large / a_small >= k^2 > k.
  bool gap_property_holds() const;

  /// Exponent of γ: the largest small a (smallest small exponent), or
  /// hi + 1 when no small item was issued.
  Integer gamma_exponent() const;

 private:
  Integer lo_, hi_;  // issued exponents lie strictly between lo_ and hi_
  std::size_t capacity_;
  std::vector<Issued> issued_;
  bool pending_ = false;
};

struct BBatchPlan {
  LayeredValue b11, b21, b22, b31, b32;
  std::int64_t n11 = 0, n21 = 0, n22 = 0, n31 = 0, n32 = 0;

  const LayeredValue& size(BatchKind kind) const;
  std::int64_t count(BatchKind kind) const;
};

/// B-batch sizes and counts; n31 = floor((7n - 7nL)/6), n32 = floor((7n - 5nL)/6).
BBatchPlan b_batch_plan(const ConstructionParams& p, const LayeredValue& gamma, std::int64_t n_large);

struct GammaCheck {
  bool small_below = false;   // every small A-item <= (1+eps+γ)/7
  bool large_above = false;   // every large A-item > (1+eps+4γ)/7
  bool below_eps_quarter = false;  // γ < eps/4
  bool ok() const { return small_below && large_above && below_eps_quarter; }
};

GammaCheck check_gamma(const ConstructionParams& p, const ArithmeticContext& ctx,
                       const AdaptiveGenerator& gen, const LayeredValue& gamma);

/// Every item of the tree built for a fixed large/small pattern of the
/// A-batch, as an algorithm-free input for the offline constructions.
struct ScriptedInput {
  std::vector<Item> items;  // ids are indices
  LayeredValue gamma;
  Integer gamma_exponent;
  std::int64_t n_large = 0;
  BBatchPlan plan;

  /// Items presented up to (and including) the given stopping point.
  std::vector<Item> presented(const StoppingPoint& point) const;
};

/// Spreads n_large large A-items evenly over the A-batch.
ScriptedInput scripted_input(const ConstructionParams& p, std::int64_t n_large);

}  // namespace binlb
