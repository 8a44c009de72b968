#pragma once

// Upper bounds on the optimal offline cost at every stopping point, the
// explicit packings that realize them, and a small exact-OPT oracle.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "binlb/construction.hpp"
#include "binlb/layered.hpp"
#include "binlb/packing.hpp"

namespace binlb {

class InfeasibleConstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OfflineSolution {
  StoppingPoint point;
  std::vector<std::vector<std::size_t>> bins;  // item ids
};

/// Idealized formula: N/(6*7^(j-1)), N/6, N/3, N/2, N, (7N-5nL)/12, (7N-5nL)/6.
Rational opt_formula(const StoppingPoint& point, const ConstructionParams& p, std::int64_t n_large);

/// The formula with a ceiling on every bin group: an upper bound on the bins
/// used by construct_solution (which drops groups' empty leftovers).
/// Exceeds opt_formula by < 3.
Rational opt_upper_bound(const StoppingPoint& point, const ConstructionParams& p, std::int64_t n_large);

/// Builds the packing for the items presented up to `point`. `items` holds
/// exactly those items (large A-items flagged). Every bin is validated by
/// exact load comparison; at the B31 point loads are also checked against
/// 1 - γ/7. Throws InfeasibleConstruction on failure.
OfflineSolution construct_solution(const StoppingPoint& point, std::span<const Item> items,
                                   const ConstructionParams& p, const LayeredValue& gamma,
                                   const ArithmeticContext& ctx);

/// Checks that every item appears exactly once and every bin load is at most
/// `cap` (default 1). Throws InfeasibleConstruction with the offending bin.
void validate_solution(const OfflineSolution& sol, std::span<const Item> items,
                       const ArithmeticContext& ctx, const std::optional<LayeredValue>& cap = std::nullopt);

/// N/(6*7^(t-1)) after checking C_t > 1/(6*7^(t-1)+1), which means no bin
/// holds more than 6*7^(t-1) C_t-items.
Rational first_batch_opt_lower(const ConstructionParams& p);

/// Exact minimum number of bins by dynamic programming over subsets.
/// Supports up to 16 items.
int exact_opt(std::span<const LayeredValue> sizes, const ArithmeticContext& ctx);

}  // namespace binlb
