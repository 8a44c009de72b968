#pragma once

// Plays the branching input tree against an online algorithm and evaluates
// every stopping point.

#include <cstdint>
#include <string>
#include <vector>

#include "binlb/algorithms.hpp"
#include "binlb/analysis.hpp"
#include "binlb/construction.hpp"
#include "binlb/packing.hpp"

namespace binlb {

enum class ForkMode {
  snapshot,  // copy the algorithm after the trunk
  replay,    // rebuild it from the factory and re-feed the trunk
};

std::string to_string(ForkMode mode);

struct StoppingPointResult {
  StoppingPoint point;
  std::int64_t alg_cost = 0;
  Rational opt_upper;    // bin groups of the explicit packing, rounded up
  Rational opt_formula;  // idealized count
  Rational ratio;        // alg_cost / opt_upper
};

struct AdversaryChecks {
  bool gap_property = false;        // a_large > k * a_small for every pair, exact
  bool interval_invariant = false;
  bool sizes_in_intervals = false;  // every size inside its open interval
  bool gamma = false;               // the defining inequalities of γ and γ < eps/4
  bool branches_extend_trunk = false;
  bool n_large_is_nu1 = false;
  bool cost_formulas = false;       // ALG per point equals the nu formulas
  std::vector<std::string> failures;

  bool ok() const {
    return gap_property && interval_invariant && sizes_in_intervals && gamma && branches_extend_trunk &&
           n_large_is_nu1 && cost_formulas;
  }
};

struct AdversaryReport {
  std::string algorithm;
  ForkMode fork = ForkMode::snapshot;
  ConstructionParams params;
  std::vector<StoppingPointResult> points;
  std::int64_t n_large = 0;
  BBatchPlan plan;
  Integer gamma_exponent;
  Rational max_ratio;
  StoppingPoint argmax;
  AdversaryChecks checks;
};

struct RunResult {
  Transcript transcript;
  TranscriptStats stats;
  LayeredValue gamma;
  AdversaryReport report;
};

/// Runs the trunk (C_t ... C_2, then the adaptive A-batch) and all three
/// branches. Snapshot mode falls back to replay for algorithms that cannot
/// snapshot. Propagates OverflowRejection and CertificateViolation; throws
/// std::logic_error when the algorithm breaks its contract.
RunResult run_tree(const ConstructionParams& params, const AlgorithmFactory& factory,
                   ForkMode mode = ForkMode::snapshot);

/// The chain max ratio >= W / (sum multipliers * OPT upper bounds) >= the
/// finite-t bound at n'_L = n_L / N, with W from the issued counts.
struct ChainCheck {
  Rational w;
  Rational n_frac;
  Rational total_weight;
  Rational denominator;  // sum over points of multiplier * opt_upper
  Rational chain_bound;  // total_weight / denominator
  Rational finite_bound;
  Rational max_ratio;
  Rational tolerance;
  bool ratio_above_chain = false;
  bool chain_near_finite = false;  // chain_bound >= finite_bound - tolerance

  bool ok() const { return ratio_above_chain && chain_near_finite; }
};

ChainCheck check_chain(const RunResult& run, const Rational& w, const Rational& tolerance = Rational(1, 100));

}  // namespace binlb
