#include "binlb/verify.hpp"

#include <random>

#include "binlb/opt_bounds.hpp"

namespace binlb {

bool multiplier_identity_holds(int t, const Rational& w, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> count(0, 1'000'000);
  for (int i = 0; i < samples; ++i) {
    TranscriptStats s;
    for (int j = 2; j <= t; ++j) s.nu_c[j] = count(rng);
    s.nu_1 = count(rng);
    s.nu_11 = count(rng);
    s.nu_21 = count(rng);
    s.nu_22 = count(rng);
    s.nu_31 = count(rng);
    s.nu_32 = count(rng);
    if (multiplier_combination(s, t, w) != price_combination(s, t, w)) return false;
  }
  return true;
}

bool rhs_identity_holds(int t, const Rational& w, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> size(1, 1'000'000'000);
  for (int i = 0; i < samples; ++i) {
    const std::int64_t n = size(rng);
    const std::int64_t n_large = std::uniform_int_distribution<std::int64_t>(0, n)(rng);
    if (rhs_coefficient(t, w, n, n_large) != rhs_closed_form(t, w, fraction(n_large, n))) return false;
  }
  return true;
}

std::vector<std::int64_t> sample_n_large(std::int64_t n, int count) {
  std::vector<std::int64_t> out;
  if (count <= 1) return {0};
  for (int i = 0; i < count; ++i) {
    const std::int64_t v = n * i / (count - 1);
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

std::vector<SolutionCheck> check_solutions(const ConstructionParams& p, const std::vector<std::int64_t>& n_large) {
  const ArithmeticContext ctx = p.context();
  std::vector<SolutionCheck> out;
  for (auto nl : n_large) {
    const ScriptedInput in = scripted_input(p, nl);
    for (const auto& point : stopping_points(p.t)) {
      SolutionCheck row;
      row.n_large = nl;
      row.point = point;
      row.formula = opt_formula(point, p, nl);
      try {
        const auto items = in.presented(point);
        const auto sol = construct_solution(point, items, p, in.gamma, ctx);
        row.bins = static_cast<std::int64_t>(sol.bins.size());
        row.feasible = true;
        row.within_three = Rational(row.bins) <= row.formula + 3;
      } catch (const InfeasibleConstruction& e) {
        row.error = e.what();
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

bool VerifyResult::ok() const { return failing().empty(); }

std::vector<std::string> VerifyResult::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

VerifyResult verify_all(const VerifyOptions& o) {
  VerifyResult r;
  const auto p = ConstructionParams::make(o.t, 1);
  const WeightSystem weights(o.t, o.w);

  try {
    r.certificate = certify_prices(o.t, o.method);
    r.checks.push_back({"price table", true, "all bin types attain their closed-form price"});
  } catch (const CertificationFailure& e) {
    r.checks.push_back({"price table", false, e.what()});
  }
  {
    const auto forbidden = forbidden_combinations(o.t);
    std::string bad;
    for (const auto& f : forbidden) {
      if (!f.infeasible) bad += (bad.empty() ? "" : "; ") + f.name;
    }
    r.checks.push_back({"forbidden combinations", bad.empty(),
                        bad.empty() ? std::to_string(forbidden.size()) + " combinations exceed 1" : bad});
  }
  r.checks.push_back({"trunk weight identity", weights.trunk_weight_identity(), "C weights along the trunk sum to 1/6"});
  r.checks.push_back({"multiplier identity", multiplier_identity_holds(o.t, o.w, o.identity_samples),
                      std::to_string(o.identity_samples) + " random nu vectors"});
  r.checks.push_back({"rhs coefficient identity", rhs_identity_holds(o.t, o.w, o.identity_samples),
                      std::to_string(o.identity_samples) + " random (N, n_L)"});
  try {
    const Rational lower = first_batch_opt_lower(p);
    const Rational upper = opt_upper_bound(BatchLabel::c(o.t), p, 0);
    r.checks.push_back({"first batch OPT", lower == upper, "OPT_t = " + to_string(lower)});
  } catch (const InfeasibleConstruction& e) {
    r.checks.push_back({"first batch OPT", false, e.what()});
  }

  r.solutions = check_solutions(p, sample_n_large(p.n, o.n_large_samples));
  std::string bad;
  for (const auto& s : r.solutions) {
    if (!s.feasible || !s.within_three) {
      bad = "n_L = " + std::to_string(s.n_large) + " at " + s.point.name() + ": " +
            (s.error.empty() ? "too many bins" : s.error);
      break;
    }
  }
  r.checks.push_back({"OPT constructions", bad.empty(),
                      bad.empty() ? std::to_string(r.solutions.size()) + " packings feasible" : bad});
  return r;
}

}  // namespace binlb
