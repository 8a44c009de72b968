#include "binlb/report.hpp"

#include "binlb/surd.hpp"

namespace binlb {

Json rational_json(const Rational& q, unsigned digits) {
  return Json{{"exact", to_string(q)}, {"decimal", decimal_string(q, digits)}};
}

Json layered_json(const LayeredValue& v) {
  Json atoms = Json::array();
  for (const auto& [e, c] : v.atoms()) atoms.push_back(Json{{"exponent", e.get_str()}, {"coefficient", to_string(c)}});
  return Json{{"base", rational_json(v.base())}, {"atoms", atoms}};
}

Json affine_json(const Affine& a) {
  return Json{{"formula", a.to_string()}, {"constant", to_string(a.constant)}, {"per_w", to_string(a.per_w)}};
}

Json contents_json(const UnionContents& s) {
  Json c = Json::object();
  for (auto it = s.c.rbegin(); it != s.c.rend(); ++it) c["C" + std::to_string(it->first)] = it->second;
  return Json{{"c", c},           {"large_a", s.large_a}, {"small_a", s.small_a}, {"b11", s.b11},
              {"b21", s.b21},     {"b22", s.b22},         {"b31", s.b31},         {"b32", s.b32},
              {"text", s.to_string()}};
}

Json stats_json(const TranscriptStats& s) {
  Json nu = Json::object();
  for (auto it = s.nu_c.rbegin(); it != s.nu_c.rend(); ++it) nu["C" + std::to_string(it->first)] = it->second;
  nu["A"] = s.nu_1;
  nu["B11"] = s.nu_11;
  nu["B21"] = s.nu_21;
  nu["B22"] = s.nu_22;
  nu["B31"] = s.nu_31;
  nu["B32"] = s.nu_32;
  Json cost = Json::object();
  for (const auto& [point, c] : s.cost) cost[point.name()] = c;
  return Json{{"nu", nu}, {"n_large", s.n_large}, {"delta", s.delta}, {"cost", cost}};
}

Json transcript_json(const Transcript& tr) {
  Json items = Json::array();
  for (const auto& item : tr.items) {
    items.push_back(Json{{"id", item.id}, {"batch", item.batch.name()}, {"large", item.large}});
  }
  auto line_json = [](const LineTranscript& line) {
    Json placements = Json::array();
    for (const auto& p : line.placements) placements.push_back(Json::array({p.item, p.bin}));
    Json batches = Json::array();
    for (const auto& b : line.batches) {
      batches.push_back(Json{{"batch", b.label.name()}, {"begin", b.begin}, {"end", b.end}});
    }
    return Json{{"line", to_string(line.branch)}, {"batches", batches}, {"placements", placements}};
  };
  Json lines = Json::array({line_json(tr.trunk)});
  for (const auto& b : tr.branches) lines.push_back(line_json(b));
  return Json{{"t", tr.t}, {"items", items}, {"lines", lines}};
}

Json adversary_json(const AdversaryReport& r) {
  Json points = Json::array();
  for (const auto& row : r.points) {
    points.push_back(Json{{"point", row.point.name()},
                          {"alg", row.alg_cost},
                          {"opt_upper", rational_json(row.opt_upper)},
                          {"opt_formula", rational_json(row.opt_formula)},
                          {"ratio", rational_json(row.ratio)}});
  }
  const auto& c = r.checks;
  Json checks{{"gap_property", c.gap_property},
              {"interval_invariant", c.interval_invariant},
              {"sizes_in_intervals", c.sizes_in_intervals},
              {"gamma", c.gamma},
              {"branches_extend_trunk", c.branches_extend_trunk},
              {"n_large_is_nu1", c.n_large_is_nu1},
              {"cost_formulas", c.cost_formulas},
              {"failures", c.failures}};
  Json counts{{"B11", r.plan.n11}, {"B21", r.plan.n21}, {"B22", r.plan.n22}, {"B31", r.plan.n31}, {"B32", r.plan.n32}};
  return Json{{"algorithm", r.algorithm},
              {"fork", to_string(r.fork)},
              {"t", r.params.t},
              {"m", r.params.m},
              {"n", r.params.n},
              {"eps", rational_json(r.params.eps, 30)},
              {"k", r.params.k.get_str()},
              {"n_large", r.n_large},
              {"b_counts", counts},
              {"gamma_exponent", r.gamma_exponent.get_str()},
              {"stopping_points", points},
              {"max_ratio", rational_json(r.max_ratio)},
              {"argmax", r.argmax.name()},
              {"checks", checks}};
}

Json weight_check_json(const WeightPriceCheck& c) {
  return Json{{"total_weight", rational_json(c.total_weight)},
              {"total_price", rational_json(c.total_price)},
              {"price_bound", rational_json(c.bound)},
              {"slack", rational_json(c.slack())},
              {"weight_equals_price", c.weight_equals_price},
              {"weight_below_bound", c.weight_below_bound},
              {"per_bin_within_table", c.per_bin_within_table},
              {"violations", c.violations}};
}

Json chain_json(const ChainCheck& c) {
  return Json{{"w", rational_json(c.w)},
              {"n_frac", rational_json(c.n_frac)},
              {"total_weight", rational_json(c.total_weight)},
              {"denominator", rational_json(c.denominator)},
              {"chain_bound", rational_json(c.chain_bound)},
              {"finite_bound", rational_json(c.finite_bound)},
              {"max_ratio", rational_json(c.max_ratio)},
              {"tolerance", rational_json(c.tolerance)},
              {"ratio_above_chain", c.ratio_above_chain},
              {"chain_near_finite", c.chain_near_finite}};
}

Json certificate_json(const PriceCertificate& cert) {
  Json types = Json::array();
  for (const auto& ct : cert.types) {
    types.push_back(Json{{"type", ct.type.name()},
                         {"max_price", affine_json(ct.max_price)},
                         {"closed_form", affine_json(ct.closed_form)},
                         {"patterns", ct.patterns},
                         {"witness", contents_json(ct.witness)}});
  }
  Json forbidden = Json::array();
  for (const auto& f : cert.forbidden) {
    forbidden.push_back(Json{{"name", f.name}, {"load", layered_json(f.load)}, {"infeasible", f.infeasible}});
  }
  return Json{{"t", cert.t},
              {"method", cert.method == CertifyMethod::exhaustive ? "exhaustive" : "breakpoint"},
              {"types", types},
              {"forbidden", forbidden},
              {"ok", cert.ok()}};
}

Json verify_json(const VerifyResult& r, const VerifyOptions& o) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json solutions = Json::array();
  for (const auto& s : r.solutions) {
    solutions.push_back(Json{{"n_large", s.n_large},
                             {"point", s.point.name()},
                             {"bins", s.bins},
                             {"formula", rational_json(s.formula)},
                             {"feasible", s.feasible},
                             {"within_three", s.within_three}});
  }
  return Json{{"t", o.t},
              {"w", rational_json(o.w)},
              {"checks", checks},
              {"certificate", certificate_json(r.certificate)},
              {"solutions", solutions},
              {"failing", r.failing()},
              {"ok", r.ok()}};
}

Json optimize_json(const OptimizeResult& r, const std::vector<SweepRow>& sweep) {
  auto surd_json = [](const QuadraticSurd& s) {
    return Json{{"rational", to_string(s.rational_part())},
                {"sqrt_coefficient", to_string(s.surd_part())},
                {"radicand", s.radicand().get_str()},
                {"decimal", s.decimal(20)}};
  };
  Json rows = Json::array();
  for (const auto& row : sweep) {
    rows.push_back(Json{{"w", rational_json(row.w)}, {"n_frac", rational_json(row.n_frac)},
                        {"bound", rational_json(row.bound)}});
  }
  return Json{{"r_star", surd_json(r.r_star)},
              {"w_star", surd_json(r.w_star)},
              {"residuals",
               Json{{"w_star_minus_3_plus_5r_over_4", surd_json(r.w_residual)},
                    {"balance", surd_json(r.balance_residual)},
                    {"n_frac_coefficient", surd_json(r.flat_coefficient)},
                    {"all_zero", r.w_residual.is_zero() && r.balance_residual.is_zero() &&
                                     r.flat_coefficient.is_zero()},
                    {"r_star_root", r.r_star_root}}},
              {"search",
               Json{{"w", rational_json(r.w_search, 25)},
                    {"r", rational_json(r.r_search, 25)},
                    {"iterations", r.iterations}}},
              {"sweep", rows}};
}

Json envelope(const std::string& command, const Json& body) {
  Json out{{"schema", kReportSchema}, {"command", command}};
  for (const auto& [key, value] : body.items()) out[key] = value;
  return out;
}

}  // namespace binlb
