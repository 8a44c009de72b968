// binlb: simulate the lower-bound construction against an algorithm, verify
// the analysis, or optimize the bound. Every subcommand writes a JSON report.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "binlb/adversary.hpp"
#include "binlb/report.hpp"
#include "binlb/verify.hpp"

namespace {

using namespace binlb;

struct Config {
  int t = 3;
  std::int64_t m = 1;
  std::string algorithm = "first-fit";
  int h = 7;
  std::string w;
  std::string out;
  std::uint64_t seed = 1;
  bool verbose = false;
};

Rational weight_from(const Config& c) {
  if (c.w.empty()) return w_star_approx();
  const Rational w = parse_rational(c.w);
  if (w < 1 || w > Rational(3, 2)) throw std::invalid_argument("--w must lie in [1, 1.5], got " + c.w);
  return w;
}

void emit(const Config& c, const Json& report, const std::string& summary) {
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
  std::cout << summary << "\n";
}

int simulate(const Config& c) {
  const Rational w = weight_from(c);
  const auto p = ConstructionParams::make(c.t, c.m);
  const auto ctx = p.context();
  const auto factory = algorithm_factory(c.algorithm, ctx, AlgorithmOptions{c.h, c.seed});
  const auto run = run_tree(p, factory);
  const auto weight_check = check_weight_price_inequality(run.transcript, WeightSystem(c.t, w), PriceTable::closed_form(c.t));
  const auto chain = check_chain(run, w);

  Json body{{"config", Json{{"t", c.t}, {"m", c.m}, {"algorithm", c.algorithm}, {"h", c.h}, {"seed", c.seed}}},
            {"report", adversary_json(run.report)},
            {"stats", stats_json(run.stats)},
            {"weight_price", weight_check_json(weight_check)},
            {"chain", chain_json(chain)}};
  if (c.verbose) body["transcript"] = transcript_json(run.transcript);
  const bool ok = run.report.checks.ok() && weight_check.ok() && chain.ok();
  body["ok"] = ok;
  emit(c, envelope("simulate", body),
       run.report.algorithm + ": max ratio " + decimal_string(run.report.max_ratio, 6) + " at " +
           run.report.argmax.name() + ", n_L = " + std::to_string(run.report.n_large) + (ok ? "" : " [FAILED]"));
  if (!ok) {
    for (const auto& f : run.report.checks.failures) std::cerr << "check failed: " << f << "\n";
    for (const auto& v : weight_check.violations) std::cerr << "price violation: " << v << "\n";
    if (!chain.ok()) std::cerr << "check failed: inequality chain\n";
  }
  return ok ? 0 : 1;
}

int verify(const Config& c) {
  VerifyOptions o;
  o.t = c.t;
  o.w = weight_from(c);
  o.method = c.t == 3 ? CertifyMethod::exhaustive : CertifyMethod::breakpoint;
  const auto r = verify_all(o);
  if (c.verbose) {
    for (const auto& check : r.checks) {
      std::cerr << (check.passed ? "pass " : "FAIL ") << check.name << ": " << check.detail << "\n";
    }
  }
  emit(c, envelope("verify", verify_json(r, o)), r.ok() ? "all checks pass" : "verification failed");
  for (const auto& name : r.failing()) std::cerr << "failed: " << name << "\n";
  return r.ok() ? 0 : 1;
}

int optimize(const Config& c) {
  const auto r = optimize_bound();
  const auto sweep = bound_sweep(10, 4);
  emit(c, envelope("optimize", optimize_json(r, sweep)), "r* = " + r.r_star.decimal(13) + ", w* = " + r.w_star.decimal(14));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower-bound construction for online bin packing"};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Write the JSON report here instead of stdout");
    sub->add_flag("--verbose", c.verbose, "Include more detail");
  };
  auto add_t = [&](CLI::App* sub) {
    sub->add_option("--t", c.t, "Number of C batches (t >= 3)")->check(CLI::Range(3, 12));
  };
  auto add_w = [&](CLI::App* sub) {
    sub->add_option("--w", c.w, "Weight of a large A-item in [1, 1.5]; defaults to w*");
  };

  auto* sim = app.add_subcommand("simulate", "Play the input tree against an algorithm");
  sim->set_help_flag("--help", "Print this help message and exit");
  add_t(sim);
  sim->add_option("--m", c.m, "N = M * 6 * 7^t")->check(CLI::PositiveNumber);
  sim->add_option("--algorithm", c.algorithm, "Algorithm name")
      ->check(CLI::IsMember(binlb::algorithm_names()));
  sim->add_option("--h", c.h, "Classes for harmonic")->check(CLI::Range(3, 64));
  sim->add_option("--seed", c.seed, "Seed of the random stress algorithm");
  add_w(sim);
  add_common(sim);

  auto* ver = app.add_subcommand("verify", "Check the price table and the bound identities");
  add_t(ver);
  add_w(ver);
  add_common(ver);

  auto* opt = app.add_subcommand("optimize", "Optimize the weight of large A-items");
  add_common(opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (sim->parsed()) return simulate(c);
    if (ver->parsed()) return verify(c);
    if (opt->parsed()) return optimize(c);
  } catch (const std::exception& e) {
    std::cerr << "binlb: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
