#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/hardy.hpp"
#include "meanorder/mean.hpp"
#include "meanorder/metric.hpp"
#include "meanorder/poset.hpp"
#include "meanorder/verify.hpp"

using json = nlohmann::ordered_json;
using namespace meanorder;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEvaluation = 3;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw DomainError("cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError("expected a comma-separated list of numbers");
  return out;
}

GiniParams parse_params(const std::string& text) {
  const auto xs = parse_csv_doubles(text);
  if (xs.size() != 2) throw DomainError("expected p,q");
  return {xs[0], xs[1]};
}

double parse_radius(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw DomainError("cannot parse radius '" + text + "'");
  }
}

json finite_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

// one-level flatten; arrays become semicolon-joined strings. Columns are
// the union of keys in first-appearance order (a failing record may carry
// a witness field the passing ones lack).
void emit_csv(std::ostream& os, const std::vector<json>& records) {
  if (records.empty()) return;
  std::vector<std::string> keys;
  for (const auto& rec : records)
    for (const auto& [k, v] : rec.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << "\n";
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) os << ",";
      if (!rec.contains(keys[i])) continue;
      const json& v = rec.at(keys[i]);
      if (v.is_array()) {
        std::string joined;
        for (const auto& x : v) {
          if (!joined.empty()) joined += ";";
          joined += x.is_string() ? x.get<std::string>() : x.dump();
        }
        os << "\"" << joined << "\"";
      } else if (v.is_string()) {
        os << "\"" << v.get<std::string>() << "\"";
      } else {
        os << v.dump();
      }
    }
    os << "\n";
  }
}

struct Output {
  std::string format = "json";
  std::vector<json> records;

  void add(json rec) { records.push_back(std::move(rec)); }
  void flush() const {
    if (format == "csv") {
      emit_csv(std::cout, records);
    } else {
      for (const auto& rec : records) std::cout << rec.dump() << "\n";
    }
  }
};

json family_json(const SequenceFamily& f) {
  json out;
  switch (f.kind) {
    case SequenceFamily::Kind::power_law:
      out["family"] = "powerlaw";
      out["eps"] = f.eps;
      break;
    case SequenceFamily::Kind::geometric:
      out["family"] = "geometric";
      out["r"] = f.r;
      break;
    case SequenceFamily::Kind::explicit_list:
      out["family"] = "explicit";
      break;
  }
  out["N"] = f.truncation;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numeric explorations in the pointwise order of means"};
  app.require_subcommand(1);

  std::string output_format = "json";
  std::uint64_t seed = 0;
  app.set_version_flag("--version", "meanorder 0.1.0");
  app.add_option("--output", output_format, "json or csv")->capture_default_str();
  app.add_option("--seed", seed, "global random seed")->capture_default_str();

  Output out;

  // ------------------------------------------------------------------ gini
  auto* gini_cmd = app.add_subcommand("gini", "parametric means: evaluation and order");
  gini_cmd->require_subcommand(1);

  double gp = 1, gq = 0;
  std::string vec_text;
  auto* gini_eval_cmd = gini_cmd->add_subcommand("eval", "evaluate a mean on a vector");
  gini_eval_cmd->add_option("--p", gp)->required();
  gini_eval_cmd->add_option("--q", gq)->required();
  gini_eval_cmd->add_option("--vec", vec_text, "comma-separated positive entries")->required();
  gini_eval_cmd->callback([&] {
    const SampleVector v(parse_csv_doubles(vec_text));
    out.add({{"op", "gini_eval"},
             {"p", gp},
             {"q", gq},
             {"vec", v.entries()},
             {"value", gini_eval({gp, gq}, v)}});
  });

  std::string pair_a = "1,0", pair_b = "2,0";
  bool do_search = false;
  int n_min = 1, n_max = 6;
  double box_lo = 1e-4, box_hi = 1e4;
  std::string strategy = "mixed";
  std::size_t samples = 2000;
  auto* gini_cmp = gini_cmd->add_subcommand("compare", "order two parametric means");
  gini_cmp->add_option("--a", pair_a, "p,q of the left mean")->required();
  gini_cmp->add_option("--b", pair_b, "p,q of the right mean")->required();
  gini_cmp->add_flag("--search", do_search, "hunt for witnesses even though the verdict is exact");
  gini_cmp->add_option("--n-min", n_min);
  gini_cmp->add_option("--n-max", n_max);
  gini_cmp->add_option("--lo", box_lo);
  gini_cmp->add_option("--hi", box_hi);
  gini_cmp->add_option("--strategy", strategy);
  gini_cmp->add_option("--samples", samples);
  gini_cmp->callback([&] {
    const GiniParams a = parse_params(pair_a), b = parse_params(pair_b);
    json rec{{"op", "gini_compare"},
             {"a", Mean::gini(a).serialize()},
             {"b", Mean::gini(b).serialize()},
             {"leq_ab", gini_leq(a, b)},
             {"leq_ba", gini_leq(b, a)},
             {"certain", true}};
    if (do_search) {
      DomainSampler s;
      s.n_min = n_min;
      s.n_max = n_max;
      s.lo = box_lo;
      s.hi = box_hi;
      s.strategy = parse_strategy(strategy);
      s.seed = seed;
      const auto ab = search_violation(Mean::gini(a), Mean::gini(b), s, samples);
      const auto ba = search_violation(Mean::gini(b), Mean::gini(a), s, samples);
      rec["witness_a_gt_b"] = ab ? json(ab->entries()) : json(nullptr);
      rec["witness_b_gt_a"] = ba ? json(ba->entries()) : json(nullptr);
    }
    out.add(std::move(rec));
  });

  std::string lower_text = "0,1", upper_text = "1,2", candidate_text = "0.5,1.5";
  auto* gini_itv = gini_cmd->add_subcommand("interval", "bracket membership between two means");
  gini_itv->add_option("--lower", lower_text)->required();
  gini_itv->add_option("--upper", upper_text)->required();
  gini_itv->add_option("--candidate", candidate_text)->required();
  gini_itv->callback([&] {
    const GiniParams lo = parse_params(lower_text);
    const GiniParams hi = parse_params(upper_text);
    const GiniParams cand = parse_params(candidate_text);
    const bool contains = gini_interval_contains(lo, hi, cand);
    const bool order = gini_leq(lo, cand) && gini_leq(cand, hi);
    out.add({{"op", "gini_interval"},
             {"lower", Mean::gini(lo).serialize()},
             {"upper", Mean::gini(hi).serialize()},
             {"candidate", Mean::gini(cand).serialize()},
             {"contains", contains},
             {"order_test", order}});
  });

  std::string set_name = "X";
  double inv_c = 1.0, inv_d = 1.0;
  std::size_t boundary_trials = 10000;
  auto* gini_bnd = gini_cmd->add_subcommand("boundary", "squeeze closure of a boundary region");
  gini_bnd->add_option("--set", set_name, "X, Y or XY")->required();
  gini_bnd->add_option("--c", inv_c, "coefficient of f(x)=c/x on the positive side");
  gini_bnd->add_option("--d", inv_d, "coefficient of g(x)=d/x on the negative side");
  gini_bnd->add_option("--trials", boundary_trials);
  gini_bnd->callback([&] {
    const auto set = parse_boundary_set(set_name);
    const auto f = Involution::positive_reciprocal(inv_c);
    const auto g = Involution::negative_reciprocal(inv_d);
    const auto rep = check_boundary_interval_type(set, f, g, boundary_trials, seed);
    json failures = json::array();
    for (const auto& fl : rep.failures)
      failures.push_back({{"a", {fl.a.p, fl.a.q}},
                          {"b", {fl.b.p, fl.b.q}},
                          {"c", {fl.c.p, fl.c.q}}});
    out.add({{"op", "gini_boundary"},
             {"set", to_string(set)},
             {"c", inv_c},
             {"d", inv_d},
             {"trials", rep.trials},
             {"violations", rep.violations},
             {"failures", failures}});
    if (rep.violations > 0) throw std::runtime_error("proposition falsified");
  });

  // ----------------------------------------------------------------- hardy
  auto* hardy_cmd = app.add_subcommand("hardy", "lower bounds for hardy constants");
  hardy_cmd->require_subcommand(1);

  std::string mean_text = "gini:0,0";
  std::int64_t budget_terms = HardyBudget{}.max_terms;
  std::string families = "powerlaw,geometric";
  auto* hardy_est = hardy_cmd->add_subcommand("estimate", "maximize the ratio over families");
  hardy_est->add_option("--mean", mean_text)->required();
  hardy_est->add_option("--budget", budget_terms, "truncation ladder top");
  hardy_est->add_option("--families", families, "comma list of powerlaw,geometric");
  hardy_est->callback([&] {
    const Mean m = parse_mean(mean_text);
    HardyBudget budget;
    budget.max_terms = budget_terms;
    budget.use_power_law = families.find("powerlaw") != std::string::npos;
    budget.use_geometric = families.find("geometric") != std::string::npos;
    if (!budget.use_power_law && !budget.use_geometric)
      throw DomainError("--families needs powerlaw and/or geometric");
    const HardyEstimate est = hardy_lower_bound(m, budget, seed);
    out.add({{"op", "hardy_estimate"},
             {"mean", m.serialize()},
             {"lower", est.lower},
             {"upper", finite_or_inf(est.upper)},
             {"witness_family", family_json(est.witness)["family"]},
             {"witness_params", family_json(est.witness)},
             {"N", est.terms_used},
             {"budget_limited", est.budget_limited}});
  });

  std::string sand_lower = "gini:0,0", sand_upper = "gini:0.5,0", sand_mean = "gini:0.25,0";
  double upper_cap = std::numeric_limits<double>::infinity();
  std::int64_t sand_budget = 1'000'000;
  auto* hardy_sand = hardy_cmd->add_subcommand("sandwich", "enclose a squeezed mean's constant");
  hardy_sand->add_option("--lower", sand_lower)->required();
  hardy_sand->add_option("--upper", sand_upper)->required();
  hardy_sand->add_option("--mean", sand_mean)->required();
  hardy_sand->add_option("--upper-cap", upper_cap,
                         "externally known upper bound for the upper mean's constant");
  hardy_sand->add_option("--budget", sand_budget);
  hardy_sand->callback([&] {
    const Mean lo = parse_mean(sand_lower);
    const Mean hi = parse_mean(sand_upper);
    const Mean mid = parse_mean(sand_mean);
    if (lo.is_gini() && mid.is_gini() && !gini_leq(*lo.gini_params(), *mid.gini_params()))
      throw PreconditionError("sandwich order fails: lower <= mean");
    if (mid.is_gini() && hi.is_gini() && !gini_leq(*mid.gini_params(), *hi.gini_params()))
      throw PreconditionError("sandwich order fails: mean <= upper");
    HardyBudget budget;
    budget.max_terms = sand_budget;
    HardyEstimate est_lo = hardy_lower_bound(lo, budget, seed);
    HardyEstimate est_hi = hardy_lower_bound(hi, budget, seed);
    est_hi.upper = upper_cap;
    const HardyEstimate est_mid = hardy_lower_bound(mid, budget, seed);
    const auto enclosure = hardy_sandwich(est_lo, est_hi);
    const bool consistent =
        est_mid.lower >= enclosure.lower - 1e-9 &&
        (std::isinf(enclosure.upper) || est_mid.lower <= enclosure.upper + 1e-9);
    out.add({{"op", "hardy_sandwich"},
             {"lower_mean", lo.serialize()},
             {"upper_mean", hi.serialize()},
             {"mean", mid.serialize()},
             {"enclosure", {enclosure.lower, finite_or_inf(enclosure.upper)}},
             {"mean_lower", est_mid.lower},
             {"consistent", consistent}});
    if (!consistent) throw std::runtime_error("sandwich enclosure falsified");
  });

  // ------------------------------------------------------------------ dist
  auto* dist_cmd = app.add_subcommand("dist", "sup-distance between means on a box");
  dist_cmd->require_subcommand(1);

  std::string mean_a = "gini:1,0", mean_b = "gini:0,0";
  int dom_n = 2, dom_grid = 17;
  double dom_lo = 1.0, dom_hi = 4.0;
  auto* dist_rho_cmd = dist_cmd->add_subcommand("rho", "sampled sup distance");
  dist_rho_cmd->add_option("--a", mean_a)->required();
  dist_rho_cmd->add_option("--b", mean_b)->required();
  dist_rho_cmd->add_option("--n", dom_n);
  dist_rho_cmd->add_option("--lo", dom_lo);
  dist_rho_cmd->add_option("--hi", dom_hi);
  dist_rho_cmd->add_option("--grid", dom_grid);
  dist_rho_cmd->callback([&] {
    const auto dom = SharedDomain::box(dom_n, dom_lo, dom_hi, dom_grid);
    const auto est = rho(parse_mean(mean_a), parse_mean(mean_b), dom);
    out.add({{"op", "dist_rho"},
             {"a", mean_a},
             {"b", mean_b},
             {"n", dom_n},
             {"lo", dom_lo},
             {"hi", dom_hi},
             {"grid", dom_grid},
             {"value", est.value},
             {"witness", est.witness}});
  });

  std::string center_text = "gini:1,0", cand_text = "gini:0,0", radius_text = "0.5";
  bool open_ball = false;
  auto* dist_ball_cmd = dist_cmd->add_subcommand("ball", "ball membership check");
  dist_ball_cmd->add_option("--center", center_text)->required();
  dist_ball_cmd->add_option("--r", radius_text, "radius, or inf")->required();
  dist_ball_cmd->add_option("--candidate", cand_text)->required();
  dist_ball_cmd->add_option("--n", dom_n);
  dist_ball_cmd->add_option("--lo", dom_lo);
  dist_ball_cmd->add_option("--hi", dom_hi);
  dist_ball_cmd->add_option("--grid", dom_grid);
  dist_ball_cmd->add_flag("--open", open_ball, "open ball (default closed)");
  dist_ball_cmd->callback([&] {
    const auto dom = SharedDomain::box(dom_n, dom_lo, dom_hi, dom_grid);
    const double r = parse_radius(radius_text);
    const auto check =
        ball_member(parse_mean(center_text), r, parse_mean(cand_text), dom, !open_ball);
    out.add({{"op", "dist_ball"},
             {"center", center_text},
             {"candidate", cand_text},
             {"r", finite_or_inf(r)},
             {"closed", !open_ball},
             {"verdict", check.verdict == BallVerdict::outside ? "outside" : "undefeated"},
             {"estimate", check.estimate.value},
             {"witness", check.estimate.witness}});
  });

  std::size_t itype_trials = 2000;
  auto* dist_itype = dist_cmd->add_subcommand("check-itype", "squeeze closure of metric balls");
  dist_itype->add_option("--center", center_text)->required();
  dist_itype->add_option("--r", radius_text);
  dist_itype->add_option("--trials", itype_trials);
  dist_itype->add_option("--n", dom_n);
  dist_itype->add_option("--lo", dom_lo);
  dist_itype->add_option("--hi", dom_hi);
  dist_itype->add_option("--grid", dom_grid);
  dist_itype->callback([&] {
    const auto dom = SharedDomain::box(dom_n, dom_lo, dom_hi, dom_grid);
    const auto rep = check_ball_interval_type(parse_mean(center_text),
                                              parse_radius(radius_text), dom, itype_trials, seed);
    json failures = json::array();
    for (const auto& fl : rep.failures)
      failures.push_back(
          {{"triple", fl.triple}, {"point", fl.point}, {"lhs", fl.lhs}, {"rhs", fl.rhs}});
    out.add({{"op", "dist_check_itype"},
             {"center", center_text},
             {"r", finite_or_inf(parse_radius(radius_text))},
             {"trials", rep.trials},
             {"violations", rep.violations},
             {"failures", failures}});
    if (rep.violations > 0) throw std::runtime_error("proposition falsified");
  });

  // ----------------------------------------------------------------- poset
  auto* poset_cmd = app.add_subcommand("poset", "finite order fixtures and closure laws");
  poset_cmd->require_subcommand(1);

  std::string fixture_path;
  std::size_t random_size = 0;
  std::size_t law_trials = 100;
  auto* poset_laws = poset_cmd->add_subcommand("laws", "closure-law report (JSON lines)");
  poset_laws->add_option("--fixture", fixture_path, "poset fixture file");
  poset_laws->add_option("--random-size", random_size, "use a random poset of this size instead");
  poset_laws->add_option("--trials", law_trials);
  poset_laws->callback([&] {
    std::optional<Poset> poset;
    if (!fixture_path.empty()) {
      std::ifstream in(fixture_path);
      if (!in) throw DomainError("cannot open fixture '" + fixture_path + "'");
      poset = Poset::parse(in);
    } else if (random_size > 0) {
      Rng rng(seed);
      poset = Poset::random(random_size, 0.35, rng);
    } else {
      throw DomainError("need --fixture or --random-size");
    }
    const auto rep = check_closure_laws(*poset, law_trials, seed, seed);
    for (const auto& rec : rep.records) {
      json row{{"law", rec.law},
               {"poset_seed", rec.poset_seed},
               {"trial", rec.trial},
               {"verdict", rec.ok ? "ok" : "violation"}};
      if (!rec.ok) row["witness"] = rec.witness;
      if (rec.strict_inclusion) row["strict"] = true;
      out.add(std::move(row));
    }
    if (rep.violations > 0) throw std::runtime_error("proposition falsified");
  });

  std::string subset_text;
  auto* poset_check = poset_cmd->add_subcommand("check", "interval-type verdict for a subset");
  poset_check->add_option("--fixture", fixture_path)->required();
  poset_check->add_option("--subset", subset_text, "comma-separated element ids")->required();
  poset_check->callback([&] {
    std::ifstream in(fixture_path);
    if (!in) throw DomainError("cannot open fixture '" + fixture_path + "'");
    const Poset poset = Poset::parse(in);
    ElementSet members = 0;
    std::stringstream ss(subset_text);
    std::string name;
    while (std::getline(ss, name, ','))
      members |= ElementSet{1} << poset.index_of(name);
    const auto verdict = is_interval_type(SubsetView(poset, members));
    json rec{{"op", "poset_check"},
             {"subset", poset.set_to_string(members)},
             {"interval_type", verdict.interval_type}};
    if (verdict.witness) rec["witness"] = poset.name(*verdict.witness);
    out.add(std::move(rec));
  });

  // ----------------------------------------------------------- verify-paper
  std::size_t verify_trials = 2000;
  std::int64_t hardy_terms = 20000;
  std::string sabotage;
  auto* verify_cmd = app.add_subcommand("verify-paper", "run the full proposition suite");
  verify_cmd->add_option("--trials", verify_trials);
  verify_cmd->add_option("--hardy-terms", hardy_terms);
  verify_cmd->add_option("--sabotage", sabotage,
                         "inject a fault: ginicomp, ballstrict or intervalswap");
  bool verify_failed = false;
  verify_cmd->callback([&] {
    verify::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.trials = verify_trials;
    cfg.hardy_terms = hardy_terms;
    cfg.mutations = verify::Mutations::parse(sabotage);
    const auto rows = verify::run_suite(cfg);
    for (const auto& row : rows) {
      json rec{{"proposition", row.id},
               {"trials", row.trials},
               {"verdict", row.pass ? "pass" : "fail"}};
      if (!row.pass) rec["witness"] = row.witness;
      out.add(std::move(rec));
    }
    verify_failed = !verify::all_pass(rows);
  });

  // allow the global --seed/--output after any subcommand
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    for (auto* sub : cmd->get_subcommands({})) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    out.format = output_format;
    out.flush();
    std::cerr << e.what() << "\n";
    return kExitFalsified;
  }

  out.format = output_format;
  out.flush();
  return verify_failed ? kExitFalsified : kExitOk;
}
