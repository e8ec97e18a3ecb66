#include "meanorder/verify.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/hardy.hpp"
#include "meanorder/mean.hpp"
#include "meanorder/metric.hpp"
#include "meanorder/poset.hpp"
#include "meanorder/rng.hpp"

namespace meanorder::verify {

Mutations Mutations::parse(std::string_view name) {
  Mutations m;
  if (name.empty() || name == "none") return m;
  if (name == "ginicomp") {
    m.flip_gini_leq = true;
  } else if (name == "ballstrict") {
    m.ball_strictness = true;
  } else if (name == "intervalswap") {
    m.drop_swapped_interval_block = true;
  } else {
    throw DomainError("unknown sabotage fault '" + std::string(name) +
                      "' (ginicomp, ballstrict, intervalswap)");
  }
  return m;
}

bool all_pass(const std::vector<PropositionRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string params_str(const GiniParams& g) {
  return "(" + fmt(g.p) + "," + fmt(g.q) + ")";
}

// suite-local view of the predicates, routed through the mutations
struct Predicates {
  Mutations mu;

  bool leq(const GiniParams& a, const GiniParams& b) const {
    const bool real = gini_leq(a, b);
    return mu.flip_gini_leq ? !real : real;
  }

  bool interval_contains(const GiniParams& lower, const GiniParams& upper,
                         const GiniParams& cand) const {
    if (!mu.drop_swapped_interval_block) return gini_interval_contains(lower, upper, cand);
    const double p = lower.lo(), q = lower.hi();
    const double r = upper.lo(), s = upper.hi();
    const double x = cand.p, y = cand.q;
    return (p <= x && x <= r) && (q <= y && y <= s);
  }

  BallCheck ball(const Mean& center, double radius, const Mean& cand,
                 const SharedDomain& dom, bool closed) const {
    return ball_member(center, radius, cand, dom, mu.ball_strictness ? !closed : closed);
  }
};

GiniParams random_params(Rng& rng, double box = 3.0) {
  return {rng.uniform(-box, box), rng.uniform(-box, box)};
}

// ------------------------------------------------------------------ order

void order_rows(const SuiteConfig& cfg, std::vector<PropositionRow>& rows) {
  const std::size_t n_posets = std::max<std::size_t>(4, cfg.trials / 25);
  std::size_t law_trials = 0;
  PropositionRow inter{"order/intersection-closure", 0, true, ""};
  PropositionRow chain{"order/chain-union-closure", 0, true, ""};
  PropositionRow restr{"order/restriction-closure", 0, true, ""};
  PropositionRow sub{"order/bracket-subadditivity", 0, true, ""};
  bool strict_seen = false;

  for (std::uint64_t ps = 0; ps < n_posets; ++ps) {
    Rng rng(mix_seed(cfg.seed ^ 0xa11ce5ULL, ps));
    const auto n = static_cast<std::size_t>(rng.uniform_int(3, 9));
    const Poset poset = Poset::random(n, 0.35, rng);
    const auto rep = check_closure_laws(poset, 25, cfg.seed + ps, ps);
    law_trials += rep.records.size();
    strict_seen = strict_seen || rep.strict_inclusions > 0;
    for (const auto& rec : rep.records) {
      if (rec.ok) continue;
      PropositionRow* row = nullptr;
      if (rec.law == "intersection") row = &inter;
      else if (rec.law == "chain-union") row = &chain;
      else if (rec.law == "restriction") row = &restr;
      else row = &sub;
      row->pass = false;
      if (row->witness.empty())
        row->witness = "poset " + std::to_string(ps) + " trial " +
                       std::to_string(rec.trial) + ": " + rec.witness;
    }
  }

  // the diamond shows the inclusion can be strict
  {
    const Poset d = Poset::diamond();
    const SubsetView whole(d, d.all());
    const auto bot = d.index_of("bot"), a = d.index_of("a"), top = d.index_of("top");
    const ElementSet un = bracket(whole, bot, a) | bracket(whole, a, top);
    const ElementSet full = bracket(whole, bot, top);
    strict_seen = strict_seen || ((un & ~full) == 0 && un != full);
  }
  if (!strict_seen) {
    sub.pass = false;
    sub.witness = "no strict inclusion instance found";
  }

  inter.trials = chain.trials = restr.trials = sub.trials = law_trials / 4;

  // exhaustive fixpoint characterization on small posets
  PropositionRow fix{"order/gi-fixpoint-exhaustive", 0, true, ""};
  const std::size_t n_small = std::max<std::size_t>(4, cfg.trials / 40);
  for (std::uint64_t ps = 0; ps < n_small && fix.pass; ++ps) {
    Rng rng(mix_seed(cfg.seed ^ 0xf1d0ULL, ps));
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 7));
    const Poset poset = Poset::random(n, 0.4, rng);
    for (ElementSet s = 0; s <= poset.all(); ++s) {
      ++fix.trials;
      // definitional check, element by element
      bool fixpoint = true;
      for (std::size_t x = 0; x < poset.size() && fixpoint; ++x) {
        if (s & (ElementSet{1} << x)) continue;
        bool witnessed = false;
        for (std::size_t l = 0; l < poset.size() && !witnessed; ++l)
          for (std::size_t u = 0; u < poset.size() && !witnessed; ++u)
            if ((s & (ElementSet{1} << l)) && (s & (ElementSet{1} << u)) &&
                poset.leq(l, x) && poset.leq(x, u))
              witnessed = true;
        if (witnessed) fixpoint = false;
      }
      const auto verdict = is_interval_type(SubsetView(poset, s));
      if (verdict.interval_type != fixpoint) {
        fix.pass = false;
        fix.witness = "poset " + std::to_string(ps) + " subset " + poset.set_to_string(s);
        break;
      }
      if (s == poset.all()) break;  // avoid wrap at 2^64
    }
  }

  rows.push_back(inter);
  rows.push_back(chain);
  rows.push_back(restr);
  rows.push_back(sub);
  rows.push_back(fix);
}

// ------------------------------------------------------------------- gini

void gini_rows(const SuiteConfig& cfg, const Predicates& pred,
               std::vector<PropositionRow>& rows) {
  // soundness: predicate-true pairs never show a sampled violation; the
  // predicate must also be a partial order on normalized parameters
  PropositionRow sound{"gini/comparability-soundness", 0, true, ""};
  {
    DomainSampler sampler = DomainSampler::standard(cfg.seed ^ 0x91177ULL);
    sampler.strategy = SampleStrategy::adversarial;
    const std::size_t n_pairs = cfg.trials;
    const std::size_t n_samples = 60;
    for (std::uint64_t i = 0; i < n_pairs; ++i) {
      Rng rng(mix_seed(cfg.seed ^ 0x50a1dULL, i));
      const GiniParams a = random_params(rng);
      const GiniParams b = rng.coin()
                               ? random_params(rng)
                               : GiniParams{a.lo() + rng.uniform(0, 2), a.hi() + rng.uniform(0, 2)};
      ++sound.trials;
      if (!pred.leq(a, b)) continue;
      const Mean ma = Mean::gini(a), mb = Mean::gini(b);
      for (std::uint64_t s = 0; s < n_samples; ++s) {
        const SampleVector v = sampler.at(i * n_samples + s);
        if (violates_leq(ma(v), mb(v))) {
          sound.pass = false;
          sound.witness = "claimed " + params_str(a) + " <= " + params_str(b) +
                          " but G_a > G_b at v = " + v.to_string();
          break;
        }
      }
      if (!sound.pass) break;
    }
    // order laws on a small normalized grid
    if (sound.pass) {
      std::vector<GiniParams> grid;
      for (int x = -2; x <= 2; ++x)
        for (int y = x; y <= 2; ++y) grid.push_back({static_cast<double>(x), static_cast<double>(y)});
      for (const auto& a : grid) {
        if (!pred.leq(a, a)) {
          sound.pass = false;
          sound.witness = "reflexivity fails at " + params_str(a);
          break;
        }
        for (const auto& b : grid) {
          if (pred.leq(a, b) && pred.leq(b, a) && !a.same_mean(b)) {
            sound.pass = false;
            sound.witness = "antisymmetry fails at " + params_str(a) + ", " + params_str(b);
            break;
          }
          for (const auto& c : grid)
            if (pred.leq(a, b) && pred.leq(b, c) && !pred.leq(a, c)) {
              sound.pass = false;
              sound.witness = "transitivity fails at " + params_str(a) + ", " +
                              params_str(b) + ", " + params_str(c);
              break;
            }
          if (!sound.pass) break;
        }
        if (!sound.pass) break;
      }
    }
  }
  rows.push_back(sound);

  // completeness: incomparable pairs yield a witness for at least one side
  PropositionRow search{"gini/comparability-witness-search", 0, true, ""};
  {
    DomainSampler sampler = DomainSampler::standard(cfg.seed ^ 0xc0ffeeULL);
    sampler.strategy = SampleStrategy::adversarial;
    std::size_t incomparable = 0, witnessed = 0;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
      Rng rng(mix_seed(cfg.seed ^ 0xbadc0deULL, i));
      // strictly nested parameter intervals are exactly the incomparable pairs
      const GiniParams a = random_params(rng);
      ++search.trials;
      const double dlo = rng.uniform(0.3, 1.5), dhi = rng.uniform(0.3, 1.5);
      const GiniParams b{a.lo() + dlo, a.hi() - dhi};
      if (b.lo() > b.hi() - 0.05 || gini_leq(a, b) || gini_leq(b, a)) continue;
      ++incomparable;
      const Mean ma = Mean::gini(a), mb = Mean::gini(b);
      if (search_violation(ma, mb, sampler, 400) || search_violation(mb, ma, sampler, 400))
        ++witnessed;
      else if (search.witness.empty())
        search.witness = "no witness for " + params_str(a) + " vs " + params_str(b);
    }
    if (incomparable > 0 && witnessed < incomparable) search.pass = false;
  }
  rows.push_back(search);

  // bracket formula vs the two-sided comparability test
  PropositionRow interval{"gini/interval-formula-agreement", 0, true, ""};
  {
    for (std::uint64_t i = 0; i < cfg.trials * 10 && interval.pass; ++i) {
      Rng rng(mix_seed(cfg.seed ^ 0x17e4a1ULL, i));
      const double p = rng.uniform(-3, 3);
      const double s = p + rng.uniform(0, 3);
      const double q = rng.uniform(p, s);
      const double r = rng.uniform(p, s);
      const GiniParams lower{p, q}, upper{r, s};
      if (!gini_leq(lower, upper)) continue;  // hypothesis as stated
      const GiniParams cand = rng.coin()
                                  ? GiniParams{rng.uniform(p - 1, s + 1), rng.uniform(p - 1, s + 1)}
                                  : GiniParams{rng.uniform(p, r), rng.uniform(q, s)};
      ++interval.trials;
      const bool formula = pred.interval_contains(lower, upper, cand);
      const bool two_sided = gini_leq(lower, cand) && gini_leq(cand, upper);
      if (formula != two_sided) {
        interval.pass = false;
        interval.witness = "ends " + params_str(lower) + ", " + params_str(upper) +
                           " candidate " + params_str(cand) + ": formula " +
                           (formula ? "in" : "out") + ", order " + (two_sided ? "in" : "out");
      }
    }
  }
  rows.push_back(interval);

  // boundary regions are closed under squeezing
  PropositionRow boundary{"gini/boundary-set-closure", 0, true, ""};
  {
    const auto f = Involution::positive_reciprocal(1.0);
    const auto g = Involution::negative_reciprocal(1.0);
    for (const auto set : {BoundarySet::X, BoundarySet::Y, BoundarySet::XY}) {
      const auto rep = check_boundary_interval_type(set, f, g, cfg.trials, cfg.seed ^ 0xb0bULL);
      boundary.trials += rep.trials;
      if (rep.violations > 0 && boundary.pass) {
        boundary.pass = false;
        const auto& fl = rep.failures.front();
        boundary.witness = to_string(set) + ": " + params_str(fl.a) + " <= " +
                           params_str(fl.c) + " <= " + params_str(fl.b) + " escapes";
      }
    }
  }
  rows.push_back(boundary);
}

// ------------------------------------------------------------------ hardy

void hardy_rows(const SuiteConfig& cfg, std::vector<PropositionRow>& rows) {
  const std::vector<SequenceFamily> families = {
      SequenceFamily::power_law(0.05, cfg.hardy_terms),
      SequenceFamily::power_law(0.3, cfg.hardy_terms),
      SequenceFamily::geometric(0.95, std::min<std::int64_t>(cfg.hardy_terms, 4000)),
  };

  PropositionRow mono{"hardy/ratio-order-monotonicity", 0, true, ""};
  PropositionRow sandwich{"hardy/sandwich-consistency", 0, true, ""};
  const std::size_t n_triples = std::max<std::size_t>(10, cfg.trials / 10);
  for (std::uint64_t i = 0; i < n_triples; ++i) {
    Rng rng(mix_seed(cfg.seed ^ 0x4a4dULL, i));
    const GiniParams a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const GiniParams b{a.lo() + rng.uniform(0, 1.5), a.hi() + rng.uniform(0, 1.5)};
    const double clo = rng.uniform(a.lo(), b.lo());
    const GiniParams c{clo, rng.uniform(std::max(a.hi(), clo), b.hi())};
    const Mean ma = Mean::gini(a), mc = Mean::gini(c), mb = Mean::gini(b);
    for (const auto& fam : families) {
      ++mono.trials;
      const double ra = hardy_ratio(ma, fam);
      const double rc = hardy_ratio(mc, fam);
      const double rb = hardy_ratio(mb, fam);
      const double tol = 1e-9 * std::max({1.0, ra, rc, rb});
      if (ra > rc + tol || rc > rb + tol) {
        if (mono.pass) {
          mono.pass = false;
          mono.witness = params_str(a) + "/" + params_str(c) + "/" + params_str(b) + " on " +
                         fam.describe() + ": ratios " + fmt(ra) + ", " + fmt(rc) + ", " + fmt(rb);
        }
      }
    }
    // estimate-level consistency: the squeezed mean's best ratio stays
    // between the end means' ratios at the same witness family
    if (i < std::max<std::size_t>(3, n_triples / 8)) {
      ++sandwich.trials;
      HardyBudget small;
      small.max_terms = cfg.hardy_terms;
      small.grid_points = 10;
      small.refine_steps = 4;
      const HardyEstimate ec = hardy_lower_bound(mc, small);
      const double rb_at_c = hardy_ratio(mb, ec.witness);
      const double ra_at_c = hardy_ratio(ma, ec.witness);
      const double tol = 1e-9 * std::max(1.0, ec.lower);
      if ((ec.lower > rb_at_c + tol || ra_at_c > ec.lower + tol) && sandwich.pass) {
        sandwich.pass = false;
        sandwich.witness = params_str(a) + "/" + params_str(c) + "/" + params_str(b) +
                           ": enclosure violated at " + ec.witness.describe();
      }
    }
  }
  rows.push_back(mono);
  rows.push_back(sandwich);
}

// ----------------------------------------------------------------- metric

void metric_rows(const SuiteConfig& cfg, const Predicates& pred,
                 std::vector<PropositionRow>& rows) {
  const SharedDomain dom = SharedDomain::box(2, 1.0, 4.0, 13);

  PropositionRow squeeze{"metric/squeeze", 0, true, ""};
  {
    const Mean center = Mean::gini(1, 0);
    const auto rep = check_ball_interval_type(center, 10.0, dom, cfg.trials, cfg.seed ^ 0x5eedULL);
    squeeze.trials = rep.trials;
    if (rep.violations > 0) {
      squeeze.pass = false;
      const auto& fl = rep.failures.front();
      squeeze.witness = fl.triple + " at " + SampleVector(fl.point).to_string() + ": " +
                        fmt(fl.lhs) + " > " + fmt(fl.rhs);
    }
  }
  rows.push_back(squeeze);

  PropositionRow laws{"metric/pseudometric-laws", 0, true, ""};
  {
    for (std::uint64_t i = 0; i < std::max<std::size_t>(20, cfg.trials / 4) && laws.pass; ++i) {
      Rng rng(mix_seed(cfg.seed ^ 0x3147ULL, i));
      const Mean m = Mean::gini(random_params(rng, 2));
      const Mean n = Mean::gini(random_params(rng, 2));
      const Mean p = Mean::gini(random_params(rng, 2));
      ++laws.trials;
      const double dmn = rho(m, n, dom).value;
      const double dnm = rho(n, m, dom).value;
      const double dmm = rho(m, m, dom).value;
      const double dmp = rho(m, p, dom).value;
      const double dnp = rho(n, p, dom).value;
      if (dmn != dnm) {
        laws.pass = false;
        laws.witness = "symmetry fails for " + m.serialize() + ", " + n.serialize();
      } else if (dmm != 0.0) {
        laws.pass = false;
        laws.witness = "rho(M,M) != 0 for " + m.serialize();
      } else if (dmp > dmn + dnp + kSqueezeTol) {
        laws.pass = false;
        laws.witness = "triangle fails: " + fmt(dmp) + " > " + fmt(dmn) + " + " + fmt(dnp);
      }
    }
  }
  rows.push_back(laws);

  // open/closed verdicts at an exactly-known boundary distance; constant
  // pre-means keep the distance bit-exact
  PropositionRow strict{"metric/ball-strictness", 0, true, ""};
  {
    const double r = 0.25;
    const Mean center = Mean::black_box("const-2", [](const SampleVector&) { return 2.0; });
    const Mean shifted = Mean::black_box("const-2.25", [](const SampleVector&) { return 2.25; });
    const Mean far = Mean::black_box("const-2.5", [](const SampleVector&) { return 2.5; });
    ++strict.trials;
    const auto closed = pred.ball(center, r, shifted, dom, true);
    const auto open = pred.ball(center, r, shifted, dom, false);
    if (closed.verdict != BallVerdict::undefeated) {
      strict.pass = false;
      strict.witness = "closed ball rejects a candidate at distance exactly r";
    } else if (open.verdict != BallVerdict::outside) {
      strict.pass = false;
      strict.witness = "open ball admits a candidate at distance exactly r";
    }
    ++strict.trials;
    if (strict.pass && pred.ball(center, r, far, dom, true).verdict != BallVerdict::outside) {
      strict.pass = false;
      strict.witness = "closed ball admits a candidate at distance 2r";
    }
  }
  rows.push_back(strict);
}

}  // namespace

std::vector<PropositionRow> run_suite(const SuiteConfig& cfg) {
  Predicates pred{cfg.mutations};
  std::vector<PropositionRow> rows;
  order_rows(cfg, rows);
  gini_rows(cfg, pred, rows);
  hardy_rows(cfg, rows);
  metric_rows(cfg, pred, rows);
  return rows;
}

}  // namespace meanorder::verify
