#include "meanorder/metric.hpp"

#include <cmath>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/rng.hpp"

namespace meanorder {

SharedDomain SharedDomain::box(int n, double lo, double hi, int grid) {
  SharedDomain d;
  d.n = n;
  d.lo = lo;
  d.hi = hi;
  d.grid = grid;
  d.validate();
  return d;
}

void SharedDomain::validate() const {
  if (n < 1) throw DomainError("domain needs n >= 1");
  if (!(lo > 0) || !(lo < hi)) throw DomainError("domain box needs 0 < lo < hi");
  if (grid < 2) throw DomainError("domain needs at least 2 grid points per axis");
  double total = 1;
  for (int i = 0; i < n; ++i) total *= grid;
  if (total > 4e6) throw DomainError("domain lattice too large (grid^n > 4e6)");
  for (const auto& pt : extra) {
    if (static_cast<int>(pt.size()) != n) throw DomainError("extra point has wrong dimension");
    for (double x : pt)
      if (!(x >= lo) || !(x <= hi)) throw DomainError("extra point outside the box");
  }
}

std::size_t SharedDomain::point_count() const {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(grid);
  return total + extra.size();
}

SampleVector SharedDomain::point(std::size_t index) const {
  std::size_t lattice = 1;
  for (int i = 0; i < n; ++i) lattice *= static_cast<std::size_t>(grid);
  if (index < lattice) {
    std::vector<double> v(static_cast<std::size_t>(n));
    std::size_t code = index;
    for (int i = 0; i < n; ++i) {
      const auto level = code % static_cast<std::size_t>(grid);
      code /= static_cast<std::size_t>(grid);
      v[static_cast<std::size_t>(i)] =
          lo + (hi - lo) * (static_cast<double>(level) / (grid - 1));
    }
    return SampleVector(std::move(v));
  }
  return SampleVector(extra.at(index - lattice));
}

DistanceEstimate rho(const Mean& a, const Mean& b, const SharedDomain& dom) {
  dom.validate();
  DistanceEstimate est;
  est.plan = dom;
  est.points = dom.point_count();
  bool first = true;
  for (std::size_t i = 0; i < est.points; ++i) {
    const SampleVector x = dom.point(i);
    const double d = std::abs(a(x) - b(x));
    if (first || d > est.value) {  // lowest-index witness wins ties
      est.value = d;
      est.witness = x.entries();
      first = false;
    }
  }
  return est;
}

BallCheck ball_member(const Mean& center, double radius, const Mean& candidate,
                      const SharedDomain& dom, bool closed) {
  if (!(radius > 0)) throw DomainError("ball radius must be positive (or infinite)");
  DistanceEstimate est = rho(center, candidate, dom);
  const bool outside = closed ? est.value > radius : est.value >= radius;
  return {outside ? BallVerdict::outside : BallVerdict::undefeated, std::move(est)};
}

namespace {

struct Triple {
  Mean p, c, q;
  std::string describe() const {
    return p.serialize() + " <= " + c.serialize() + " <= " + q.serialize();
  }
};

// Random Gini triple with the exact order certificate; occasionally one of
// the stock black-box triples, whose order is pointwise by construction.
Triple sample_triple(Rng& rng) {
  if (rng.next() % 8 == 0) {
    const Mean lo = Mean::black_box("min", [](const SampleVector& v) { return v.min(); });
    const Mean hi = Mean::black_box("max", [](const SampleVector& v) { return v.max(); });
    switch (rng.uniform_int(0, 2)) {
      case 0:
        return {lo, Mean::gini(rng.uniform(-2, 2), rng.uniform(-2, 2)), hi};
      case 1:
        return {lo, Mean::black_box("midrange",
                                    [](const SampleVector& v) {
                                      return 0.5 * (v.min() + v.max());
                                    }),
                hi};
      default:
        return {lo, lo, hi};
    }
  }
  const GiniParams a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
  GiniParams b{a.lo() + rng.uniform(0, 1.5), a.hi() + rng.uniform(0, 1.5)};
  const double clo = rng.uniform(a.lo(), b.lo());
  const double chi = rng.uniform(std::max(a.hi(), clo), b.hi());
  const GiniParams c = rng.coin() ? GiniParams{clo, chi} : GiniParams{chi, clo};
  return {Mean::gini(a), Mean::gini(c), Mean::gini(b)};
}

}  // namespace

SqueezeReport check_ball_interval_type(const Mean& center, double radius,
                                       const SharedDomain& dom, std::size_t trials,
                                       std::uint64_t seed) {
  dom.validate();
  SqueezeReport rep;
  rep.trials = trials;
  const std::size_t n_points = dom.point_count();
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const Triple tr = sample_triple(rng);
    // membership precondition for the squeeze: P, Q inside per estimates
    if (std::isfinite(radius)) {
      if (rho(center, tr.p, dom).value >= radius) continue;
      if (rho(center, tr.q, dom).value >= radius) continue;
    }
    for (std::size_t i = 0; i < n_points; ++i) {
      const SampleVector x = dom.point(i);
      const double k = center(x);
      const double lhs = std::abs(tr.c(x) - k);
      const double rhs = std::max(std::abs(tr.p(x) - k), std::abs(tr.q(x) - k));
      if (lhs > rhs + kSqueezeTol) {
        ++rep.violations;
        rep.failures.push_back({tr.describe(), x.entries(), lhs, rhs});
        break;
      }
    }
  }
  return rep;
}

}  // namespace meanorder
