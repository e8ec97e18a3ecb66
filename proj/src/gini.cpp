#include "meanorder/gini.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meanorder/errors.hpp"
#include "meanorder/rng.hpp"

namespace meanorder {

namespace {

// ln sum_i exp(e * ln v_i) decomposed as e * anchor + residual, anchored at
// the dominant entry for the sign of e so that every exponent argument is
// <= 0 and the residual stays in [0, ln n]. Keeping the anchor term apart
// lets the quotient below cancel it algebraically instead of numerically.
double log_power_sum_residual(double e, const std::vector<double>& logs, double anchor) {
  double s = 0.0;
  for (double l : logs) s += std::exp(e * (l - anchor));
  return std::log(s);
}

}  // namespace

double gini_eval(const GiniParams& params, const SampleVector& v) {
  const double p = params.p;
  const double q = params.q;
  if (!(std::abs(p) <= kGiniParamCap) || !(std::abs(q) <= kGiniParamCap))
    throw DomainError("gini exponent magnitude over cap 500");

  std::vector<double> logs(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) logs[i] = std::log(v[i]);
  double log_min = logs[0], log_max = logs[0];
  for (double l : logs) {
    log_min = std::min(log_min, l);
    log_max = std::max(log_max, l);
  }

  double log_g;
  if (std::abs(p - q) < kGiniBranchDelta) {
    // weighted log mean with softmax weights at the midpoint exponent
    const double r = 0.5 * (p + q);
    const double anchor = r >= 0 ? log_max : log_min;
    double w_sum = 0.0, acc = 0.0;
    for (double l : logs) {
      const double w = std::exp(r * (l - anchor));
      w_sum += w;
      acc += w * l;
    }
    log_g = acc / w_sum;
  } else {
    const double anchor_p = p >= 0 ? log_max : log_min;
    const double anchor_q = q >= 0 ? log_max : log_min;
    const double res_p = log_power_sum_residual(p, logs, anchor_p);
    const double res_q = log_power_sum_residual(q, logs, anchor_q);
    if (anchor_p == anchor_q) {
      log_g = anchor_p + (res_p - res_q) / (p - q);
    } else {
      // opposite signs keep |p - q| >= |p| + |q|, so no cancellation
      log_g = (p * anchor_p - q * anchor_q + res_p - res_q) / (p - q);
    }
  }

  const double g = std::exp(log_g);
  if (!std::isfinite(g))
    throw EvaluationError("gini evaluation produced a non-finite value", v.entries());
  return std::clamp(g, v.min(), v.max());
}

bool gini_leq(const GiniParams& a, const GiniParams& b) {
  return a.lo() <= b.lo() && a.hi() <= b.hi();
}

bool gini_interval_contains(const GiniParams& lower, const GiniParams& upper,
                            const GiniParams& candidate) {
  // the only arrangement satisfying the hypothesis is the normalized one
  const double p = lower.lo(), q = lower.hi();
  const double r = upper.lo(), s = upper.hi();
  if (!(p <= s)) throw PreconditionError("interval hypothesis fails: p <= s");
  if (!(q <= s)) throw PreconditionError("interval hypothesis fails: q in [p, s]");
  if (!(r >= p)) throw PreconditionError("interval hypothesis fails: r in [p, s]");

  const double x = candidate.p, y = candidate.q;
  const bool first = (p <= x && x <= r) && (q <= y && y <= s);
  const bool swapped = (q <= x && x <= s) && (p <= y && y <= r);
  return first || swapped;
}

Involution Involution::positive_reciprocal(double c) {
  if (!(c > 0) || !std::isfinite(c)) throw DomainError("reciprocal coefficient must be positive");
  Involution f;
  f.kind_ = Kind::reciprocal;
  f.positive_ = true;
  f.coeff_ = c;
  return f;
}

Involution Involution::negative_reciprocal(double d) {
  if (!(d > 0) || !std::isfinite(d)) throw DomainError("reciprocal coefficient must be positive");
  Involution g;
  g.kind_ = Kind::reciprocal;
  g.positive_ = false;
  g.coeff_ = d;
  return g;
}

Involution Involution::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw DomainError("table involution needs at least two points");
  Involution f;
  f.kind_ = Kind::table;
  auto pts = std::move(points);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const bool positive = pts.front().first > 0;
  for (const auto& [x, y] : pts) {
    if (positive ? (x <= 0 || y <= 0) : (x >= 0 || y >= 0))
      throw DomainError("table involution must stay on one half-line");
  }
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].second >= pts[i - 1].second)
      throw DomainError("table involution must be strictly decreasing");
  f.positive_ = positive;
  f.pts_ = std::move(pts);

  // the graph must be its own reflection about y = x: sample f(f(x)) = x;
  // an asymmetric graph is rejected, never repaired
  const double a = f.pts_.front().first, b = f.pts_.back().first;
  for (int k = 0; k <= 1000; ++k) {
    const double x = a + (b - a) * (static_cast<double>(k) / 1000.0);
    double y;
    try {
      y = f(f(x));
    } catch (const DomainError&) {
      throw DomainError("table involution does not map its range into its domain");
    }
    if (std::abs(y - x) > 1e-6 * std::max(std::abs(x), 1e-12))
      throw DomainError("table involution fails f(f(x)) = x at x = " + std::to_string(x));
  }
  return f;
}

double Involution::operator()(double x) const {
  if (positive_ ? !(x > 0) : !(x < 0))
    throw DomainError("involution argument outside its half-line");
  if (kind_ == Kind::reciprocal) return coeff_ / x;
  if (x < pts_.front().first || x > pts_.back().first)
    throw DomainError("table involution argument outside tabulated range");
  auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                             [](const auto& pt, double v) { return pt.first < v; });
  if (it->first == x) return it->second;
  const auto& [x1, y1] = *(it - 1);
  const auto& [x2, y2] = *it;
  return y1 + (y2 - y1) * (x - x1) / (x2 - x1);
}

BoundarySet parse_boundary_set(std::string_view name) {
  if (name == "X") return BoundarySet::X;
  if (name == "Y") return BoundarySet::Y;
  if (name == "XY") return BoundarySet::XY;
  throw DomainError("unknown boundary set '" + std::string(name) + "' (want X, Y or XY)");
}

std::string to_string(BoundarySet s) {
  switch (s) {
    case BoundarySet::X: return "X";
    case BoundarySet::Y: return "Y";
    case BoundarySet::XY: return "XY";
  }
  return "?";
}

namespace {

bool ordered_pair_in_set(BoundarySet set, const Involution& f, const Involution& g,
                         double x, double y) {
  switch (set) {
    case BoundarySet::X:
      return x <= 0 || y <= f(x);
    case BoundarySet::Y:
      return x >= 0 || y >= g(x);
    case BoundarySet::XY:
      if (x < 0) return y >= g(x);
      if (x == 0) return true;
      return y <= f(x);
  }
  return false;
}

}  // namespace

bool boundary_set_contains(BoundarySet set, const Involution& f, const Involution& g,
                           const GiniParams& params) {
  if (!f.positive_side() || g.positive_side())
    throw DomainError("boundary sets need a positive-side f and a negative-side g");
  return ordered_pair_in_set(set, f, g, params.p, params.q) ||
         ordered_pair_in_set(set, f, g, params.q, params.p);
}

BoundaryReport check_boundary_interval_type(BoundarySet set, const Involution& f,
                                            const Involution& g, std::size_t trials,
                                            std::uint64_t seed, double param_box) {
  BoundaryReport rep;
  rep.trials = trials;
  const double box = param_box;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    GiniParams a{}, b{};
    bool found = false;
    for (int attempt = 0; attempt < 400 && !found; ++attempt) {
      GiniParams u{rng.uniform(-box, box), rng.uniform(-box, box)};
      GiniParams w{rng.uniform(-box, box), rng.uniform(-box, box)};
      if (!boundary_set_contains(set, f, g, u) || !boundary_set_contains(set, f, g, w)) continue;
      if (gini_leq(u, w)) {
        a = u; b = w; found = true;
      } else if (gini_leq(w, u)) {
        a = w; b = u; found = true;
      }
    }
    if (!found) continue;  // sparse corner of the box; the trial is vacuous

    const double clo = rng.uniform(a.lo(), b.lo());
    const double chi = rng.uniform(std::max(a.hi(), clo), b.hi());
    const GiniParams c = rng.coin() ? GiniParams{clo, chi} : GiniParams{chi, clo};

    if (!boundary_set_contains(set, f, g, c)) {
      ++rep.violations;
      rep.failures.push_back({a, b, c});
    }
  }
  return rep;
}

}  // namespace meanorder
