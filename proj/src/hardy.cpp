#include "meanorder/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"

namespace meanorder {

SequenceFamily SequenceFamily::power_law(double eps, std::int64_t truncation) {
  SequenceFamily f;
  f.kind = Kind::power_law;
  f.eps = eps;
  f.truncation = truncation;
  f.validate();
  return f;
}

SequenceFamily SequenceFamily::geometric(double r, std::int64_t truncation) {
  SequenceFamily f;
  f.kind = Kind::geometric;
  f.r = r;
  f.truncation = truncation;
  f.validate();
  return f;
}

SequenceFamily SequenceFamily::explicit_list(std::vector<double> entries) {
  SequenceFamily f;
  f.kind = Kind::explicit_list;
  f.truncation = static_cast<std::int64_t>(entries.size());
  f.entries = std::move(entries);
  f.validate();
  return f;
}

void SequenceFamily::validate() const {
  if (truncation < 1) throw DomainError("family truncation must be >= 1");
  switch (kind) {
    case Kind::power_law:
      if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("power-law eps must be > 0");
      break;
    case Kind::geometric:
      if (!(r > 0) || !(r < 1)) throw DomainError("geometric ratio must lie in (0,1)");
      break;
    case Kind::explicit_list:
      if (entries.empty()) throw DomainError("explicit family must not be empty");
      if (truncation > static_cast<std::int64_t>(entries.size()))
        throw DomainError("truncation exceeds explicit entry count");
      for (double x : entries)
        if (!(x > 0) || !std::isfinite(x))
          throw DomainError("explicit entries must be strictly positive and finite");
      break;
  }
}

std::string SequenceFamily::describe() const {
  char buf[96];
  switch (kind) {
    case Kind::power_law:
      std::snprintf(buf, sizeof buf, "powerlaw:eps=%.17g,N=%lld", eps,
                    static_cast<long long>(truncation));
      return buf;
    case Kind::geometric:
      std::snprintf(buf, sizeof buf, "geometric:r=%.17g,N=%lld", r,
                    static_cast<long long>(truncation));
      return buf;
    case Kind::explicit_list:
      std::snprintf(buf, sizeof buf, "explicit:N=%lld", static_cast<long long>(truncation));
      return buf;
  }
  return "?";
}

namespace {

// Running log-sum-exp of terms exp(t_k), shifted by the running maximum.
struct RunningLse {
  double shift = -std::numeric_limits<double>::infinity();
  double sum = 0.0;

  void push(double t) {
    if (t <= shift) {
      sum += std::exp(t - shift);
    } else if (sum == 0.0) {
      shift = t;
      sum = 1.0;
    } else {
      sum = sum * std::exp(shift - t) + 1.0;
      shift = t;
    }
  }
  double value() const { return shift + std::log(sum); }
};

// Incremental prefix evaluation of a Gini mean along a sequence given by
// the logs of its entries. Specialized paths avoid redundant transcendaels
// for the common exponent patterns.
class GiniPrefix {
 public:
  GiniPrefix(GiniParams params, std::int64_t expected_terms) {
    (void)expected_terms;
    const double p = params.p, q = params.q;
    if (!(std::abs(p) <= kGiniParamCap) || !(std::abs(q) <= kGiniParamCap))
      throw DomainError("gini exponent magnitude over cap 500");
    if (std::abs(p - q) < kGiniBranchDelta) {
      mid_ = 0.5 * (p + q);
      mode_ = mid_ == 0.0 ? Mode::log_mean : Mode::weighted_log_mean;
    } else {
      hi_ = std::max(p, q);
      lo_ = std::min(p, q);
      if (lo_ == 0.0) {
        mode_ = hi_ == 1.0 ? Mode::arithmetic : Mode::power_mean;
      } else {
        mode_ = Mode::general;
      }
    }
  }

  // ln_v: log of the next entry; v: the entry itself.
  void push(double ln_v, double v) {
    ++count_;
    ln_min_ = std::min(ln_min_, ln_v);
    ln_max_ = std::max(ln_max_, ln_v);
    switch (mode_) {
      case Mode::log_mean:
        log_sum_ += ln_v;
        break;
      case Mode::arithmetic:
        plain_sum_ += v;
        break;
      case Mode::power_mean:
        lse_hi_.push(hi_ * ln_v);
        break;
      case Mode::general:
        lse_hi_.push(hi_ * ln_v);
        lse_lo_.push(lo_ * ln_v);
        break;
      case Mode::weighted_log_mean: {
        const double t = mid_ * ln_v;
        const double old = acc_lse_.value_or_neg_inf();
        acc_lse_.push(t);
        const double now = acc_lse_.value();
        if (count_ == 1) {
          weighted_log_ = ln_v;
        } else {
          weighted_log_ = weighted_log_ * std::exp(old - now) + ln_v * std::exp(t - now);
        }
        break;
      }
    }
  }

  double value() const {
    double log_g;
    switch (mode_) {
      case Mode::log_mean:
        log_g = log_sum_ / static_cast<double>(count_);
        break;
      case Mode::arithmetic:
        return plain_sum_ / static_cast<double>(count_);
      case Mode::power_mean:
        log_g = (lse_hi_.value() - std::log(static_cast<double>(count_))) / hi_;
        break;
      case Mode::general:
        log_g = (lse_hi_.value() - lse_lo_.value()) / (hi_ - lo_);
        break;
      case Mode::weighted_log_mean:
        log_g = weighted_log_;
        break;
      default:
        log_g = 0;
    }
    return std::exp(std::clamp(log_g, ln_min_, ln_max_));
  }

 private:
  enum class Mode { log_mean, arithmetic, power_mean, general, weighted_log_mean };

  struct Lse : RunningLse {
    double value_or_neg_inf() const {
      return sum == 0.0 ? -std::numeric_limits<double>::infinity() : value();
    }
  };

  Mode mode_ = Mode::general;
  double hi_ = 0, lo_ = 0, mid_ = 0;
  std::int64_t count_ = 0;
  double ln_min_ = std::numeric_limits<double>::infinity();
  double ln_max_ = -std::numeric_limits<double>::infinity();
  double log_sum_ = 0.0;
  double plain_sum_ = 0.0;
  RunningLse lse_hi_;
  RunningLse lse_lo_;
  Lse acc_lse_;
  double weighted_log_ = 0.0;
};

struct Generated {
  double ln_v;
  double v;
};

template <typename Emit>
void generate(const SequenceFamily& f, std::int64_t n_terms, Emit&& emit) {
  switch (f.kind) {
    case SequenceFamily::Kind::power_law: {
      const double a = -(1.0 + f.eps);
      for (std::int64_t n = 1; n <= n_terms; ++n) {
        const double ln_v = a * std::log(static_cast<double>(n));
        emit(Generated{ln_v, std::exp(ln_v)});
      }
      break;
    }
    case SequenceFamily::Kind::geometric: {
      const double step = std::log(f.r);
      double ln_v = 0.0;
      for (std::int64_t n = 1; n <= n_terms; ++n) {
        ln_v += step;
        emit(Generated{ln_v, std::exp(ln_v)});
      }
      break;
    }
    case SequenceFamily::Kind::explicit_list: {
      for (std::int64_t n = 0; n < n_terms; ++n) {
        const double v = f.entries[static_cast<std::size_t>(n)];
        emit(Generated{std::log(v), v});
      }
      break;
    }
  }
}

double family_denominator(const SequenceFamily& f, double partial_sum) {
  if (f.kind == SequenceFamily::Kind::geometric) return f.r / (1.0 - f.r);
  return partial_sum;
}

}  // namespace

double hardy_ratio(const Mean& m, const SequenceFamily& family, std::int64_t max_work_units) {
  family.validate();
  const std::int64_t n_terms = family.truncation;

  if (m.is_gini()) {
    if (n_terms > max_work_units)
      throw BudgetError("hardy_ratio: truncation " + std::to_string(n_terms) +
                        " exceeds the work budget");
    GiniPrefix prefix(*m.gini_params(), n_terms);
    double numerator = 0.0, partial = 0.0;
    generate(family, n_terms, [&](Generated g) {
      prefix.push(g.ln_v, g.v);
      numerator += prefix.value();
      partial += g.v;
    });
    return numerator / family_denominator(family, partial);
  }

  // opaque mean: each prefix is re-evaluated in full
  if (n_terms > 3'000'000 || n_terms * (n_terms + 1) / 2 > max_work_units)
    throw BudgetError("hardy_ratio: black-box truncation " + std::to_string(n_terms) +
                      " exceeds the work budget");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n_terms));
  generate(family, n_terms, [&](Generated g) { v.push_back(g.v); });
  // deep geometric tails underflow; the shorter section is still a valid
  // lower bound, while a zero entry would not be a positive vector
  while (!v.empty() && v.back() < std::numeric_limits<double>::min()) v.pop_back();
  double numerator = 0.0, partial = 0.0;
  for (std::size_t n = 1; n <= v.size(); ++n) {
    SampleVector prefix(std::vector<double>(v.begin(), v.begin() + static_cast<long>(n)));
    numerator += m(prefix);
    partial += v[n - 1];
  }
  return numerator / family_denominator(family, partial);
}

namespace {

// theta is eps for power_law, 1-r for geometric; both searched in log scale.
SequenceFamily make_family(SequenceFamily::Kind kind, double theta, std::int64_t n) {
  if (kind == SequenceFamily::Kind::power_law) return SequenceFamily::power_law(theta, n);
  // a geometric sequence has spent nearly all its mass after ~1/(1-r)
  // terms; probing far beyond that buys little, so the search caps the
  // truncation there (any truncation still yields a valid lower bound)
  const std::int64_t spent = 1'000'000 + static_cast<std::int64_t>(50.0 / theta);
  return SequenceFamily::geometric(1.0 - theta, std::min(n, spent));
}

class KindSearch {
 public:
  KindSearch(const Mean& m, SequenceFamily::Kind kind, double theta_lo, double theta_hi)
      : m_(m), kind_(kind), theta_lo_(theta_lo), theta_hi_(theta_hi) {}

  double probe(double theta, std::int64_t n) {
    theta = std::clamp(theta, theta_lo_, theta_hi_);
    const SequenceFamily f = make_family(kind_, theta, n);
    const double ratio = hardy_ratio(m_, f, std::numeric_limits<std::int64_t>::max());
    work_units_ += m_.is_gini() ? f.truncation : f.truncation * (f.truncation + 1) / 2;
    if (ratio > best_ratio_) {
      best_ratio_ = ratio;
      best_theta_ = theta;
      best_terms_ = f.truncation;
    }
    if (ratio > rung_ratio_) {
      rung_ratio_ = ratio;
      rung_theta_ = theta;
    }
    return ratio;
  }

  void new_rung() {
    rung_ratio_ = -1.0;
    rung_theta_ = best_theta_;
  }

  /// Golden-section maximization over log(theta) in [lo, hi].
  void golden(double lo, double hi, std::int64_t n, int steps) {
    constexpr double invphi = 0.6180339887498949;
    double a = std::log(std::clamp(lo, theta_lo_, theta_hi_));
    double b = std::log(std::clamp(hi, theta_lo_, theta_hi_));
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = probe(std::exp(x1), n);
    double f2 = probe(std::exp(x2), n);
    for (int i = 0; i < steps; ++i) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = probe(std::exp(x2), n);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = probe(std::exp(x1), n);
      }
    }
  }

  double best_ratio() const { return best_ratio_; }
  double best_theta() const { return best_theta_; }
  double rung_theta() const { return rung_theta_; }
  std::int64_t best_terms() const { return best_terms_; }
  std::int64_t work_units() const { return work_units_; }

 private:
  const Mean& m_;
  SequenceFamily::Kind kind_;
  double theta_lo_, theta_hi_;
  double best_ratio_ = -1.0;
  double best_theta_ = 0.0;
  std::int64_t best_terms_ = 0;
  std::int64_t work_units_ = 0;
  double rung_ratio_ = -1.0;
  double rung_theta_ = 0.0;
};

}  // namespace

HardyEstimate hardy_lower_bound(const Mean& m, const HardyBudget& budget, std::uint64_t seed) {
  (void)seed;  // the search is deterministic
  if (budget.max_terms < 1 || budget.grid_points < 2)
    throw DomainError("hardy budget needs max_terms >= 1 and grid_points >= 2");

  const bool opaque = !m.is_gini();
  const std::int64_t top = opaque ? std::min(budget.max_terms, budget.max_black_box_terms)
                                  : budget.max_terms;

  if (!budget.use_power_law && !budget.use_geometric)
    throw DomainError("hardy budget enables no family kind");

  HardyEstimate best;
  std::int64_t total_work = 0;
  for (const auto kind :
       {SequenceFamily::Kind::power_law, SequenceFamily::Kind::geometric}) {
    if (kind == SequenceFamily::Kind::power_law && !budget.use_power_law) continue;
    if (kind == SequenceFamily::Kind::geometric && !budget.use_geometric) continue;
    // theta domain: eps in [1e-4, 1] / (1-r) in [1e-4, 0.5]
    const double theta_hi = kind == SequenceFamily::Kind::power_law ? 1.0 : 0.5;
    KindSearch search(m, kind, 1e-4, theta_hi);

    const std::int64_t n_grid = std::min<std::int64_t>(top, 100'000);
    const double la = std::log(1e-4), lb = std::log(theta_hi);
    const double cell = (lb - la) / (budget.grid_points - 1);
    for (int i = 0; i < budget.grid_points; ++i) search.probe(std::exp(la + cell * i), n_grid);
    search.golden(search.best_theta() * std::exp(-cell), search.best_theta() * std::exp(cell),
                  n_grid, std::max(2, budget.refine_steps / 2));

    // escalate the truncation toward the budget top; the optimum drifts
    // with the truncation, so each rung re-brackets around the incumbent.
    // The final rung dominates the cost and gets only three probes.
    std::int64_t n = n_grid;
    while (n < top) {
      std::int64_t next = n * 10;
      if (next * 4 >= top) next = top;
      n = next;
      search.new_rung();
      if (n == top) {
        search.golden(search.best_theta() * 0.5, search.best_theta() * 2.0, n, 0);
      } else {
        for (const double factor : {0.5, 1.0, 2.0}) search.probe(search.best_theta() * factor, n);
        search.golden(search.rung_theta() * 0.5, search.rung_theta() * 2.0, n, 3);
      }
    }

    if (search.best_ratio() > best.lower) {
      best.lower = search.best_ratio();
      best.witness = make_family(kind, search.best_theta(), search.best_terms());
      best.terms_used = search.best_terms();
    }
    total_work += search.work_units();
  }

  best.work_units = total_work;
  best.budget_limited = opaque && budget.max_black_box_terms < budget.max_terms;
  return best;
}

ExtendedInterval hardy_sandwich(const HardyEstimate& lower_mean,
                                const HardyEstimate& upper_mean) {
  if (lower_mean.lower > upper_mean.upper)
    throw PreconditionError(
        "hardy sandwich is inconsistent: lower bound exceeds upper bound; "
        "an input estimate or the order assertion is wrong");
  return {lower_mean.lower, upper_mean.upper};
}

}  // namespace meanorder
