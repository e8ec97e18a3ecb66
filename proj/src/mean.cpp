#include "meanorder/mean.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/rng.hpp"

namespace meanorder {

SampleVector::SampleVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("sample vector must not be empty");
  for (double x : entries_)
    if (!(x > 0) || !std::isfinite(x))
      throw DomainError("sample vector entries must be strictly positive and finite");
}

std::string SampleVector::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", entries_[i]);
    out << buf;
  }
  out << ")";
  return out.str();
}

Mean Mean::gini(GiniParams params) {
  if (!std::isfinite(params.p) || !std::isfinite(params.q))
    throw DomainError("gini exponents must be finite");
  Mean m;
  m.gini_ = params;
  char buf[72];
  std::snprintf(buf, sizeof buf, "gini:%.17g,%.17g", params.p, params.q);
  m.label_ = buf;
  return m;
}

Mean Mean::black_box(std::string label, Fn fn) {
  if (!fn) throw DomainError("black-box mean needs a callback");
  Mean m;
  m.fn_ = std::move(fn);
  m.label_ = std::move(label);
  return m;
}

std::string Mean::serialize() const {
  return is_gini() ? label_ : "blackbox:" + label_;
}

double Mean::operator()(const SampleVector& v) const {
  if (gini_) return gini_eval(*gini_, v);
  const double out = fn_(v);
  if (!std::isfinite(out))
    throw EvaluationError("black-box mean '" + label_ + "' returned a non-finite value",
                          v.entries());
  return out;
}

namespace {

double parse_double(std::string_view text) {
  double out = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw DomainError("cannot parse number '" + std::string(text) + "'");
  return out;
}

double median_of(const SampleVector& v) {
  std::vector<double> s = v.entries();
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  return n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

}  // namespace

Mean parse_mean(std::string_view text) {
  if (text.rfind("gini:", 0) == 0) {
    const auto body = text.substr(5);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw DomainError("mean format is gini:p,q");
    return Mean::gini(parse_double(body.substr(0, comma)), parse_double(body.substr(comma + 1)));
  }
  if (text.rfind("blackbox:", 0) == 0) {
    const auto label = std::string(text.substr(9));
    if (label == "min")
      return Mean::black_box("min", [](const SampleVector& v) { return v.min(); });
    if (label == "max")
      return Mean::black_box("max", [](const SampleVector& v) { return v.max(); });
    if (label == "median")
      return Mean::black_box("median", median_of);
    if (label == "midrange")
      return Mean::black_box("midrange",
                             [](const SampleVector& v) { return 0.5 * (v.min() + v.max()); });
    throw DomainError("unknown black-box mean '" + label +
                      "' (built-ins: min, max, median, midrange)");
  }
  throw DomainError("mean format is gini:p,q or blackbox:<label>");
}

SampleStrategy parse_strategy(std::string_view name) {
  if (name == "grid") return SampleStrategy::grid;
  if (name == "uniform-in-log" || name == "log") return SampleStrategy::log_uniform;
  if (name == "adversarial-corner" || name == "adversarial") return SampleStrategy::adversarial;
  if (name == "mixed") return SampleStrategy::mixed;
  throw DomainError("unknown strategy '" + std::string(name) + "'");
}

std::string to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::grid: return "grid";
    case SampleStrategy::log_uniform: return "uniform-in-log";
    case SampleStrategy::adversarial: return "adversarial-corner";
    case SampleStrategy::mixed: return "mixed";
  }
  return "?";
}

DomainSampler DomainSampler::standard(std::uint64_t seed) {
  DomainSampler s;
  s.seed = seed;
  return s;
}

void DomainSampler::validate() const {
  if (!(lo > 0) || !(lo < hi)) throw DomainError("sampler bounds need 0 < lo < hi");
  if (n_min < 1 || n_max < n_min) throw DomainError("sampler length range is empty");
}

namespace {

SampleVector log_uniform_vector(const DomainSampler& s, Rng& rng) {
  const int n = rng.uniform_int(s.n_min, s.n_max);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = std::clamp(rng.log_uniform(s.lo, s.hi), s.lo, s.hi);
  return SampleVector(std::move(v));
}

SampleVector grid_vector(const DomainSampler& s, std::uint64_t index) {
  // lattice walk: length cycles fastest, then the per-entry level pattern
  constexpr int kLevels = 7;
  const int span = s.n_max - s.n_min + 1;
  const int n = s.n_min + static_cast<int>(index % static_cast<std::uint64_t>(span));
  std::uint64_t code = index / static_cast<std::uint64_t>(span);
  std::vector<double> v(static_cast<std::size_t>(n));
  const double llo = std::log(s.lo), lhi = std::log(s.hi);
  for (auto& x : v) {
    const int level = static_cast<int>(code % kLevels);
    code /= kLevels;
    x = std::clamp(std::exp(llo + (lhi - llo) * (static_cast<double>(level) / (kLevels - 1))),
                   s.lo, s.hi);
  }
  return SampleVector(std::move(v));
}

// Corner shapes where order violations concentrate: two-level vectors
// (k entries at one magnitude, the rest at another), geometric
// progressions, and near-constant vectors. All scaled into [lo, hi].
SampleVector adversarial_vector(const DomainSampler& s, std::uint64_t index, Rng& rng) {
  const double ratios[] = {10.0, 100.0, 1e3, 1e4, 0.1, 0.01, 1e-3, 1e-4};
  const double deltas[] = {0.5, 0.1, -0.5, -0.1, 0.01, -0.01};
  const int n_lo = std::max(s.n_min, 2);
  if (s.n_max < 2) return log_uniform_vector(s, rng);  // no corners at length 1
  const int span = s.n_max - n_lo + 1;
  const int n = n_lo + static_cast<int>(index % static_cast<std::uint64_t>(span));
  std::uint64_t code = index / static_cast<std::uint64_t>(span);
  const int shape = static_cast<int>(code % 3);
  code /= 3;

  std::vector<double> v(static_cast<std::size_t>(n));
  if (shape == 0) {
    const double t = ratios[code % 8];
    code /= 8;
    const int k = 1 + static_cast<int>(code % static_cast<std::uint64_t>(n - 1));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i < k ? 1.0 : t;
  } else if (shape == 1) {
    const double r = ratios[code % 8];
    code /= 8;
    double x = 1.0;
    for (int i = 0; i < n; ++i, x *= r) v[static_cast<std::size_t>(i)] = x;
  } else {
    const double d = deltas[code % 6];
    code /= 6;
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 1.0;
    v.back() = 1.0 + d;
  }

  // center geometrically, then clamp into the box
  double mn = v[0], mx = v[0];
  for (double x : v) {
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  double scale = 1.0 / std::sqrt(mn * mx);
  // occasionally push the shape toward an end of the box instead
  const int placement = static_cast<int>(code % 3);
  if (placement == 1) scale = s.hi / mx;
  if (placement == 2) scale = s.lo / mn;
  for (auto& x : v) x = std::clamp(x * scale, s.lo, s.hi);
  return SampleVector(std::move(v));
}

}  // namespace

SampleVector DomainSampler::at(std::uint64_t index) const {
  validate();
  Rng rng(mix_seed(seed, index));
  switch (strategy) {
    case SampleStrategy::grid:
      return grid_vector(*this, index);
    case SampleStrategy::log_uniform:
      return log_uniform_vector(*this, rng);
    case SampleStrategy::adversarial:
      return adversarial_vector(*this, index, rng);
    case SampleStrategy::mixed:
      if (index % 2 == 0) return adversarial_vector(*this, index / 2, rng);
      return log_uniform_vector(*this, rng);
  }
  throw DomainError("bad strategy");
}

OrderCheck pointwise_leq(const Mean& a, const Mean& b, const DomainSampler& sampler,
                         std::size_t samples) {
  if (a.is_gini() && b.is_gini()) {
    const bool yes = gini_leq(*a.gini_params(), *b.gini_params());
    return {yes ? OrderCheck::Verdict::yes_certain : OrderCheck::Verdict::no_certain,
            std::nullopt, 0};
  }
  for (std::uint64_t i = 0; i < samples; ++i) {
    SampleVector v = sampler.at(i);
    if (violates_leq(a(v), b(v)))
      return {OrderCheck::Verdict::no_witness, std::move(v), static_cast<std::size_t>(i) + 1};
  }
  return {OrderCheck::Verdict::undefeated, std::nullopt, samples};
}

std::optional<SampleVector> search_violation(const Mean& a, const Mean& b,
                                             const DomainSampler& sampler,
                                             std::size_t samples) {
  for (std::uint64_t i = 0; i < samples; ++i) {
    SampleVector v = sampler.at(i);
    if (violates_leq(a(v), b(v))) return v;
  }
  return std::nullopt;
}

}  // namespace meanorder
