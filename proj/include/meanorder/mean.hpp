#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meanorder {

/// Finite vector of strictly positive reals; the common domain of every
/// mean in this library.
class SampleVector {
 public:
  explicit SampleVector(std::vector<double> entries);

  const std::vector<double>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double min() const { return *std::min_element(entries_.begin(), entries_.end()); }
  double max() const { return *std::max_element(entries_.begin(), entries_.end()); }
  std::string to_string() const;

 private:
  std::vector<double> entries_;
};

/// Exponent pair (p, q); the mean it names is symmetric in the two, so
/// (p, q) and (q, p) denote the same mean.
struct GiniParams {
  double p = 0.0;
  double q = 0.0;

  double lo() const noexcept { return std::min(p, q); }
  double hi() const noexcept { return std::max(p, q); }
  /// Equality as means, i.e. on the normalized (lo, hi) form.
  bool same_mean(const GiniParams& o) const noexcept {
    return lo() == o.lo() && hi() == o.hi();
  }
};

/// A mean: either a Gini parameter pair evaluated by the library, or an
/// opaque callback. Callbacks carry no internality guarantee ("pre-means"
/// are allowed); callers that need one must check it themselves.
class Mean {
 public:
  using Fn = std::function<double(const SampleVector&)>;

  static Mean gini(double p, double q) { return gini(GiniParams{p, q}); }
  static Mean gini(GiniParams params);
  static Mean black_box(std::string label, Fn fn);

  bool is_gini() const noexcept { return gini_.has_value(); }
  const GiniParams* gini_params() const noexcept { return gini_ ? &*gini_ : nullptr; }
  const std::string& label() const noexcept { return label_; }

  /// "gini:p,q" round-trips through parse_mean; "blackbox:<label>" does
  /// not (the callback cannot be serialized).
  std::string serialize() const;

  /// Evaluate; throws EvaluationError (carrying v) on a non-finite result.
  double operator()(const SampleVector& v) const;

 private:
  Mean() = default;
  std::optional<GiniParams> gini_;
  Fn fn_;
  std::string label_;
};

/// Parses "gini:p,q" or one of the built-in callbacks
/// "blackbox:{min,max,median,midrange}".
Mean parse_mean(std::string_view text);

enum class SampleStrategy { grid, log_uniform, adversarial, mixed };

SampleStrategy parse_strategy(std::string_view name);
std::string to_string(SampleStrategy s);

/// Deterministic sampling plan over positive vectors: `at(i)` depends only
/// on (seed, i), so any range of indices can be drawn in any order or in
/// parallel. The adversarial strategy cycles corner shapes (two-level
/// vectors, geometric progressions, near-constant vectors) where order
/// violations between means concentrate.
struct DomainSampler {
  int n_min = 1;
  int n_max = 6;
  double lo = 1e-4;
  double hi = 1e4;
  SampleStrategy strategy = SampleStrategy::mixed;
  std::uint64_t seed = 0;

  static DomainSampler standard(std::uint64_t seed);

  SampleVector at(std::uint64_t index) const;
  void validate() const;
};

/// Relative tolerance separating genuine order violations from rounding.
inline constexpr double kOrderTol = 1e-9;

inline bool violates_leq(double a, double b, double tol = kOrderTol) {
  return a > b + tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

struct OrderCheck {
  enum class Verdict {
    yes_certain,   ///< exact predicate (both means Gini)
    no_certain,    ///< exact predicate (both means Gini)
    no_witness,    ///< sampled violation found
    undefeated,    ///< no violation in `samples` samples; not a proof
  };
  Verdict verdict;
  std::optional<SampleVector> witness;
  std::size_t samples = 0;

  bool is_no() const {
    return verdict == Verdict::no_certain || verdict == Verdict::no_witness;
  }
};

/// Sampled pointwise order check. Can only falsify a <= b - except when
/// both means are Gini, where the exact comparability predicate decides.
OrderCheck pointwise_leq(const Mean& a, const Mean& b, const DomainSampler& sampler,
                         std::size_t samples);

/// Search for a vector where a > b + tol; nullopt if none found.
std::optional<SampleVector> search_violation(const Mean& a, const Mean& b,
                                             const DomainSampler& sampler,
                                             std::size_t samples);

}  // namespace meanorder
