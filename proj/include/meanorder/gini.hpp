#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meanorder/mean.hpp"

namespace meanorder {

/// Exponents beyond this are rejected: they only probe overflow regimes.
inline constexpr double kGiniParamCap = 500.0;
/// Below this gap in |p - q| the equal-exponent formula is used at the
/// midpoint; the 1/(p-q) exponent amplifies cancellation under the gap.
inline constexpr double kGiniBranchDelta = 1e-7;

/// Value of the two-parameter power-sum-ratio mean at v, evaluated in the
/// log domain (log-sum-exp with sign-dependent anchoring) so that entries
/// up to 1e4 and exponents up to 500 stay finite. Result is clamped to
/// [min(v), max(v)].
double gini_eval(const GiniParams& params, const SampleVector& v);

/// Exact comparability predicate: G_a <= G_b pointwise on all positive
/// vectors of every length iff lo(a) <= lo(b) and hi(a) <= hi(b).
bool gini_leq(const GiniParams& a, const GiniParams& b);

/// Membership of `candidate` in the parameter-plane rectangle pair
/// [p,r]x[q,s] ∪ [q,s]x[p,r], where (p,q) = lower and (r,s) = upper are
/// arranged so that p <= s and q, r lie in [p, s]. This is the bracket
/// [G_lower, G_upper] in the comparability order; it must coincide with
/// the two-sided gini_leq test. Throws PreconditionError (naming the
/// failing inequality) when the arrangement hypothesis fails.
bool gini_interval_contains(const GiniParams& lower, const GiniParams& upper,
                            const GiniParams& candidate);

/// Decreasing self-inverse function on a half-line. The two reciprocal
/// kinds satisfy the law exactly; table-based ones are validated by
/// sampling at construction and only cover their tabulated range.
class Involution {
 public:
  /// f(x) = c/x on (0, inf), c > 0.
  static Involution positive_reciprocal(double c);
  /// g(x) = d/x on (-inf, 0), d > 0.
  static Involution negative_reciprocal(double d);
  /// Piecewise-linear graph through `points`. The graph must be strictly
  /// decreasing, one-signed and symmetric about y = x; the law
  /// f(f(x)) = x is sampled at construction and asymmetric input is
  /// rejected, never repaired. Evaluation outside the tabulated range
  /// is a DomainError.
  static Involution table(std::vector<std::pair<double, double>> points);

  double operator()(double x) const;
  bool positive_side() const noexcept { return positive_; }

 private:
  Involution() = default;
  enum class Kind { reciprocal, table } kind_ = Kind::reciprocal;
  bool positive_ = true;
  double coeff_ = 1.0;
  std::vector<std::pair<double, double>> pts_;
};

/// The three parameter regions carved by a boundary pair (f, g); each is
/// closed under squeezing in the comparability order. Names follow the
/// CLI vocabulary.
enum class BoundarySet { X, Y, XY };

BoundarySet parse_boundary_set(std::string_view name);
std::string to_string(BoundarySet s);

/// Membership of the mean named by `params` (both orderings of the pair
/// are tried, since they name the same mean):
///   X:  x <= 0, or x > 0 and y <= f(x)
///   Y:  x >= 0, or x < 0 and y >= g(x)
///   XY: x < 0 and y >= g(x), or x = 0, or x > 0 and y <= f(x)
bool boundary_set_contains(BoundarySet set, const Involution& f, const Involution& g,
                           const GiniParams& params);

struct BoundaryFailure {
  GiniParams a, b, c;
};

struct BoundaryReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::vector<BoundaryFailure> failures;
};

/// Samples pairs A <= B inside the set and squeezed C with A <= C <= B,
/// then asserts C is a member. Violations are reported, not thrown.
BoundaryReport check_boundary_interval_type(BoundarySet set, const Involution& f,
                                            const Involution& g, std::size_t trials,
                                            std::uint64_t seed, double param_box = 3.0);

}  // namespace meanorder
