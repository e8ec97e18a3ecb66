#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "meanorder/mean.hpp"

namespace meanorder {

/// Positive summable test sequence, used through its first `truncation`
/// terms. The stock kinds are decreasing by construction; explicit
/// sequences are used exactly as given.
struct SequenceFamily {
  enum class Kind { power_law, geometric, explicit_list };

  Kind kind = Kind::power_law;
  /// power_law: v_n = n^(-1-eps), eps > 0.
  double eps = 0.1;
  /// geometric: v_n = r^n, 0 < r < 1.
  double r = 0.9;
  std::vector<double> entries;
  std::int64_t truncation = 100000;

  static SequenceFamily power_law(double eps, std::int64_t truncation);
  static SequenceFamily geometric(double r, std::int64_t truncation);
  static SequenceFamily explicit_list(std::vector<double> entries);

  void validate() const;
  std::string describe() const;
};

/// Work-unit budget for hardy_ratio: one unit per term for incrementally
/// evaluated means, one unit per touched entry (so ~N^2/2 total) for
/// re-evaluated black-box means.
inline constexpr std::int64_t kDefaultHardyWorkUnits = 2'000'000'000;

/// (sum of prefix means) / (sum of the sequence), both over the first
/// `truncation` terms, except that geometric sequences use their exact
/// total r/(1-r) in the denominator. Every finite section of an
/// admissible sequence realizes its ratio in the limit, so the value is
/// a certified lower bound on the Hardy constant of the mean.
double hardy_ratio(const Mean& m, const SequenceFamily& family,
                   std::int64_t max_work_units = kDefaultHardyWorkUnits);

struct HardyBudget {
  /// Top of the truncation ladder for incrementally evaluated means.
  std::int64_t max_terms = 400'000'000;
  /// Truncation cap for black-box means (prefix re-evaluation is O(N^2)).
  std::int64_t max_black_box_terms = 4000;
  int grid_points = 40;
  int refine_steps = 20;
  bool use_power_law = true;
  bool use_geometric = true;
};

struct HardyEstimate {
  /// Best ratio achieved; a certified lower bound on the Hardy constant.
  double lower = 0.0;
  /// Upper bound; +inf unless supplied externally (see hardy_sandwich).
  double upper = std::numeric_limits<double>::infinity();
  SequenceFamily witness;
  std::int64_t terms_used = 0;
  std::int64_t work_units = 0;
  bool budget_limited = false;
};

/// Maximizes hardy_ratio over the stock family parameters: a log-spaced
/// grid (eps in [1e-4, 1], r in [0.5, 0.9999]) followed by golden-section
/// refinement, escalating the truncation toward budget.max_terms as the
/// search narrows. Deterministic for a fixed budget; `seed` is accepted
/// for interface symmetry and does not affect the result.
HardyEstimate hardy_lower_bound(const Mean& m, const HardyBudget& budget = {},
                                std::uint64_t seed = 0);

struct ExtendedInterval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// Enclosure [P.lower, Q.upper] for the Hardy constant of any mean
/// squeezed pointwise between P and Q. Throws PreconditionError when the
/// interval would be empty (an input or the order assertion is wrong).
ExtendedInterval hardy_sandwich(const HardyEstimate& lower_mean,
                                const HardyEstimate& upper_mean);

}  // namespace meanorder
