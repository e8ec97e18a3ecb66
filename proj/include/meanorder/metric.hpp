#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "meanorder/mean.hpp"

namespace meanorder {

/// Finitely sampled common domain: the lattice of `grid` points per axis
/// over [lo, hi]^n, plus optional extra points. Every mean compared on a
/// domain is evaluated at exactly these points, so suprema computed here
/// are lower bounds on the true sup over the box.
struct SharedDomain {
  int n = 2;
  double lo = 1.0;
  double hi = 4.0;
  int grid = 17;
  std::vector<std::vector<double>> extra;

  static SharedDomain box(int n, double lo, double hi, int grid);

  void validate() const;
  std::size_t point_count() const;
  /// Lattice points in row-major order, then the extras.
  SampleVector point(std::size_t index) const;
};

/// Max |M - N| over the domain samples; a lower bound on the sup distance.
/// Carries the plan that produced it, so the value can be reproduced.
struct DistanceEstimate {
  double value = 0.0;
  std::vector<double> witness;
  std::size_t points = 0;
  SharedDomain plan;
};

DistanceEstimate rho(const Mean& a, const Mean& b, const SharedDomain& dom);

/// Sampling can certify non-membership only: `outside` carries a witness
/// where the distance already reaches (open) or exceeds (closed) the
/// radius; `undefeated` is not a membership proof.
enum class BallVerdict { outside, undefeated };

struct BallCheck {
  BallVerdict verdict;
  DistanceEstimate estimate;
};

BallCheck ball_member(const Mean& center, double radius, const Mean& candidate,
                      const SharedDomain& dom, bool closed);

/// Absolute tolerance for the squeeze and triangle checks; all values are
/// bounded by the box width, so an absolute bound is meaningful.
inline constexpr double kSqueezeTol = 1e-10;

struct SqueezeFailure {
  std::string triple;
  std::vector<double> point;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SqueezeReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::vector<SqueezeFailure> failures;
};

/// Samples squeezed triples P <= C <= Q (random Gini triples with the
/// exact order certificate, plus built-in black-box triples verified by
/// sampling) with P and Q inside the ball around `center` per their
/// estimates, and asserts |C(x) - center(x)| <= max(|P(x) - center(x)|,
/// |Q(x) - center(x)|) at every domain sample: the squeezed mean cannot
/// leave the ball. Violations are reported, not thrown.
SqueezeReport check_ball_interval_type(const Mean& center, double radius,
                                       const SharedDomain& dom, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace meanorder
