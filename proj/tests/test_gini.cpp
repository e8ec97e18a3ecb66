#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/rng.hpp"

using namespace meanorder;

namespace {

SampleVector vec(std::initializer_list<double> xs) { return SampleVector(std::vector<double>(xs)); }

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// independent power-mean implementation in extended precision
double power_mean_oracle(double p, const SampleVector& v) {
  long double s = 0;
  for (double x : v.entries()) s += powl(static_cast<long double>(x), static_cast<long double>(p));
  s /= static_cast<long double>(v.size());
  return static_cast<double>(powl(s, 1.0L / static_cast<long double>(p)));
}

GiniParams random_params(Rng& rng, double box) {
  return {rng.uniform(-box, box), rng.uniform(-box, box)};
}

SampleVector random_vector(Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(rng.uniform_int(1, 6)));
  for (auto& x : v) x = rng.log_uniform(1e-4, 1e4);
  return SampleVector(std::move(v));
}

}  // namespace

TEST_CASE("known values") {
  CHECK(gini_eval({1, 0}, vec({1, 2, 3})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gini_eval({0, 0}, vec({1, 4})) == doctest::Approx(2.0).epsilon(1e-14));
  // the two-entry arithmetic-harmonic compound: G_{-1,1}(2,8) = sqrt(2*8)
  CHECK(gini_eval({-1, 1}, vec({2, 8})) == doctest::Approx(4.0).epsilon(1e-14));
  // quadratic mean of (3,4) = sqrt(25/2)
  CHECK(gini_eval({2, 0}, vec({3, 4})) ==
        doctest::Approx(3.5355339059327378).epsilon(1e-13));
}

TEST_CASE("constant vectors evaluate to the constant exactly") {
  for (double t : {1e-4, 0.5, 1.0, 7.3, 1e4})
    CHECK(gini_eval({7, 7}, vec({t, t, t})) == t);
}

TEST_CASE("single entry vectors evaluate to the entry") {
  for (double p : {-400.0, -3.0, 0.0, 0.5, 3.0, 400.0})
    CHECK(gini_eval({p, p / 3 - 1}, vec({2.5})) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("parameter cap and error paths") {
  CHECK_THROWS_AS(gini_eval({501, 0}, vec({1, 2})), DomainError);
  CHECK_THROWS_AS(gini_eval({0, -500.5}, vec({1, 2})), DomainError);
  CHECK_NOTHROW(gini_eval({500, -500}, vec({1e-4, 1e4})));
}

TEST_CASE("symmetry, homogeneity, internality") {
  for (std::uint64_t i = 0; i < 3000; ++i) {
    Rng rng(mix_seed(11, i));
    const GiniParams g = random_params(rng, 30);
    const SampleVector v = random_vector(rng);
    const double a = gini_eval(g, v);
    const double b = gini_eval({g.q, g.p}, v);
    CHECK(close(a, b, 1e-12));
    CHECK(a >= v.min());
    CHECK(a <= v.max());
    for (double lam : {1e-3, 1e3}) {
      std::vector<double> w = v.entries();
      for (auto& x : w) x *= lam;
      CHECK(close(gini_eval(g, SampleVector(w)), lam * a, 1e-12));
    }
  }
}

TEST_CASE("power-mean slice matches the extended-precision oracle") {
  for (std::uint64_t i = 0; i < 3000; ++i) {
    Rng rng(mix_seed(23, i));
    double p = rng.uniform(-40, 40);
    if (std::abs(p) < 1e-3) p = 1e-3;
    const SampleVector v = random_vector(rng);
    CHECK(close(gini_eval({p, 0}, v), power_mean_oracle(p, v), 1e-12));
  }
}

TEST_CASE("equal-exponent branch joins continuously") {
  // the quotient branch at gap eps must agree with the midpoint formula,
  // i.e. with the equal-exponent mean at (p + eps/2)
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng(mix_seed(37, i));
    const double p = rng.uniform(-30, 30);
    const SampleVector v = random_vector(rng);
    const double quotient = gini_eval({p, p + 1e-5}, v);
    const double midpoint = gini_eval({p + 0.5e-5, p + 0.5e-5}, v);
    CHECK(close(quotient, midpoint, 1e-6));
    // the seam at the branch threshold
    const double gap = 1.1e-7;
    const double above = gini_eval({p, p + gap}, v);
    const double at_mid = gini_eval({p + gap / 2, p + gap / 2}, v);
    CHECK(close(above, at_mid, 1e-7));
  }
}

TEST_CASE("comparability predicate") {
  CHECK(gini_leq({1, 2}, {2, 3}));
  CHECK(gini_leq({2, 1}, {3, 2}));  // normalized form decides
  CHECK(gini_leq({1, 2}, {1, 2}));
  CHECK_FALSE(gini_leq({0, 3}, {1, 2}));
  CHECK_FALSE(gini_leq({1, 2}, {0, 3}));
  CHECK(gini_leq({0, 0}, {1, 0}));  // geometric below arithmetic
}

TEST_CASE("comparability is a partial order on normalized parameters") {
  std::vector<GiniParams> grid;
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y) grid.push_back({x * 0.75, y * 0.75});
  for (const auto& a : grid) {
    CHECK(gini_leq(a, a));
    for (const auto& b : grid) {
      if (gini_leq(a, b) && gini_leq(b, a)) CHECK(a.same_mean(b));
      for (const auto& c : grid)
        if (gini_leq(a, b) && gini_leq(b, c)) CHECK(gini_leq(a, c));
    }
  }
}

TEST_CASE("bracket formula: membership and the swapped block") {
  const GiniParams lower{0, 1}, upper{1, 2};
  CHECK(gini_interval_contains(lower, upper, {0.5, 1.5}));
  CHECK(gini_interval_contains(lower, upper, {1.5, 0.5}));
  CHECK_FALSE(gini_interval_contains(lower, upper, {0, 3}));
  CHECK_FALSE(gini_interval_contains(lower, upper, {-0.5, 1.5}));
  // endpoints belong
  CHECK(gini_interval_contains(lower, upper, lower));
  CHECK(gini_interval_contains(lower, upper, upper));
}

TEST_CASE("bracket formula rejects a bad hypothesis by name") {
  CHECK_THROWS_WITH_AS(gini_interval_contains({2, 3}, {0, 1}, {1, 1}),
                       doctest::Contains("p <= s"), PreconditionError);
  CHECK_THROWS_AS(gini_interval_contains({0, 5}, {1, 2}, {1, 1}), PreconditionError);
}

TEST_CASE("bracket formula coincides with the two-sided order test") {
  for (std::uint64_t i = 0; i < 20000; ++i) {
    Rng rng(mix_seed(53, i));
    const double p = rng.uniform(-3, 3);
    const double s = p + rng.uniform(0, 3);
    const GiniParams lower{p, rng.uniform(p, s)};
    const GiniParams upper{rng.uniform(p, s), s};
    const GiniParams cand{rng.uniform(p - 1, s + 1), rng.uniform(p - 1, s + 1)};
    const bool formula = gini_interval_contains(lower, upper, cand);
    const bool order = gini_leq(lower, cand) && gini_leq(cand, upper);
    CHECK(formula == order);
  }
}

TEST_CASE("reciprocal involutions") {
  const auto f = Involution::positive_reciprocal(2.0);
  CHECK(f(0.5) == 4.0);
  CHECK(f(f(3.7)) == doctest::Approx(3.7).epsilon(1e-12));
  CHECK_THROWS_AS(f(-1.0), DomainError);
  CHECK(f(1e-9) > 1e8);  // divergence toward the origin

  const auto g = Involution::negative_reciprocal(1.0);
  CHECK(g(-2.0) == -0.5);
  CHECK(g(g(-0.3)) == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK_THROWS_AS(g(2.0), DomainError);
  CHECK(g(-1e-9) < -1e8);

  CHECK_THROWS_AS(Involution::positive_reciprocal(-1.0), DomainError);
}

TEST_CASE("table involutions validate the involution law") {
  // y = 1/x sampled on [0.5, 2] with mirror nodes included: a symmetric graph
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 8; ++i) {
    const double x = 0.5 + 1.5 * i / 8.0;
    pts.emplace_back(x, 1.0 / x);
    pts.emplace_back(1.0 / x, x);
  }
  const auto f = Involution::table(pts);
  CHECK(f(0.875) == doctest::Approx(1.0 / 0.875).epsilon(1e-12));  // node
  CHECK(f(f(0.77)) == doctest::Approx(0.77).epsilon(1e-6));
  CHECK_THROWS_AS(f(10.0), DomainError);  // outside the tabulated range

  // an increasing graph is rejected
  CHECK_THROWS_AS(Involution::table({{1.0, 1.0}, {2.0, 2.0}}), DomainError);
  // a decreasing but asymmetric graph is rejected by the sampled law
  CHECK_THROWS_AS(Involution::table({{1.0, 3.0}, {2.0, 2.5}, {3.0, 1.0}}), DomainError);
}

TEST_CASE("boundary set membership") {
  const auto f = Involution::positive_reciprocal(1.0);
  const auto g = Involution::negative_reciprocal(1.0);
  CHECK(boundary_set_contains(BoundarySet::X, f, g, {-2, 5}));
  CHECK(boundary_set_contains(BoundarySet::X, f, g, {2, 0.5}));   // on the curve
  CHECK_FALSE(boundary_set_contains(BoundarySet::X, f, g, {2, 1}));
  // membership is on means: both orderings agree
  CHECK(boundary_set_contains(BoundarySet::X, f, g, {5, -2}));
  CHECK(boundary_set_contains(BoundarySet::X, f, g, {0.5, 2}));
  CHECK_FALSE(boundary_set_contains(BoundarySet::X, f, g, {1, 2}));

  CHECK(boundary_set_contains(BoundarySet::Y, f, g, {3, -7}));
  CHECK(boundary_set_contains(BoundarySet::Y, f, g, {-2, -0.5}));  // on the curve
  CHECK_FALSE(boundary_set_contains(BoundarySet::Y, f, g, {-2, -1}));

  CHECK(boundary_set_contains(BoundarySet::XY, f, g, {0, 9}));
  CHECK(boundary_set_contains(BoundarySet::XY, f, g, {2, 0.25}));
  CHECK(boundary_set_contains(BoundarySet::XY, f, g, {-2, -0.25}));
  CHECK_FALSE(boundary_set_contains(BoundarySet::XY, f, g, {-2, -1}));
}

TEST_CASE("boundary regions are closed under squeezing") {
  const auto f = Involution::positive_reciprocal(1.0);
  const auto g = Involution::negative_reciprocal(1.0);
  for (const auto set : {BoundarySet::X, BoundarySet::Y, BoundarySet::XY}) {
    const auto rep = check_boundary_interval_type(set, f, g, 800, 99);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("order soundness on sampled vectors") {
  // whenever the predicate affirms, no sampled vector may object
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(mix_seed(71, i));
    const GiniParams a = random_params(rng, 3);
    const GiniParams b{a.lo() + rng.uniform(0, 2), a.hi() + rng.uniform(0, 2)};
    REQUIRE(gini_leq(a, b));
    for (int k = 0; k < 40; ++k) {
      const SampleVector v = random_vector(rng);
      const double ga = gini_eval(a, v), gb = gini_eval(b, v);
      CHECK_FALSE(violates_leq(ga, gb));
    }
  }
}
