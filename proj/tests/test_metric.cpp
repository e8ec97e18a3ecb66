#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meanorder/errors.hpp"
#include "meanorder/metric.hpp"
#include "meanorder/rng.hpp"

using namespace meanorder;

namespace {

const Mean kAm = Mean::gini(1, 0);
const Mean kGm = Mean::gini(0, 0);
const Mean kMin = parse_mean("blackbox:min");
const Mean kMax = parse_mean("blackbox:max");

}  // namespace

TEST_CASE("domain validation and lattice iteration") {
  CHECK_THROWS_AS(SharedDomain::box(2, -1, 4, 9), DomainError);
  CHECK_THROWS_AS(SharedDomain::box(2, 4, 1, 9), DomainError);
  CHECK_THROWS_AS(SharedDomain::box(2, 1, 4, 1), DomainError);
  CHECK_THROWS_AS(SharedDomain::box(8, 1, 4, 17), DomainError);  // lattice too large

  const SharedDomain d = SharedDomain::box(2, 1, 4, 3);
  CHECK(d.point_count() == 9);
  CHECK(d.point(0).entries() == std::vector<double>{1, 1});
  CHECK(d.point(8).entries() == std::vector<double>{4, 4});

  SharedDomain with_extra = d;
  with_extra.extra = {{1.5, 3.5}};
  CHECK(with_extra.point_count() == 10);
  CHECK(with_extra.point(9).entries() == std::vector<double>{1.5, 3.5});
  with_extra.extra = {{0.5, 3.5}};
  CHECK_THROWS_AS(with_extra.validate(), DomainError);
}

TEST_CASE("distance to itself is zero") {
  const SharedDomain d = SharedDomain::box(2, 1, 4, 9);
  CHECK(rho(kAm, kAm, d).value == 0.0);
  CHECK(rho(kMin, kMin, d).value == 0.0);
}

TEST_CASE("am-gm gap on the unit-to-four box peaks at the spread corner") {
  const SharedDomain d = SharedDomain::box(2, 1, 4, 33);
  const auto est = rho(kAm, kGm, d);
  CHECK(est.value == doctest::Approx(0.5).epsilon(1e-12));
  const bool corner = (est.witness == std::vector<double>{1, 4}) ||
                      (est.witness == std::vector<double>{4, 1});
  CHECK(corner);
  // the witness reproduces the value, and the plan is echoed back
  const SampleVector w(est.witness);
  CHECK(std::abs(kAm(w) - kGm(w)) == est.value);
  CHECK(est.plan.grid == 33);
}

TEST_CASE("max-min distance equals the box width") {
  for (int n : {2, 3}) {
    const SharedDomain d = SharedDomain::box(n, 1, 4, 9);
    CHECK(rho(kMax, kMin, d).value == doctest::Approx(3.0));
  }
}

TEST_CASE("refining the grid never decreases the estimate") {
  const SharedDomain coarse = SharedDomain::box(2, 1, 4, 9);
  const SharedDomain fine = SharedDomain::box(2, 1, 4, 17);  // contains the coarse lattice
  for (const auto& pair : {std::pair{kAm, kGm}, {kAm, kMax}, {kGm, kMin}})
    CHECK(rho(pair.first, pair.second, coarse).value <=
          rho(pair.first, pair.second, fine).value + 1e-15);
}

TEST_CASE("evaluation errors carry the offending point") {
  const Mean bad = Mean::black_box("poison", [](const SampleVector& v) {
    return v[0] == 4.0 && v[1] == 1.0 ? std::nan("") : v[0];
  });
  const SharedDomain d = SharedDomain::box(2, 1, 4, 4);
  try {
    (void)rho(bad, kAm, d);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.point() == std::vector<double>{4.0, 1.0});
  }
}

TEST_CASE("ball membership verdicts") {
  const SharedDomain d = SharedDomain::box(2, 1, 4, 17);
  SUBCASE("candidate equal to the center is undefeated at any radius") {
    const auto c = ball_member(kAm, 1e-12, kAm, d, false);
    CHECK(c.verdict == BallVerdict::undefeated);
    CHECK(c.estimate.value == 0.0);
  }
  SUBCASE("the am-gm pair leaves a 0.4 ball with a spread-corner witness") {
    const auto c = ball_member(kAm, 0.4, kGm, d, true);
    REQUIRE(c.verdict == BallVerdict::outside);
    const bool corner = (c.estimate.witness == std::vector<double>{1, 4}) ||
                        (c.estimate.witness == std::vector<double>{4, 1});
    CHECK(corner);
  }
  SUBCASE("every internal pair is undefeated at infinite radius") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(ball_member(kAm, inf, kGm, d, false).verdict == BallVerdict::undefeated);
    CHECK(ball_member(kAm, inf, kMax, d, false).verdict == BallVerdict::undefeated);
  }
  SUBCASE("radius must be positive") {
    CHECK_THROWS_AS(ball_member(kAm, 0.0, kGm, d, true), DomainError);
  }
}

TEST_CASE("open and closed verdicts differ exactly on the boundary") {
  const SharedDomain d = SharedDomain::box(2, 1, 4, 9);
  const Mean c2 = Mean::black_box("const-2", [](const SampleVector&) { return 2.0; });
  const Mean c2q = Mean::black_box("const-2.25", [](const SampleVector&) { return 2.25; });
  CHECK(ball_member(c2, 0.25, c2q, d, true).verdict == BallVerdict::undefeated);
  CHECK(ball_member(c2, 0.25, c2q, d, false).verdict == BallVerdict::outside);
}

TEST_CASE("squeezed triples never leave the ball") {
  for (int n : {2, 3}) {
    const SharedDomain d = SharedDomain::box(n, 1, 4, n == 2 ? 9 : 5);
    const auto rep = check_ball_interval_type(kAm, 5.0, d, 400, 77);
    CHECK(rep.trials == 400);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("degenerate squeeze holds with equality") {
  const SharedDomain d = SharedDomain::box(2, 1, 4, 5);
  const Mean center = Mean::gini(0.5, 0.5);
  for (std::size_t i = 0; i < d.point_count(); ++i) {
    const SampleVector x = d.point(i);
    const double k = center(x);
    const double lhs = std::abs(kAm(x) - k);
    CHECK(lhs <= std::max(lhs, lhs) + kSqueezeTol);
  }
}

TEST_CASE("pseudometric laws on sampled estimates") {
  const SharedDomain d = SharedDomain::box(2, 1, 4, 9);
  Rng rng(123);
  for (int rep = 0; rep < 60; ++rep) {
    const Mean m = Mean::gini(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Mean n = Mean::gini(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Mean p = Mean::gini(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double dmn = rho(m, n, d).value;
    CHECK(dmn == rho(n, m, d).value);
    CHECK(rho(m, p, d).value <= dmn + rho(n, p, d).value + kSqueezeTol);
  }
}
