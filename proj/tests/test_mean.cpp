#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "meanorder/errors.hpp"
#include "meanorder/gini.hpp"
#include "meanorder/mean.hpp"

using namespace meanorder;

namespace {

SampleVector vec(std::initializer_list<double> xs) { return SampleVector(std::vector<double>(xs)); }

}  // namespace

TEST_CASE("sample vector validation") {
  CHECK_THROWS_AS(SampleVector({}), DomainError);
  CHECK_THROWS_AS(SampleVector({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(SampleVector({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(SampleVector({std::numeric_limits<double>::infinity()}), DomainError);
  const SampleVector v = vec({3, 1, 2});
  CHECK(v.min() == 1);
  CHECK(v.max() == 3);
  CHECK(v.size() == 3);
}

TEST_CASE("evaluation dispatch") {
  CHECK(Mean::gini(1, 0)(vec({1, 3})) == doctest::Approx(2.0));
  CHECK(Mean::gini(0, 0)(vec({1, 4})) == doctest::Approx(2.0));
  CHECK(parse_mean("blackbox:min")(vec({5, 2, 7})) == 2.0);
  CHECK(parse_mean("blackbox:max")(vec({5, 2, 7})) == 7.0);
  CHECK(parse_mean("blackbox:median")(vec({5, 2, 7})) == 5.0);
  CHECK(parse_mean("blackbox:midrange")(vec({5, 2, 7})) == 4.5);
}

TEST_CASE("non-finite black-box results carry the offending vector") {
  const Mean bad = Mean::black_box("nan-at-2", [](const SampleVector& v) {
    return v[0] == 2.0 ? std::nan("") : v[0];
  });
  CHECK(bad(vec({1, 5})) == 1.0);
  try {
    (void)bad(vec({2, 5}));
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    REQUIRE(e.point().size() == 2);
    CHECK(e.point()[0] == 2.0);
  }
}

TEST_CASE("serialization round trip for parametric means") {
  const Mean m = Mean::gini(0.125, -2.5);
  const Mean back = parse_mean(m.serialize());
  REQUIRE(back.is_gini());
  CHECK(back.gini_params()->p == 0.125);
  CHECK(back.gini_params()->q == -2.5);
  CHECK(parse_mean("blackbox:min").serialize() == "blackbox:min");
  CHECK_THROWS_AS(parse_mean("blackbox:mystery"), DomainError);
  CHECK_THROWS_AS(parse_mean("gini:1"), DomainError);
  CHECK_THROWS_AS(parse_mean("zorp:1,2"), DomainError);
  CHECK_THROWS_AS(parse_mean("gini:nan,0"), DomainError);
  CHECK_THROWS_AS(Mean::gini(std::numeric_limits<double>::infinity(), 0), DomainError);
}

TEST_CASE("samplers are deterministic in (seed, index)") {
  for (const auto strat : {SampleStrategy::log_uniform, SampleStrategy::adversarial,
                           SampleStrategy::grid, SampleStrategy::mixed}) {
    DomainSampler s1 = DomainSampler::standard(5);
    s1.strategy = strat;
    DomainSampler s2 = DomainSampler::standard(5);
    s2.strategy = strat;
    for (std::uint64_t i = 0; i < 50; ++i)
      CHECK(s1.at(i).entries() == s2.at(i).entries());
  }
}

TEST_CASE("samplers respect bounds and lengths") {
  DomainSampler s = DomainSampler::standard(17);
  for (const auto strat : {SampleStrategy::log_uniform, SampleStrategy::adversarial,
                           SampleStrategy::grid, SampleStrategy::mixed}) {
    s.strategy = strat;
    for (std::uint64_t i = 0; i < 300; ++i) {
      const SampleVector v = s.at(i);
      CHECK(v.size() >= 1);
      CHECK(v.size() <= 6);
      CHECK(v.min() >= s.lo);
      CHECK(v.max() <= s.hi);
    }
  }
  s.lo = 10;
  s.hi = 1;
  CHECK_THROWS_AS(s.at(0), DomainError);
}

TEST_CASE("adversarial corners reach extreme entry ratios") {
  DomainSampler s = DomainSampler::standard(3);
  s.strategy = SampleStrategy::adversarial;
  double worst = 1;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const SampleVector v = s.at(i);
    worst = std::max(worst, v.max() / v.min());
  }
  CHECK(worst >= 1e7);
}

TEST_CASE("pointwise order is certain for parametric pairs") {
  const DomainSampler s = DomainSampler::standard(0);
  const auto yes = pointwise_leq(Mean::gini(1, 0), Mean::gini(2, 0), s, 100);
  CHECK(yes.verdict == OrderCheck::Verdict::yes_certain);
  // on positive vectors the odd power means are comparable
  const auto also = pointwise_leq(Mean::gini(1, 0), Mean::gini(3, 0), s, 100);
  CHECK(also.verdict == OrderCheck::Verdict::yes_certain);
  const auto no = pointwise_leq(Mean::gini(2, 0), Mean::gini(1, 0), s, 100);
  CHECK(no.verdict == OrderCheck::Verdict::no_certain);
}

TEST_CASE("pointwise order falsifies max <= min with a witness") {
  const DomainSampler s = DomainSampler::standard(1);
  const auto check = pointwise_leq(parse_mean("blackbox:max"), parse_mean("blackbox:min"), s, 500);
  REQUIRE(check.verdict == OrderCheck::Verdict::no_witness);
  REQUIRE(check.witness.has_value());
  // the witness reproduces the violation on re-evaluation
  const SampleVector& w = *check.witness;
  CHECK(violates_leq(w.max(), w.min()));
}

TEST_CASE("a mean is never defeated against itself") {
  const DomainSampler s = DomainSampler::standard(2);
  const auto refl = pointwise_leq(parse_mean("blackbox:median"), parse_mean("blackbox:median"), s, 300);
  CHECK(refl.verdict == OrderCheck::Verdict::undefeated);
  CHECK(refl.samples == 300);
}

TEST_CASE("min is below every internal mean on samples") {
  const DomainSampler s = DomainSampler::standard(4);
  const auto check = pointwise_leq(parse_mean("blackbox:min"), Mean::gini(-1, 0.5), s, 400);
  CHECK(check.verdict == OrderCheck::Verdict::undefeated);
}

TEST_CASE("violation search agrees with the exact predicate on nested pairs") {
  // strictly nested parameter intervals: incomparable, so the search must
  // defeat both order claims
  DomainSampler s = DomainSampler::standard(6);
  const Mean a = Mean::gini(0, 3), b = Mean::gini(1, 2);
  const auto ab = search_violation(a, b, s, 2000);
  const auto ba = search_violation(b, a, s, 2000);
  REQUIRE(ab.has_value());
  REQUIRE(ba.has_value());
  CHECK(violates_leq(a(*ab), b(*ab)));
  CHECK(violates_leq(b(*ba), a(*ba)));
}
