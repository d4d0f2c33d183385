#include <doctest.h>

#include <cmath>

#include "obslab/error.hpp"
#include "obslab/sets.hpp"

using namespace obslab;

TEST_CASE("normalization of unions") {
  const IntervalUnion u({{3, 4}, {0, 1}, {0.5, 2}, {2, 2.5}, {5, 5}});
  REQUIRE(u.intervals().size() == 2);
  CHECK(u.intervals()[0] == Interval{0, 2.5});
  CHECK(u.intervals()[1] == Interval{3, 4});
  CHECK(u.measure() == doctest::Approx(3.5));
  CHECK(u.contains(0.0));
  CHECK_FALSE(u.contains(2.5));
  CHECK(u.measure_in(2, 3.5) == doctest::Approx(1.0));
}

TEST_CASE("generators") {
  CHECK(parse_set_spec("halfline:+").generate(10) == IntervalUnion({{0, 10}}));
  CHECK(parse_set_spec("halfline:-").generate(10) == IntervalUnion({{-10, 0}}));
  CHECK(parse_set_spec("full").generate(10) == IntervalUnion({{-10, 10}}));

  const IntervalUnion thin = parse_set_spec("athin-comp:alpha=1.5").generate(10);
  const IntervalUnion comp = thin.complement(-10, 10);
  for (int n = 1; n < 10; ++n) {
    for (int s : {-1, 1}) {
      const double len = std::min(1.0, std::pow(n, -1.5));
      CHECK(comp.measure_in(s * n, s * n + len) == doctest::Approx(len).epsilon(1e-14));
      CHECK(comp.measure_in(s * n + len, s * n + 1) == 0.0);
    }
  }

  const IntervalUnion per = parse_set_spec("periodic:gamma=0.5,L=1").generate(10);
  CHECK(per.measure() == doctest::Approx(10.0));
  CHECK(per.contains(3.25));
  CHECK_FALSE(per.contains(3.75));
  CHECK(per.contains(-3.75));
}

TEST_CASE("complement") {
  const IntervalUnion e = parse_set_spec("athin-comp:alpha=1.5").generate(20);
  CHECK(e.complement(-20, 20).complement(-20, 20) == e);
  CHECK(IntervalUnion({{0, 7}}).complement(-7, 7) == IntervalUnion({{-7, 0}}));
  CHECK(e.measure() + e.complement(-20, 20).measure() == doctest::Approx(40.0).epsilon(1e-12));
  double sum = 0;
  for (const auto& i : e.intervals()) sum += std::max(0.0, std::min(i.hi, 5.5) - std::max(i.lo, -3.2));
  CHECK(e.measure_in(-3.2, 5.5) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("parse and describe round-trip") {
  for (const char* text : {"full", "halfline:+", "halfline:-", "athin-comp:alpha=1.5", "periodic:gamma=0.25,L=2",
                           "intervals:[0,1);[2,3.5)", "!halfline:+", "!athin-comp:alpha=0.75"}) {
    const SetSpec s = parse_set_spec(text);
    CHECK(parse_set_spec(s.describe()).generate(30) == s.generate(30));
  }
  CHECK(parse_set_spec("!halfline:+").half_line_sign() == std::optional<bool>(false));
  CHECK(parse_set_spec("full").is_full_line());
  CHECK_THROWS_AS(parse_set_spec("bogus"), PreconditionError);
  CHECK_THROWS_AS(parse_set_spec("athin-comp:alpha=-1"), PreconditionError);
  CHECK_THROWS_AS(parse_set_spec("intervals:[1,0)"), PreconditionError);
}

TEST_CASE("alpha-thin proxy") {
  const IntervalUnion comp = parse_set_spec("!athin-comp:alpha=1.5").generate(120);
  CHECK(alpha_thin_estimate(comp, 1.5, 100) <= 1 + 1e-12);
  const IntervalUnion per = parse_set_spec("periodic:gamma=0.5,L=1").generate(120);
  for (double alpha : {0.25, 0.5, 1.0, 1.5}) CHECK(alpha_thin_estimate(per, alpha, 100) >= 0.5 * std::pow(100, alpha));
  CHECK(alpha_thin_estimate(IntervalUnion{}, 1.5, 100) == 0.0);
  CHECK_THROWS_AS(alpha_thin_estimate(comp, 1.5, 5), PreconditionError);
}

TEST_CASE("weak thickness proxy") {
  CHECK(weak_thickness_estimate(parse_set_spec("full").generate(100), 100) == doctest::Approx(2.0));
  CHECK(weak_thickness_estimate(parse_set_spec("halfline:+").generate(100), 100) == doctest::Approx(1.0));
  CHECK(weak_thickness_estimate(parse_set_spec("athin-comp:alpha=1.5").generate(100), 100) >= 1.5);
}

TEST_CASE("thickness implications") {
  const IntervalUnion thin = parse_set_spec("athin-comp:alpha=1.5").generate(100);
  CHECK(thickness_ratio(thin, 4.0, 100) >= 0.25);
  const IntervalUnion per = parse_set_spec("periodic:gamma=0.5,L=1").generate(100);
  CHECK(thickness_ratio(per, 1.0, 100) == doctest::Approx(0.5));
}
