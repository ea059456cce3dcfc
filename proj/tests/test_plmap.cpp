#include <random>

#include "doctest.h"
#include "qwi/error.hpp"
#include "qwi/plmap.hpp"
#include "support.hpp"

using namespace qwi;
using testing_support::random_plmap;

namespace {

PLMap pl(std::string_view s) { return PLMap::parse(s); }

// {x/2 for x<=0; a bump on (0,1) fixing 0 and 1; 2x-1 for x>=1}
PLMap two_fixed_points() {
  return PLMap::through_nodes(Rational(1, 2), {{0, 0}, {Rational(1, 2), Rational(3, 4)}, {1, 1}}, Rational(2));
}

}  // namespace

TEST_CASE("apply") {
  CHECK(PLMap::translation(1)(0) == Rational(1));
  CHECK(PLMap()(Rational(5, 7)) == Rational(5, 7));
  CHECK(pl("pl cuts=[0] pieces=[(1,0),(2,0)]")(Rational(1, 2)) == Rational(1));
}

TEST_CASE("text format") {
  CHECK(pl("pl id").is_identity());
  PLMap f = pl("pl cuts=[0,1] pieces=[(1,0),(2,0),(1,1)]");
  CHECK(f.str() == "pl cuts=[0,1] pieces=[(1,0),(2,0),(1,1)]");
  CHECK(pl(f.str()) == f);
  CHECK(PLMap().str() == "pl id");
  CHECK_THROWS_AS(pl("pl cuts=[0] pieces=[(1,0),(2,1)]"), InvariantViolation);  // discontinuous
  CHECK_THROWS_AS(pl("pl cuts=[0] pieces=[(1,0),(1,0)]"), InvariantViolation);  // not merged
  CHECK_THROWS_AS(pl("pl cuts=[0] pieces=[(1,0),(-1,0)]"), InvariantViolation);
  CHECK_THROWS_AS(pl("pl cuts=[1,0] pieces=[(1,0),(1,0),(1,0)]"), InvariantViolation);
  CHECK_THROWS_AS(pl("pl cuts=[0] pieces=[(1,0)]"), InvariantViolation);
  CHECK_THROWS_AS(pl("pl cuts=[0 pieces=[(1,0)]"), ParseError);
  try {
    pl("pl cuts=[0] pieces=[(1,0),(2,1)]");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("discontinuous") != std::string::npos);
  }
}

TEST_CASE("compose and inverse examples") {
  CHECK(compose(PLMap::translation(1), PLMap::translation(1)) == PLMap::translation(2));
  PLMap f = pl("pl cuts=[0] pieces=[(1,0),(2,0)]");
  CHECK(compose(f, PLMap()) == f);
  CHECK(inverse(PLMap::translation(1)) == PLMap::translation(-1));
  CHECK(inverse(PLMap()).is_identity());
  CHECK(inverse(f) == pl("pl cuts=[0] pieces=[(1,0),(1/2,0)]"));
  CHECK(compose(f, inverse(f)).is_identity());
  CHECK(conjugate(PLMap::translation(1), PLMap::translation(5)) == PLMap::translation(1));
  CHECK(conjugate(PLMap(), f).is_identity());
}

TEST_CASE("fixed structure and support examples") {
  auto id = fixed_structure(PLMap());
  CHECK(id.points.empty());
  REQUIRE(id.intervals.size() == 1);
  CHECK(id.intervals[0].lo.is_neg_inf());
  CHECK(id.intervals[0].hi.is_pos_inf());

  auto t = fixed_structure(PLMap::translation(1));
  CHECK(t.points.empty());
  CHECK(t.intervals.empty());

  auto two = fixed_structure(two_fixed_points());
  CHECK(two.points == std::vector<Rational>{0, 1});
  CHECK(two.intervals.empty());

  CHECK(support(PLMap()).empty());
  auto sc = support_components(PLMap::translation(1));
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].interval == QInterval::full());
  CHECK(sc[0].parity == Parity::plus);

  auto ray = support_components(pl("pl cuts=[0,1] pieces=[(1,0),(2,0),(1,1)]"));
  REQUIRE(ray.size() == 1);
  CHECK(ray[0].interval == QInterval{0, ExtRational::pos_inf()});
  CHECK(ray[0].parity == Parity::plus);

  auto three = support_components(two_fixed_points());
  REQUIRE(three.size() == 3);
  CHECK(three[0].interval == QInterval{ExtRational::neg_inf(), 0});
  CHECK(three[0].parity == Parity::plus);
  CHECK(three[1].interval == QInterval{0, 1});
  CHECK(three[2].interval == QInterval{1, ExtRational::pos_inf()});
}

TEST_CASE("bumps and restrictions") {
  PLMap b = bump(QInterval{0, 3}, Parity::minus);
  auto sc = support_components(b);
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].interval == QInterval{0, 3});
  CHECK(sc[0].parity == Parity::minus);
  for (Parity p : {Parity::plus, Parity::minus}) {
    for (QInterval s : {QInterval{2, ExtRational::pos_inf()}, QInterval{ExtRational::neg_inf(), -1}, QInterval::full()}) {
      auto c = support_components(bump(s, p));
      REQUIRE(c.size() == 1);
      CHECK(c[0].interval == s);
      CHECK(c[0].parity == p);
    }
  }
  PLMap g = two_fixed_points();
  PLMap mid = restriction(g, IntervalSet::normalize({{0, 1}}));
  CHECK(mid(Rational(1, 2)) == Rational(3, 4));
  CHECK(mid(Rational(-5)) == Rational(-5));
  CHECK(mid(Rational(5)) == Rational(5));
  CHECK_THROWS_AS(restriction(PLMap::translation(1), IntervalSet::normalize({{0, 1}})), PreconditionError);
}

TEST_CASE("group laws on random maps") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    PLMap f = random_plmap(rng), g = random_plmap(rng), h = random_plmap(rng);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(compose(f, inverse(f)).is_identity());
    CHECK(compose(inverse(f), f).is_identity());
    for (const auto& q : testing_support::samples(f, rng)) {
      CHECK(f(inverse(f)(q)) == q);
      CHECK(compose(f, g)(q) == f(g(q)));
    }
  }
}

TEST_CASE("apply is strictly increasing") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    PLMap f = random_plmap(rng);
    auto s = testing_support::samples(f, rng);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t k = 1; k < s.size(); ++k) CHECK(f(s[k - 1]) < f(s[k]));
  }
}

TEST_CASE("support properties") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    PLMap f = random_plmap(rng), g = random_plmap(rng);
    CHECK(support(f) == support(inverse(f)));
    std::vector<QInterval> image;
    const IntervalSet sf = support(f);
    for (const auto& c : sf.items()) image.push_back({apply_ext(g, c.lo), apply_ext(g, c.hi)});
    CHECK(support(conjugate(f, g)) == IntervalSet::normalize(image));
    // Displacement sign is constant on each component and zero off the support.
    for (const auto& c : support_components(f)) {
      for (const auto& q : testing_support::samples(f, rng)) {
        if (!c.interval.contains(q)) continue;
        int sign = (f(q) - q).sign();
        CHECK(sign == (c.parity == Parity::plus ? 1 : -1));
      }
    }
    for (const auto& q : testing_support::samples(f, rng)) {
      if (!support(f).contains(q)) CHECK(f(q) == q);
    }
  }
}
