#include "doctest.h"

#include <random>

#include "qwi/error.hpp"
#include "qwi/generate.hpp"
#include "qwi/oracles.hpp"
#include "qwi/wmso.hpp"

using namespace qwi;

namespace {

bool dec(const char* text) { return decide(parse_wmso(text)); }

// Random formula over points x,y and sets X,Y with quantifier depth <= depth.
Wmso random_formula(std::mt19937_64& rng, int depth, std::vector<std::string> pts, std::vector<std::string> sets,
                    int& budget) {
  auto pick = [&](const std::vector<std::string>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  const int choice = --budget <= 0 ? 0 : std::uniform_int_distribution<int>(0, depth > 0 ? 8 : 4)(rng);
  auto atom = [&]() -> Wmso {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: return wmso::less(pick(pts), pick(pts));
      case 1: return wmso::eq(pick(pts), pick(pts));
      default: return sets.empty() ? wmso::less(pick(pts), pick(pts)) : wmso::mem(pick(pts), pick(sets));
    }
  };
  switch (choice) {
    case 0:
    case 1: return atom();
    case 2: return wmso::neg(random_formula(rng, depth, pts, sets, budget));
    case 3: return wmso::conj(random_formula(rng, depth, pts, sets, budget), random_formula(rng, depth, pts, sets, budget));
    case 4: return wmso::disj(random_formula(rng, depth, pts, sets, budget), random_formula(rng, depth, pts, sets, budget));
    case 5:
    case 6: {
      std::string v = "p" + std::to_string(pts.size());
      pts.push_back(v);
      Wmso body = random_formula(rng, depth - 1, pts, sets, budget);
      return choice == 5 ? wmso::exists(v, body) : wmso::forall(v, body);
    }
    default: {
      std::string v = "S" + std::to_string(sets.size());
      sets.push_back(v);
      Wmso body = random_formula(rng, depth - 1, pts, sets, budget);
      return choice == 7 ? wmso::exists(v, body) : wmso::forall(v, body);
    }
  }
}

Wmso random_formula(std::mt19937_64& rng, int depth, std::vector<std::string> pts, std::vector<std::string> sets) {
  int budget = 10;
  return random_formula(rng, depth, std::move(pts), std::move(sets), budget);
}

}  // namespace

TEST_CASE("engine examples") {
  CHECK(dec("Ax Ay (x<y -> Ez (x<z & z<y))"));
  CHECK_FALSE(dec("EX Ax (x in X)"));
  CHECK(dec("AX Ey Ax (x in X -> x < y)"));
  CHECK_FALSE(dec("Ex Ay (~(y<x))"));
  CHECK(dec("Ex EX (x in X)"));
  CHECK(dec("AX AY ((Ax (x in X <-> x in Y)) -> (Ax (x in X) <-> Ax (x in Y)))"));
  CHECK(dec("Ax Ey (y<x)"));
  CHECK(dec("EX (Ax (x in X -> x < x))"));
}

TEST_CASE("stability probe examples") {
  auto density = parse_wmso("Ax Ay (x<y -> Ez (x<z & z<y))");
  CHECK(stability_probe(density, {3, 4, 5}) == std::vector<bool>{true, true, true});
  auto cover = parse_wmso("EX Ax (x in X)");
  CHECK(stability_probe(cover, {2, 4}) == std::vector<bool>{false, false});
}

TEST_CASE("eval errors") {
  auto open = parse_wmso("x < y");
  CHECK_THROWS_AS(eval(open, Assignment::parse("x=1"), 1), ScopeError);
  CHECK_THROWS_AS(decide(open), ScopeError);
  CHECK_THROWS_AS(eval(parse_wmso("Ex Ey (x<y)"), Assignment{}, 1), PreconditionError);
  CHECK(eval(open, Assignment::parse("x=1,y=3/2"), 1));
  CHECK_FALSE(eval(parse_wmso("x in X"), Assignment::parse("x=1,X={0,2}"), 1));
  CHECK(eval(parse_wmso("x in X"), Assignment::parse("x=2,X={0, 2}"), 1));
}

TEST_CASE("assignment text") {
  auto a = Assignment::parse("y=-3,x=1/2,X={1/2,0},Y={}");
  CHECK(a.str() == "x=1/2,y=-3,X={0,1/2},Y={}");
  CHECK_THROWS_AS(Assignment::parse("X=1"), ParseError);
}

TEST_CASE("candidates") {
  auto o = ConfigOutline::of(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
  CHECK(o.landmarks.size() == 2);
  CHECK(o.gaps.size() == 3);
  CHECK(point_candidates(o).size() == 5);
  // 2^2 landmark subsets times (cap+1)^3 fresh multiplicities.
  CHECK(set_candidates(o, 2).size() == 4 * 27);
  auto fresh = fresh_points(o.gaps[1], 3);
  REQUIRE(fresh.size() == 3);
  CHECK(Rational(0) < fresh[0]);
  CHECK(fresh[0] < fresh[1]);
  CHECK(fresh[2] < Rational(1));
}

TEST_CASE("boolean laws") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    Wmso f = random_formula(rng, 2, {"x"}, {"X"});
    Assignment a = Assignment::parse("x=0,X={-1,2}");
    const int cap = std::max(1, qdepth(f));
    const bool v = eval(f, a, cap);
    CHECK(eval(wmso::neg(wmso::neg(f)), a, cap) == v);
    auto q = wmso::exists("y", f);
    auto dual = wmso::neg(wmso::forall("y", wmso::neg(f)));
    CHECK(eval(q, a, cap + 1) == eval(dual, a, cap + 1));
  }
}

TEST_CASE("order-automorphism invariance") {
  Generator gen(5);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    Wmso f = random_formula(rng, 2, {"x", "y"}, {"X"});
    PLMap h = gen.plmap(6);
    Assignment a;
    a.points["x"] = gen.rational();
    a.points["y"] = gen.rational();
    a.set("X", gen.sorted_rationals(3));
    Assignment moved;
    moved.points["x"] = h(a.points["x"]);
    moved.points["y"] = h(a.points["y"]);
    std::vector<Rational> image;
    for (const auto& q : a.sets["X"]) image.push_back(h(q));
    moved.set("X", image);
    const int cap = std::max(1, qdepth(f));
    CHECK(eval(f, a, cap) == eval(f, moved, cap));
  }
}

TEST_CASE("agreement with brute force on random formulas") {
  std::mt19937_64 rng(13);
  const auto pool = oracles::default_pool();
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Wmso f = i % 2 ? random_formula(rng, 3, {"x"}, {}) : random_formula(rng, 2, {"x"}, {"X"});
    Assignment a = Assignment::parse("x=1/3,X={0}");
    const int cap = std::max(1, qdepth(f));
    INFO(to_string(f));
    CHECK(eval(f, a, cap) == oracles::brute_force_eval(f, a, pool));
    ++checked;
  }
  CHECK(checked == 200);
}
