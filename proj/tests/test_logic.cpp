#include <random>

#include "doctest.h"
#include "qwi/error.hpp"
#include "qwi/logic.hpp"

using namespace qwi;

namespace {

Wmso W(std::string_view s) { return parse_wmso(s); }
Group G(std::string_view s) { return parse_group(s); }

Wmso random_wmso(std::mt19937_64& rng, int depth, std::vector<std::string>& points, std::vector<std::string>& sets) {
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  if (depth == 0 || rng() % 5 == 0) {
    switch (rng() % 3) {
      case 0: return wmso::less(pick(points), pick(points));
      case 1: return wmso::eq(pick(points), pick(points));
      default: return sets.empty() ? wmso::less(pick(points), pick(points)) : wmso::mem(pick(points), pick(sets));
    }
  }
  switch (rng() % 8) {
    case 0: return wmso::neg(random_wmso(rng, depth - 1, points, sets));
    case 1: return wmso::conj(random_wmso(rng, depth - 1, points, sets), random_wmso(rng, depth - 1, points, sets));
    case 2: return wmso::disj(random_wmso(rng, depth - 1, points, sets), random_wmso(rng, depth - 1, points, sets));
    case 3: return wmso::implies(random_wmso(rng, depth - 1, points, sets), random_wmso(rng, depth - 1, points, sets));
    case 4: return wmso::iff(random_wmso(rng, depth - 1, points, sets), random_wmso(rng, depth - 1, points, sets));
    case 5:
    case 6: {
      std::string v = "x" + std::to_string(rng() % 4);
      points.push_back(v);
      Wmso body = random_wmso(rng, depth - 1, points, sets);
      points.pop_back();
      return rng() % 2 ? wmso::exists(v, body) : wmso::forall(v, body);
    }
    default: {
      std::string v = "X" + std::to_string(rng() % 3);
      sets.push_back(v);
      Wmso body = random_wmso(rng, depth - 1, points, sets);
      sets.pop_back();
      return rng() % 2 ? wmso::exists(v, body) : wmso::forall(v, body);
    }
  }
}

TermPtr random_term(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> vars{"x", "y", "z", "w"};
  if (depth == 0 || rng() % 3 == 0) return rng() % 6 == 0 ? term::one() : term::var(vars[rng() % vars.size()]);
  if (rng() % 3 == 0) return term::inverse(random_term(rng, depth - 1));
  return term::product(random_term(rng, depth - 1), random_term(rng, depth - 1));
}

Group random_group(std::mt19937_64& rng, int depth) {
  static const std::vector<std::pair<std::string, int>> atoms{{"disj", 2}, {"cont", 2}, {"comp", 1},
                                                              {"less", 3}, {"gauge", 2}, {"finrational", 1}};
  if (depth == 0 || rng() % 5 == 0) {
    if (rng() % 3 == 0) return group::eq(random_term(rng, 2), random_term(rng, 2));
    const auto& [name, arity] = atoms[rng() % atoms.size()];
    std::vector<TermPtr> args;
    for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, 2));
    return group::atom(name, args);
  }
  switch (rng() % 7) {
    case 0: return group::neg(random_group(rng, depth - 1));
    case 1: return group::conj(random_group(rng, depth - 1), random_group(rng, depth - 1));
    case 2: return group::disj(random_group(rng, depth - 1), random_group(rng, depth - 1));
    case 3: return group::implies(random_group(rng, depth - 1), random_group(rng, depth - 1));
    case 4: return group::iff(random_group(rng, depth - 1), random_group(rng, depth - 1));
    case 5: return group::exists(std::string(1, "xyzw"[rng() % 4]), random_group(rng, depth - 1));
    default: return group::forall(std::string(1, "xyzw"[rng() % 4]), random_group(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("wmso parsing examples") {
  CHECK(*W("Ax Ey (x < y)") == *wmso::forall("x", wmso::exists("y", wmso::less("x", "y"))));
  CHECK(*W("EX Ax (x in X)") == *wmso::exists("X", wmso::forall("x", wmso::mem("x", "X"))));
  CHECK_THROWS_AS(W("x < X"), ParseError);
  CHECK_THROWS_AS(W("x in y"), ParseError);
  CHECK_THROWS_AS(W("X < y"), ParseError);
  CHECK_THROWS_AS(W("Ax (x <"), ParseError);
  try {
    W("Ax\n  (x < X)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  // Quantifiers bind like negation.
  auto ext = W("AX AY ((Ax (x in X <-> x in Y)) -> (Ax (x in X) <-> Ax (x in Y)))");
  CHECK(to_string(ext) == "AX AY (Ax (x in X <-> x in Y) -> (Ax (x in X) <-> Ax (x in Y)))");
  CHECK(*W("A x E y (x < y)") == *W("Ax Ey (x < y)"));
  CHECK(*W("a < b -> b < c -> c < d") == *W("a < b -> (b < c -> c < d)"));
  CHECK(*W("a < b & b < c | c < d") == *W("(a < b & b < c) | c < d"));
  CHECK(*W("x < y # trailing comment") == *W("x < y"));
}

TEST_CASE("wmso printing") {
  CHECK(to_string(W("Ax Ey (x < y)")) == "Ax Ey (x < y)");
  CHECK(to_string(W("~(x < y)")) == "~(x < y)");
  CHECK(to_string(W("~~(x<y)")) == "~~(x < y)");
  CHECK(to_string(W("(a < b -> b < c) -> c < d")) == "(a < b -> b < c) -> c < d");
  CHECK(to_string(W("a < b & (b < c | c < d)")) == "a < b & (b < c | c < d)");
  CHECK(to_string(W("(a<b <-> b<c) <-> c<d")) == "a < b <-> b < c <-> c < d");
  CHECK(to_string(W("a<b <-> (b<c <-> c<d)")) == "a < b <-> (b < c <-> c < d)");
}

TEST_CASE("wmso round trip on 1000 random formulas") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> points{"a", "b"}, sets{"S"};
    Wmso f = random_wmso(rng, 6, points, sets);
    std::string text = to_string(f);
    Wmso g = W(text);
    CHECK(*g == *f);
    CHECK(to_string(g) == text);
  }
}

TEST_CASE("wmso qdepth, free variables, substitution") {
  CHECK(qdepth(W("Ax Ey (x < y)")) == 2);
  CHECK(qdepth(W("Ax (x < x) & Ex Ey EY (x in Y)")) == 3);
  CHECK(free_vars(W("x in X")) == std::set<std::string>{"X", "x"});
  CHECK(free_vars(W("Ax (x < y) & x = z")) == std::set<std::string>{"x", "y", "z"});
  // y -> x under a binder for x: the binder is renamed.
  auto s = substitute(W("Ax (x < y)"), {{"y", "x"}});
  CHECK(free_vars(s) == std::set<std::string>{"x"});
  CHECK(alpha_equivalent(s, W("Ax1 (x1 < x)")));
  CHECK_FALSE(alpha_equivalent(s, W("Ax (x < x)")));
  CHECK(alpha_equivalent(W("Ax Ey (x < y)"), W("Ay Ex (y < x)")));
  CHECK_FALSE(alpha_equivalent(W("Ax Ey (x < y)"), W("Ax Ey (y < x)")));
  CHECK_THROWS_AS(check_scope(W("Ax (x < y)")), ScopeError);
  try {
    check_scope(W("Ax (x < y)"));
  } catch (const ScopeError& e) {
    CHECK(e.variable() == "y");
  }
  CHECK_NOTHROW(check_scope(W("Ax (x < y)"), {"y"}));
}

TEST_CASE("group parsing examples") {
  auto r = G("Ez (disj(x,z) & y = x*z)");
  CHECK(r->kind == GroupKind::exists);
  CHECK(to_string(r) == "Ez (disj(x,z) & y = x*z)");
  CHECK(G("finrational(g)")->kind == GroupKind::atom);
  CHECK_THROWS_AS(G("comp(x,y)"), ParseError);
  CHECK_THROWS_AS(G("frob(x)"), ParseError);
  CHECK_THROWS_AS(G("Ax (x < y)"), ParseError);
  CHECK(to_string(G("(x*y)^-1 = y^-1*x^-1")) == "(x*y)^-1 = y^-1*x^-1");
  CHECK(to_string(G("x*(y*z) = (x*y)*z")) == "x*(y*z) = x*y*z");
  CHECK(to_string(G("~disj(x,y)")) == "~disj(x,y)");
  CHECK(to_string(G("Ey (x = y)")) == "Ey (x = y)");
  CHECK(to_string(G("Aw ~disj(x,w*x*w^-1)")) == "Aw ~disj(x,w*x*w^-1)");
  CHECK(to_string(G("less(p,f,g)")) == "less(p,f,g)");
}

TEST_CASE("group round trip on 1000 random formulas") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    Group f = random_group(rng, 6);
    std::string text = to_string(f);
    Group g = G(text);
    CHECK(*g == *f);
    CHECK(to_string(g) == text);
  }
}

TEST_CASE("group substitution avoids capture") {
  auto f = G("Ez (disj(x,z) & y = x*z)");
  auto s = substitute(f, {{"x", term::var("z")}});
  CHECK(free_vars(s) == std::set<std::string>{"y", "z"});
  CHECK(alpha_equivalent(s, G("Eu (disj(z,u) & y = z*u)")));
  CHECK(to_string(s) == "Ez1 (disj(z,z1) & y = z*z1)");
  // A bound variable is not substituted.
  CHECK(*substitute(f, {{"z", term::var("q")}}) == *f);
  CHECK(qdepth(G("Ax Ey (x = y) & Ez (z = z)")) == 2);
}

TEST_CASE("macro expansion") {
  CHECK(alpha_equivalent(expand(G("sameset(x,y)"), 1),
                         G("finrational(x) & finrational(y) & cont(x,y) & cont(y,x)")));
  CHECK(alpha_equivalent(expand(G("restr(x,y)"), 1), G("Ez (disj(x,z) & y = x*z)")));
  CHECK(*expand(G("gauge(x,y)"), 5) == *G("gauge(x,y)"));
  CHECK(*expand(G("comp(x)"), 3) == *G("comp(x)"));
  CHECK(*expand(G("restr(x,y)"), 0) == *G("restr(x,y)"));
  // Arguments that clash with schema binders force renaming.
  auto e = expand(G("restr(z,x)"), 1);
  CHECK(alpha_equivalent(e, G("Eu (disj(z,u) & x = z*u)")));
  CHECK(free_vars(e) == std::set<std::string>{"x", "z"});
  auto inf = expand(G("inf(g)"), 1);
  CHECK(alpha_equivalent(inf, G("Ey Ey1 Ey2 Ew (restr(y,g) & orbital(y1,y) & y = y1*y2 & y2 = w*y*w^-1)")));
  // Every defined name is expanded away after enough rounds.
  auto deep = expand(G("sameset(a,b)"), 6);
  for (const auto& name : MacroTable::standard().names()) {
    CHECK(to_string(deep).find(name + "(") == std::string::npos);
  }
  CHECK(free_vars(deep) == std::set<std::string>{"a", "b"});
}

TEST_CASE("expansion size bound") {
  std::size_t max_schema = 0;
  const auto& table = MacroTable::standard();
  for (const auto& n : table.names()) max_schema = std::max(max_schema, size(table.find(n)->body));
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    Group f = random_group(rng, 4);
    for (int d = 0; d <= 3; ++d) {
      std::size_t bound = size(f);
      for (int k = 0; k < d; ++k) bound *= max_schema;
      CHECK(size(expand(f, d)) <= bound);
      CHECK(free_vars(expand(f, d)) == free_vars(f));
    }
  }
}

TEST_CASE("macro table parsing") {
  auto t = MacroTable::parse("cont(a,b) := disj(a,b)\n# comment\n\n");
  CHECK(t.names() == std::vector<std::string>{"cont"});
  CHECK_THROWS_AS(MacroTable::parse("cont(a) := disj(a,a)"), ParseError);
  CHECK_THROWS_AS(MacroTable::parse("cont(a,b) disj(a,b)"), ParseError);
}
