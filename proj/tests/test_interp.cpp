#include <algorithm>

#include "doctest.h"
#include "qwi/corpus.hpp"
#include "qwi/error.hpp"
#include "qwi/generate.hpp"
#include "qwi/interp.hpp"
#include "qwi/predicates.hpp"

using namespace qwi;

namespace {

const auto variants = {EncoderVariant::primary, EncoderVariant::alternate};
const auto sides = {Side::left, Side::right};

bool pull(const char* text, const PullbackOptions& opts = {}) { return pullback_eval(translate(parse_wmso(text)), opts); }

}  // namespace

TEST_CASE("rational codes") {
  CHECK(encode_rational(0, Side::right) == PLMap::parse("pl cuts=[0] pieces=[(1,0),(2,0)]"));
  CHECK(encode_rational(0, Side::left) == PLMap::parse("pl cuts=[0] pieces=[(2,0),(1,0)]"));
  CHECK(support(encode_rational(0, Side::right)).str() == "{(0,inf)}");
  CHECK(support(encode_rational(0, Side::left)).str() == "{(-inf,0)}");
  Generator gen(3);
  for (int i = 0; i < 100; ++i) {
    const Rational q = gen.rational(40, 9);
    for (auto v : variants) {
      for (auto s : sides) {
        const PLMap f = encode_rational(q, s, v);
        CHECK(rational_sem(f));
        CHECK(decode_rational(f) == q);
      }
    }
  }
  CHECK_THROWS_AS(decode_rational(PLMap::translation(1)), PreconditionError);
}

TEST_CASE("finite-set codes") {
  CHECK(encode_finite_set({}) == PLMap::translation(1));
  const PLMap g = encode_finite_set({Rational(1), Rational(0)});
  CHECK(g.pieces().size() == 4);
  CHECK(fixed_structure(g).points == std::vector<Rational>{Rational(0), Rational(1)});
  Generator gen(4);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.sorted_rationals(static_cast<std::size_t>(gen.integer(0, 6)));
    for (auto v : variants) {
      const PLMap code = encode_finite_set(s, v);
      CHECK(finrational_sem(code));
      CHECK(decode_finite_set(code) == s);
      for (const auto& c : support_components(code)) CHECK(c.parity == Parity::plus);
    }
  }
  CHECK_THROWS_AS(decode_finite_set(encode_rational(0, Side::right)), PreconditionError);
  auto e = Encoding::of_set({Rational(2), Rational(-1)}, EncoderVariant::alternate);
  CHECK(e.kind == Encoding::Kind::finset);
  CHECK(e.set == std::vector<Rational>{Rational(-1), Rational(2)});
}

TEST_CASE("membership and identification fidelity") {
  const std::vector<Rational> base{Rational(-2), Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  const std::vector<Rational> pool{Rational(-5), Rational(-2), Rational(-3, 2), Rational(-1), Rational(0), Rational(1, 4),
                                   Rational(1, 2), Rational(1), Rational(2), Rational(9, 4), Rational(3), Rational(10)};
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Rational> s;
    for (unsigned i = 0; i < 6; ++i) {
      if ((mask >> i) & 1u) s.push_back(base[i]);
    }
    for (auto sv : variants) {
      const PLMap g = encode_finite_set(s, sv);
      for (const auto& q : pool) {
        const bool in = std::find(s.begin(), s.end(), q) != s.end();
        for (auto pv : variants) {
          for (auto side : sides) CHECK(member_sem(encode_rational(q, side, pv), g) == in);
        }
      }
    }
  }
  for (const auto& q : pool) {
    for (const auto& q2 : pool) {
      CHECK(codesame_sem(encode_rational(q, Side::left), encode_rational(q2, Side::right, EncoderVariant::alternate)) ==
            (q == q2));
    }
  }
}

TEST_CASE("translate shapes") {
  CHECK(*translate_open(parse_wmso("x in X")) == *parse_group("Em (oppsupport(f_x,m) & cont(g_X,f_x*m))"));
  const Group density = translate(parse_wmso("Ax Ey (x<y)"));
  CHECK(alpha_equivalent(density, parse_group("Ep (cof(p) & Af (rational(f) -> Ef2 (rational(f2) & less(p,f,f2))))")));
  const Wmso phi = parse_wmso("Ex (x<y | x=y)");
  CHECK(*translate_open(wmso::neg(phi)) == *group::neg(translate_open(phi)));
  CHECK(*translate_open(parse_wmso("AX Ex ~(x in X)")) ==
        *parse_group("Ag_X (finrational(g_X) -> Ef_x (rational(f_x) & ~Em (oppsupport(f_x,m) & cont(g_X,f_x*m))))"));
  CHECK(source_depth(translate(parse_wmso("AX Ey Ax (x in X -> x < y)"))) == 3);
  CHECK(coded_name("x") == "f_x");
  CHECK(coded_name("X") == "g_X");
}

TEST_CASE("less oracle and schema") {
  const PLMap zero = encode_rational(0, Side::right), one = encode_rational(1, Side::left);
  const PLMap right = encode_rational(5, Side::right), left = encode_rational(5, Side::left);
  CHECK(less_p(zero, one, right));
  CHECK_FALSE(less_p(one, zero, right));
  CHECK_FALSE(less_p(zero, one, left));
  CHECK(less_p(one, zero, left));
  CHECK_FALSE(less_p(zero, zero, right));
  CHECK_THROWS_AS(less_p(zero, PLMap::translation(1), right), PreconditionError);
  CHECK_THROWS_AS(less_p(zero, one, PLMap::translation(1)), PreconditionError);
  CHECK(MacroTable::standard().find("less")->params == std::vector<std::string>{"p", "x", "y"});
  CHECK(*less_formula() == *MacroTable::standard().find("less")->body);

  // The literal schema over a pool of codes agrees with the oracle.
  const std::vector<Rational> qs{Rational(-1), Rational(0), Rational(3, 2)};
  std::vector<PLMap> pool;
  for (const auto& q : qs) {
    for (auto s : sides) pool.push_back(encode_rational(q, s));
  }
  for (const auto& p : {right, left}) {
    for (const auto& a : qs) {
      for (const auto& b : qs) {
        const PLMap f = encode_rational(a, Side::left), g = encode_rational(b, Side::right, EncoderVariant::alternate);
        CHECK(eval_literal("less", {p, f, g}, pool).value == less_p(f, g, p));
      }
    }
  }
}

TEST_CASE("pullback examples") {
  CHECK(pull("Ax Ay (x<y -> Ez (x<z & z<y))"));
  CHECK_FALSE(pull("EX Ax (x in X)"));
  CHECK(pull("Ex EX (x in X)"));
  CHECK(pull("Ax Ey (y<x)"));
  CHECK(pull("EX (Ax (x in X -> x < x))"));
  CHECK_THROWS_AS(pullback_eval(parse_group("Ep (cof(p) & Ef (bump(f)))")), PreconditionError);
  CHECK_THROWS_AS(pullback_eval(parse_group("Ef (rational(f) & codesame(f,f))")), PreconditionError);
  CHECK_THROWS_AS(pullback_eval(parse_group("Ep (cof(p) & Ef (rational(f) & f = f))")), PreconditionError);
  PullbackOptions low;
  low.cap = 1;
  CHECK_THROWS_AS(pull("Ax Ey (x<y)", low), PreconditionError);
}

TEST_CASE("round trip on the corpus under every option") {
  REQUIRE(builtin_corpus().size() >= 20);
  for (Side orientation : sides) {
    for (Side point_side : sides) {
      for (auto v : variants) {
        PullbackOptions opts;
        opts.orientation = orientation;
        opts.point_side = point_side;
        opts.variant = v;
        for (const auto& e : builtin_corpus()) {
          INFO(e.text);
          const auto r = roundtrip(e.sentence, opts);
          CHECK(r.decided == e.expected);
          CHECK(r.pulled == e.expected);
        }
      }
    }
  }
  CHECK(roundtrip_check(parse_wmso("Ax Ey (y<x)")));
  CHECK_THROWS_AS(roundtrip_check(parse_wmso("Ey (x<y)")), ScopeError);
}
