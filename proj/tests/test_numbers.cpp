#include <algorithm>
#include <random>

#include "doctest.h"
#include "qwi/error.hpp"
#include "qwi/rational.hpp"
#include "support.hpp"

using namespace qwi;

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 6) == Rational(1, 3));
  CHECK(Rational(2, 6).str() == "1/3");
  CHECK(Rational(4, -2).str() == "-2");
  CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
  CHECK_FALSE(checked_div(Rational(1), Rational(0)).has_value());
  CHECK(*checked_div(Rational(3), Rational(6)) == Rational(1, 2));
}

TEST_CASE("rational literals") {
  CHECK(Rational::parse("-3/2") == Rational(-3, 2));
  CHECK(Rational::parse(" 7 ") == Rational(7));
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK(ExtRational::parse("inf").is_pos_inf());
  CHECK(ExtRational::parse("-inf").is_neg_inf());
  CHECK(ExtRational::parse("-inf").str() == "-inf");
  CHECK(ExtRational::parse("5/10") == ExtRational(Rational(1, 2)));
}

TEST_CASE("extended order") {
  CHECK(ExtRational::neg_inf() < ExtRational(Rational(-1000000)));
  CHECK(ExtRational(Rational(1000000)) < ExtRational::pos_inf());
  CHECK(ExtRational::neg_inf() < ExtRational::pos_inf());
  CHECK_THROWS_AS(ExtRational::pos_inf().value(), PreconditionError);
}

TEST_CASE("pick_fresh") {
  CHECK(pick_fresh(QInterval{0, 1}) == Rational(1, 2));
  CHECK(pick_fresh(QInterval{3, ExtRational::pos_inf()}) == Rational(4));
  CHECK(pick_fresh(QInterval{ExtRational::neg_inf(), 3}) == Rational(2));
  CHECK(pick_fresh(QInterval::full()) == Rational(0));
  CHECK_THROWS_AS(pick_fresh(QInterval{1, 1}), PreconditionError);
}

TEST_CASE("interval normalization") {
  CHECK(IntervalSet::normalize({{0, 2}, {1, 3}}).items() == std::vector<QInterval>{{0, 3}});
  CHECK(IntervalSet::normalize({}).empty());
  auto touching = IntervalSet::normalize({{0, 1}, {1, 2}});
  CHECK(touching.size() == 2);
  CHECK_FALSE(touching.contains(Rational(1)));
  CHECK(IntervalSet::normalize({{2, 1}, {5, 5}}).empty());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Rational a = testing_support::random_rational(rng, 50, 30);
    Rational b = testing_support::random_rational(rng, 50, 30);
    Rational c = testing_support::random_rational(rng, 50, 30);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("normalize is idempotent and permutation-insensitive") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    std::vector<QInterval> raw;
    int n = static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      Rational a = testing_support::random_rational(rng, 6, 2);
      Rational b = testing_support::random_rational(rng, 6, 2);
      ExtRational lo = rng() % 7 == 0 ? ExtRational::neg_inf() : ExtRational(std::min(a, b));
      ExtRational hi = rng() % 7 == 0 ? ExtRational::pos_inf() : ExtRational(std::max(a, b));
      raw.push_back({lo, hi});
    }
    IntervalSet s = IntervalSet::normalize(raw);
    CHECK(IntervalSet::normalize(s.items()) == s);
    std::shuffle(raw.begin(), raw.end(), rng);
    CHECK(IntervalSet::normalize(raw) == s);
    for (std::size_t k = 1; k < s.items().size(); ++k) CHECK(s.items()[k - 1].hi <= s.items()[k].lo);
    // Membership agrees with the raw union.
    for (int t = 0; t < 10; ++t) {
      Rational q = testing_support::random_rational(rng, 8, 4);
      bool in_raw = std::any_of(raw.begin(), raw.end(), [&](const QInterval& i) { return i.contains(q); });
      CHECK(s.contains(q) == in_raw);
    }
  }
}

TEST_CASE("pick_fresh lies strictly inside generated gaps") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    Rational a = testing_support::random_rational(rng, 20, 9);
    Rational b = a + Rational(static_cast<long>(rng() % 50) + 1, static_cast<long>(rng() % 9) + 1);
    QInterval gap{rng() % 4 == 0 ? ExtRational::neg_inf() : ExtRational(a),
                  rng() % 4 == 0 ? ExtRational::pos_inf() : ExtRational(b)};
    CHECK(gap.contains(pick_fresh(gap)));
  }
}
