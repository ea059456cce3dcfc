#include <set>

#include "doctest.h"
#include "qwi/corpus.hpp"
#include "qwi/error.hpp"
#include "qwi/generate.hpp"
#include "qwi/suites.hpp"

using namespace qwi;

TEST_CASE("corpus parsing") {
  auto c = parse_corpus("# header\n\ntrue: Ax ~(x<x)  # irreflexive\nfalse: Ax Ay (x=y)\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0].expected);
  CHECK(c[0].text == "Ax ~(x<x)");
  CHECK(c[0].note == "irreflexive");
  CHECK(c[0].line == 3);
  CHECK_FALSE(c[1].expected);
  CHECK(c[1].note.empty());
  CHECK_THROWS_AS(parse_corpus("maybe: Ax (x=x)\n"), ParseError);
  CHECK_THROWS_AS(parse_corpus("true: Ax (x=\n"), ParseError);
}

TEST_CASE("builtin corpus") {
  const auto& c = builtin_corpus();
  CHECK(c.size() >= 20);
  std::size_t trues = 0;
  for (const auto& e : c) {
    CHECK(free_vars(e.sentence).empty());
    CHECK_FALSE(e.note.empty());
    trues += e.expected;
  }
  CHECK(trues > 0);
  CHECK(trues < c.size());
}

TEST_CASE("generator") {
  Generator a(99), b(99);
  for (int i = 0; i < 200; ++i) CHECK(a.plmap(5) == b.plmap(5));
  Generator gen(100);
  for (int i = 0; i < 10000; ++i) {
    const PLMap f = gen.plmap(i % 9);
    CHECK(f.cuts().size() <= static_cast<std::size_t>(i % 9));
  }
  for (int i = 0; i < 100; ++i) {
    const PLMap f = gen_plmap(static_cast<std::uint64_t>(i), 0);
    CHECK(f.cuts().empty());
    CHECK(f.pieces()[0].slope == Rational(1));
  }
}

TEST_CASE("suite names and reports") {
  const auto& names = suite_names();
  CHECK(names.size() == 9);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  CHECK_THROWS_AS(run_suite("nope", 1), PreconditionError);
  CHECK_THROWS_AS(run_suite("all", 1), PreconditionError);

  auto r1 = run_suite("group-laws", 5, 40);
  auto r2 = run_suite("group-laws", 5, 40);
  CHECK(r1.cases == 40);
  CHECK(r1.failures == r2.failures);
  CHECK(r1.ok());
  CHECK(r1.summary_line() == "group-laws\t40\t0");
  CHECK(r1.text().find("suite group-laws") == 0);

  auto d1 = run_suite("discrepancy", 3, 30);
  auto d2 = run_suite("discrepancy", 3, 30);
  CHECK(d1.findings == d2.findings);
  CHECK(d1.ok());

  auto all = run_suites("all", 2, 20);
  REQUIRE(all.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK(all[i].suite == names[i]);
    CHECK(all[i].ok());
  }
}
