// One PASS/FAIL line per acceptance criterion.  Optional argument: seed.
#include <cstdlib>
#include <iostream>
#include <string>

#include "qwi/corpus.hpp"
#include "qwi/suites.hpp"

using namespace qwi;

namespace {

struct Criterion {
  int number;
  const char* title;
  const char* suite;
  double time_limit;  // seconds; 0 = none
};

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  const Criterion criteria[] = {
      {1, "group calculus on 10^4 random maps", "group-laws", 60},
      {2, "conjugacy criterion on 10^3 pairs", "orbitals", 0},
      {3, "eight cofinal classes", "classes8", 0},
      {4, "inf formula vs infinitely many orbitals, core<=5 tails<=3", "lemma22", 0},
      {5, "constructive tail splitting on every omega-tail pattern", "lemma21", 0},
      {6, "rational and finite-set encodings", "predicates", 0},
      {7, "interpretation round trip on the corpus, both orientations", "roundtrip", 600},
      {8, "WMSO engine vs brute force, cap stability", "wmso", 0},
      {9, "literal macro discrepancy on 10^3 instances", "discrepancy", 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const SuiteReport r = run_suite(c.suite, seed);
    bool pass = r.ok();
    std::string extra;
    if (c.time_limit > 0 && r.seconds >= c.time_limit) {
      pass = false;
      extra = " (time limit " + std::to_string(static_cast<int>(c.time_limit)) + "s exceeded)";
    }
    if (c.number == 7 && builtin_corpus().size() < 20) {
      pass = false;
      extra += " (corpus below 20 sentences)";
    }
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " " << c.number << " " << c.title << ": " << r.cases << " cases, "
              << r.failures.size() << " failures, " << r.seconds << "s" << extra << "\n";
    if (!pass) std::cout << r.text();
  }
  return failed == 0 ? 0 : 1;
}
