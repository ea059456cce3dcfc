#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwi/logic.hpp"
#include "qwi/plmap.hpp"

namespace qwi {

// Intended meanings of the group-language predicates on executable elements.

bool comp_sem(const PLMap& f);
bool apart_sem(const PLMap& f, const PLMap& g);
bool disj_sem(const PLMap& f, const PLMap& g);
bool bump_sem(const PLMap& f);
bool orbital_sem(const PLMap& x, const PLMap& y);
bool restr_sem(const PLMap& x, const PLMap& y);
// z with disj(x, z) and x*z = y, whenever restr_sem(x, y).
std::optional<PLMap> restr_witness(const PLMap& x, const PLMap& y);
bool cont_sem(const PLMap& x, const PLMap& y);
bool coterm_sem(const PLMap& f);
bool cof_sem(const PLMap& f);
bool codesame_sem(const PLMap& f, const PLMap& g);
bool oppsupport_sem(const PLMap& f, const PLMap& g);
// Every finite endpoint of an executable element is rational.
bool rational_sem(const PLMap& f);
// Executable elements have finitely many orbitals.
bool inf_sem(const PLMap& f);
bool finrational_sem(const PLMap& f);
bool sameset_sem(const PLMap& f, const PLMap& g);
// Is the endpoint coded by f a fixed point of g?  Throws PreconditionError
// unless rational_sem(f) and finrational_sem(g).
bool member_sem(const PLMap& f, const PLMap& g);

struct CofinalEnd {
  Rational endpoint;
  Side side;
};
std::optional<CofinalEnd> cofinal_end(const PLMap& f);

// A cofinal bump with the same endpoint on the opposite side, so that
// oppsupport_sem(f, mirror_bump(f)).  Precondition: cof_sem(f).
PLMap mirror_bump(const PLMap& f);

// Dispatch by predicate name.  `gauge` and `less` have no oracle here and
// throw PreconditionError, as do unknown names and arity mismatches.
bool atom_sem(std::string_view name, const std::vector<PLMap>& args);

// ------------------------------------------------- literal macro checks ----

// Literal definitions are checked by expanding the macro once and letting
// every quantifier range over a finite pool: the instance's elements and
// their inverses, bumps on the interior of every fixed region of the
// instance, translations that push each bounded support off itself, and a
// few seeded random elements.  Inner atoms use the intended oracles.
std::vector<PLMap> witness_pool(const std::vector<PLMap>& instance, std::uint64_t seed);

struct LiteralResult {
  bool value = false;
  // The decisive element for the outermost quantifier, when one exists:
  // a refuting instance of a universal or a witness of an existential.
  std::optional<PLMap> decisive;
  std::string decisive_variable;
};

LiteralResult eval_literal(std::string_view macro, const std::vector<PLMap>& args, const std::vector<PLMap>& pool);

struct DiscrepancyCase {
  std::string macro;
  std::vector<PLMap> args;
  bool literal = false;
  bool intended = false;
  std::string certificate;
};

struct DiscrepancyReport {
  std::string macro;
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t literal_true = 0;
  std::size_t intended_true = 0;
  std::vector<DiscrepancyCase> counterexamples;
};

// One instance: both evaluations plus a certificate for the literal value.
DiscrepancyCase check_macro(std::string_view macro, const std::vector<PLMap>& args, std::uint64_t seed);

// macro in {cont, coterm, cof, oppsupport}.  Deterministic in seed.
DiscrepancyReport discrepancy_search(std::string_view macro, std::size_t trials, std::uint64_t seed);

}  // namespace qwi
