#pragma once

#include <vector>

#include "qwi/wmso.hpp"

namespace qwi::oracles {

// Independent reference evaluator for small sentences.  Point quantifiers
// range over pool, the assignment's values and one point per gap between
// them; set quantifiers range over every subset of pool plus the values
// present when the quantifier is reached.  Exponential; meant for pools of
// at most six rationals and quantifier depth three or so.
bool brute_force_eval(const Wmso& f, const Assignment& a, const std::vector<Rational>& pool);

// The six-point pool used by the agreement checks.
std::vector<Rational> default_pool();

}  // namespace qwi::oracles
