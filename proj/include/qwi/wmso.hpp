#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qwi/logic.hpp"
#include "qwi/rational.hpp"

namespace qwi {

// Values of point variables and (finite, sorted) set variables.
struct Assignment {
  std::map<std::string, Rational> points;
  std::map<std::string, std::vector<Rational>> sets;

  // `x=1/2,y=-3,X={0,1/2},Y={}`
  static Assignment parse(std::string_view text);
  std::string str() const;
  void set(const std::string& name, std::vector<Rational> values);
};

// All rationals an assignment mentions, and the gaps between them.
struct ConfigOutline {
  std::vector<Rational> landmarks;
  std::vector<QInterval> gaps;

  static ConfigOutline of(const Assignment& a);
  static ConfigOutline of(std::vector<Rational> values);
};

// `count` distinct points of `gap` by iterated pick_fresh toward the upper end.
std::vector<Rational> fresh_points(const QInterval& gap, int count);

// Point candidates: every landmark and one fresh point per gap.
std::vector<Rational> point_candidates(const ConfigOutline& outline);

// Set candidates: any subset of the landmarks together with 0..cap fresh
// points in each gap.  Calls `visit` on each (sorted) candidate until it
// returns true; returns whether some call did.
bool any_set_candidate(const ConfigOutline& outline, int cap,
                       const std::function<bool(const std::vector<Rational>&)>& visit);
std::vector<std::vector<Rational>> set_candidates(const ConfigOutline& outline, int cap);

// Truth of f in (Q,<) under a, with set quantifiers over finite sets.  A set
// quantifier under k enclosing quantifiers tries up to cap-k-1 fresh points
// per gap.
// Throws ScopeError for a free variable a does not assign and
// PreconditionError when cap < qdepth(f).
bool eval(const Wmso& f, const Assignment& a, int cap);

// eval(f, {}, qdepth(f)); f must be closed.
bool decide(const Wmso& f);

std::vector<bool> stability_probe(const Wmso& f, const std::vector<int>& caps);

}  // namespace qwi
