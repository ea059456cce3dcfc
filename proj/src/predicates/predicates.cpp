#include "qwi/predicates.hpp"

#include <algorithm>

#include "qwi/error.hpp"

namespace qwi {

bool comp_sem(const PLMap& f) {
  auto comps = support_components(f);
  return std::all_of(comps.begin(), comps.end(),
                     [&](const SupportComponent& c) { return c.parity == comps.front().parity; });
}

bool apart_sem(const PLMap& f, const PLMap& g) {
  const IntervalSet sf = support(f);
  const IntervalSet sg = support(g);
  if (sf.empty() || sg.empty()) return true;
  return sf.sup() <= sg.inf() || sg.sup() <= sf.inf();
}

bool disj_sem(const PLMap& f, const PLMap& g) { return !support(f).intersects(support(g)); }

bool bump_sem(const PLMap& f) { return support_components(f).size() == 1; }

bool orbital_sem(const PLMap& x, const PLMap& y) {
  auto cx = support_components(x);
  if (cx.size() != 1) return false;
  auto cy = support_components(y);
  bool is_component = std::any_of(cy.begin(), cy.end(), [&](const SupportComponent& c) { return c == cx[0]; });
  return is_component && x == restriction(y, IntervalSet::normalize({cx[0].interval}));
}

bool restr_sem(const PLMap& x, const PLMap& y) {
  auto cy = support_components(y);
  for (const auto& c : support_components(x)) {
    if (std::find(cy.begin(), cy.end(), c) == cy.end()) return false;
  }
  return x == restriction(y, support(x));
}

std::optional<PLMap> restr_witness(const PLMap& x, const PLMap& y) {
  if (!restr_sem(x, y)) return std::nullopt;
  return compose(inverse(x), y);
}

bool cont_sem(const PLMap& x, const PLMap& y) { return support(x).subset_of(support(y)); }

bool coterm_sem(const PLMap& f) {
  auto c = support_components(f);
  return c.size() == 1 && c[0].interval == QInterval::full();
}

std::optional<CofinalEnd> cofinal_end(const PLMap& f) {
  auto c = support_components(f);
  if (c.size() != 1) return std::nullopt;
  const QInterval& s = c[0].interval;
  if (s.lo.is_finite() == s.hi.is_finite()) return std::nullopt;
  if (s.lo.is_finite()) return CofinalEnd{s.lo.value(), Side::right};
  return CofinalEnd{s.hi.value(), Side::left};
}

bool cof_sem(const PLMap& f) { return cofinal_end(f).has_value(); }

bool codesame_sem(const PLMap& f, const PLMap& g) {
  auto a = cofinal_end(f);
  auto b = cofinal_end(g);
  return a && b && a->endpoint == b->endpoint;
}

bool oppsupport_sem(const PLMap& f, const PLMap& g) {
  auto a = cofinal_end(f);
  auto b = cofinal_end(g);
  return a && b && a->endpoint == b->endpoint && a->side != b->side;
}

bool rational_sem(const PLMap& f) { return cof_sem(f); }

bool inf_sem(const PLMap&) { return false; }

bool finrational_sem(const PLMap& f) { return comp_sem(f) && fixed_structure(f).intervals.empty(); }

bool sameset_sem(const PLMap& f, const PLMap& g) {
  return finrational_sem(f) && finrational_sem(g) && fixed_structure(f).points == fixed_structure(g).points;
}

PLMap mirror_bump(const PLMap& f) {
  auto e = cofinal_end(f);
  if (!e) throw PreconditionError("mirror_bump needs a cofinal element");
  QInterval other = e->side == Side::right ? QInterval{ExtRational::neg_inf(), e->endpoint}
                                           : QInterval{e->endpoint, ExtRational::pos_inf()};
  return bump(other, support_components(f)[0].parity);
}

bool member_sem(const PLMap& f, const PLMap& g) {
  if (!rational_sem(f)) throw PreconditionError("member_sem: first argument must code a rational");
  if (!finrational_sem(g)) throw PreconditionError("member_sem: second argument must code a finite set");
  return cont_sem(g, compose(f, mirror_bump(f)));
}

bool atom_sem(std::string_view name, const std::vector<PLMap>& a) {
  auto arity = atom_arity(name);
  if (!arity) throw PreconditionError("unknown predicate " + std::string(name));
  if (static_cast<std::size_t>(*arity) != a.size()) {
    throw PreconditionError(std::string(name) + " takes " + std::to_string(*arity) + " arguments");
  }
  if (name == "comp") return comp_sem(a[0]);
  if (name == "bump") return bump_sem(a[0]);
  if (name == "coterm") return coterm_sem(a[0]);
  if (name == "cof") return cof_sem(a[0]);
  if (name == "inf") return inf_sem(a[0]);
  if (name == "rational") return rational_sem(a[0]);
  if (name == "finrational") return finrational_sem(a[0]);
  if (name == "apart") return apart_sem(a[0], a[1]);
  if (name == "orbital") return orbital_sem(a[0], a[1]);
  if (name == "disj") return disj_sem(a[0], a[1]);
  if (name == "restr") return restr_sem(a[0], a[1]);
  if (name == "cont") return cont_sem(a[0], a[1]);
  if (name == "codesame") return codesame_sem(a[0], a[1]);
  if (name == "oppsupport") return oppsupport_sem(a[0], a[1]);
  if (name == "sameset") return sameset_sem(a[0], a[1]);
  throw PreconditionError("no executable oracle for " + std::string(name));
}

}  // namespace qwi
