#include "qwi/interp.hpp"

#include <algorithm>
#include <map>

#include "qwi/error.hpp"
#include "qwi/predicates.hpp"

namespace qwi {

namespace {

Rational ray_slope(EncoderVariant v) { return v == EncoderVariant::primary ? Rational(2) : Rational(3); }

TermPtr v(const std::string& name) { return term::var(name); }

bool is_var(const TermPtr& t, const std::string& name) { return t->kind == TermKind::var && t->name == name; }

bool is_guard(const Group& f, std::string_view predicate, const std::string& variable) {
  return f->kind == GroupKind::atom && f->name == predicate && f->args.size() == 1 && is_var(f->args[0], variable);
}

// `Ev (guard(v) & body)` or `Av (guard(v) -> body)`; returns the guard name.
std::optional<std::string> coded_guard(const Group& f) {
  if (!f->is_quantifier()) return std::nullopt;
  const Group& inner = f->left;
  const Connective want = f->kind == GroupKind::exists ? Connective::and_ : Connective::implies;
  if (inner->kind != GroupKind::connective || inner->op != want) return std::nullopt;
  for (const char* g : {"rational", "finrational"}) {
    if (is_guard(inner->left, g, f->name)) return std::string(g);
  }
  return std::nullopt;
}

struct Coded {
  PLMap element;
  bool is_set = false;
  Rational point;
  std::vector<Rational> set;
};
using CodedEnv = std::map<std::string, Coded>;

class Pullback {
 public:
  Pullback(const PullbackOptions& options, int cap) : options_(options), cap_(cap) {}

  bool sentence(const Group& psi) {
    if (psi->kind != GroupKind::exists || psi->name != orientation_variable || psi->left->kind != GroupKind::connective ||
        psi->left->op != Connective::and_ || !is_guard(psi->left->left, "cof", orientation_variable)) {
      throw PreconditionError("compiled sentence must start with Ep (cof(p) & ...)");
    }
    Coded p{encode_rational(Rational(0), options_.orientation, options_.variant), false, Rational(0), {}};
    if (!cof_sem(p.element)) throw InvariantViolation("orientation parameter is not cofinal");
    CodedEnv env{{orientation_variable, p}};
    return eval(psi->left->right, env, 0);
  }

 private:
  bool eval(const Group& f, const CodedEnv& env, int level) {
    switch (f->kind) {
      case GroupKind::atom: return atom(f, env);
      case GroupKind::term_eq: throw PreconditionError("equation outside the translated fragment");
      case GroupKind::exists:
      case GroupKind::forall: return quantifier(f, env, level);
      case GroupKind::connective: break;
    }
    switch (f->op) {
      case Connective::not_: return !eval(f->left, env, level);
      case Connective::and_: return eval(f->left, env, level) && eval(f->right, env, level);
      case Connective::or_: return eval(f->left, env, level) || eval(f->right, env, level);
      case Connective::implies: return !eval(f->left, env, level) || eval(f->right, env, level);
      case Connective::iff: return eval(f->left, env, level) == eval(f->right, env, level);
    }
    return false;
  }

  const Coded& lookup(const CodedEnv& env, const std::string& name) const {
    auto it = env.find(name);
    if (it == env.end()) throw ScopeError("unbound variable", name);
    return it->second;
  }

  PLMap value(const TermPtr& t, const CodedEnv& env) const {
    switch (t->kind) {
      case TermKind::var: return lookup(env, t->name).element;
      case TermKind::product: return compose(value(t->left, env), value(t->right, env));
      default: throw PreconditionError("term outside the translated fragment: " + to_string(t));
    }
  }

  bool atom(const Group& f, const CodedEnv& env) const {
    if (f->name == "codesame") return codesame_sem(value(f->args[0], env), value(f->args[1], env));
    if (f->name == "less") {
      return less_p(value(f->args[1], env), value(f->args[2], env), value(f->args[0], env));
    }
    throw PreconditionError("atom outside the translated fragment: " + f->name);
  }

  // Ev (oppsupport(a, v) & cont(b, a*v))
  bool membership(const Group& f, const CodedEnv& env) const {
    const Group& body = f->left;
    const bool shape = f->kind == GroupKind::exists && body->kind == GroupKind::connective &&
                       body->op == Connective::and_ && body->left->kind == GroupKind::atom &&
                       body->left->name == "oppsupport" && body->right->kind == GroupKind::atom &&
                       body->right->name == "cont" && is_var(body->left->args[1], f->name) &&
                       body->left->args[0]->kind == TermKind::var;
    if (!shape) throw PreconditionError("quantifier outside the translated fragment: " + to_string(f));
    const Coded& point = lookup(env, body->left->args[0]->name);
    if (point.is_set) throw PreconditionError("membership needs a point code");
    // Opposite-side codes of the same endpoint, in both encoder styles.
    const Side side = cofinal_end(point.element)->side;
    std::vector<PLMap> witnesses{mirror_bump(point.element),
                                 encode_rational(point.point, opposite(side), EncoderVariant::primary),
                                 encode_rational(point.point, opposite(side), EncoderVariant::alternate)};
    CodedEnv local = env;
    for (auto& w : witnesses) {
      local[f->name] = Coded{w, false, point.point, {}};
      if (oppsupport_sem(value(body->left->args[0], local), w) &&
          cont_sem(value(body->right->args[0], local), value(body->right->args[1], local))) {
        return true;
      }
    }
    return false;
  }

  CodedEnv relevant(const Group& f, const CodedEnv& env) {
    auto it = free_.find(f.get());
    if (it == free_.end()) it = free_.emplace(f.get(), free_vars(f)).first;
    CodedEnv out;
    for (const auto& name : it->second) out.emplace(name, lookup(env, name));
    return out;
  }

  static ConfigOutline outline(const CodedEnv& env) {
    std::vector<Rational> values;
    for (const auto& [name, c] : env) {
      if (name == orientation_variable) continue;
      if (c.is_set) {
        values.insert(values.end(), c.set.begin(), c.set.end());
      } else {
        values.push_back(c.point);
      }
    }
    return ConfigOutline::of(std::move(values));
  }

  bool quantifier(const Group& f, const CodedEnv& outer, int level) {
    auto guard = coded_guard(f);
    if (!guard) return membership(f, outer);
    const bool universal = f->kind == GroupKind::forall;
    const Group& body = f->left->right;
    CodedEnv env = relevant(f, outer);
    const ConfigOutline shape = outline(env);
    if (*guard == "rational") {
      for (const auto& q : point_candidates(shape)) {
        env[f->name] = Coded{encode_rational(q, options_.point_side, options_.variant), false, q, {}};
        if (eval(body, env, level + 1) != universal) return !universal;
      }
      return universal;
    }
    const int fresh = std::max(0, cap_ - level - 1);
    const bool decided = any_set_candidate(shape, fresh, [&](const std::vector<Rational>& s) {
      env[f->name] = Coded{encode_finite_set(s, options_.variant), true, Rational(0), s};
      return eval(body, env, level + 1) != universal;
    });
    return decided ? !universal : universal;
  }

  PullbackOptions options_;
  int cap_;
  std::map<const GroupFormula*, std::set<std::string>> free_;
};

}  // namespace

PLMap encode_rational(const Rational& q, Side side, EncoderVariant variant) {
  const Rational m = ray_slope(variant);
  if (side == Side::right) return PLMap::through_nodes(Rational(1), {{q, q}}, m);
  return PLMap::through_nodes(m, {{q, q}}, Rational(1));
}

Rational decode_rational(const PLMap& f) {
  auto e = cofinal_end(f);
  if (!e) throw PreconditionError("not a rational code: " + f.str());
  return e->endpoint;
}

PLMap encode_finite_set(std::vector<Rational> s, EncoderVariant variant) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const bool primary = variant == EncoderVariant::primary;
  if (s.empty()) return PLMap::translation(primary ? Rational(1) : Rational(2));
  std::vector<std::pair<Rational, Rational>> nodes;
  for (std::size_t i = 0; i < s.size(); ++i) {
    nodes.emplace_back(s[i], s[i]);
    if (i + 1 == s.size()) break;
    const Rational a = s[i];
    const Rational d = s[i + 1] - a;
    if (primary) {
      nodes.emplace_back(a + d / Rational(3), a + d * Rational(2, 3));
    } else {
      nodes.emplace_back(a + d / Rational(4), a + d / Rational(2));
      nodes.emplace_back(a + d / Rational(2), a + d * Rational(3, 4));
    }
  }
  const Rational m = ray_slope(variant);
  return PLMap::through_nodes(Rational(1) / m, nodes, m);
}

std::vector<Rational> decode_finite_set(const PLMap& g) {
  if (!finrational_sem(g)) throw PreconditionError("not a finite-set code: " + g.str());
  return fixed_structure(g).points;
}

Encoding Encoding::of_point(const Rational& q, Side side, EncoderVariant variant) {
  Encoding e;
  e.kind = Kind::point;
  e.point = q;
  e.side = side;
  e.element = encode_rational(q, side, variant);
  return e;
}

Encoding Encoding::of_set(std::vector<Rational> s, EncoderVariant variant) {
  Encoding e;
  e.kind = Kind::finset;
  e.element = encode_finite_set(s, variant);
  e.set = fixed_structure(e.element).points;
  return e;
}

std::string coded_name(const std::string& wmso_variable) {
  return (is_set_variable(wmso_variable) ? "g_" : "f_") + wmso_variable;
}

Group translate_open(const Wmso& f) {
  switch (f->kind) {
    case WmsoKind::less:
      return group::atom("less", {v(orientation_variable), v(coded_name(f->a)), v(coded_name(f->b))});
    case WmsoKind::eq: return group::atom("codesame", {v(coded_name(f->a)), v(coded_name(f->b))});
    case WmsoKind::mem: {
      const std::string point = coded_name(f->a);
      return group::exists("m", group::conj(group::atom("oppsupport", {v(point), v("m")}),
                                            group::atom("cont", {v(coded_name(f->b)), term::product(v(point), v("m"))})));
    }
    case WmsoKind::exists_pt:
    case WmsoKind::forall_pt:
    case WmsoKind::exists_set:
    case WmsoKind::forall_set: {
      const std::string name = coded_name(f->a);
      const bool set = f->kind == WmsoKind::exists_set || f->kind == WmsoKind::forall_set;
      Group guard = group::atom(set ? "finrational" : "rational", {v(name)});
      Group body = translate_open(f->left);
      if (f->kind == WmsoKind::exists_pt || f->kind == WmsoKind::exists_set) {
        return group::exists(name, group::conj(guard, body));
      }
      return group::forall(name, group::implies(guard, body));
    }
    case WmsoKind::connective: break;
  }
  switch (f->op) {
    case Connective::not_: return group::neg(translate_open(f->left));
    case Connective::and_: return group::conj(translate_open(f->left), translate_open(f->right));
    case Connective::or_: return group::disj(translate_open(f->left), translate_open(f->right));
    case Connective::implies: return group::implies(translate_open(f->left), translate_open(f->right));
    case Connective::iff: return group::iff(translate_open(f->left), translate_open(f->right));
  }
  throw InvariantViolation("unknown connective");
}

Group translate(const Wmso& f) {
  return group::exists(orientation_variable,
                       group::conj(group::atom("cof", {v(orientation_variable)}), translate_open(f)));
}

bool less_p(const PLMap& f, const PLMap& g, const PLMap& p) {
  auto a = cofinal_end(f);
  auto b = cofinal_end(g);
  auto o = cofinal_end(p);
  if (!a || !b) throw PreconditionError("less_p: arguments must code rationals");
  if (!o) throw PreconditionError("less_p: orientation parameter must be cofinal");
  return o->side == Side::right ? a->endpoint < b->endpoint : b->endpoint < a->endpoint;
}

Group less_formula() { return MacroTable::standard().find("less")->body; }

int source_depth(const Group& psi) {
  switch (psi->kind) {
    case GroupKind::atom:
    case GroupKind::term_eq: return 0;
    case GroupKind::exists:
    case GroupKind::forall: {
      const int inner = source_depth(psi->left);
      return coded_guard(psi) ? inner + 1 : inner;
    }
    case GroupKind::connective: break;
  }
  const int l = source_depth(psi->left);
  return psi->right ? std::max(l, source_depth(psi->right)) : l;
}

bool pullback_eval(const Group& psi, const PullbackOptions& options) {
  const int depth = source_depth(psi);
  const int cap = options.cap.value_or(depth);
  if (cap < depth) throw PreconditionError("cap is below the source quantifier depth");
  return Pullback(options, cap).sentence(psi);
}

RoundtripResult roundtrip(const Wmso& f, const PullbackOptions& options) {
  auto fv = free_vars(f);
  if (!fv.empty()) throw ScopeError("round trip needs a closed formula; free variable", *fv.begin());
  RoundtripResult r;
  r.decided = eval(f, Assignment{}, options.cap.value_or(qdepth(f)));
  r.pulled = pullback_eval(translate(f), options);
  return r;
}

bool roundtrip_check(const Wmso& f, const PullbackOptions& options) { return roundtrip(f, options).ok(); }

}  // namespace qwi
