#include <algorithm>
#include <cctype>

#include "lexer.hpp"
#include "qwi/error.hpp"
#include "qwi/logic.hpp"

namespace qwi {

using detail::Tok;
using detail::TokenStream;

namespace term {

TermPtr var(std::string name) {
  Term t;
  t.kind = TermKind::var;
  t.name = std::move(name);
  return std::make_shared<const Term>(std::move(t));
}

TermPtr one() {
  static const TermPtr unit = std::make_shared<const Term>();
  return unit;
}

TermPtr product(TermPtr l, TermPtr r) {
  Term t;
  t.kind = TermKind::product;
  t.left = std::move(l);
  t.right = std::move(r);
  return std::make_shared<const Term>(std::move(t));
}

TermPtr inverse(TermPtr x) {
  Term t;
  t.kind = TermKind::inverse;
  t.left = std::move(x);
  return std::make_shared<const Term>(std::move(t));
}

}  // namespace term

std::optional<int> atom_arity(std::string_view name) {
  static const std::map<std::string, int, std::less<>> arities{
      {"comp", 1},   {"bump", 1},       {"coterm", 1},   {"cof", 1},    {"inf", 1},
      {"rational", 1}, {"finrational", 1}, {"apart", 2},  {"orbital", 2}, {"disj", 2},
      {"restr", 2},  {"cont", 2},       {"codesame", 2}, {"oppsupport", 2}, {"gauge", 2},
      {"sameset", 2}, {"less", 3}};
  auto it = arities.find(name);
  if (it == arities.end()) return std::nullopt;
  return it->second;
}

namespace group {

namespace {
Group node(GroupFormula f) { return std::make_shared<const GroupFormula>(std::move(f)); }
Group binary(Connective op, Group l, Group r) {
  GroupFormula f;
  f.kind = GroupKind::connective;
  f.op = op;
  f.left = std::move(l);
  f.right = std::move(r);
  return node(std::move(f));
}
Group quant(GroupKind k, std::string v, Group body) {
  GroupFormula f;
  f.kind = k;
  f.name = std::move(v);
  f.left = std::move(body);
  return node(std::move(f));
}
}  // namespace

Group eq(TermPtr l, TermPtr r) {
  GroupFormula f;
  f.kind = GroupKind::term_eq;
  f.args = {std::move(l), std::move(r)};
  return node(std::move(f));
}

Group atom(std::string name, std::vector<TermPtr> args) {
  auto arity = atom_arity(name);
  if (!arity) throw PreconditionError("unknown predicate " + name);
  if (static_cast<std::size_t>(*arity) != args.size()) {
    throw PreconditionError(name + " takes " + std::to_string(*arity) + " arguments, got " +
                            std::to_string(args.size()));
  }
  GroupFormula f;
  f.kind = GroupKind::atom;
  f.name = std::move(name);
  f.args = std::move(args);
  return node(std::move(f));
}

Group neg(Group f) { return binary(Connective::not_, std::move(f), nullptr); }
Group conj(Group l, Group r) { return binary(Connective::and_, std::move(l), std::move(r)); }
Group disj(Group l, Group r) { return binary(Connective::or_, std::move(l), std::move(r)); }
Group implies(Group l, Group r) { return binary(Connective::implies, std::move(l), std::move(r)); }
Group iff(Group l, Group r) { return binary(Connective::iff, std::move(l), std::move(r)); }
Group exists(std::string v, Group body) { return quant(GroupKind::exists, std::move(v), std::move(body)); }
Group forall(std::string v, Group body) { return quant(GroupKind::forall, std::move(v), std::move(body)); }

}  // namespace group

namespace {

bool is_group_variable(std::string_view v) { return !v.empty() && std::islower(static_cast<unsigned char>(v[0])); }

class GroupParser {
 public:
  explicit GroupParser(std::string_view text) : ts_(text) {}

  Group parse() {
    Group f = iff();
    if (!ts_.at(Tok::end)) ts_.fail("expected end of formula");
    return f;
  }

  TermPtr parse_term_only() {
    TermPtr t = term();
    if (!ts_.at(Tok::end)) ts_.fail("expected end of term");
    return t;
  }

 private:
  Group iff() {
    Group f = implies();
    while (ts_.accept(Tok::dblarrow)) f = group::iff(f, implies());
    return f;
  }
  Group implies() {
    Group f = disj();
    if (ts_.accept(Tok::arrow)) return group::implies(f, implies());
    return f;
  }
  Group disj() {
    Group f = conj();
    while (ts_.accept(Tok::bar)) f = group::disj(f, conj());
    return f;
  }
  Group conj() {
    Group f = unary();
    while (ts_.accept(Tok::amp)) f = group::conj(f, unary());
    return f;
  }
  Group unary() {
    if (ts_.accept(Tok::tilde)) return group::neg(unary());
    bool universal = false;
    std::string var;
    const detail::Token& q = ts_.peek();
    const int line = q.line, column = q.column;
    if (detail::accept_quantifier(ts_, universal, var)) {
      if (!is_group_variable(var)) throw ParseError("group variables are lowercase: " + var, line, column);
      Group body = unary();
      return universal ? group::forall(var, body) : group::exists(var, body);
    }
    if (ts_.at(Tok::lparen)) {
      // Either a parenthesised formula or an equation whose left term starts
      // with '('; try the equation first.
      const auto m = ts_.mark();
      try {
        return equation();
      } catch (const ParseError&) {
        ts_.reset(m);
      }
      ts_.next();
      Group f = iff();
      ts_.expect(Tok::rparen, "')'");
      return f;
    }
    if (ts_.at(Tok::ident) && ts_.peek(1).kind == Tok::lparen) return call();
    return equation();
  }
  Group call() {
    const detail::Token name = ts_.next();
    auto arity = atom_arity(name.text);
    if (!arity) throw ParseError("unknown predicate " + name.text, name.line, name.column);
    ts_.expect(Tok::lparen, "'('");
    std::vector<TermPtr> args;
    if (!ts_.at(Tok::rparen)) {
      args.push_back(term());
      while (ts_.accept(Tok::comma)) args.push_back(term());
    }
    ts_.expect(Tok::rparen, "')'");
    if (static_cast<std::size_t>(*arity) != args.size()) {
      throw ParseError("arity error: " + name.text + " takes " + std::to_string(*arity) + " argument" +
                           (*arity == 1 ? "" : "s") + ", got " + std::to_string(args.size()),
                       name.line, name.column);
    }
    return group::atom(name.text, std::move(args));
  }
  Group equation() {
    TermPtr l = term();
    ts_.expect(Tok::equals, "'='");
    TermPtr r = term();
    return group::eq(std::move(l), std::move(r));
  }
  TermPtr term() {
    TermPtr t = factor();
    while (ts_.accept(Tok::star)) t = term::product(t, factor());
    return t;
  }
  TermPtr factor() {
    TermPtr t;
    if (ts_.accept(Tok::one)) {
      t = term::one();
    } else if (ts_.accept(Tok::lparen)) {
      t = term();
      ts_.expect(Tok::rparen, "')'");
    } else {
      const detail::Token& v = ts_.peek();
      if (v.kind != Tok::ident || !is_group_variable(v.text)) ts_.fail("expected a term");
      t = term::var(ts_.next().text);
    }
    while (ts_.accept(Tok::inv)) t = term::inverse(t);
    return t;
  }

  TokenStream ts_;
};

int prec(const Group& f) {
  if (f->kind == GroupKind::connective) return detail::precedence(static_cast<int>(f->op));
  return f->is_quantifier() ? 5 : 6;
}

std::string unary_body(const Group& body) {
  const bool bare = body->is_quantifier() || body->kind == GroupKind::atom ||
                    (body->kind == GroupKind::connective && body->op == Connective::not_);
  return bare ? to_string(body) : "(" + to_string(body) + ")";
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (!avoid.count(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

void collect_free(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::var: out.insert(t->name); break;
    case TermKind::one: break;
    case TermKind::product: collect_free(t->right, out); [[fallthrough]];
    case TermKind::inverse: collect_free(t->left, out); break;
  }
}

void collect_free(const Group& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case GroupKind::term_eq:
    case GroupKind::atom: {
      std::set<std::string> vs;
      for (const auto& a : f->args) collect_free(a, vs);
      for (const auto& v : vs) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    }
    case GroupKind::exists:
    case GroupKind::forall: {
      const bool fresh = bound.insert(f->name).second;
      collect_free(f->left, bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
    case GroupKind::connective:
      collect_free(f->left, bound, out);
      if (f->right) collect_free(f->right, bound, out);
      return;
  }
}

Group with_children(const Group& f, Group left, Group right) {
  GroupFormula g = *f;
  g.left = std::move(left);
  g.right = std::move(right);
  return std::make_shared<const GroupFormula>(std::move(g));
}

bool same_term(const TermPtr& a, const TermPtr& b) { return (!a && !b) || (a && b && *a == *b); }

Group normalize(const Group& f, std::map<std::string, TermPtr>& env, int& counter, const std::set<std::string>& avoid) {
  switch (f->kind) {
    case GroupKind::term_eq:
    case GroupKind::atom: {
      GroupFormula g = *f;
      for (auto& a : g.args) a = substitute(a, env);
      return std::make_shared<const GroupFormula>(std::move(g));
    }
    case GroupKind::exists:
    case GroupKind::forall: {
      std::string name;
      do {
        name = "v" + std::to_string(counter++);
      } while (avoid.count(name));
      auto it = env.find(f->name);
      std::optional<TermPtr> saved = it == env.end() ? std::nullopt : std::optional<TermPtr>(it->second);
      env[f->name] = term::var(name);
      Group body = normalize(f->left, env, counter, avoid);
      if (saved) {
        env[f->name] = *saved;
      } else {
        env.erase(f->name);
      }
      GroupFormula g = *f;
      g.name = name;
      g.left = body;
      return std::make_shared<const GroupFormula>(std::move(g));
    }
    case GroupKind::connective: break;
  }
  return with_children(f, normalize(f->left, env, counter, avoid),
                       f->right ? normalize(f->right, env, counter, avoid) : nullptr);
}

}  // namespace

TermPtr parse_term(std::string_view text) { return GroupParser(text).parse_term_only(); }

std::string to_string(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::var: return t->name;
    case TermKind::one: return "1";
    case TermKind::product: {
      std::string r = to_string(t->right);
      if (t->right->kind == TermKind::product) r = "(" + r + ")";
      return to_string(t->left) + "*" + r;
    }
    case TermKind::inverse: {
      std::string inner = to_string(t->left);
      if (t->left->kind == TermKind::product) inner = "(" + inner + ")";
      return inner + "^-1";
    }
  }
  return "?";
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.name == b.name && same_term(a.left, b.left) && same_term(a.right, b.right);
}

Group parse_group(std::string_view text) { return GroupParser(text).parse(); }

std::string to_string(const Group& f) {
  switch (f->kind) {
    case GroupKind::term_eq: return to_string(f->args[0]) + " = " + to_string(f->args[1]);
    case GroupKind::atom: {
      std::string s = f->name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) s += (i ? "," : "") + to_string(f->args[i]);
      return s + ")";
    }
    case GroupKind::exists: return "E" + f->name + " " + unary_body(f->left);
    case GroupKind::forall: return "A" + f->name + " " + unary_body(f->left);
    case GroupKind::connective: break;
  }
  if (f->op == Connective::not_) return "~" + unary_body(f->left);
  static constexpr std::string_view symbols[] = {"~", "&", "|", "->", "<->"};
  const int p = prec(f);
  const bool right_assoc = f->op == Connective::implies;
  std::string l = to_string(f->left);
  std::string r = to_string(f->right);
  if (prec(f->left) < p || (right_assoc && prec(f->left) == p)) l = "(" + l + ")";
  if (prec(f->right) < p || (!right_assoc && prec(f->right) == p)) r = "(" + r + ")";
  return l + " " + std::string(symbols[static_cast<int>(f->op)]) + " " + r;
}

bool operator==(const GroupFormula& a, const GroupFormula& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == GroupKind::connective && a.op != b.op) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!(*a.args[i] == *b.args[i])) return false;
  }
  auto same = [](const Group& x, const Group& y) { return (!x && !y) || (x && y && *x == *y); };
  return same(a.left, b.left) && same(a.right, b.right);
}

int qdepth(const Group& f) {
  switch (f->kind) {
    case GroupKind::term_eq:
    case GroupKind::atom: return 0;
    case GroupKind::exists:
    case GroupKind::forall: return 1 + qdepth(f->left);
    case GroupKind::connective: break;
  }
  return std::max(qdepth(f->left), f->right ? qdepth(f->right) : 0);
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_vars(const Group& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& sub) {
  switch (t->kind) {
    case TermKind::var: {
      auto it = sub.find(t->name);
      return it == sub.end() ? t : it->second;
    }
    case TermKind::one: return t;
    case TermKind::product: return term::product(substitute(t->left, sub), substitute(t->right, sub));
    case TermKind::inverse: return term::inverse(substitute(t->left, sub));
  }
  return t;
}

Group substitute(const Group& f, const std::map<std::string, TermPtr>& sub) {
  switch (f->kind) {
    case GroupKind::term_eq:
    case GroupKind::atom: {
      GroupFormula g = *f;
      for (auto& a : g.args) a = substitute(a, sub);
      return std::make_shared<const GroupFormula>(std::move(g));
    }
    case GroupKind::exists:
    case GroupKind::forall: {
      std::map<std::string, TermPtr> inner = sub;
      inner.erase(f->name);
      const auto body_free = free_vars(f->left);
      std::set<std::string> avoid = body_free;
      bool captures = false;
      for (auto it = inner.begin(); it != inner.end();) {
        if (!body_free.count(it->first)) {
          it = inner.erase(it);
          continue;
        }
        auto fv = free_vars(it->second);
        captures = captures || fv.count(f->name);
        avoid.insert(fv.begin(), fv.end());
        ++it;
      }
      GroupFormula g = *f;
      if (captures) {
        g.name = fresh_name(f->name, avoid);
        inner[f->name] = term::var(g.name);
      }
      g.left = substitute(f->left, inner);
      return std::make_shared<const GroupFormula>(std::move(g));
    }
    case GroupKind::connective: break;
  }
  return with_children(f, substitute(f->left, sub), f->right ? substitute(f->right, sub) : nullptr);
}

Group alpha_normalize(const Group& f) {
  std::map<std::string, TermPtr> env;
  int counter = 0;
  return normalize(f, env, counter, free_vars(f));
}

bool alpha_equivalent(const Group& a, const Group& b) { return *alpha_normalize(a) == *alpha_normalize(b); }

std::size_t size(const Group& f) {
  std::size_t n = 1;
  if (f->left) n += size(f->left);
  if (f->right) n += size(f->right);
  return n;
}

}  // namespace qwi
