#include <algorithm>

#include "lexer.hpp"
#include "qwi/error.hpp"
#include "qwi/logic.hpp"

namespace qwi {

using detail::Tok;
using detail::TokenStream;

namespace wmso {

namespace {
Wmso node(WmsoFormula f) { return std::make_shared<const WmsoFormula>(std::move(f)); }
Wmso binary(Connective op, Wmso l, Wmso r) {
  WmsoFormula f;
  f.kind = WmsoKind::connective;
  f.op = op;
  f.left = std::move(l);
  f.right = std::move(r);
  return node(std::move(f));
}
Wmso quant(bool universal, std::string v, Wmso body) {
  WmsoFormula f;
  const bool set = is_set_variable(v);
  f.kind = universal ? (set ? WmsoKind::forall_set : WmsoKind::forall_pt)
                     : (set ? WmsoKind::exists_set : WmsoKind::exists_pt);
  f.a = std::move(v);
  f.left = std::move(body);
  return node(std::move(f));
}
Wmso atom(WmsoKind k, std::string x, std::string y) {
  WmsoFormula f;
  f.kind = k;
  f.a = std::move(x);
  f.b = std::move(y);
  return node(std::move(f));
}
}  // namespace

Wmso less(std::string x, std::string y) { return atom(WmsoKind::less, std::move(x), std::move(y)); }
Wmso eq(std::string x, std::string y) { return atom(WmsoKind::eq, std::move(x), std::move(y)); }
Wmso mem(std::string x, std::string set) { return atom(WmsoKind::mem, std::move(x), std::move(set)); }
Wmso neg(Wmso f) { return binary(Connective::not_, std::move(f), nullptr); }
Wmso conj(Wmso l, Wmso r) { return binary(Connective::and_, std::move(l), std::move(r)); }
Wmso disj(Wmso l, Wmso r) { return binary(Connective::or_, std::move(l), std::move(r)); }
Wmso implies(Wmso l, Wmso r) { return binary(Connective::implies, std::move(l), std::move(r)); }
Wmso iff(Wmso l, Wmso r) { return binary(Connective::iff, std::move(l), std::move(r)); }
Wmso exists(std::string v, Wmso body) { return quant(false, std::move(v), std::move(body)); }
Wmso forall(std::string v, Wmso body) { return quant(true, std::move(v), std::move(body)); }

}  // namespace wmso

namespace {

class WmsoParser {
 public:
  explicit WmsoParser(std::string_view text) : ts_(text) {}

  Wmso parse() {
    Wmso f = iff();
    if (!ts_.at(Tok::end)) ts_.fail("expected end of formula");
    return f;
  }

 private:
  Wmso iff() {
    Wmso f = implies();
    while (ts_.accept(Tok::dblarrow)) f = wmso::iff(f, implies());
    return f;
  }
  Wmso implies() {
    Wmso f = disj();
    if (ts_.accept(Tok::arrow)) return wmso::implies(f, implies());
    return f;
  }
  Wmso disj() {
    Wmso f = conj();
    while (ts_.accept(Tok::bar)) f = wmso::disj(f, conj());
    return f;
  }
  Wmso conj() {
    Wmso f = unary();
    while (ts_.accept(Tok::amp)) f = wmso::conj(f, unary());
    return f;
  }
  Wmso unary() {
    if (ts_.accept(Tok::tilde)) return wmso::neg(unary());
    bool universal = false;
    std::string var;
    if (detail::accept_quantifier(ts_, universal, var)) {
      return universal ? wmso::forall(var, unary()) : wmso::exists(var, unary());
    }
    if (ts_.accept(Tok::lparen)) {
      Wmso f = iff();
      ts_.expect(Tok::rparen, "')'");
      return f;
    }
    return atom();
  }
  Wmso atom() {
    const detail::Token x = ts_.expect(Tok::ident, "a formula");
    if (is_set_variable(x.text)) {
      throw ParseError("sort mismatch: " + x.text + " is a set variable, expected a point variable", x.line,
                       x.column);
    }
    if (ts_.at(Tok::less) || ts_.at(Tok::equals)) {
      const bool is_less = ts_.next().kind == Tok::less;
      const detail::Token y = ts_.expect(Tok::ident, "a point variable");
      if (is_set_variable(y.text)) {
        throw ParseError("sort mismatch: " + y.text + " is a set variable, expected a point variable", y.line,
                         y.column);
      }
      return is_less ? wmso::less(x.text, y.text) : wmso::eq(x.text, y.text);
    }
    if (ts_.at(Tok::ident) && ts_.peek().text == "in") {
      ts_.next();
      const detail::Token s = ts_.expect(Tok::ident, "a set variable");
      if (!is_set_variable(s.text)) {
        throw ParseError("sort mismatch: " + s.text + " is a point variable, expected a set variable", s.line,
                         s.column);
      }
      return wmso::mem(x.text, s.text);
    }
    ts_.fail("expected '<', '=' or 'in'");
  }

  TokenStream ts_;
};

int prec(const Wmso& f) {
  if (f->kind != WmsoKind::connective) return f->is_quantifier() ? 5 : 6;
  return detail::precedence(static_cast<int>(f->op));
}

std::string unary_body(const Wmso& body) {
  const bool bare = body->is_quantifier() || (body->kind == WmsoKind::connective && body->op == Connective::not_);
  return bare ? to_string(body) : "(" + to_string(body) + ")";
}

std::string quantifier_prefix(WmsoKind k) {
  return (k == WmsoKind::forall_pt || k == WmsoKind::forall_set) ? "A" : "E";
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

void collect_free(const Wmso& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f->is_atom()) {
    for (const auto* v : {&f->a, &f->b}) {
      if (!bound.count(*v)) out.insert(*v);
    }
    return;
  }
  if (f->is_quantifier()) {
    const bool fresh = bound.insert(f->a).second;
    collect_free(f->left, bound, out);
    if (fresh) bound.erase(f->a);
    return;
  }
  collect_free(f->left, bound, out);
  if (f->right) collect_free(f->right, bound, out);
}

Wmso rebuild(const Wmso& f, Wmso left, Wmso right) {
  WmsoFormula g = *f;
  g.left = std::move(left);
  g.right = std::move(right);
  return std::make_shared<const WmsoFormula>(std::move(g));
}

Wmso normalize(const Wmso& f, std::map<std::string, std::string>& env, int& counter,
               const std::set<std::string>& avoid) {
  if (f->is_atom()) {
    WmsoFormula g = *f;
    if (auto it = env.find(g.a); it != env.end()) g.a = it->second;
    if (auto it = env.find(g.b); it != env.end()) g.b = it->second;
    return std::make_shared<const WmsoFormula>(std::move(g));
  }
  if (f->is_quantifier()) {
    std::string name;
    do {
      name = (f->binds_set() ? "V" : "v") + std::to_string(counter++);
    } while (avoid.count(name));
    auto saved = env.find(f->a) == env.end() ? std::optional<std::string>() : env[f->a];
    env[f->a] = name;
    Wmso body = normalize(f->left, env, counter, avoid);
    if (saved) {
      env[f->a] = *saved;
    } else {
      env.erase(f->a);
    }
    WmsoFormula g = *f;
    g.a = name;
    g.left = body;
    return std::make_shared<const WmsoFormula>(std::move(g));
  }
  return rebuild(f, normalize(f->left, env, counter, avoid),
                 f->right ? normalize(f->right, env, counter, avoid) : nullptr);
}

}  // namespace

Wmso parse_wmso(std::string_view text) { return WmsoParser(text).parse(); }

std::string to_string(const Wmso& f) {
  switch (f->kind) {
    case WmsoKind::less: return f->a + " < " + f->b;
    case WmsoKind::eq: return f->a + " = " + f->b;
    case WmsoKind::mem: return f->a + " in " + f->b;
    case WmsoKind::exists_pt:
    case WmsoKind::forall_pt:
    case WmsoKind::exists_set:
    case WmsoKind::forall_set: return quantifier_prefix(f->kind) + f->a + " " + unary_body(f->left);
    case WmsoKind::connective: break;
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

bool operator==(const WmsoFormula& a, const WmsoFormula& b) {
  if (a.kind != b.kind || a.a != b.a || a.b != b.b) return false;
  if (a.kind == WmsoKind::connective && a.op != b.op) return false;
  auto same = [](const Wmso& x, const Wmso& y) { return (!x && !y) || (x && y && *x == *y); };
  return same(a.left, b.left) && same(a.right, b.right);
}

int qdepth(const Wmso& f) {
  if (f->is_atom()) return 0;
  if (f->is_quantifier()) return 1 + qdepth(f->left);
  return std::max(qdepth(f->left), f->right ? qdepth(f->right) : 0);
}

std::set<std::string> free_vars(const Wmso& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

Wmso substitute(const Wmso& f, const std::map<std::string, std::string>& renaming) {
  for (const auto& [from, to] : renaming) {
    if (is_set_variable(from) != is_set_variable(to)) throw ScopeError("sort mismatch in substitution", from);
  }
  if (f->is_atom()) {
    WmsoFormula g = *f;
    if (auto it = renaming.find(g.a); it != renaming.end()) g.a = it->second;
    if (auto it = renaming.find(g.b); it != renaming.end()) g.b = it->second;
    return std::make_shared<const WmsoFormula>(std::move(g));
  }
  if (f->is_quantifier()) {
    std::map<std::string, std::string> inner = renaming;
    inner.erase(f->a);
    const auto body_free = free_vars(f->left);
    bool captures = false;
    std::set<std::string> avoid = body_free;
    for (const auto& [from, to] : inner) {
      if (!body_free.count(from)) continue;
      avoid.insert(to);
      captures = captures || to == f->a;
    }
    WmsoFormula g = *f;
    if (captures) {
      g.a = fresh_name(f->a, avoid);
      inner[f->a] = g.a;
    }
    g.left = substitute(f->left, inner);
    return std::make_shared<const WmsoFormula>(std::move(g));
  }
  return rebuild(f, substitute(f->left, renaming), f->right ? substitute(f->right, renaming) : nullptr);
}

Wmso alpha_normalize(const Wmso& f) {
  std::map<std::string, std::string> env;
  int counter = 0;
  return normalize(f, env, counter, free_vars(f));
}

bool alpha_equivalent(const Wmso& a, const Wmso& b) { return *alpha_normalize(a) == *alpha_normalize(b); }

void check_scope(const Wmso& f, const std::set<std::string>& allowed_free) {
  for (const auto& v : free_vars(f)) {
    if (!allowed_free.count(v)) throw ScopeError("unbound variable", v);
  }
}

}  // namespace qwi
