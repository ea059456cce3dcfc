#include <sstream>

#include "lexer.hpp"
#include "qwi/error.hpp"
#include "qwi/logic.hpp"

namespace qwi {

namespace {

constexpr std::string_view standard_macros = R"(
# Defined predicates of the group language.  Atoms without a line here
# (comp, apart, bump, orbital, disj, gauge, codesame, rational) are primitive.
restr(x,y) := Ez (disj(x,z) & y = x*z)
cont(x,y) := Az (disj(y,z) -> disj(x,z))
coterm(x) := bump(x) & Az (~(z = 1) -> ~disj(x,z))
cof(x) := bump(x) & ~coterm(x) & Aw ~disj(x,w*x*w^-1)
oppsupport(x,y) := cof(x) & cof(y) & disj(x,y) & Az (~(z = 1) -> ~(disj(z,x) & disj(z,y)))
inf(x) := Ey Ey1 Ey2 Ew (restr(y,x) & orbital(y1,y) & y = y1*y2 & y2 = w*y*w^-1)
finrational(x) := comp(x) & ~inf(x) & Ay (disj(x,y) -> y = 1) & Ay Az (oppsupport(y,z) & cont(x,y*z) -> rational(y))
sameset(x,y) := finrational(x) & finrational(y) & cont(x,y) & cont(y,x)
# Endpoint order relative to an orientation parameter p: representatives u, v
# of x and y comparable with p, and v's support strictly inside u's.
less(p,x,y) := Eu Ev (codesame(x,u) & codesame(y,v) & (cont(u,p) | cont(p,u)) & (cont(v,p) | cont(p,v)) & cont(v,u) & ~codesame(u,v))
)";

}  // namespace

MacroTable MacroTable::parse(std::string_view text) {
  MacroTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const auto sep = line.find(":=");
    if (sep == std::string_view::npos) throw ParseError("expected ':='", static_cast<int>(line_no), 1);
    detail::TokenStream head(line.substr(0, sep));
    const std::string name = head.expect(detail::Tok::ident, "macro name").text;
    head.expect(detail::Tok::lparen, "'('");
    MacroSchema schema;
    do {
      schema.params.push_back(head.expect(detail::Tok::ident, "parameter").text);
    } while (head.accept(detail::Tok::comma));
    head.expect(detail::Tok::rparen, "')'");
    auto arity = atom_arity(name);
    if (!arity || static_cast<std::size_t>(*arity) != schema.params.size()) {
      throw ParseError("macro " + name + " does not match the predicate's arity", static_cast<int>(line_no), 1);
    }
    try {
      schema.body = parse_group(line.substr(sep + 2));
    } catch (const ParseError& e) {
      throw ParseError(std::string("in macro ") + name + ": " + e.what(), static_cast<int>(line_no), 1);
    }
    table.schemas_[name] = std::move(schema);
  }
  return table;
}

const MacroTable& MacroTable::standard() {
  static const MacroTable table = parse(standard_macros);
  return table;
}

const MacroSchema* MacroTable::find(std::string_view name) const {
  auto it = schemas_.find(name);
  return it == schemas_.end() ? nullptr : &it->second;
}

std::vector<std::string> MacroTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : schemas_) out.push_back(name);
  return out;
}

Group MacroTable::instantiate(std::string_view name, const std::vector<TermPtr>& args) const {
  const MacroSchema* s = find(name);
  if (!s) throw PreconditionError("no definition for " + std::string(name));
  if (s->params.size() != args.size()) throw PreconditionError("wrong number of arguments for " + std::string(name));
  std::map<std::string, TermPtr> sub;
  for (std::size_t i = 0; i < args.size(); ++i) sub[s->params[i]] = args[i];
  return substitute(s->body, sub);
}

namespace {

Group expand_once(const Group& f, const MacroTable& table) {
  switch (f->kind) {
    case GroupKind::term_eq: return f;
    case GroupKind::atom: return table.find(f->name) ? table.instantiate(f->name, f->args) : f;
    case GroupKind::exists: return group::exists(f->name, expand_once(f->left, table));
    case GroupKind::forall: return group::forall(f->name, expand_once(f->left, table));
    case GroupKind::connective: break;
  }
  GroupFormula g = *f;
  g.left = expand_once(f->left, table);
  if (f->right) g.right = expand_once(f->right, table);
  return std::make_shared<const GroupFormula>(std::move(g));
}

}  // namespace

Group expand(const Group& f, int depth, const MacroTable& table) {
  Group out = f;
  for (int i = 0; i < depth; ++i) out = expand_once(out, table);
  return out;
}

}  // namespace qwi
