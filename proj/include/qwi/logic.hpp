#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qwi {

enum class Connective { not_, and_, or_, implies, iff };

// ---------------------------------------------------------------- WMSO ----

struct WmsoFormula;
using Wmso = std::shared_ptr<const WmsoFormula>;

enum class WmsoKind { less, eq, mem, connective, exists_pt, forall_pt, exists_set, forall_set };

// Immutable node.  Atoms use `a`, `b` as argument names (mem: point a, set
// b); quantifiers bind `a` in `left`; connectives use `op`, `left`, `right`
// (`right` null for negation).
struct WmsoFormula {
  WmsoKind kind = WmsoKind::less;
  Connective op = Connective::not_;
  std::string a, b;
  Wmso left, right;

  bool is_atom() const { return kind == WmsoKind::less || kind == WmsoKind::eq || kind == WmsoKind::mem; }
  bool is_quantifier() const { return kind >= WmsoKind::exists_pt; }
  bool binds_set() const { return kind == WmsoKind::exists_set || kind == WmsoKind::forall_set; }
};

namespace wmso {
Wmso less(std::string x, std::string y);
Wmso eq(std::string x, std::string y);
Wmso mem(std::string x, std::string set);
Wmso neg(Wmso f);
Wmso conj(Wmso l, Wmso r);
Wmso disj(Wmso l, Wmso r);
Wmso implies(Wmso l, Wmso r);
Wmso iff(Wmso l, Wmso r);
Wmso exists(std::string v, Wmso body);  // sort from the variable's case
Wmso forall(std::string v, Wmso body);
}  // namespace wmso

inline bool is_set_variable(std::string_view v) { return !v.empty() && v[0] >= 'A' && v[0] <= 'Z'; }

Wmso parse_wmso(std::string_view text);
std::string to_string(const Wmso& f);
bool operator==(const WmsoFormula& a, const WmsoFormula& b);

int qdepth(const Wmso& f);
std::set<std::string> free_vars(const Wmso& f);
// Capture-avoiding simultaneous renaming of free variables (sorts must match).
Wmso substitute(const Wmso& f, const std::map<std::string, std::string>& renaming);
// Bound variables renamed in binding order; free variables untouched.
Wmso alpha_normalize(const Wmso& f);
bool alpha_equivalent(const Wmso& a, const Wmso& b);
// Throws ScopeError naming the first variable that is free but not allowed.
void check_scope(const Wmso& f, const std::set<std::string>& allowed_free = {});

// --------------------------------------------------------------- group ----

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { var, one, product, inverse };

struct Term {
  TermKind kind = TermKind::one;
  std::string name;
  TermPtr left, right;
};

namespace term {
TermPtr var(std::string name);
TermPtr one();
TermPtr product(TermPtr l, TermPtr r);
TermPtr inverse(TermPtr t);
}  // namespace term

TermPtr parse_term(std::string_view text);
std::string to_string(const TermPtr& t);
bool operator==(const Term& a, const Term& b);

struct GroupFormula;
using Group = std::shared_ptr<const GroupFormula>;

enum class GroupKind { term_eq, atom, connective, exists, forall };

// Atoms carry `name` and `args`; term_eq has two args; quantifiers bind
// `name` in `left`.
struct GroupFormula {
  GroupKind kind = GroupKind::atom;
  Connective op = Connective::not_;
  std::string name;
  std::vector<TermPtr> args;
  Group left, right;

  bool is_quantifier() const { return kind == GroupKind::exists || kind == GroupKind::forall; }
};

namespace group {
Group eq(TermPtr l, TermPtr r);
Group atom(std::string name, std::vector<TermPtr> args);  // checks arity
Group neg(Group f);
Group conj(Group l, Group r);
Group disj(Group l, Group r);
Group implies(Group l, Group r);
Group iff(Group l, Group r);
Group exists(std::string v, Group body);
Group forall(std::string v, Group body);
}  // namespace group

// Arity of a group-language predicate, or nullopt for an unknown name.
std::optional<int> atom_arity(std::string_view name);

Group parse_group(std::string_view text);
std::string to_string(const Group& f);
bool operator==(const GroupFormula& a, const GroupFormula& b);

int qdepth(const Group& f);
std::set<std::string> free_vars(const Group& f);
std::set<std::string> free_vars(const TermPtr& t);
// Capture-avoiding simultaneous substitution of terms for free variables.
Group substitute(const Group& f, const std::map<std::string, TermPtr>& sub);
TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& sub);
Group alpha_normalize(const Group& f);
bool alpha_equivalent(const Group& a, const Group& b);
std::size_t size(const Group& f);

// -------------------------------------------------------------- macros ----

struct MacroSchema {
  std::vector<std::string> params;
  Group body;
};

class MacroTable {
 public:
  // Parses lines `name(p1,...) := body`; blank lines and `#` comments skipped.
  static MacroTable parse(std::string_view text);
  // restr, cont, coterm, cof, oppsupport, inf, finrational, sameset, less.
  static const MacroTable& standard();

  const MacroSchema* find(std::string_view name) const;
  std::vector<std::string> names() const;
  // The schema instantiated at `args`, bound variables renamed as needed.
  Group instantiate(std::string_view name, const std::vector<TermPtr>& args) const;

 private:
  std::map<std::string, MacroSchema, std::less<>> schemas_;
};

// Replaces every defined atom by its schema, `depth` rounds.
Group expand(const Group& f, int depth, const MacroTable& table = MacroTable::standard());

}  // namespace qwi
