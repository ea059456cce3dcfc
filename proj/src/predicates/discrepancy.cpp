#include <algorithm>
#include <map>
#include <sstream>

#include "qwi/error.hpp"
#include "qwi/generate.hpp"
#include "qwi/predicates.hpp"

namespace qwi {

namespace {

void add_unique(std::vector<PLMap>& pool, PLMap f) {
  if (std::find(pool.begin(), pool.end(), f) == pool.end()) pool.push_back(std::move(f));
}

void add_gap_bumps(std::vector<PLMap>& pool, const IntervalSet& moved) {
  ExtRational from = ExtRational::neg_inf();
  auto gap = [&](const ExtRational& to) {
    QInterval g{from, to};
    if (!g.empty()) {
      add_unique(pool, bump(g, Parity::plus));
      add_unique(pool, bump(g, Parity::minus));
    }
  };
  for (const auto& i : moved.items()) {
    gap(i.lo);
    from = i.hi;
  }
  gap(ExtRational::pos_inf());
}

using Env = std::map<std::string, PLMap>;

class PoolEvaluator {
 public:
  explicit PoolEvaluator(const std::vector<PLMap>& pool) : pool_(pool) {}

  bool eval(const Group& f, Env& env, LiteralResult& trace, bool record) {
    switch (f->kind) {
      case GroupKind::term_eq: return value(f->args[0], env) == value(f->args[1], env);
      case GroupKind::atom: {
        std::vector<PLMap> args;
        for (const auto& a : f->args) args.push_back(value(a, env));
        return atom_sem(f->name, args);
      }
      case GroupKind::exists:
      case GroupKind::forall: {
        const bool universal = f->kind == GroupKind::forall;
        auto saved = env.find(f->name) == env.end() ? std::optional<PLMap>() : env.at(f->name);
        bool result = universal;
        for (const auto& candidate : pool_) {
          env[f->name] = candidate;
          if (eval(f->left, env, trace, false) != universal) {
            result = !universal;
            if (record && !trace.decisive) {
              trace.decisive = candidate;
              trace.decisive_variable = f->name;
            }
            break;
          }
        }
        if (saved) {
          env[f->name] = *saved;
        } else {
          env.erase(f->name);
        }
        return result;
      }
      case GroupKind::connective: break;
    }
    switch (f->op) {
      case Connective::not_: return !eval(f->left, env, trace, record);
      case Connective::and_: return eval(f->left, env, trace, record) && eval(f->right, env, trace, record);
      case Connective::or_: return eval(f->left, env, trace, record) || eval(f->right, env, trace, record);
      case Connective::implies: return !eval(f->left, env, trace, record) || eval(f->right, env, trace, record);
      case Connective::iff: return eval(f->left, env, trace, record) == eval(f->right, env, trace, record);
    }
    return false;
  }

 private:
  PLMap value(const TermPtr& t, const Env& env) {
    switch (t->kind) {
      case TermKind::var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw ScopeError("unbound variable", t->name);
        return it->second;
      }
      case TermKind::one: return PLMap();
      case TermKind::product: return compose(value(t->left, env), value(t->right, env));
      case TermKind::inverse: return inverse(value(t->left, env));
    }
    return PLMap();
  }

  const std::vector<PLMap>& pool_;
};

std::string fixed_points_text(const PLMap& f) {
  std::string s = "{";
  const auto pts = fixed_structure(f).points;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + pts[i].str();
  return s + "}";
}

std::string certificate(std::string_view macro, const std::vector<PLMap>& args, const LiteralResult& lit) {
  std::ostringstream os;
  if (lit.decisive) {
    os << lit.decisive_variable << " = " << lit.decisive->str()
       << (lit.value ? " witnesses the existential" : " refutes the universal");
    return os.str();
  }
  if (macro == "cont" && lit.value) {
    const PLMap& y = args[1];
    if (fixed_structure(y).intervals.empty()) {
      os << "y has dense support (fixed points " << fixed_points_text(y)
         << "), so no non-identity z is disjoint from y and the literal macro holds vacuously";
    } else {
      os << "every pool element disjoint from y is disjoint from x";
    }
    if (!cont_sem(args[0], args[1])) {
      os << "; but support(x) = " << support(args[0]).str() << " is not inside support(y) = " << support(args[1]).str();
      std::string moved;
      for (const auto& q : fixed_structure(y).points) {
        if (args[0](q) != q) moved += (moved.empty() ? "" : ",") + q.str();
      }
      if (!moved.empty()) os << "; x moves the isolated fixed points {" << moved << "} of y";
    }
    return os.str();
  }
  if (lit.value) return "no pool element refutes the universal";
  return "a quantifier-free conjunct fails";
}

std::vector<PLMap> instance(std::string_view macro, Generator& gen) {
  if (macro == "cont") {
    PLMap y;
    switch (gen.integer(0, 2)) {
      case 0: y = gen.bump_composite(8, true); break;
      case 1: y = gen.plmap(8); break;
      default: y = gen.single_bump(); break;
    }
    PLMap x;
    switch (gen.integer(0, 3)) {
      case 0: x = gen.plmap(8); break;
      case 1: x = gen.single_bump(); break;
      case 2: {
        std::vector<QInterval> keep;
        for (const auto& c : support_components(y)) {
          if (gen.coin()) keep.push_back(c.interval);
        }
        x = restriction(y, IntervalSet::normalize(keep));
        break;
      }
      default: x = gen.translation(); break;
    }
    return {x, y};
  }
  if (macro == "coterm" || macro == "cof") {
    switch (gen.integer(0, 2)) {
      case 0: return {gen.single_bump()};
      case 1: return {gen.plmap(8)};
      default: return {gen.cofinal_bump(gen.rational(), gen.coin() ? Side::left : Side::right, gen.parity())};
    }
  }
  if (macro == "oppsupport") {
    auto end = [&] { return Rational(gen.integer(-1, 1)); };
    auto side = [&] { return gen.coin() ? Side::left : Side::right; };
    switch (gen.integer(0, 4)) {
      case 0: {
        Rational q = end();
        Side s = side();
        return {gen.cofinal_bump(q, s, gen.parity()), gen.cofinal_bump(q, opposite(s), gen.parity())};
      }
      case 1: {
        Rational q = end();
        Side s = side();
        return {gen.cofinal_bump(q, s, gen.parity()), gen.cofinal_bump(q, s, gen.parity())};
      }
      case 2: return {gen.cofinal_bump(end(), side(), gen.parity()), gen.cofinal_bump(end(), side(), gen.parity())};
      case 3: return {gen.plmap(8), gen.plmap(8)};
      default: return {gen.cofinal_bump(end(), side(), gen.parity()), gen.plmap(8)};
    }
  }
  throw PreconditionError("discrepancy search supports cont, coterm, cof and oppsupport, not " + std::string(macro));
}

}  // namespace

std::vector<PLMap> witness_pool(const std::vector<PLMap>& inst, std::uint64_t seed) {
  std::vector<PLMap> pool{PLMap()};
  std::vector<QInterval> moved;
  for (const auto& f : inst) {
    add_unique(pool, f);
    add_unique(pool, inverse(f));
    add_gap_bumps(pool, support(f));
    for (const auto& c : support_components(f)) {
      moved.push_back(c.interval);
      if (c.interval.bounded_below() && c.interval.bounded_above()) {
        Rational shift = c.interval.hi.value() - c.interval.lo.value() + Rational(1);
        add_unique(pool, PLMap::translation(shift));
        add_unique(pool, PLMap::translation(-shift));
      }
    }
  }
  add_gap_bumps(pool, IntervalSet::normalize(moved));
  // Quotients a^-1 b are the candidate restriction witnesses.
  for (const auto& a : inst) {
    for (const auto& b : inst) {
      if (!(a == b)) add_unique(pool, compose(inverse(a), b));
    }
  }
  add_unique(pool, PLMap::translation(1));
  add_unique(pool, PLMap::translation(-1));
  Generator gen(seed);
  for (int i = 0; i < 6; ++i) add_unique(pool, gen.plmap(4));
  return pool;
}

LiteralResult eval_literal(std::string_view macro, const std::vector<PLMap>& args, const std::vector<PLMap>& pool) {
  const MacroSchema* schema = MacroTable::standard().find(macro);
  if (!schema) throw PreconditionError("no literal definition for " + std::string(macro));
  if (schema->params.size() != args.size()) throw PreconditionError("wrong number of arguments");
  Env env;
  for (std::size_t i = 0; i < args.size(); ++i) env[schema->params[i]] = args[i];
  LiteralResult out;
  PoolEvaluator ev(pool);
  out.value = ev.eval(schema->body, env, out, true);
  return out;
}

DiscrepancyCase check_macro(std::string_view macro, const std::vector<PLMap>& args, std::uint64_t seed) {
  DiscrepancyCase c;
  c.macro = std::string(macro);
  c.args = args;
  const LiteralResult lit = eval_literal(macro, args, witness_pool(args, seed));
  c.literal = lit.value;
  c.intended = atom_sem(macro, args);
  c.certificate = certificate(macro, args, lit);
  return c;
}

DiscrepancyReport discrepancy_search(std::string_view macro, std::size_t trials, std::uint64_t seed) {
  DiscrepancyReport report;
  report.macro = std::string(macro);
  Generator gen(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<PLMap> args;
    if (macro == "cont" && i == 0) {
      // x+1 against the element whose fixed set is exactly {0, 1}.
      PLMap y = PLMap::through_nodes(Rational(1, 2), {{0, 0}, {Rational(1, 3), Rational(2, 3)}, {1, 1}}, Rational(2));
      args = {PLMap::translation(1), y};
    } else {
      args = instance(macro, gen);
    }
    DiscrepancyCase c = check_macro(macro, args, seed + i);
    ++report.trials;
    report.literal_true += c.literal;
    report.intended_true += c.intended;
    if (c.literal == c.intended) {
      ++report.agreements;
    } else {
      report.counterexamples.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace qwi
