#include "qwi/oracles.hpp"

#include <algorithm>
#include <set>

#include "qwi/error.hpp"

namespace qwi::oracles {

namespace {

struct Walker {
  const std::vector<Rational>& pool;

  std::vector<Rational> universe(const Assignment& a) const {
    std::vector<Rational> u = pool;
    for (const auto& [_, v] : a.points) u.push_back(v);
    for (const auto& [_, s] : a.sets) u.insert(u.end(), s.begin(), s.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
  }

  // Drop variables the subformula does not mention.
  static Assignment restrict_to(const Wmso& f, const Assignment& a) {
    Assignment out;
    for (const auto& v : free_vars(f)) {
      if (is_set_variable(v)) {
        out.sets[v] = a.sets.at(v);
      } else {
        out.points[v] = a.points.at(v);
      }
    }
    return out;
  }

  bool run(const Wmso& f, const Assignment& outer) const {
    const bool quantifier = f->kind != WmsoKind::less && f->kind != WmsoKind::eq && f->kind != WmsoKind::mem &&
                            f->kind != WmsoKind::connective;
    Assignment a = quantifier ? restrict_to(f, outer) : outer;
    switch (f->kind) {
      case WmsoKind::less: return a.points.at(f->a) < a.points.at(f->b);
      case WmsoKind::eq: return a.points.at(f->a) == a.points.at(f->b);
      case WmsoKind::mem: {
        const auto& s = a.sets.at(f->b);
        return std::find(s.begin(), s.end(), a.points.at(f->a)) != s.end();
      }
      case WmsoKind::exists_pt:
      case WmsoKind::forall_pt: {
        std::vector<Rational> u = universe(a);
        // Midpoints and far points stand in for each gap.
        std::vector<Rational> range = u;
        if (u.empty()) {
          range.push_back(Rational(0));
        } else {
          range.push_back(u.front() - Rational(1));
          range.push_back(u.back() + Rational(1));
          for (std::size_t i = 0; i + 1 < u.size(); ++i) range.push_back((u[i] + u[i + 1]) / Rational(2));
        }
        const bool universal = f->kind == WmsoKind::forall_pt;
        for (const auto& q : range) {
          a.points[f->a] = q;
          if (run(f->left, a) != universal) return !universal;
        }
        return universal;
      }
      case WmsoKind::exists_set:
      case WmsoKind::forall_set: {
        std::vector<Rational> u = universe(a);
        const bool universal = f->kind == WmsoKind::forall_set;
        for (std::size_t mask = 0; mask < (std::size_t{1} << u.size()); ++mask) {
          std::vector<Rational> s;
          for (std::size_t i = 0; i < u.size(); ++i) {
            if ((mask >> i) & 1u) s.push_back(u[i]);
          }
          a.sets[f->a] = std::move(s);
          if (run(f->left, a) != universal) return !universal;
        }
        return universal;
      }
      case WmsoKind::connective: break;
    }
    switch (f->op) {
      case Connective::not_: return !run(f->left, a);
      case Connective::and_: return run(f->left, a) && run(f->right, a);
      case Connective::or_: return run(f->left, a) || run(f->right, a);
      case Connective::implies: return !run(f->left, a) || run(f->right, a);
      case Connective::iff: return run(f->left, a) == run(f->right, a);
    }
    return false;
  }
};

}  // namespace

bool brute_force_eval(const Wmso& f, const Assignment& a, const std::vector<Rational>& pool) {
  if (pool.size() > 12) throw PreconditionError("brute-force pool too large");
  std::set<std::string> assigned;
  for (const auto& [k, _] : a.points) assigned.insert(k);
  for (const auto& [k, _] : a.sets) assigned.insert(k);
  check_scope(f, assigned);
  return Walker{pool}.run(f, a);
}

std::vector<Rational> default_pool() {
  return {Rational(-3), Rational(-1), Rational(0), Rational(1, 3), Rational(1), Rational(5, 2)};
}

}  // namespace qwi::oracles
