#include "qwi/wmso.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qwi/error.hpp"

namespace qwi {

namespace {

std::vector<Rational> parse_set(std::string_view body) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = body.find(',', start);
    if (end == std::string_view::npos) end = body.size();
    std::string_view item = body.substr(start, end - start);
    if (item.find_first_not_of(" \t") != std::string_view::npos) out.push_back(Rational::parse(item));
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

class Evaluator {
 public:
  explicit Evaluator(int cap) : cap_(cap) {}

  bool eval(const Wmso& f, const Assignment& a, int level = 0) {
    switch (f->kind) {
      case WmsoKind::less: return point(a, f->a) < point(a, f->b);
      case WmsoKind::eq: return point(a, f->a) == point(a, f->b);
      case WmsoKind::mem: {
        const auto& s = set(a, f->b);
        return std::binary_search(s.begin(), s.end(), point(a, f->a));
      }
      case WmsoKind::exists_pt:
      case WmsoKind::forall_pt: return point_quantifier(f, a, level);
      case WmsoKind::exists_set:
      case WmsoKind::forall_set: return set_quantifier(f, a, level);
      case WmsoKind::connective: break;
    }
    switch (f->op) {
      case Connective::not_: return !eval(f->left, a, level);
      case Connective::and_: return eval(f->left, a, level) && eval(f->right, a, level);
      case Connective::or_: return eval(f->left, a, level) || eval(f->right, a, level);
      case Connective::implies: return !eval(f->left, a, level) || eval(f->right, a, level);
      case Connective::iff: return eval(f->left, a, level) == eval(f->right, a, level);
    }
    return false;
  }

 private:
  static const Rational& point(const Assignment& a, const std::string& v) {
    auto it = a.points.find(v);
    if (it == a.points.end()) throw ScopeError("unbound variable", v);
    return it->second;
  }
  static const std::vector<Rational>& set(const Assignment& a, const std::string& v) {
    auto it = a.sets.find(v);
    if (it == a.sets.end()) throw ScopeError("unbound variable", v);
    return it->second;
  }

  // Only the quantifier's own free variables can influence it, so the
  // candidate ranges are built from their values alone.
  Assignment relevant(const Wmso& f, const Assignment& a) {
    auto it = free_.find(f.get());
    if (it == free_.end()) it = free_.emplace(f.get(), free_vars(f)).first;
    Assignment out;
    for (const auto& v : it->second) {
      if (is_set_variable(v)) {
        out.sets.emplace(v, set(a, v));
      } else {
        out.points.emplace(v, point(a, v));
      }
    }
    return out;
  }

  bool point_quantifier(const Wmso& f, const Assignment& outer, int level) {
    const bool universal = f->kind == WmsoKind::forall_pt;
    Assignment a = relevant(f, outer);
    const auto candidates = point_candidates(ConfigOutline::of(a));
    for (const auto& c : candidates) {
      a.points[f->a] = c;
      if (eval(f->left, a, level + 1) != universal) return !universal;
    }
    return universal;
  }

  bool set_quantifier(const Wmso& f, const Assignment& outer, int level) {
    const bool universal = f->kind == WmsoKind::forall_set;
    Assignment a = relevant(f, outer);
    const ConfigOutline outline = ConfigOutline::of(a);
    // Fresh points per gap: what the rest of the cap budget can still query.
    const int fresh = std::max(0, cap_ - level - 1);
    bool decided = any_set_candidate(outline, fresh, [&](const std::vector<Rational>& s) {
      a.sets[f->a] = s;
      return eval(f->left, a, level + 1) != universal;
    });
    return decided ? !universal : universal;
  }

  std::map<const WmsoFormula*, std::set<std::string>> free_;
  int cap_;
};

}  // namespace

Assignment Assignment::parse(std::string_view text) {
  Assignment a;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t eq = text.find('=', i);
    if (eq == std::string_view::npos) throw ParseError("expected name=value", 1, static_cast<int>(i + 1));
    std::string name(trim(text.substr(i, eq - i)));
    if (name.empty()) throw ParseError("missing variable name", 1, static_cast<int>(i + 1));
    std::size_t j = eq + 1;
    while (j < text.size() && text[j] == ' ') ++j;
    if (is_set_variable(name)) {
      if (j >= text.size() || text[j] != '{') throw ParseError("set value must be {...}", 1, static_cast<int>(j + 1));
      std::size_t close = text.find('}', j);
      if (close == std::string_view::npos) throw ParseError("unterminated set", 1, static_cast<int>(j + 1));
      a.set(name, parse_set(text.substr(j + 1, close - j - 1)));
      j = close + 1;
    } else {
      std::size_t end = text.find(',', j);
      if (end == std::string_view::npos) end = text.size();
      a.points[name] = Rational::parse(text.substr(j, end - j));
      j = end;
    }
    while (j < text.size() && (text[j] == ' ' || text[j] == ',')) ++j;
    i = j;
  }
  return a;
}

std::string Assignment::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : points) {
    os << (first ? "" : ",") << k << "=" << v;
    first = false;
  }
  for (const auto& [k, v] : sets) {
    os << (first ? "" : ",") << k << "={";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    first = false;
  }
  return os.str();
}

void Assignment::set(const std::string& name, std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  sets[name] = std::move(values);
}

ConfigOutline ConfigOutline::of(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  ConfigOutline o;
  o.landmarks = std::move(values);
  ExtRational from = ExtRational::neg_inf();
  for (const auto& q : o.landmarks) {
    o.gaps.push_back({from, q});
    from = q;
  }
  o.gaps.push_back({from, ExtRational::pos_inf()});
  return o;
}

ConfigOutline ConfigOutline::of(const Assignment& a) {
  std::vector<Rational> values;
  for (const auto& [_, v] : a.points) values.push_back(v);
  for (const auto& [_, s] : a.sets) values.insert(values.end(), s.begin(), s.end());
  return of(std::move(values));
}

std::vector<Rational> fresh_points(const QInterval& gap, int count) {
  std::vector<Rational> out;
  QInterval rest = gap;
  for (int i = 0; i < count; ++i) {
    out.push_back(pick_fresh(rest));
    rest.lo = out.back();
  }
  return out;
}

std::vector<Rational> point_candidates(const ConfigOutline& outline) {
  std::vector<Rational> out = outline.landmarks;
  for (const auto& g : outline.gaps) out.push_back(pick_fresh(g));
  std::sort(out.begin(), out.end());
  return out;
}

bool any_set_candidate(const ConfigOutline& outline, int cap,
                       const std::function<bool(const std::vector<Rational>&)>& visit) {
  const std::size_t n = outline.landmarks.size();
  if (n > 24) throw PreconditionError("too many landmarks for set enumeration");
  std::vector<std::vector<Rational>> fresh;
  for (const auto& g : outline.gaps) fresh.push_back(fresh_points(g, cap));
  std::vector<int> counts(outline.gaps.size(), 0);
  std::vector<Rational> candidate;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::fill(counts.begin(), counts.end(), 0);
    while (true) {
      candidate.clear();
      for (std::size_t g = 0; g < counts.size(); ++g) {
        candidate.insert(candidate.end(), fresh[g].begin(), fresh[g].begin() + counts[g]);
        if (g < n && ((mask >> g) & 1u)) candidate.push_back(outline.landmarks[g]);
      }
      if (visit(candidate)) return true;
      // Odometer over the per-gap counts.
      std::size_t g = 0;
      while (g < counts.size() && counts[g] == cap) counts[g++] = 0;
      if (g == counts.size()) break;
      ++counts[g];
    }
  }
  return false;
}

std::vector<std::vector<Rational>> set_candidates(const ConfigOutline& outline, int cap) {
  std::vector<std::vector<Rational>> out;
  any_set_candidate(outline, cap, [&](const std::vector<Rational>& s) {
    out.push_back(s);
    return false;
  });
  return out;
}

bool eval(const Wmso& f, const Assignment& a, int cap) {
  if (cap < qdepth(f)) {
    throw PreconditionError("cap " + std::to_string(cap) + " is below the quantifier depth " +
                            std::to_string(qdepth(f)));
  }
  std::set<std::string> assigned;
  for (const auto& [k, _] : a.points) assigned.insert(k);
  for (const auto& [k, _] : a.sets) assigned.insert(k);
  check_scope(f, assigned);
  for (const auto& v : free_vars(f)) {
    if (is_set_variable(v) ? !a.sets.count(v) : !a.points.count(v)) throw ScopeError("variable of the wrong sort", v);
  }
  return Evaluator(cap).eval(f, a);
}

bool decide(const Wmso& f) {
  auto fv = free_vars(f);
  if (!fv.empty()) throw ScopeError("decide needs a closed formula; free variable", *fv.begin());
  return eval(f, Assignment{}, qdepth(f));
}

std::vector<bool> stability_probe(const Wmso& f, const std::vector<int>& caps) {
  std::vector<bool> out;
  for (int c : caps) out.push_back(eval(f, Assignment{}, c));
  return out;
}

}  // namespace qwi
