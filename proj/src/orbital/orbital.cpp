#include "qwi/orbital.hpp"

#include <algorithm>

#include "qwi/error.hpp"

namespace qwi {

namespace {

// A block of a PLMap's pattern with its actual geometry.  Fixed regions are
// closed [lo, hi]; orbitals are open (lo, hi).
struct ConcreteBlock {
  bool moving = false;
  ExtRational lo;
  ExtRational hi;
  Parity parity = Parity::zero;
};

std::vector<ConcreteBlock> concrete_blocks(const PLMap& f) {
  std::vector<ConcreteBlock> out;
  FixedStructure fs = fixed_structure(f);
  for (const auto& p : fs.points) out.push_back({false, p, p, Parity::zero});
  for (const auto& i : fs.intervals) out.push_back({false, i.lo, i.hi, Parity::zero});
  for (const auto& c : support_components(f)) out.push_back({true, c.interval.lo, c.interval.hi, c.parity});
  std::sort(out.begin(), out.end(), [](const ConcreteBlock& a, const ConcreteBlock& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.moving && b.moving;
  });
  return out;
}

BoundaryKind kind_of(const ExtRational& e, bool left) {
  if (e.is_finite()) return BoundaryKind::rational;
  return left ? BoundaryKind::minus_inf : BoundaryKind::plus_inf;
}

bool finite_kind(BoundaryKind k) { return k == BoundaryKind::rational || k == BoundaryKind::irrational; }

std::vector<std::size_t> moving_positions(const std::vector<Block>& word) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (is_moving(word[i])) out.push_back(i);
  }
  return out;
}

std::size_t count_moving(const std::vector<Block>& word) { return moving_positions(word).size(); }

std::vector<Block> primitive_root(const std::vector<Block>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return {w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return w;
}

std::vector<Block> min_rotation(const std::vector<Block>& w) {
  std::vector<Block> best = w;
  std::vector<Block> r = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

void rotate_left(std::vector<Block>& w) { std::rotate(w.begin(), w.begin() + 1, w.end()); }
void rotate_right(std::vector<Block>& w) { std::rotate(w.rbegin(), w.rbegin() + 1, w.rend()); }

bool allowed_fixed(FixedRegionType t, BoundaryKind left, BoundaryKind right) {
  switch (t) {
    case FixedRegionType::empty:
      return left == BoundaryKind::irrational && right == BoundaryKind::irrational;
    case FixedRegionType::singleton:
      return left == BoundaryKind::rational && right == BoundaryKind::rational;
    default:
      return t == region_type_between(left, right);
  }
}

// Linearised view of a pattern used by restrict_pattern: index -|w|..-1 is
// the copy of the left word nearest the core, 0..|core|-1 the core, and
// |core|.. the right tail copies.
class Linear {
 public:
  explicit Linear(const OrbitalPattern& p) : p_(p) {}

  const Block& at(long i) const {
    const long nc = static_cast<long>(p_.core.size());
    if (i < 0) {
      const long nw = static_cast<long>(p_.left_tail.size());
      return p_.left_tail[static_cast<std::size_t>(((i % nw) + nw) % nw)];
    }
    if (i < nc) return p_.core[static_cast<std::size_t>(i)];
    const long nv = static_cast<long>(p_.right_tail.size());
    return p_.right_tail[static_cast<std::size_t>((i - nc) % nv)];
  }

  const MovingBlock& moving(long i) const { return std::get<MovingBlock>(at(i)); }

  // Fixed region between two kept orbitals at linear indices a < b.
  FixedBlock between(long a, long b) const {
    if (b - a == 2) return std::get<FixedBlock>(at(a + 1));
    return FixedBlock{region_type_between(moving(a).right, moving(b).left)};
  }

 private:
  const OrbitalPattern& p_;
};

std::vector<long> selected_positions(const std::vector<Block>& word, const std::vector<bool>& mask) {
  auto pos = moving_positions(word);
  if (mask.size() != pos.size()) throw PreconditionError("selection mask does not match the pattern");
  std::vector<long> out;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    if (mask[k]) out.push_back(static_cast<long>(pos[k]));
  }
  return out;
}

std::string_view boundary_token(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::minus_inf: return "-inf";
    case BoundaryKind::plus_inf: return "inf";
    case BoundaryKind::rational: return "rat";
    case BoundaryKind::irrational: return "irr";
  }
  return "?";
}

std::string_view fixed_token(FixedRegionType t) {
  switch (t) {
    case FixedRegionType::empty: return "empty";
    case FixedRegionType::singleton: return "point";
    case FixedRegionType::no_min_no_max: return "open";
    case FixedRegionType::min_only: return "min";
    case FixedRegionType::max_only: return "max";
    case FixedRegionType::min_and_max: return "minmax";
  }
  return "?";
}

const std::vector<Block>& all_blocks() {
  static const std::vector<Block> blocks = [] {
    std::vector<Block> out;
    const BoundaryKind kinds[] = {BoundaryKind::minus_inf, BoundaryKind::plus_inf, BoundaryKind::rational,
                                  BoundaryKind::irrational};
    for (Parity par : {Parity::plus, Parity::minus}) {
      for (BoundaryKind l : kinds) {
        for (BoundaryKind r : kinds) out.push_back(MovingBlock{par, l, r});
      }
    }
    for (FixedRegionType t : {FixedRegionType::empty, FixedRegionType::singleton, FixedRegionType::no_min_no_max,
                              FixedRegionType::min_only, FixedRegionType::max_only, FixedRegionType::min_and_max}) {
      out.push_back(FixedBlock{t});
    }
    return out;
  }();
  return blocks;
}

}  // namespace

std::vector<Orbital> orbitals_of(const PLMap& f) {
  std::vector<Orbital> out;
  for (const auto& c : support_components(f)) out.push_back({c.interval, c.parity});
  return out;
}

FixedRegionType region_type_between(BoundaryKind left, BoundaryKind right) {
  const bool has_min = left == BoundaryKind::rational;
  const bool has_max = right == BoundaryKind::rational;
  if (has_min && has_max) return FixedRegionType::min_and_max;
  if (has_min) return FixedRegionType::min_only;
  if (has_max) return FixedRegionType::max_only;
  return FixedRegionType::no_min_no_max;
}

std::optional<std::string> check_pattern(const OrbitalPattern& p) {
  if (p.left_tail.empty() && p.core.empty() && p.right_tail.empty()) return "pattern has no blocks";
  std::vector<const Block*> window;
  const bool lt = !p.left_tail.empty();
  const bool rt = !p.right_tail.empty();
  for (int copy = 0; lt && copy < 2; ++copy) {
    for (const auto& b : p.left_tail) window.push_back(&b);
  }
  for (const auto& b : p.core) window.push_back(&b);
  for (int copy = 0; rt && copy < 2; ++copy) {
    for (const auto& b : p.right_tail) window.push_back(&b);
  }
  const std::size_t n = window.size();
  auto pred = [&](std::size_t i) -> const Block* {
    if (i > 0) return window[i - 1];
    return lt ? &p.left_tail.back() : nullptr;
  };
  auto succ = [&](std::size_t i) -> const Block* {
    if (i + 1 < n) return window[i + 1];
    return rt ? &p.right_tail.front() : nullptr;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Block& b = *window[i];
    const Block* before = pred(i);
    const Block* after = succ(i);
    if ((before && is_moving(*before) == is_moving(b)) || (after && is_moving(*after) == is_moving(b))) {
      return "Moving and Fixed blocks must alternate";
    }
    if (const auto* m = std::get_if<MovingBlock>(&b)) {
      if (m->parity == Parity::zero) return "moving block with parity 0";
      if (before ? !finite_kind(m->left) : m->left != BoundaryKind::minus_inf) {
        return "left boundary of " + to_string(b) + " inconsistent with its predecessor";
      }
      if (after ? !finite_kind(m->right) : m->right != BoundaryKind::plus_inf) {
        return "right boundary of " + to_string(b) + " inconsistent with its successor";
      }
    } else {
      const auto& fb = std::get<FixedBlock>(b);
      BoundaryKind l = before ? std::get<MovingBlock>(*before).right : BoundaryKind::minus_inf;
      BoundaryKind r = after ? std::get<MovingBlock>(*after).left : BoundaryKind::plus_inf;
      if (!allowed_fixed(fb.type, l, r)) {
        return "fixed region " + to_string(b) + " inconsistent with boundaries " + std::string(boundary_token(l)) +
               "/" + std::string(boundary_token(r));
      }
    }
  }
  return std::nullopt;
}

OrbitalPattern pattern_of(const PLMap& f) {
  OrbitalPattern p;
  for (const auto& c : concrete_blocks(f)) {
    if (c.moving) {
      p.core.push_back(MovingBlock{c.parity, kind_of(c.lo, true), kind_of(c.hi, false)});
      continue;
    }
    FixedRegionType t;
    if (c.lo == c.hi) {
      t = FixedRegionType::singleton;
    } else {
      t = region_type_between(c.lo.is_finite() ? BoundaryKind::rational : BoundaryKind::minus_inf,
                              c.hi.is_finite() ? BoundaryKind::rational : BoundaryKind::plus_inf);
    }
    p.core.push_back(FixedBlock{t});
  }
  return p;
}

OrbitalPattern canonical_form(const OrbitalPattern& p) {
  std::vector<Block> u = primitive_root(p.left_tail);
  std::vector<Block> v = primitive_root(p.right_tail);
  std::vector<Block> core = p.core;
  const bool lt = !u.empty();
  const bool rt = !v.empty();

  if (lt && rt) {
    // Expose enough of the right tail that left absorption reaches the true
    // end of the left-periodic region (two periods agreeing on |u|+|v|
    // letters agree forever).
    for (std::size_t k = 0; k < u.size() + v.size(); ++k) {
      core.push_back(v.front());
      rotate_left(v);
    }
  }
  if (lt) {
    std::size_t skip = 0;
    while (skip < core.size() && core[skip] == u.front()) {
      ++skip;
      rotate_left(u);
    }
    core.erase(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(skip));
  }
  if (lt && rt && core.empty() && u == v) {
    // One periodic bi-infinite word: every shift is the same order.
    u = min_rotation(u);
    return OrbitalPattern{u, {}, u};
  }
  if (rt) {
    while (!core.empty() && core.back() == v.back()) {
      core.pop_back();
      rotate_right(v);
    }
  }
  return OrbitalPattern{std::move(u), std::move(core), std::move(v)};
}

bool pattern_iso(const OrbitalPattern& p, const OrbitalPattern& q) { return canonical_form(p) == canonical_form(q); }

bool has_inf_orbitals(const OrbitalPattern& p) {
  auto any_moving = [](const std::vector<Block>& w) { return std::any_of(w.begin(), w.end(), is_moving); };
  return any_moving(p.left_tail) || any_moving(p.right_tail);
}

std::size_t Selection::size() const {
  auto c = [](const std::vector<bool>& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); };
  return c(core) + c(left_tail) + c(right_tail);
}

Selection empty_selection(const OrbitalPattern& p) {
  return Selection{std::vector<bool>(count_moving(p.core), false), std::vector<bool>(count_moving(p.left_tail), false),
                   std::vector<bool>(count_moving(p.right_tail), false)};
}

OrbitalPattern restrict_pattern(const OrbitalPattern& p, const Selection& sel) {
  Linear lin(p);
  const long nw = static_cast<long>(p.left_tail.size());
  const long nc = static_cast<long>(p.core.size());
  const long nv = static_cast<long>(p.right_tail.size());
  OrbitalPattern out;
  std::optional<long> prev;

  auto lead_in = [&](long next) {
    if (prev) {
      out.core.push_back(lin.between(*prev, next));
    } else if (lin.moving(next).left != BoundaryKind::minus_inf) {
      out.core.push_back(FixedBlock{region_type_between(BoundaryKind::minus_inf, lin.moving(next).left)});
    }
  };

  auto left = selected_positions(p.left_tail, sel.left_tail);
  if (!left.empty()) {
    const std::size_t k = left.size();
    out.left_tail.push_back(lin.between(left[k - 1] - 2 * nw, left[0] - nw));
    for (std::size_t j = 0; j < k; ++j) {
      if (j) out.left_tail.push_back(lin.between(left[j - 1] - nw, left[j] - nw));
      out.left_tail.push_back(lin.moving(left[j] - nw));
    }
    prev = left[k - 1] - nw;
  }

  auto core = selected_positions(p.core, sel.core);
  for (long i : core) {
    lead_in(i);
    out.core.push_back(lin.moving(i));
    prev = i;
  }

  auto right = selected_positions(p.right_tail, sel.right_tail);
  if (!right.empty()) {
    lead_in(nc + right[0]);
    const std::size_t m = right.size();
    for (std::size_t j = 0; j < m; ++j) {
      out.right_tail.push_back(lin.moving(nc + right[j]));
      long next = j + 1 < m ? nc + right[j + 1] : nc + right[0] + nv;
      out.right_tail.push_back(lin.between(nc + right[j], next));
    }
  } else if (prev) {
    BoundaryKind r = lin.moving(*prev).right;
    if (r != BoundaryKind::plus_inf) out.core.push_back(FixedBlock{region_type_between(r, BoundaryKind::plus_inf)});
  } else {
    out.core.push_back(FixedBlock{FixedRegionType::no_min_no_max});
  }
  return out;
}

OrbitalPattern unroll_left(const OrbitalPattern& p) {
  OrbitalPattern q = p;
  q.core.insert(q.core.begin(), p.left_tail.begin(), p.left_tail.end());
  return q;
}

OrbitalPattern unroll_right(const OrbitalPattern& p) {
  OrbitalPattern q = p;
  q.core.insert(q.core.end(), p.right_tail.begin(), p.right_tail.end());
  return q;
}

int CofinalClass::id() const {
  return (parity == Parity::plus ? 0 : 4) + (side == Side::right ? 0 : 2) + (rational_endpoint ? 0 : 1);
}

std::string CofinalClass::str() const {
  return "(" + std::string(to_string(parity)) + "," + std::string(to_string(side)) + "," +
         (rational_endpoint ? "rational" : "irrational") + ")";
}

std::optional<CofinalClass> classify_cofinal(const OrbitalPattern& p) {
  if (!p.finite() || check_pattern(p)) return std::nullopt;
  const MovingBlock* only = nullptr;
  for (const auto& b : p.core) {
    if (const auto* m = std::get_if<MovingBlock>(&b)) {
      if (only) return std::nullopt;
      only = m;
    }
  }
  if (!only) return std::nullopt;
  const bool left_inf = only->left == BoundaryKind::minus_inf;
  const bool right_inf = only->right == BoundaryKind::plus_inf;
  if (left_inf == right_inf) return std::nullopt;  // coterminal or bounded
  BoundaryKind finite_end = left_inf ? only->right : only->left;
  return CofinalClass{only->parity, left_inf ? Side::left : Side::right, finite_end == BoundaryKind::rational};
}

std::optional<Lemma21Split> lemma21_decompose(const OrbitalPattern& p) {
  if (!has_inf_orbitals(p)) throw PreconditionError("lemma21_decompose needs infinitely many moving orbitals");
  const bool use_right = count_moving(p.right_tail) > 0;
  const auto& word = use_right ? p.right_tail : p.left_tail;
  const auto positions = moving_positions(word);

  // Thinning: keep, in every period, only the first orbital of the word.
  // All kept orbitals then share parity and boundary kinds, and the fixed
  // regions between consecutive kept orbitals are all of one type.
  Selection sel = empty_selection(p);
  (use_right ? sel.right_tail : sel.left_tail)[0] = true;
  OrbitalPattern whole = restrict_pattern(p, sel);

  OrbitalPattern unrolled = use_right ? unroll_right(p) : unroll_left(p);
  Selection rest_sel = empty_selection(unrolled);
  (use_right ? rest_sel.right_tail : rest_sel.left_tail)[0] = true;
  OrbitalPattern rest = restrict_pattern(unrolled, rest_sel);

  if (!pattern_iso(whole, rest)) return std::nullopt;
  return Lemma21Split{word[positions[0]], std::move(rest), std::move(whole)};
}

bool inf_formula_holds(const OrbitalPattern& p, int search_bound) {
  const Selection blank = empty_selection(p);
  const std::size_t nc = blank.core.size();
  const std::size_t nl = blank.left_tail.size();
  const std::size_t nr = blank.right_tail.size();

  auto mask = [](std::size_t bits, std::size_t n) {
    std::vector<bool> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1u;
    return m;
  };

  std::vector<Selection> candidates;
  for (std::size_t c = 0; c < (std::size_t{1} << nc); ++c) {
    auto cm = mask(c, nc);
    if (std::count(cm.begin(), cm.end(), true) > search_bound) continue;
    for (std::size_t l = 0; l < (std::size_t{1} << nl); ++l) {
      for (std::size_t r = 0; r < (std::size_t{1} << nr); ++r) {
        candidates.push_back(Selection{cm, mask(l, nl), mask(r, nr)});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Selection& a, const Selection& b) { return a.size() < b.size(); });

  const OrbitalPattern unrolled_left = nl ? unroll_left(p) : p;
  const OrbitalPattern unrolled_right = nr ? unroll_right(p) : p;
  const std::size_t left_word_moving = nl;

  for (const Selection& sel : candidates) {
    if (sel.size() == 0) continue;
    const OrbitalPattern y = canonical_form(restrict_pattern(p, sel));
    auto matches = [&](const OrbitalPattern& base, const Selection& without) {
      return canonical_form(restrict_pattern(base, without)) == y;
    };
    for (std::size_t i = 0; i < nc; ++i) {
      if (!sel.core[i]) continue;
      Selection without = sel;
      without.core[i] = false;
      if (matches(p, without)) return true;
    }
    for (std::size_t j = 0; j < nr; ++j) {
      if (!sel.right_tail[j]) continue;
      Selection without = sel;
      auto copy = sel.right_tail;
      copy[j] = false;
      without.core.insert(without.core.end(), copy.begin(), copy.end());
      if (matches(unrolled_right, without)) return true;
    }
    for (std::size_t j = 0; j < nl; ++j) {
      if (!sel.left_tail[j]) continue;
      Selection without = sel;
      auto copy = sel.left_tail;
      copy[j] = false;
      without.core.insert(without.core.begin(), copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(left_word_moving));
      if (matches(unrolled_left, without)) return true;
    }
  }
  return false;
}

std::vector<OrbitalPattern> enumerate_patterns(int max_core, int max_tail) {
  const auto& alphabet = all_blocks();

  // Tail words: every word that is consistent when repeated on both sides.
  std::vector<std::vector<Block>> words;
  std::vector<Block> word;
  auto grow_words = [&](auto&& self, int remaining) -> void {
    if (!word.empty() && !check_pattern(OrbitalPattern{word, {}, word})) words.push_back(word);
    if (remaining == 0) return;
    for (const auto& b : alphabet) {
      if (!word.empty() && is_moving(word.back()) == is_moving(b)) continue;
      word.push_back(b);
      self(self, remaining - 1);
      word.pop_back();
    }
  };
  grow_words(grow_words, max_tail);

  std::vector<std::vector<Block>> tails{{}};
  tails.insert(tails.end(), words.begin(), words.end());

  std::vector<OrbitalPattern> out;
  OrbitalPattern cur;
  auto left_context = [&](std::size_t i) -> std::optional<BoundaryKind> {
    // Boundary kind facing block i from the left (nullopt: nothing precedes).
    const Block* before = i > 0 ? &cur.core[i - 1] : (cur.left_tail.empty() ? nullptr : &cur.left_tail.back());
    if (!before) return std::nullopt;
    if (const auto* m = std::get_if<MovingBlock>(before)) return m->right;
    return BoundaryKind::rational;  // unused for Moving-after-Fixed; checked at the leaf
  };
  auto grow_core = [&](auto&& self, int remaining) -> void {
    if (!check_pattern(cur)) out.push_back(cur);
    if (remaining == 0) return;
    for (const auto& b : alphabet) {
      const std::size_t i = cur.core.size();
      const Block* before = i > 0 ? &cur.core[i - 1] : (cur.left_tail.empty() ? nullptr : &cur.left_tail.back());
      if (before && is_moving(*before) == is_moving(b)) continue;
      if (const auto* m = std::get_if<MovingBlock>(&b)) {
        if (before ? !finite_kind(m->left) : m->left != BoundaryKind::minus_inf) continue;
        if (m->right == BoundaryKind::minus_inf) continue;
        if (before) {
          // The fixed region before must accept this left boundary.
          const auto& fb = std::get<FixedBlock>(*before);
          const Block* bb = i > 1 ? &cur.core[i - 2]
                                  : (i == 1 ? (cur.left_tail.empty() ? nullptr : &cur.left_tail.back())
                                            : (cur.left_tail.size() > 1 ? &cur.left_tail[cur.left_tail.size() - 2]
                                                                        : nullptr));
          BoundaryKind l = bb ? std::get<MovingBlock>(*bb).right : BoundaryKind::minus_inf;
          if (!allowed_fixed(fb.type, l, m->left)) continue;
        }
      } else {
        auto l = left_context(i);
        BoundaryKind lk = l ? *l : BoundaryKind::minus_inf;
        if (l && *l == BoundaryKind::plus_inf) continue;
        const auto t = std::get<FixedBlock>(b).type;
        bool possible = false;
        for (BoundaryKind r : {BoundaryKind::rational, BoundaryKind::irrational, BoundaryKind::plus_inf}) {
          possible = possible || allowed_fixed(t, lk, r);
        }
        if (!possible) continue;
      }
      cur.core.push_back(b);
      self(self, remaining - 1);
      cur.core.pop_back();
    }
  };
  for (const auto& lt : tails) {
    for (const auto& rt : tails) {
      cur = OrbitalPattern{lt, {}, rt};
      grow_core(grow_core, max_core);
    }
  }
  return out;
}

std::string to_string(const Block& b) {
  if (const auto* m = std::get_if<MovingBlock>(&b)) {
    return "M(" + std::string(to_string(m->parity)) + "," + std::string(boundary_token(m->left)) + "," +
           std::string(boundary_token(m->right)) + ")";
  }
  return "F(" + std::string(fixed_token(std::get<FixedBlock>(b).type)) + ")";
}

std::string to_string(const OrbitalPattern& p) {
  auto list = [](const std::vector<Block>& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + to_string(w[i]);
    return s + "]";
  };
  return "pattern ltail=" + list(p.left_tail) + " core=" + list(p.core) + " rtail=" + list(p.right_tail);
}

std::ostream& operator<<(std::ostream& os, const OrbitalPattern& p) { return os << to_string(p); }

OrbitalPattern parse_pattern(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError(what, 1, static_cast<int>(pos + 1)); };
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) ++pos;
  };
  auto eat = [&](std::string_view lit) {
    skip_ws();
    if (text.substr(pos, lit.size()) == lit) {
      pos += lit.size();
      return true;
    }
    return false;
  };
  auto word_until = [&](std::string_view stops) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && stops.find(text[pos]) == std::string_view::npos) ++pos;
    std::string_view w = text.substr(start, pos - start);
    while (!w.empty() && w.back() == ' ') w.remove_suffix(1);
    return w;
  };
  auto boundary = [&](std::string_view tok) {
    for (BoundaryKind k : {BoundaryKind::minus_inf, BoundaryKind::plus_inf, BoundaryKind::rational,
                           BoundaryKind::irrational}) {
      if (boundary_token(k) == tok) return k;
    }
    fail("unknown boundary kind '" + std::string(tok) + "'");
    return BoundaryKind::rational;
  };
  auto block = [&]() -> Block {
    if (eat("M(")) {
      std::string_view sign = word_until(",");
      if (!eat(",")) fail("expected ','");
      Parity par = sign == "+" ? Parity::plus : (sign == "-" ? Parity::minus : Parity::zero);
      if (par == Parity::zero) fail("moving block sign must be + or -");
      BoundaryKind l = boundary(word_until(","));
      if (!eat(",")) fail("expected ','");
      BoundaryKind r = boundary(word_until(")"));
      if (!eat(")")) fail("expected ')'");
      return MovingBlock{par, l, r};
    }
    if (eat("F(")) {
      std::string_view tok = word_until(")");
      if (!eat(")")) fail("expected ')'");
      for (FixedRegionType t : {FixedRegionType::empty, FixedRegionType::singleton, FixedRegionType::no_min_no_max,
                                FixedRegionType::min_only, FixedRegionType::max_only, FixedRegionType::min_and_max}) {
        if (fixed_token(t) == tok) return FixedBlock{t};
      }
      fail("unknown fixed region type '" + std::string(tok) + "'");
    }
    fail("expected M(...) or F(...)");
    return FixedBlock{};
  };
  auto list = [&](std::vector<Block>& into) {
    if (!eat("[")) fail("expected '['");
    while (!eat("]")) {
      if (pos >= text.size()) fail("unterminated block list");
      into.push_back(block());
    }
  };

  OrbitalPattern p;
  if (!eat("pattern")) fail("expected 'pattern'");
  bool seen_core = false;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (eat("ltail=")) {
      list(p.left_tail);
    } else if (eat("core=")) {
      list(p.core);
      seen_core = true;
    } else if (eat("rtail=")) {
      list(p.right_tail);
    } else {
      fail("expected ltail=, core= or rtail=");
    }
  }
  if (!seen_core) fail("missing core=");
  return p;
}

Rational Conjugator::transport(const Segment& s, const Rational& x, bool forward) {
  const PLMap& src = forward ? *s.source : *s.target;
  const PLMap& src_inv = forward ? *s.source_inv : *s.target_inv;
  const PLMap& dst = forward ? *s.target : *s.source;
  const PLMap& dst_inv = forward ? *s.target_inv : *s.source_inv;
  const Rational& base = forward ? s.base : s.image_base;
  const Rational& image_base = forward ? s.image_base : s.base;
  const Rational ratio = forward ? s.ratio : Rational(1) / s.ratio;

  // Move x into the fundamental domain [base, src(base)).
  const Rational top = src.apply(base);
  Rational t = x;
  long n = 0;
  while (t >= top) {
    t = src_inv.apply(t);
    ++n;
  }
  while (t < base) {
    t = src.apply(t);
    --n;
  }
  Rational y = image_base + (t - base) * ratio;
  for (; n > 0; --n) y = dst.apply(y);
  for (; n < 0; ++n) y = dst_inv.apply(y);
  return y;
}

Rational Conjugator::apply(const Rational& x) const {
  const ExtRational ex(x);
  for (const auto& s : segments_) {
    if (s.moving) {
      if (s.lo < ex && ex < s.hi) return transport(s, x, true);
      continue;
    }
    if (!(s.lo <= ex && ex <= s.hi)) continue;
    if (s.lo.is_finite() && s.hi.is_finite()) {
      if (s.lo == s.hi) return s.image_lo.value();
      return s.image_lo.value() +
             (x - s.lo.value()) * (s.image_hi.value() - s.image_lo.value()) / (s.hi.value() - s.lo.value());
    }
    if (s.lo.is_finite()) return x + (s.image_lo.value() - s.lo.value());
    if (s.hi.is_finite()) return x + (s.image_hi.value() - s.hi.value());
    return x;
  }
  throw InvariantViolation("conjugator segments do not cover " + x.str());
}

Rational Conjugator::apply_inverse(const Rational& y) const {
  const ExtRational ey(y);
  for (const auto& s : segments_) {
    if (s.moving) {
      if (s.image_lo < ey && ey < s.image_hi) return transport(s, y, false);
      continue;
    }
    if (!(s.image_lo <= ey && ey <= s.image_hi)) continue;
    if (s.lo.is_finite() && s.hi.is_finite()) {
      if (s.lo == s.hi) return s.lo.value();
      return s.lo.value() +
             (y - s.image_lo.value()) * (s.hi.value() - s.lo.value()) / (s.image_hi.value() - s.image_lo.value());
    }
    if (s.lo.is_finite()) return y - (s.image_lo.value() - s.lo.value());
    if (s.hi.is_finite()) return y - (s.image_hi.value() - s.hi.value());
    return y;
  }
  throw InvariantViolation("conjugator segments do not cover " + y.str());
}

std::optional<Conjugator> conjugating_witness(const PLMap& f, const PLMap& g) {
  if (!pattern_iso(pattern_of(f), pattern_of(g))) return std::nullopt;
  const auto from = concrete_blocks(f);
  const auto to = concrete_blocks(g);
  if (from.size() != to.size()) return std::nullopt;

  auto fp = std::make_shared<const PLMap>(f);
  auto fi = std::make_shared<const PLMap>(inverse(f));
  auto gp = std::make_shared<const PLMap>(g);
  auto gi = std::make_shared<const PLMap>(inverse(g));

  Conjugator h;
  for (std::size_t i = 0; i < from.size(); ++i) {
    Conjugator::Segment s;
    s.moving = from[i].moving;
    s.lo = from[i].lo;
    s.hi = from[i].hi;
    s.image_lo = to[i].lo;
    s.image_hi = to[i].hi;
    if (s.moving) {
      const bool up = from[i].parity == Parity::plus;
      s.source = up ? fp : fi;
      s.source_inv = up ? fi : fp;
      s.target = up ? gp : gi;
      s.target_inv = up ? gi : gp;
      s.base = pick_fresh(QInterval{s.lo, s.hi});
      s.image_base = pick_fresh(QInterval{s.image_lo, s.image_hi});
      s.ratio = (s.target->apply(s.image_base) - s.image_base) / (s.source->apply(s.base) - s.base);
    }
    h.segments_.push_back(std::move(s));
  }
  return h;
}

}  // namespace qwi
