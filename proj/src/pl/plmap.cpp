#include "qwi/plmap.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "qwi/error.hpp"

namespace qwi {

namespace {

// Sample point strictly inside region i of the partition given by sorted breakpoints.
Rational region_sample(const std::vector<Rational>& bps, std::size_t i) {
  QInterval gap;
  if (i > 0) gap.lo = bps[i - 1];
  if (i < bps.size()) gap.hi = bps[i];
  return pick_fresh(gap);
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Rational preimage(const PLMap& g, const Rational& y) {
  const auto& cuts = g.cuts();
  const auto& pieces = g.pieces();
  // First cut whose image is >= y bounds the piece containing the preimage.
  std::size_t lo = 0;
  std::size_t hi = cuts.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (pieces[mid].at(cuts[mid]) < y) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const LinearPiece& p = pieces[lo];
  return (y - p.intercept) / p.slope;
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view lit) {
    skip_ws();
    if (s_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view lit) {
    if (!eat(lit)) fail("expected '" + std::string(lit) + "'");
  }
  std::string_view until_any(std::string_view stops) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string_view::npos) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  Rational rational(std::string_view stops) {
    std::size_t col = pos_ + 1;
    std::string_view tok = until_any(stops);
    try {
      return Rational::parse(tok);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 1, static_cast<int>(col));
    }
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, static_cast<int>(pos_ + 1));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

PLMap::PLMap() : pieces_{LinearPiece{}} {}

PLMap PLMap::make(std::vector<Rational> cuts, std::vector<LinearPiece> pieces) {
  if (pieces.size() != cuts.size() + 1) {
    throw InvariantViolation("piece count must equal cut count + 1");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].slope.sign() <= 0) {
      throw InvariantViolation("slope of piece " + std::to_string(i) + " must be positive");
    }
  }
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (i > 0 && !(cuts[i - 1] < cuts[i])) throw InvariantViolation("cuts must be strictly increasing");
    if (pieces[i].at(cuts[i]) != pieces[i + 1].at(cuts[i])) {
      throw InvariantViolation("discontinuous at cut " + cuts[i].str());
    }
    if (pieces[i] == pieces[i + 1]) {
      throw InvariantViolation("non-canonical: identical pieces meet at cut " + cuts[i].str());
    }
  }
  return PLMap(std::move(cuts), std::move(pieces));
}

PLMap PLMap::normalized(std::vector<Rational> cuts, std::vector<LinearPiece> pieces) {
  if (pieces.size() != cuts.size() + 1) {
    throw InvariantViolation("piece count must equal cut count + 1");
  }
  std::vector<Rational> out_cuts;
  std::vector<LinearPiece> out_pieces{pieces.front()};
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (pieces[i + 1] == out_pieces.back()) continue;
    out_cuts.push_back(cuts[i]);
    out_pieces.push_back(pieces[i + 1]);
  }
  return make(std::move(out_cuts), std::move(out_pieces));
}

PLMap PLMap::affine(const Rational& slope, const Rational& intercept) {
  return make({}, {LinearPiece{slope, intercept}});
}

PLMap PLMap::through_nodes(const Rational& left_slope,
                           const std::vector<std::pair<Rational, Rational>>& nodes,
                           const Rational& right_slope) {
  if (nodes.empty()) throw PreconditionError("through_nodes needs at least one node");
  std::vector<Rational> cuts;
  std::vector<LinearPiece> pieces;
  auto ray = [](const Rational& m, const std::pair<Rational, Rational>& n) {
    return LinearPiece{m, n.second - m * n.first};
  };
  pieces.push_back(ray(left_slope, nodes.front()));
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& [x0, y0] = nodes[i];
    const auto& [x1, y1] = nodes[i + 1];
    if (!(x0 < x1) || !(y0 < y1)) throw InvariantViolation("nodes must be strictly increasing");
    cuts.push_back(x0);
    pieces.push_back(ray((y1 - y0) / (x1 - x0), nodes[i]));
  }
  cuts.push_back(nodes.back().first);
  pieces.push_back(ray(right_slope, nodes.back()));
  return normalized(std::move(cuts), std::move(pieces));
}

PLMap PLMap::parse(std::string_view text) {
  Cursor c(text);
  c.expect("pl");
  if (c.eat("id")) {
    if (!c.at_end()) c.fail("trailing input after 'pl id'");
    return PLMap();
  }
  std::vector<Rational> cuts;
  std::vector<LinearPiece> pieces;
  c.expect("cuts");
  c.expect("=");
  c.expect("[");
  if (!c.eat("]")) {
    do {
      cuts.push_back(c.rational(",]"));
    } while (c.eat(","));
    c.expect("]");
  }
  c.expect("pieces");
  c.expect("=");
  c.expect("[");
  if (!c.eat("]")) {
    do {
      c.expect("(");
      Rational m = c.rational(",)");
      c.expect(",");
      Rational b = c.rational(",)");
      c.expect(")");
      pieces.push_back(LinearPiece{m, b});
    } while (c.eat(","));
    c.expect("]");
  }
  if (!c.at_end()) c.fail("trailing input");
  return make(std::move(cuts), std::move(pieces));
}

std::string PLMap::str() const {
  if (is_identity()) return "pl id";
  std::ostringstream os;
  os << "pl cuts=[";
  for (std::size_t i = 0; i < cuts_.size(); ++i) os << (i ? "," : "") << cuts_[i];
  os << "] pieces=[";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    os << (i ? "," : "") << "(" << pieces_[i].slope << "," << pieces_[i].intercept << ")";
  }
  os << "]";
  return os.str();
}

std::size_t PLMap::piece_index(const Rational& x) const {
  return static_cast<std::size_t>(std::lower_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin());
}

QInterval PLMap::piece_domain(std::size_t i) const {
  QInterval d;
  if (i > 0) d.lo = cuts_[i - 1];
  if (i < cuts_.size()) d.hi = cuts_[i];
  return d;
}

Rational PLMap::apply(const Rational& x) const { return pieces_[piece_index(x)].at(x); }

std::ostream& operator<<(std::ostream& os, const PLMap& f) { return os << f.str(); }

PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<Rational> bps = g.cuts();
  for (const auto& b : f.cuts()) bps.push_back(preimage(g, b));
  sort_unique(bps);
  std::vector<LinearPiece> pieces;
  pieces.reserve(bps.size() + 1);
  for (std::size_t i = 0; i <= bps.size(); ++i) {
    Rational t = region_sample(bps, i);
    const LinearPiece& pg = g.pieces()[g.piece_index(t)];
    const LinearPiece& pf = f.pieces()[f.piece_index(pg.at(t))];
    pieces.push_back(LinearPiece{pf.slope * pg.slope, pf.slope * pg.intercept + pf.intercept});
  }
  return PLMap::normalized(std::move(bps), std::move(pieces));
}

PLMap inverse(const PLMap& f) {
  std::vector<Rational> cuts;
  std::vector<LinearPiece> pieces;
  for (std::size_t i = 0; i < f.cuts().size(); ++i) cuts.push_back(f.pieces()[i].at(f.cuts()[i]));
  for (const auto& p : f.pieces()) {
    Rational inv = Rational(1) / p.slope;
    pieces.push_back(LinearPiece{inv, -p.intercept * inv});
  }
  return PLMap::make(std::move(cuts), std::move(pieces));
}

PLMap conjugate(const PLMap& f, const PLMap& g) { return compose(g, compose(f, inverse(g))); }

ExtRational apply_ext(const PLMap& f, const ExtRational& x) {
  if (!x.is_finite()) return x;
  return f.apply(x.value());
}

FixedStructure fixed_structure(const PLMap& f) {
  // Collect closed fixed pieces (degenerate ones are points), then merge.
  std::vector<ClosedInterval> raw;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const LinearPiece& p = f.pieces()[i];
    QInterval dom = f.piece_domain(i);
    if (p.is_identity()) {
      raw.push_back({dom.lo, dom.hi});
      continue;
    }
    if (p.slope == Rational(1)) continue;
    Rational x = p.intercept / (Rational(1) - p.slope);
    ExtRational ex(x);
    if (dom.lo <= ex && ex <= dom.hi) raw.push_back({ex, ex});
  }
  std::sort(raw.begin(), raw.end(), [](const ClosedInterval& a, const ClosedInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<ClosedInterval> merged;
  for (auto& c : raw) {
    if (!merged.empty() && c.lo <= merged.back().hi) {
      if (merged.back().hi < c.hi) merged.back().hi = c.hi;
    } else {
      merged.push_back(std::move(c));
    }
  }
  FixedStructure out;
  for (auto& c : merged) {
    if (c.lo == c.hi) {
      out.points.push_back(c.lo.value());
    } else {
      out.intervals.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<SupportComponent> support_components(const PLMap& f) {
  FixedStructure fs = fixed_structure(f);
  std::vector<ClosedInterval> fixed;
  for (const auto& p : fs.points) fixed.push_back({p, p});
  for (const auto& i : fs.intervals) fixed.push_back(i);
  std::sort(fixed.begin(), fixed.end(), [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });

  std::vector<SupportComponent> out;
  ExtRational cursor = ExtRational::neg_inf();
  auto emit = [&](const ExtRational& hi) {
    QInterval gap{cursor, hi};
    if (gap.empty()) return;
    Rational t = pick_fresh(gap);
    out.push_back({gap, f.apply(t) > t ? Parity::plus : Parity::minus});
  };
  for (const auto& c : fixed) {
    emit(c.lo);
    cursor = c.hi;
  }
  if (!cursor.is_pos_inf()) emit(ExtRational::pos_inf());
  return out;
}

IntervalSet support(const PLMap& f) {
  std::vector<QInterval> raw;
  for (const auto& c : support_components(f)) raw.push_back(c.interval);
  return IntervalSet::normalize(std::move(raw));
}

PLMap restriction(const PLMap& f, const IntervalSet& keep) {
  std::vector<Rational> bps = f.cuts();
  for (const auto& i : keep.items()) {
    for (const ExtRational* e : {&i.lo, &i.hi}) {
      if (!e->is_finite()) continue;
      if (f.apply(e->value()) != e->value()) {
        throw PreconditionError("restriction boundary " + e->str() + " is moved");
      }
      bps.push_back(e->value());
    }
  }
  sort_unique(bps);
  std::vector<LinearPiece> pieces;
  for (std::size_t i = 0; i <= bps.size(); ++i) {
    Rational t = region_sample(bps, i);
    pieces.push_back(keep.contains(t) ? f.pieces()[f.piece_index(t)] : LinearPiece{});
  }
  return PLMap::normalized(std::move(bps), std::move(pieces));
}

PLMap bump(const QInterval& support, Parity parity) {
  if (support.empty() || parity == Parity::zero) {
    throw PreconditionError("bump needs a nonempty support and a non-zero parity");
  }
  const bool up = parity == Parity::plus;
  if (!support.lo.is_finite() && !support.hi.is_finite()) return PLMap::translation(Rational(up ? 1 : -1));
  if (!support.hi.is_finite()) {
    const Rational& a = support.lo.value();
    return PLMap::through_nodes(Rational(1), {{a, a}}, up ? Rational(2) : Rational(1, 2));
  }
  if (!support.lo.is_finite()) {
    const Rational& b = support.hi.value();
    return PLMap::through_nodes(up ? Rational(1, 2) : Rational(2), {{b, b}}, Rational(1));
  }
  const Rational& a = support.lo.value();
  const Rational& b = support.hi.value();
  Rational third = (b - a) / Rational(3);
  std::pair<Rational, Rational> mid = up ? std::pair{a + third, b - third} : std::pair{b - third, a + third};
  return PLMap::through_nodes(Rational(1), {{a, a}, mid, {b, b}}, Rational(1));
}

}  // namespace qwi
