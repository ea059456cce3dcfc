#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwi/parity.hpp"
#include "qwi/rational.hpp"

namespace qwi {

// x -> slope * x + intercept
struct LinearPiece {
  Rational slope{1};
  Rational intercept{0};

  Rational at(const Rational& x) const { return slope * x + intercept; }
  bool is_identity() const { return slope == Rational(1) && intercept.is_zero(); }
  friend bool operator==(const LinearPiece&, const LinearPiece&) = default;
};

// A piecewise-linear order-automorphism of Q with rational data.
//
// Piece i is in force on [cuts[i-1], cuts[i]] (with -inf/+inf at the ends).
// Invariants: cuts strictly increasing; |pieces| = |cuts| + 1; all slopes
// positive; neighbouring pieces agree at their shared cut; no two
// neighbouring pieces are identical.  Every value of this type satisfies
// them, so operator== is equality of group elements.
class PLMap {
 public:
  PLMap();  // identity

  // Validates the canonical-form invariants and throws InvariantViolation
  // naming the first one that fails.
  static PLMap make(std::vector<Rational> cuts, std::vector<LinearPiece> pieces);

  // Like make() but merges identical neighbouring pieces first.
  static PLMap normalized(std::vector<Rational> cuts, std::vector<LinearPiece> pieces);

  static PLMap affine(const Rational& slope, const Rational& intercept);
  static PLMap translation(const Rational& c) { return affine(Rational(1), c); }

  // The map whose graph passes through `nodes` (strictly increasing in both
  // coordinates), extended by rays of the given slopes.
  static PLMap through_nodes(const Rational& left_slope,
                             const std::vector<std::pair<Rational, Rational>>& nodes,
                             const Rational& right_slope);

  // Text form: `pl id` or `pl cuts=[b1,...] pieces=[(m0,c0),...]`.
  static PLMap parse(std::string_view text);
  std::string str() const;

  Rational apply(const Rational& x) const;
  Rational operator()(const Rational& x) const { return apply(x); }

  const std::vector<Rational>& cuts() const { return cuts_; }
  const std::vector<LinearPiece>& pieces() const { return pieces_; }
  // Index of a piece in force at x (the left one at a cut).
  std::size_t piece_index(const Rational& x) const;
  // Open domain of piece i.
  QInterval piece_domain(std::size_t i) const;

  bool is_identity() const { return cuts_.empty() && pieces_.front().is_identity(); }

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  PLMap(std::vector<Rational> cuts, std::vector<LinearPiece> pieces)
      : cuts_(std::move(cuts)), pieces_(std::move(pieces)) {}

  std::vector<Rational> cuts_;
  std::vector<LinearPiece> pieces_;
};

std::ostream& operator<<(std::ostream& os, const PLMap& f);

// x -> f(g(x))
PLMap compose(const PLMap& f, const PLMap& g);
PLMap inverse(const PLMap& f);
// g f g^-1
PLMap conjugate(const PLMap& f, const PLMap& g);

// Image of an extended point; infinities are fixed by every automorphism.
ExtRational apply_ext(const PLMap& f, const ExtRational& x);

// A closed interval [lo, hi] of Q; infinite ends are open in effect.
struct ClosedInterval {
  ExtRational lo;
  ExtRational hi;
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

// Solution set of f(x) = x: isolated points plus maximal closed intervals
// of positive length.
struct FixedStructure {
  std::vector<Rational> points;
  std::vector<ClosedInterval> intervals;
};

FixedStructure fixed_structure(const PLMap& f);

// One open component of the set of moved points together with the
// direction of motion there.
struct SupportComponent {
  QInterval interval;
  Parity parity = Parity::plus;
  friend bool operator==(const SupportComponent&, const SupportComponent&) = default;
};

std::vector<SupportComponent> support_components(const PLMap& f);
IntervalSet support(const PLMap& f);

// The element equal to f on `keep` and to the identity elsewhere.
// Precondition: every finite endpoint of `keep` is fixed by f.
PLMap restriction(const PLMap& f, const IntervalSet& keep);

// A single bump with the given support and direction.  Bounded supports get
// a two-piece bump; rays get slope 2 or 1/2 anchored at the endpoint; the
// whole line gets x+1 or x-1.
PLMap bump(const QInterval& support, Parity parity);

}  // namespace qwi
