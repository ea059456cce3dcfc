#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qwi/parity.hpp"
#include "qwi/plmap.hpp"

namespace qwi {

struct Orbital {
  QInterval interval;
  Parity parity = Parity::plus;
  friend bool operator==(const Orbital&, const Orbital&) = default;
};

// Non-trivial orbitals in increasing order.
std::vector<Orbital> orbitals_of(const PLMap& f);

enum class BoundaryKind : std::uint8_t { minus_inf, plus_inf, rational, irrational };

// Order type of a maximal region of fixed rationals.  `empty` only occurs
// between two moving orbitals meeting at an irrational cut.
enum class FixedRegionType : std::uint8_t { empty, singleton, no_min_no_max, min_only, max_only, min_and_max };

struct MovingBlock {
  Parity parity = Parity::plus;
  BoundaryKind left = BoundaryKind::rational;
  BoundaryKind right = BoundaryKind::rational;
  friend auto operator<=>(const MovingBlock&, const MovingBlock&) = default;
};

struct FixedBlock {
  FixedRegionType type = FixedRegionType::no_min_no_max;
  friend auto operator<=>(const FixedBlock&, const FixedBlock&) = default;
};

using Block = std::variant<MovingBlock, FixedBlock>;

inline bool is_moving(const Block& b) { return std::holds_alternative<MovingBlock>(b); }

// A 3-coloured linear order of orbitals: an optional left tail (its word
// repeated omega* times toward -inf), a finite core, and an optional right
// tail (its word repeated omega times toward +inf).  An empty tail vector
// means the tail is absent.
struct OrbitalPattern {
  std::vector<Block> left_tail;
  std::vector<Block> core;
  std::vector<Block> right_tail;

  bool finite() const { return left_tail.empty() && right_tail.empty(); }
  friend bool operator==(const OrbitalPattern&, const OrbitalPattern&) = default;
};

// Fixed-region type forced by the kinds of the two facing boundaries, for a
// region that does not sit directly between two abutting or singleton-
// separated orbitals.  `left` is minus_inf when nothing precedes the region.
//
//   left \ right      rational        irrational / plus_inf
//   rational          min_and_max     min_only
//   irrational/-inf   max_only        no_min_no_max
//
// A region between two orbitals may instead be `singleton` (both facing
// boundaries rational and equal) or `empty` (both irrational and equal).
FixedRegionType region_type_between(BoundaryKind left, BoundaryKind right);

// First violated consistency rule, or nullopt for a well-formed pattern.
std::optional<std::string> check_pattern(const OrbitalPattern& p);

OrbitalPattern pattern_of(const PLMap& f);

// Canonical representative: primitive tail periods, core absorbed into the
// tails as far as possible, and a fixed rotation when the two tails join
// into one periodic bi-infinite word.
OrbitalPattern canonical_form(const OrbitalPattern& p);

// Isomorphism of the denoted coloured orders.
bool pattern_iso(const OrbitalPattern& p, const OrbitalPattern& q);

bool has_inf_orbitals(const OrbitalPattern& p);

// Which Moving blocks of a pattern a restriction keeps.  Tail masks are
// periodic: position j of the tail word is kept in every copy or in none.
struct Selection {
  std::vector<bool> core;        // one entry per Moving block of the core
  std::vector<bool> left_tail;   // one entry per Moving block of the left word
  std::vector<bool> right_tail;  // one entry per Moving block of the right word

  std::size_t size() const;
};

Selection empty_selection(const OrbitalPattern& p);

// Pattern of the restriction keeping exactly the selected orbitals.
OrbitalPattern restrict_pattern(const OrbitalPattern& p, const Selection& sel);

// One copy of a tail word moved into the core; the denotation is unchanged.
OrbitalPattern unroll_left(const OrbitalPattern& p);
OrbitalPattern unroll_right(const OrbitalPattern& p);

struct CofinalClass {
  Parity parity = Parity::plus;
  Side side = Side::right;
  bool rational_endpoint = true;

  // Dense id in [0, 8).
  int id() const;
  std::string str() const;
  friend bool operator==(const CofinalClass&, const CofinalClass&) = default;
};

// Class of a cofinal bump pattern, or nullopt if p is not one.
std::optional<CofinalClass> classify_cofinal(const OrbitalPattern& p);

struct Lemma21Split {
  Block first;           // g1: the orbital split off
  OrbitalPattern rest;   // g2: g without g1
  OrbitalPattern whole;  // g: the thinned restriction
};

// Thins an omega-tail to one orbital per period of a single parity and
// boundary class, then splits off the orbital nearest the core.
// Throws PreconditionError when p has only finitely many moving orbitals.
std::optional<Lemma21Split> lemma21_decompose(const OrbitalPattern& p);

// Searches restrictions y of p, smallest first, for an orbital y1 of y with
// y conjugate to y minus y1.  Core selections are limited to `search_bound`
// orbitals; tail words may be kept, dropped, or thinned periodically.
bool inf_formula_holds(const OrbitalPattern& p, int search_bound);

// Every well-formed pattern with at most `max_core` core blocks and tail
// words of at most `max_tail` blocks (0 disables tails).
std::vector<OrbitalPattern> enumerate_patterns(int max_core, int max_tail);

std::string to_string(const Block& b);
// `pattern ltail=[...] core=[M(+,rat,inf) F(minmax) ...] rtail=[...]`
std::string to_string(const OrbitalPattern& p);
OrbitalPattern parse_pattern(std::string_view text);
std::ostream& operator<<(std::ostream& os, const OrbitalPattern& p);

// An order-automorphism h of Q with h f h^-1 = g.  It is affine on each
// fixed region and, on each orbital, affine on one fundamental domain and
// transported by the dynamics elsewhere, so it is piecewise linear with
// breakpoints accumulating only at orbital endpoints.
class Conjugator {
 public:
  Rational apply(const Rational& x) const;
  Rational apply_inverse(const Rational& y) const;

 private:
  friend std::optional<Conjugator> conjugating_witness(const PLMap& f, const PLMap& g);

  struct Segment {
    bool moving = false;
    // Fixed region [lo, hi] or orbital (lo, hi) of f, and its image under h.
    ExtRational lo, hi, image_lo, image_hi;
    // Moving: the plus-parity maps on this orbital (f or f^-1, g or g^-1),
    // the fundamental-domain base points, and the affine ratio.
    std::shared_ptr<const PLMap> source, source_inv, target, target_inv;
    Rational base, image_base, ratio;
  };

  static Rational transport(const Segment& s, const Rational& x, bool forward);

  std::vector<Segment> segments_;
};

std::optional<Conjugator> conjugating_witness(const PLMap& f, const PLMap& g);

}  // namespace qwi
