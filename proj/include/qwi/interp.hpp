#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwi/logic.hpp"
#include "qwi/plmap.hpp"
#include "qwi/wmso.hpp"

namespace qwi {

// Two independent families of coding elements.  `primary` uses slopes 2
// and 1/2 and one node per gap; `alternate` uses slopes 3 and 1/3 and two
// nodes per gap.  Every oracle must be blind to the choice.
enum class EncoderVariant { primary, alternate };

// A cofinal bump with finite endpoint q; side right means support (q, inf).
PLMap encode_rational(const Rational& q, Side side, EncoderVariant variant = EncoderVariant::primary);
// Endpoint of a cofinal element; PreconditionError otherwise.
Rational decode_rational(const PLMap& f);

// A positive element with dense support whose fixed points are exactly S.
PLMap encode_finite_set(std::vector<Rational> s, EncoderVariant variant = EncoderVariant::primary);
// Fixed points of a finrational element; PreconditionError otherwise.
std::vector<Rational> decode_finite_set(const PLMap& g);

struct Encoding {
  enum class Kind { point, finset };
  Kind kind = Kind::point;
  Rational point;
  std::vector<Rational> set;
  Side side = Side::right;
  PLMap element;

  static Encoding of_point(const Rational& q, Side side, EncoderVariant variant = EncoderVariant::primary);
  static Encoding of_set(std::vector<Rational> s, EncoderVariant variant = EncoderVariant::primary);
};

// Group variable standing for a WMSO variable: f_x for points, g_X for sets.
std::string coded_name(const std::string& wmso_variable);
// Name of the orientation parameter in compiled sentences.
inline const std::string orientation_variable = "p";

// Compiles a WMSO formula to the group language under the orientation
// prefix Ep (cof(p) & ...).
Group translate(const Wmso& f);
// The body without the orientation prefix.
Group translate_open(const Wmso& f);

// Does f code a smaller rational than g, reading p's side as "rightward"?
// Needs rational_sem(f), rational_sem(g) and cof_sem(p).
bool less_p(const PLMap& f, const PLMap& g, const PLMap& p);
// The schema used for the order atom, less(p,x,y).
Group less_formula();

struct PullbackOptions {
  Side orientation = Side::right;          // side of the designated p
  Side point_side = Side::right;           // side of the rational codes
  EncoderVariant variant = EncoderVariant::primary;
  std::optional<int> cap;                  // default: the source quantifier depth
};

// Quantifier depth of the WMSO formula psi was compiled from.
int source_depth(const Group& psi);

// Evaluates a compiled sentence with its quantifiers over coded candidates.
// Throws PreconditionError on anything translate cannot produce.
bool pullback_eval(const Group& psi, const PullbackOptions& options = {});

struct RoundtripResult {
  bool decided = false;
  bool pulled = false;
  bool ok() const { return decided == pulled; }
};

RoundtripResult roundtrip(const Wmso& f, const PullbackOptions& options = {});
// decide(f) == pullback_eval(translate(f)).
bool roundtrip_check(const Wmso& f, const PullbackOptions& options = {});

}  // namespace qwi
