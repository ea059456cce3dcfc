#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qwi {

// Exact rational number, always kept in lowest terms with a positive
// denominator so that equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  // Accepts `p/q` or `p` with optional sign.  Throws ParseError.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return value_; }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  // Throws DivisionByZero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_;
};

// Division that reports a zero divisor as an empty result instead of throwing.
std::optional<Rational> checked_div(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational midpoint(const Rational& a, const Rational& b);

// Extended rationals: -inf < every finite value < +inf.
class ExtRational {
 public:
  enum class Kind : std::uint8_t { neg_infinity, finite, pos_infinity };

  ExtRational() = default;
  ExtRational(Rational value) : kind_(Kind::finite), value_(std::move(value)) {}  // NOLINT
  ExtRational(long value) : ExtRational(Rational(value)) {}                       // NOLINT

  static ExtRational neg_inf() { return ExtRational(Kind::neg_infinity); }
  static ExtRational pos_inf() { return ExtRational(Kind::pos_infinity); }
  // Accepts rational syntax plus `inf`, `+inf`, `-inf`.
  static ExtRational parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_neg_inf() const { return kind_ == Kind::neg_infinity; }
  bool is_pos_inf() const { return kind_ == Kind::pos_infinity; }
  // Precondition: is_finite().
  const Rational& value() const;
  std::string str() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& q);

// The open set (lo, hi) of rationals.
struct QInterval {
  ExtRational lo = ExtRational::neg_inf();
  ExtRational hi = ExtRational::pos_inf();

  static QInterval full() { return {}; }
  bool empty() const { return !(lo < hi); }
  bool contains(const Rational& q) const { return lo < ExtRational(q) && ExtRational(q) < hi; }
  bool bounded_below() const { return lo.is_finite(); }
  bool bounded_above() const { return hi.is_finite(); }
  std::string str() const;

  friend bool operator==(const QInterval&, const QInterval&) = default;
};

std::ostream& operator<<(std::ostream& os, const QInterval& i);

// A rational strictly inside a nonempty gap: the midpoint of a bounded gap,
// lo+1 or hi-1 for a half-bounded one, 0 for the whole line.
// Throws PreconditionError on an empty gap.
Rational pick_fresh(const QInterval& gap);

// Canonical union of open rational intervals: sorted, pairwise disjoint.
// Two items may share an endpoint; that endpoint belongs to neither.
class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet normalize(std::vector<QInterval> raw);

  const std::vector<QInterval>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  bool contains(const Rational& q) const;
  // Preconditions: !empty().
  const ExtRational& inf() const { return items_.front().lo; }
  const ExtRational& sup() const { return items_.back().hi; }

  bool intersects(const IntervalSet& other) const;
  bool subset_of(const IntervalSet& other) const;
  std::string str() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<QInterval> items_;
};

}  // namespace qwi

template <>
struct std::hash<qwi::Rational> {
  std::size_t operator()(const qwi::Rational& q) const { return q.hash(); }
};
