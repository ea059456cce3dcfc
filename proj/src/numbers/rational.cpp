#include "qwi/rational.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>

#include "qwi/error.hpp"

namespace qwi {

namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DivisionByZero();
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational literal '" + std::string(s) + "'", 1, 1);
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw ParseError("zero denominator in '" + std::string(s) + "'", 1, 1);
  mpq_class q(zn, zd);
  q.canonicalize();
  return Rational(std::move(q));
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  value_ /= o.value_;
  return *this;
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(value_.get_num().get_str(16));
  return h * 1000003u ^ std::hash<std::string>{}(value_.get_den().get_str(16));
}

std::optional<Rational> checked_div(const Rational& a, const Rational& b) {
  if (b.is_zero()) return std::nullopt;
  return a / b;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

ExtRational ExtRational::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "+inf") return pos_inf();
  if (s == "-inf") return neg_inf();
  return Rational::parse(s);
}

const Rational& ExtRational::value() const {
  if (!is_finite()) throw PreconditionError("value() of an infinite extended rational");
  return value_;
}

std::string ExtRational::str() const {
  switch (kind_) {
    case Kind::neg_infinity: return "-inf";
    case Kind::pos_infinity: return "inf";
    case Kind::finite: break;
  }
  return value_.str();
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (!a.is_finite()) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& q) { return os << q.str(); }

std::string QInterval::str() const { return "(" + lo.str() + "," + hi.str() + ")"; }

std::ostream& operator<<(std::ostream& os, const QInterval& i) { return os << i.str(); }

Rational pick_fresh(const QInterval& gap) {
  if (gap.empty()) throw PreconditionError("pick_fresh on empty gap " + gap.str());
  if (gap.lo.is_finite() && gap.hi.is_finite()) return midpoint(gap.lo.value(), gap.hi.value());
  if (gap.lo.is_finite()) return gap.lo.value() + Rational(1);
  if (gap.hi.is_finite()) return gap.hi.value() - Rational(1);
  return Rational(0);
}

IntervalSet IntervalSet::normalize(std::vector<QInterval> raw) {
  std::erase_if(raw, [](const QInterval& i) { return i.empty(); });
  std::sort(raw.begin(), raw.end(), [](const QInterval& a, const QInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  IntervalSet out;
  for (auto& i : raw) {
    // Strict overlap only: a shared rational endpoint lies in neither interval.
    if (!out.items_.empty() && i.lo < out.items_.back().hi) {
      if (out.items_.back().hi < i.hi) out.items_.back().hi = i.hi;
    } else {
      out.items_.push_back(std::move(i));
    }
  }
  return out;
}

bool IntervalSet::contains(const Rational& q) const {
  return std::any_of(items_.begin(), items_.end(), [&](const QInterval& i) { return i.contains(q); });
}

bool IntervalSet::intersects(const IntervalSet& other) const {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < items_.size() && j < other.items_.size()) {
    const auto& a = items_[i];
    const auto& b = other.items_[j];
    if (std::max(a.lo, b.lo) < std::min(a.hi, b.hi)) return true;
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  return std::all_of(items_.begin(), items_.end(), [&](const QInterval& a) {
    return std::any_of(other.items_.begin(), other.items_.end(),
                       [&](const QInterval& b) { return b.lo <= a.lo && a.hi <= b.hi; });
  });
}

std::string IntervalSet::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) os << ",";
    os << items_[i];
  }
  os << "}";
  return os.str();
}

}  // namespace qwi
