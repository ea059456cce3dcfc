#include "qwi/generate.hpp"

#include <algorithm>

namespace qwi {

namespace {

const std::vector<Rational>& slope_table() {
  static const std::vector<Rational> t{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1),
                                       Rational(3, 2), Rational(2),    Rational(3),    Rational(4)};
  return t;
}

const std::vector<Rational>& fractions() {
  static const std::vector<Rational> t{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)};
  return t;
}

}  // namespace

long Generator::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

Rational Generator::rational(long range, long max_den) {
  const long d = integer(1, max_den);
  return Rational(integer(-range * d, range * d), d);
}

std::vector<Rational> Generator::sorted_rationals(std::size_t n, long range, long max_den) {
  std::vector<Rational> out;
  while (out.size() < n) {
    Rational q = rational(range, max_den);
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational Generator::slope() {
  const auto& t = slope_table();
  return t[static_cast<std::size_t>(integer(0, static_cast<long>(t.size()) - 1))];
}

PLMap Generator::translation() {
  if (integer(0, 4) == 0) return PLMap();
  Rational c(integer(1, 6), integer(1, 2));
  return PLMap::translation(coin() ? c : -c);
}

PLMap Generator::node_graph(int max_cuts) {
  const auto k = static_cast<std::size_t>(integer(1, std::max(1, max_cuts)));
  std::vector<Rational> xs = sorted_rationals(k);
  std::vector<Rational> ys;
  if (coin()) {
    ys = sorted_rationals(k);
  } else {
    bool ok = true;
    for (const auto& x : xs) {
      Rational y = x + Rational(integer(-2, 2), 2);
      ok = ok && (ys.empty() || ys.back() < y);
      ys.push_back(y);
    }
    if (!ok) ys = sorted_rationals(k);
  }
  std::vector<std::pair<Rational, Rational>> nodes;
  for (std::size_t i = 0; i < k; ++i) nodes.emplace_back(xs[i], ys[i]);
  return PLMap::through_nodes(slope(), nodes, slope());
}

PLMap Generator::bump_composite(int max_cuts, bool uniform_parity) {
  if (max_cuts < 1) return translation();
  const auto m = static_cast<std::size_t>(integer(1, (max_cuts + 1) / 2));
  std::vector<Rational> points = sorted_rationals(m);
  // Label of each of the m+1 gaps: zero = fixed.
  const Parity common = parity();
  std::vector<Parity> label(m + 1);
  for (auto& l : label) {
    if (uniform_parity) {
      l = common;
    } else {
      long r = integer(0, 2);
      l = r == 0 ? Parity::zero : (r == 1 ? Parity::plus : Parity::minus);
    }
  }
  auto below_one = [&] { return slope_table()[static_cast<std::size_t>(integer(0, 3))]; };
  auto above_one = [&] { return slope_table()[static_cast<std::size_t>(integer(5, 8))]; };

  std::vector<std::pair<Rational, Rational>> nodes;
  for (std::size_t i = 0; i < m; ++i) {
    nodes.emplace_back(points[i], points[i]);
    if (i + 1 < m && label[i + 1] != Parity::zero) {
      const Rational d = points[i + 1] - points[i];
      Rational s = fractions()[static_cast<std::size_t>(integer(0, 4))];
      Rational r = fractions()[static_cast<std::size_t>(integer(0, 4))];
      while (r == s) r = fractions()[static_cast<std::size_t>(integer(0, 4))];
      if ((r > s) != (label[i + 1] == Parity::plus)) std::swap(r, s);
      nodes.emplace_back(points[i] + d * s, points[i] + d * r);
    }
  }
  Rational left = label.front() == Parity::zero ? Rational(1)
                                                : (label.front() == Parity::plus ? below_one() : above_one());
  Rational right = label.back() == Parity::zero ? Rational(1)
                                                : (label.back() == Parity::plus ? above_one() : below_one());
  return PLMap::through_nodes(left, nodes, right);
}

PLMap Generator::single_bump() {
  const Parity p = parity();
  switch (integer(0, 3)) {
    case 0: return bump(QInterval::full(), p);
    case 1: return cofinal_bump(rational(), Side::right, p);
    case 2: return cofinal_bump(rational(), Side::left, p);
    default: break;
  }
  auto ab = sorted_rationals(2);
  const Rational d = ab[1] - ab[0];
  Rational s = fractions()[static_cast<std::size_t>(integer(0, 4))];
  Rational r = fractions()[static_cast<std::size_t>(integer(0, 4))];
  while (r == s) r = fractions()[static_cast<std::size_t>(integer(0, 4))];
  if ((r > s) != (p == Parity::plus)) std::swap(r, s);
  return PLMap::through_nodes(1, {{ab[0], ab[0]}, {ab[0] + d * s, ab[0] + d * r}, {ab[1], ab[1]}}, 1);
}

PLMap Generator::cofinal_bump(const Rational& endpoint, Side side, Parity p) {
  const bool up = p == Parity::plus;
  Rational m = up == (side == Side::right) ? slope_table()[static_cast<std::size_t>(integer(5, 8))]
                                            : slope_table()[static_cast<std::size_t>(integer(0, 3))];
  if (side == Side::right) return PLMap::through_nodes(1, {{endpoint, endpoint}}, m);
  return PLMap::through_nodes(m, {{endpoint, endpoint}}, 1);
}

PLMap Generator::plmap(int complexity) {
  if (complexity <= 0) return translation();
  switch (integer(0, 9)) {
    case 0: return PLMap();
    case 1: return translation();
    case 2: {
      Rational m = slope();
      if (m == Rational(1)) return translation();
      Rational a = rational();
      return PLMap::affine(m, a - m * a);
    }
    case 3:
    case 4: return node_graph(complexity);
    case 5:
    case 6: return bump_composite(complexity);
    case 7: return bump_composite(complexity, true);
    case 8:
      if (complexity >= 3) return single_bump();
      return bump_composite(complexity);
    default: return cofinal_bump(rational(), coin() ? Side::left : Side::right, parity());
  }
}

}  // namespace qwi
