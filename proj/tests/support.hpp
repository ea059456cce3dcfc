#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qwi/plmap.hpp"

namespace testing_support {

using qwi::PLMap;
using qwi::Rational;

inline Rational random_rational(std::mt19937_64& rng, long range = 12, long max_den = 4) {
  std::uniform_int_distribution<long> den(1, max_den);
  long d = den(rng);
  std::uniform_int_distribution<long> num(-range * d, range * d);
  return Rational(num(rng), d);
}

inline Rational random_slope(std::mt19937_64& rng) {
  static const std::vector<Rational> slopes{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1),
                                            Rational(3, 2), Rational(2),    Rational(3),    Rational(4)};
  return slopes[std::uniform_int_distribution<std::size_t>(0, slopes.size() - 1)(rng)];
}

// Random map through up to `max_nodes` nodes.  About half the nodes sit on
// the diagonal so that fixed points and bounded orbitals are common.
inline PLMap random_plmap(std::mt19937_64& rng, int max_nodes = 5) {
  int n = std::uniform_int_distribution<int>(0, max_nodes)(rng);
  std::vector<Rational> xs;
  for (int i = 0; i < n; ++i) xs.push_back(random_rational(rng));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<Rational, Rational>> nodes;
  for (const auto& x : xs) {
    Rational y = x;
    if (rng() % 2) y = x + Rational(static_cast<long>(rng() % 5) - 2, 2);
    if (!nodes.empty() && y <= nodes.back().second) y = nodes.back().second + Rational(1, 3);
    nodes.emplace_back(x, y);
  }
  if (nodes.empty()) return PLMap::affine(random_slope(rng), random_rational(rng, 3));
  return PLMap::through_nodes(random_slope(rng), nodes, random_slope(rng));
}

inline std::vector<Rational> samples(const PLMap& f, std::mt19937_64& rng, int extra = 20) {
  std::vector<Rational> out;
  for (const auto& c : f.cuts()) {
    out.push_back(c);
    out.push_back(c + Rational(1, 7));
    out.push_back(c - Rational(1, 7));
  }
  for (int i = 0; i < extra; ++i) out.push_back(random_rational(rng, 30, 9));
  return out;
}

}  // namespace testing_support
