#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qwi/plmap.hpp"

namespace qwi {

// Seeded source of random rationals and group elements.  All draws are
// deterministic in the seed.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_(); }
  // Uniform in [lo, hi].
  long integer(long lo, long hi);
  bool coin() { return integer(0, 1) == 1; }

  // Rational in [-range, range] with denominator in [1, max_den].
  Rational rational(long range = 12, long max_den = 4);
  // Strictly increasing sample of n distinct rationals.
  std::vector<Rational> sorted_rationals(std::size_t n, long range = 12, long max_den = 4);
  Rational slope();  // from {1/4, 1/3, 1/2, 2/3, 1, 3/2, 2, 3, 4}
  Parity parity() { return coin() ? Parity::plus : Parity::minus; }

  // A random element with at most `complexity` cuts.  Strategies: identity
  // and translations, affine maps, random node graphs, composites of bumps
  // with independent parities, single bumps, and finite-set elements.
  PLMap plmap(int complexity);

  PLMap translation();
  PLMap node_graph(int max_cuts);
  // Pieces of the line between random points each fixed or moved up/down.
  PLMap bump_composite(int max_cuts, bool uniform_parity = false);
  PLMap single_bump();
  PLMap cofinal_bump(const Rational& endpoint, Side side, Parity parity);

 private:
  std::mt19937_64 rng_;
};

inline PLMap gen_plmap(std::uint64_t seed, int complexity) { return Generator(seed).plmap(complexity); }

}  // namespace qwi
