#include "qwi/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qwi/corpus.hpp"
#include "qwi/error.hpp"
#include "qwi/generate.hpp"
#include "qwi/interp.hpp"
#include "qwi/oracles.hpp"
#include "qwi/orbital.hpp"
#include "qwi/predicates.hpp"
#include "qwi/wmso.hpp"

namespace qwi {

namespace {

std::string set_text(const std::vector<Rational>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].str();
  return out + "}";
}

IntervalSet image(const PLMap& g, const IntervalSet& s) {
  std::vector<QInterval> out;
  for (const auto& i : s.items()) out.push_back({apply_ext(g, i.lo), apply_ext(g, i.hi)});
  return IntervalSet::normalize(out);
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}
  void check(bool ok, const std::function<std::string()>& describe) {
    if (!ok) r_.failures.push_back(describe());
  }

 private:
  SuiteReport& r_;
};

// ------------------------------------------------------------ group-laws ----

void group_laws(SuiteReport& r, Generator& gen, std::size_t n) {
  Recorder rec(r);
  const PLMap id;
  for (std::size_t i = 0; i < n; ++i) {
    const PLMap f = gen.plmap(8), g = gen.plmap(8), h = gen.plmap(8);
    auto args = [&] { return "f=" + f.str() + " g=" + g.str() + " h=" + h.str(); };
    ++r.cases;
    rec.check(compose(compose(f, g), h) == compose(f, compose(g, h)), [&] { return "associativity: " + args(); });
    rec.check(compose(f, id) == f && compose(id, f) == f, [&] { return "identity: " + args(); });
    rec.check(compose(f, inverse(f)).is_identity() && compose(inverse(f), f).is_identity(),
              [&] { return "inverse: " + args(); });
    rec.check(f.cuts().size() <= 8, [&] { return "complexity above 8: " + args(); });
    try {
      PLMap::make(f.cuts(), f.pieces());
    } catch (const InvariantViolation& e) {
      rec.check(false, [&] { return std::string("invariant: ") + e.what() + " " + args(); });
    }
    const PLMap c = conjugate(f, g);
    rec.check(support(c) == image(g, support(f)), [&] { return "support covariance: " + args(); });
    rec.check(conjugate(compose(f, h), g) == compose(c, conjugate(h, g)),
              [&] { return "conjugation is a homomorphism: " + args(); });
    rec.check(conjugate(c, h) == conjugate(f, compose(h, g)), [&] { return "conjugation action: " + args(); });

    // restr witness on a genuine restriction of g and on an unrelated f.
    std::vector<QInterval> keep;
    for (const auto& comp : support_components(g)) {
      if (gen.coin()) keep.push_back(comp.interval);
    }
    const PLMap x = restriction(g, IntervalSet::normalize(keep));
    for (const PLMap* part : {&x, &f}) {
      auto z = restr_witness(*part, g);
      rec.check(z.has_value() == restr_sem(*part, g), [&] { return "restr witness existence: " + args(); });
      if (z) {
        rec.check(disj_sem(*part, *z) && compose(*part, *z) == g,
                  [&] { return "restr witness: x=" + part->str() + " y=" + g.str() + " z=" + z->str(); });
      }
    }
    rec.check(restr_sem(x, g), [&] { return "restriction not recognised: x=" + x.str() + " y=" + g.str(); });
  }
}

// -------------------------------------------------------------- orbitals ----

std::vector<Rational> probe_points(const PLMap& f, const PLMap& g, Generator& gen) {
  std::vector<Rational> pts;
  for (const PLMap* m : {&f, &g}) {
    for (const auto& c : m->cuts()) {
      pts.push_back(c);
      pts.push_back(c + Rational(1, 7));
      pts.push_back(c - Rational(1, 7));
      pts.push_back(m->apply(c));
    }
    for (const auto& q : fixed_structure(*m).points) pts.push_back(q);
  }
  for (int i = 0; i < 12; ++i) pts.push_back(gen.rational(30, 9));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::optional<std::string> verify_conjugator(const PLMap& f, const PLMap& g, const Conjugator& h, Generator& gen) {
  const auto pts = probe_points(f, g, gen);
  std::optional<Rational> prev;
  for (const auto& x : pts) {
    const Rational hx = h.apply(x);
    if (h.apply(f(x)) != g(hx)) return "h f != g h at " + x.str();
    if (h.apply_inverse(hx) != x) return "inverse mismatch at " + x.str();
    if (prev && !(*prev < hx)) return "not increasing at " + x.str();
    prev = hx;
  }
  return std::nullopt;
}

void orbitals(SuiteReport& r, Generator& gen, std::size_t n) {
  Recorder rec(r);
  std::size_t conjugate_pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const PLMap f = gen.plmap(8);
    const PLMap g = gen.coin() ? conjugate(f, gen.plmap(8)) : gen.plmap(8);
    auto args = [&] { return "f=" + f.str() + " g=" + g.str(); };
    ++r.cases;
    const bool iso = pattern_iso(pattern_of(f), pattern_of(g));
    auto w = conjugating_witness(f, g);
    rec.check(w.has_value() == iso, [&] { return "witness/pattern_iso disagree: " + args(); });
    if (w) {
      ++conjugate_pairs;
      auto bad = verify_conjugator(f, g, *w, gen);
      rec.check(!bad, [&] { return "witness not exact (" + *bad + "): " + args(); });
    }
  }
  rec.check(conjugate_pairs > 0 && conjugate_pairs < n, [] { return std::string("only one verdict exercised"); });
  r.findings.push_back(std::to_string(conjugate_pairs) + " of " + std::to_string(n) + " pairs conjugate");
}

// ------------------------------------------------------------ predicates ----

const std::vector<Rational>& base_points() {
  static const std::vector<Rational> s{Rational(-2), Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  return s;
}

const std::vector<Rational>& query_points() {
  static const std::vector<Rational> q{Rational(-3),   Rational(-2), Rational(-1),   Rational(-1, 2),
                                       Rational(0),    Rational(1, 3), Rational(1, 2), Rational(1),
                                       Rational(3, 2), Rational(2),  Rational(5, 2), Rational(7)};
  return q;
}

void predicates(SuiteReport& r, Generator& gen, std::size_t n) {
  Recorder rec(r);
  const auto variants = {EncoderVariant::primary, EncoderVariant::alternate};
  const auto sides = {Side::left, Side::right};
  std::vector<std::vector<Rational>> subsets;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Rational> s;
    for (unsigned i = 0; i < 6; ++i) {
      if ((mask >> i) & 1u) s.push_back(base_points()[i]);
    }
    subsets.push_back(s);
  }
  std::map<std::pair<unsigned, EncoderVariant>, PLMap> sets;
  for (unsigned k = 0; k < subsets.size(); ++k) {
    for (auto v : variants) {
      const PLMap g = encode_finite_set(subsets[k], v);
      sets.emplace(std::pair{k, v}, g);
      ++r.cases;
      rec.check(finrational_sem(g) && decode_finite_set(g) == subsets[k],
                [&] { return "finite-set code: S=" + set_text(subsets[k]) + " g=" + g.str(); });
    }
  }
  for (const auto& q : query_points()) {
    for (auto pv : variants) {
      for (auto side : sides) {
        const PLMap f = encode_rational(q, side, pv);
        ++r.cases;
        rec.check(rational_sem(f) && decode_rational(f) == q,
                  [&] { return "rational code: q=" + q.str() + " f=" + f.str(); });
        for (unsigned k = 0; k < subsets.size(); ++k) {
          const bool in = std::binary_search(subsets[k].begin(), subsets[k].end(), q);
          for (auto sv : variants) {
            ++r.cases;
            rec.check(member_sem(f, sets.at({k, sv})) == in, [&] {
              return "membership: q=" + q.str() + " (" + std::string(to_string(side)) + ") S=" + set_text(subsets[k]);
            });
          }
        }
      }
    }
  }
  for (unsigned a = 0; a < subsets.size(); ++a) {
    for (unsigned b = 0; b < subsets.size(); ++b) {
      ++r.cases;
      rec.check(sameset_sem(sets.at({a, EncoderVariant::primary}), sets.at({b, EncoderVariant::alternate})) == (a == b),
                [&] { return "sameset: S=" + set_text(subsets[a]) + " S'=" + set_text(subsets[b]); });
    }
  }
  for (const auto& q : query_points()) {
    for (const auto& q2 : query_points()) {
      ++r.cases;
      const PLMap left = encode_rational(q, Side::left, EncoderVariant::primary);
      const PLMap right = encode_rational(q2, Side::right, EncoderVariant::alternate);
      rec.check(codesame_sem(left, right) == (q == q2) && oppsupport_sem(left, right) == (q == q2),
                [&] { return "identification: q=" + q.str() + " q'=" + q2.str(); });
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Rational q = gen.rational(50, 12);
    const Side side = gen.coin() ? Side::left : Side::right;
    const PLMap f = encode_rational(q, side, gen.coin() ? EncoderVariant::primary : EncoderVariant::alternate);
    ++r.cases;
    rec.check(decode_rational(f) == q && codesame_sem(f, mirror_bump(f)),
              [&] { return "decode/encode: q=" + q.str() + " f=" + f.str(); });
  }
}

// --------------------------------------------------------------- lemmas ----

const std::vector<OrbitalPattern>& lemma_patterns() {
  static const auto all = enumerate_patterns(5, 3);
  return all;
}

void lemma21(SuiteReport& r) {
  Recorder rec(r);
  for (const auto& p : lemma_patterns()) {
    if (!has_inf_orbitals(p)) continue;
    ++r.cases;
    auto split = lemma21_decompose(p);
    rec.check(split.has_value(), [&] { return "no decomposition: " + to_string(p); });
    if (split) {
      rec.check(pattern_iso(split->whole, split->rest), [&] { return "g not conjugate to g2: " + to_string(p); });
      rec.check(has_inf_orbitals(split->whole), [&] { return "thinned g lost its tail: " + to_string(p); });
    }
  }
  rec.check(r.cases > 0, [] { return std::string("no omega-tail patterns enumerated"); });
}

void lemma22(SuiteReport& r) {
  Recorder rec(r);
  std::size_t with = 0;
  for (const auto& p : lemma_patterns()) {
    ++r.cases;
    const bool expected = has_inf_orbitals(p);
    with += expected;
    rec.check(inf_formula_holds(p, 5) == expected, [&] {
      return std::string("inf formula ") + (expected ? "fails" : "holds") + " on " + to_string(p);
    });
  }
  rec.check(with > 0 && with < r.cases, [] { return std::string("only one truth value exercised"); });
  r.findings.push_back(std::to_string(with) + " of " + std::to_string(r.cases) + " patterns have infinitely many orbitals");
}

void classes8(SuiteReport& r) {
  Recorder rec(r);
  std::map<int, std::string> classes;
  for (const auto& p : lemma_patterns()) {
    ++r.cases;
    if (auto c = classify_cofinal(p)) classes.emplace(c->id(), c->str());
  }
  rec.check(classes.size() == 8, [&] { return "found " + std::to_string(classes.size()) + " cofinal classes"; });
  for (const auto& [id, name] : classes) r.findings.push_back("class " + std::to_string(id) + ": " + name);
}

// ---------------------------------------------------------------- corpus ----

void wmso_suite(SuiteReport& r) {
  Recorder rec(r);
  for (const auto& e : builtin_corpus()) {
    ++r.cases;
    const int d = qdepth(e.sentence);
    const auto probe = stability_probe(e.sentence, {d, d + 1, d + 2});
    const bool value = probe.front();
    auto where = [&] { return "line " + std::to_string(e.line) + ": " + e.text; };
    rec.check(value == e.expected, [&] { return "decide gives " + std::string(value ? "true" : "false") + ", " + where(); });
    rec.check(std::all_of(probe.begin(), probe.end(), [&](bool b) { return b == value; }),
              [&] { return "cap-stability defect, " + where(); });
    if (d <= 3) {
      rec.check(oracles::brute_force_eval(e.sentence, Assignment{}, oracles::default_pool()) == value,
                [&] { return "brute-force disagreement, " + where(); });
    }
  }
}

void roundtrip_suite(SuiteReport& r) {
  Recorder rec(r);
  for (Side orientation : {Side::right, Side::left}) {
    PullbackOptions opts;
    opts.orientation = orientation;
    for (const auto& e : builtin_corpus()) {
      ++r.cases;
      const auto res = roundtrip(e.sentence, opts);
      rec.check(res.ok() && res.decided == e.expected, [&] {
        return "orientation " + std::string(to_string(orientation)) + ": decide " + (res.decided ? "true" : "false") +
               ", pullback " + (res.pulled ? "true" : "false") + ", line " + std::to_string(e.line) + ": " + e.text;
      });
    }
  }
}

// ----------------------------------------------------------- discrepancy ----

void discrepancy(SuiteReport& r, std::uint64_t seed, std::size_t n) {
  Recorder rec(r);
  for (const char* macro : {"cont", "oppsupport", "coterm", "cof"}) {
    const auto rep = discrepancy_search(macro, n, seed);
    r.cases += rep.trials;
    std::ostringstream summary;
    summary << macro << ": " << rep.agreements << "/" << rep.trials << " agree (literal true " << rep.literal_true
            << ", intended true " << rep.intended_true << ")";
    r.findings.push_back(summary.str());
    if (std::string_view(macro) != "cont") {
      for (const auto& c : rep.counterexamples) {
        rec.check(false, [&] {
          std::string s = std::string(macro) + " disagrees:";
          for (const auto& a : c.args) s += " " + a.str();
          return s + " [" + c.certificate + "]";
        });
      }
      continue;
    }
    // The cont degeneracy: literal true while support containment fails,
    // because x only moves isolated fixed points of y (all of them when y
    // has dense support).
    std::size_t dense = 0;
    for (const auto& c : rep.counterexamples) {
      rec.check(c.literal && !c.intended, [&] { return "cont disagreement of the wrong kind: " + c.certificate; });
      const auto fixed = fixed_structure(c.args[1]);
      if (fixed.intervals.empty()) ++dense;
      // x must not move the interior of any fixed interval of y.
      std::vector<QInterval> interiors;
      for (const auto& i : fixed.intervals) interiors.push_back({i.lo, i.hi});
      const bool isolated_only = !support(c.args[0]).intersects(IntervalSet::normalize(interiors));
      rec.check(isolated_only, [&] { return "cont counterexample outside the isolated-fixed-point pattern: " + c.certificate; });
    }
    rec.check(dense > 0, [] { return std::string("cont degeneracy not reproduced"); });
    if (!rep.counterexamples.empty()) {
      const auto& c = rep.counterexamples.front();
      r.findings.push_back("cont degeneracy (expected): x=" + c.args[0].str() + " y=" + c.args[1].str());
      r.findings.push_back("  " + c.certificate);
      r.findings.push_back("  " + std::to_string(rep.counterexamples.size()) +
                           " cont counterexamples, all with x moving only isolated fixed points of y; " +
                           std::to_string(dense) + " with y of dense support");
    }
  }
}

}  // namespace

std::string SuiteReport::summary_line() const {
  return suite + "\t" + std::to_string(cases) + "\t" + std::to_string(failures.size());
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  os << "suite " << suite << "  seed " << seed << "  cases " << cases << "  failures " << failures.size() << "  time "
     << seconds << "s\n";
  for (const auto& f : findings) os << "  finding: " << f << "\n";
  const std::size_t shown = std::min<std::size_t>(failures.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) os << "  FAIL: " << failures[i] << "\n";
  if (failures.size() > shown) os << "  ... " << failures.size() - shown << " more failures\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"group-laws", "orbitals", "predicates", "lemma21", "lemma22",
                                              "classes8",   "wmso",     "roundtrip",  "discrepancy"};
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::optional<std::size_t> cases) {
  SuiteReport r;
  r.suite = std::string(name);
  r.seed = seed;
  Generator gen(seed);
  const auto start = std::chrono::steady_clock::now();
  if (name == "group-laws") {
    group_laws(r, gen, cases.value_or(10000));
  } else if (name == "orbitals") {
    orbitals(r, gen, cases.value_or(1000));
  } else if (name == "predicates") {
    predicates(r, gen, cases.value_or(100));
  } else if (name == "lemma21") {
    lemma21(r);
  } else if (name == "lemma22") {
    lemma22(r);
  } else if (name == "classes8") {
    classes8(r);
  } else if (name == "wmso") {
    wmso_suite(r);
  } else if (name == "roundtrip") {
    roundtrip_suite(r);
  } else if (name == "discrepancy") {
    discrepancy(r, seed, cases.value_or(1000));
  } else {
    throw PreconditionError("unknown suite " + std::string(name));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed, std::optional<std::size_t> cases) {
  if (name != "all") return {run_suite(name, seed, cases)};
  std::vector<SuiteReport> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, seed, cases));
  return out;
}

}  // namespace qwi
