#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qwi/error.hpp"
#include "qwi/interp.hpp"
#include "qwi/predicates.hpp"
#include "qwi/suites.hpp"
#include "qwi/wmso.hpp"

using namespace qwi;

namespace {

struct FormulaLine {
  std::string text;
  std::optional<bool> expected;
  int line = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// One formula per line; `#` starts a comment; an optional `true:`/`false:`
// prefix records the expected value.
std::vector<FormulaLine> read_formulas(const std::string& path) {
  const std::string text = slurp(path);
  std::vector<FormulaLine> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    FormulaLine f;
    f.line = n;
    for (auto [prefix, value] : {std::pair{std::string_view("true:"), true}, std::pair{std::string_view("false:"), false}}) {
      if (line.substr(0, prefix.size()) == prefix) {
        f.expected = value;
        line = trim(line.substr(prefix.size()));
      }
    }
    f.text = std::string(line);
    out.push_back(f);
  }
  if (out.empty()) throw Error(path + " contains no formula");
  return out;
}

PLMap read_plmap(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) return PLMap::parse(line);
  }
  throw Error(path + " contains no map");
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!trim(item).empty()) out.push_back(Rational::parse(trim(item)));
  }
  return out;
}

EncoderVariant parse_variant(const std::string& s) {
  return s == "alternate" ? EncoderVariant::alternate : EncoderVariant::primary;
}

int cmd_check(const std::string& predicate, const std::vector<std::string>& files) {
  std::vector<PLMap> args;
  for (const auto& f : files) args.push_back(read_plmap(f));
  if (predicate == "restr" && args.size() == 2) {
    auto z = restr_witness(args[0], args[1]);
    std::cout << (z ? "true" : "false") << "\n";
    if (z) std::cout << z->str() << "\n";
    return z ? 0 : 1;
  }
  const bool v = atom_sem(predicate, args);
  std::cout << (v ? "true" : "false") << "\n";
  return v ? 0 : 1;
}

int cmd_eval(const std::string& path, std::optional<int> cap, const std::string& assign) {
  const Assignment a = Assignment::parse(assign);
  bool all = true;
  const auto formulas = read_formulas(path);
  for (const auto& f : formulas) {
    const Wmso phi = parse_wmso(f.text);
    const bool v = eval(phi, a, cap.value_or(qdepth(phi)));
    all = all && v;
    std::cout << (v ? "true" : "false");
    if (formulas.size() > 1) std::cout << "\t" << f.text;
    std::cout << "\n";
  }
  return all ? 0 : 1;
}

int cmd_translate(const std::string& path, int expand_depth) {
  for (const auto& f : read_formulas(path)) {
    Group psi = translate(parse_wmso(f.text));
    if (expand_depth > 0) psi = expand(psi, expand_depth);
    std::cout << to_string(psi) << "\n";
  }
  return 0;
}

int cmd_roundtrip(const std::string& path, std::optional<int> cap, const std::string& orientation) {
  bool all = true;
  for (const auto& f : read_formulas(path)) {
    const Wmso phi = parse_wmso(f.text);
    std::vector<Side> sides;
    if (orientation != "left") sides.push_back(Side::right);
    if (orientation != "right") sides.push_back(Side::left);
    for (Side s : sides) {
      PullbackOptions opts;
      opts.orientation = s;
      opts.cap = cap;
      const auto r = roundtrip(phi, opts);
      const bool ok = r.ok() && (!f.expected || *f.expected == r.decided);
      all = all && ok;
      std::cout << (ok ? "ok  " : "FAIL") << "  p=" << to_string(s) << "  decide=" << (r.decided ? "true" : "false")
                << "  pullback=" << (r.pulled ? "true" : "false");
      if (f.expected) std::cout << "  expected=" << (*f.expected ? "true" : "false");
      std::cout << "  " << f.text << "\n";
    }
  }
  return all ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<std::size_t> cases) {
  const auto reports = run_suites(suite, seed, cases);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.text();
    ok = ok && r.ok();
  }
  for (const auto& r : reports) std::cout << r.summary_line() << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Executable checks for the first-order theory of the piecewise-linear automorphisms of Q"};
  app.require_subcommand(1);

  std::string predicate, path, assign, side = "right", variant = "primary", orientation = "both", suite, rational,
                                   members;
  std::vector<std::string> files;
  std::optional<int> cap;
  int expand_depth = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> cases;

  auto* check = app.add_subcommand("check", "evaluate a predicate on maps read from files");
  check->add_option("predicate", predicate)->required();
  check->add_option("plfiles", files)->required()->expected(1, 2);

  auto* ev = app.add_subcommand("eval", "evaluate WMSO formulas over (Q,<)");
  ev->add_option("formula-file", path)->required();
  ev->add_option("--cap", cap, "witness cap (default: quantifier depth)");
  ev->add_option("--assign", assign, "values, e.g. x=1/2,X={0,1}");

  auto* tr = app.add_subcommand("translate", "compile WMSO formulas to the group language");
  tr->add_option("wmso-file", path)->required();
  tr->add_option("--expand", expand_depth, "rounds of macro expansion");

  auto* rt = app.add_subcommand("roundtrip", "compare decide with pull-back evaluation of the translation");
  rt->add_option("wmso-file", path)->required();
  rt->add_option("--cap", cap);
  rt->add_option("--orientation", orientation)->check(CLI::IsMember({"left", "right", "both"}));

  auto* er = app.add_subcommand("encode-rational", "print the cofinal bump coding a rational");
  er->add_option("q", rational)->required();
  er->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
  er->add_option("--variant", variant)->check(CLI::IsMember({"primary", "alternate"}));

  auto* es = app.add_subcommand("encode-set", "print the element coding a finite set");
  es->add_option("members", members, "comma-separated rationals (may be empty)");
  es->add_option("--variant", variant)->check(CLI::IsMember({"primary", "alternate"}));

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("--suite", suite)->required();
  vf->add_option("--seed", seed);
  vf->add_option("--cases", cases);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(predicate, files);
    if (*ev) return cmd_eval(path, cap, assign);
    if (*tr) return cmd_translate(path, expand_depth);
    if (*rt) return cmd_roundtrip(path, cap, orientation);
    if (*er) {
      std::cout << encode_rational(Rational::parse(rational), side == "left" ? Side::left : Side::right,
                                   parse_variant(variant))
                       .str()
                << "\n";
      return 0;
    }
    if (*es) {
      std::cout << encode_finite_set(parse_list(members), parse_variant(variant)).str() << "\n";
      return 0;
    }
    if (*vf) return cmd_verify(suite, seed, cases);
  } catch (const std::exception& e) {
    std::cerr << "qwi: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
