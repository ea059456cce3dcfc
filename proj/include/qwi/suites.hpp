#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwi {

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  // Each failure carries its inputs in text form.
  std::vector<std::string> failures;
  // Expected, documented observations (not failures).
  std::vector<std::string> findings;
  double seconds = 0;

  bool ok() const { return failures.empty(); }
  // `suite<TAB>cases<TAB>failures`
  std::string summary_line() const;
  std::string text() const;
};

// Every suite except `all`, in run order.
const std::vector<std::string>& suite_names();

// One named suite.  `cases` overrides the size of the random part where a
// suite has one.  Throws PreconditionError for an unknown name or `all`.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::optional<std::size_t> cases = std::nullopt);

// `all` expands to every suite once; otherwise a single report.
std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed,
                                    std::optional<std::size_t> cases = std::nullopt);

}  // namespace qwi
