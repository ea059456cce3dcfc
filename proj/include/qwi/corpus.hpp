#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qwi/logic.hpp"

namespace qwi {

struct CorpusEntry {
  bool expected = false;
  Wmso sentence;
  std::string text;
  std::string note;
  int line = 0;
};

// Lines `true: <sentence>  # note` or `false: ...`; blank lines and lines
// starting with `#` are skipped.  Throws ParseError with the line number.
std::vector<CorpusEntry> parse_corpus(std::string_view text);

// The corpus compiled into the library from data/corpus.wmso.
const std::vector<CorpusEntry>& builtin_corpus();

}  // namespace qwi
