#include "qwi/corpus.hpp"

#include "corpus_data.hpp"
#include "qwi/error.hpp"

namespace qwi {

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    line.remove_prefix(first);
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected `true:` or `false:`", line_no, 1);
    const std::string_view verdict = line.substr(0, colon);
    CorpusEntry e;
    if (verdict == "true") {
      e.expected = true;
    } else if (verdict != "false") {
      throw ParseError("expected `true:` or `false:`", line_no, 1);
    }
    std::string_view rest = line.substr(colon + 1);
    const std::size_t hash = rest.find('#');
    if (hash != std::string_view::npos) {
      std::string_view note = rest.substr(hash + 1);
      while (!note.empty() && (note.front() == ' ')) note.remove_prefix(1);
      while (!note.empty() && (note.back() == ' ' || note.back() == '\r')) note.remove_suffix(1);
      e.note = std::string(note);
      rest = rest.substr(0, hash);
    }
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) rest.remove_suffix(1);
    e.text = std::string(rest);
    e.line = line_no;
    try {
      e.sentence = parse_wmso(rest);
    } catch (const ParseError& err) {
      throw ParseError(std::string("corpus: ") + err.what(), line_no, err.column());
    }
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = parse_corpus(detail::corpus_text);
  return corpus;
}

}  // namespace qwi
