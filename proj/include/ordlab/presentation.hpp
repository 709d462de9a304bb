#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordlab/word.hpp"

namespace ordlab {

struct Generator {
  int index = 0;
  std::string name;  // a single lowercase ASCII letter
};

/// Generators and relators defining the input group. Relators are kept
/// freely and cyclically reduced; relators that reduce to the empty word
/// impose nothing and are dropped at parse time.
struct Presentation {
  std::vector<Generator> generators;
  std::vector<Word> relators;

  int num_generators() const { return static_cast<int>(generators.size()); }
  int num_letters() const { return 2 * num_generators(); }

  char letter_char(Letter l) const {
    char c = generators[letter_gen(l)].name[0];
    return letter_sign(l) > 0 ? c : static_cast<char>(std::toupper(c));
  }
};

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

inline std::string word_to_string(const Word& w, const Presentation& p) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w.letters) s.push_back(p.letter_char(l));
  return s;
}

/// Parse a word written in the letter convention: lowercase = generator,
/// uppercase = its inverse. `line`/`col0` locate the token for errors.
inline Word parse_word(const Presentation& p, std::string_view text, int line = 0,
                       int col0 = 1) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    int col = col0 + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    char low = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    int gen = -1;
    for (const Generator& g : p.generators)
      if (g.name[0] == low) gen = g.index;
    if (gen < 0) throw ParseError(std::string("unknown letter '") + c + "'", line, col);
    letters.push_back(make_letter(gen, std::isupper(static_cast<unsigned char>(c)) ? -1 : +1));
  }
  return Word(std::move(letters));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parse the presentation file format:
///   gens: x,y
///   rels: Xyxy, ...
/// `#` begins a comment line; whitespace around tokens is ignored.
inline Presentation parse_presentation(std::string_view text) {
  // Split into (line number, content) pairs, skipping blanks and comments.
  std::vector<std::pair<int, std::string_view>> lines;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    std::string_view sig = detail::trim(raw);
    if (!sig.empty() && sig.front() != '#') lines.emplace_back(lineno, raw);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError("missing 'gens:' line", lineno, 1);

  Presentation p;

  {
    auto [ln, raw] = lines[0];
    std::string_view s = detail::trim(raw);
    if (s.substr(0, 5) != "gens:")
      throw ParseError("expected 'gens:'", ln, 1);
    std::string_view rest = s.substr(5);
    if (detail::trim(rest).empty())
      throw ParseError("at least one generator required", ln, 6);
    std::size_t start = 0;
    while (true) {
      std::size_t comma = rest.find(',', start);
      std::string_view tok = detail::trim(
          rest.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                             : comma - start));
      std::size_t lead = raw.find_first_not_of(" \t\r");
      int col = static_cast<int>(lead + 5 + start) + 1;
      if (tok.size() != 1 || tok[0] < 'a' || tok[0] > 'z')
        throw ParseError("generator name must be a single lowercase letter", ln, col);
      for (const Generator& g : p.generators)
        if (g.name[0] == tok[0])
          throw ParseError(std::string("duplicate generator name '") + tok[0] + "'", ln, col);
      p.generators.push_back({p.num_generators(), std::string(tok)});
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }

  if (lines.size() < 2) throw ParseError("missing 'rels:' line", lineno, 1);
  {
    auto [ln, raw] = lines[1];
    std::string_view s = detail::trim(raw);
    if (s.substr(0, 5) != "rels:")
      throw ParseError("expected 'rels:'", ln, 1);
    std::string_view rest = s.substr(5);
    if (!detail::trim(rest).empty()) {
      std::size_t start = 0;
      while (true) {
        std::size_t comma = rest.find(',', start);
        std::string_view tok =
            rest.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                : comma - start);
        std::size_t lead = raw.find_first_not_of(" \t\r");
        int col = static_cast<int>(lead + 5 + start) + 1;
        if (detail::trim(tok).empty())
          throw ParseError("empty relator", ln, col);
        Word rel = parse_word(p, tok, ln, col);
        rel = cyclically_reduce(rel);
        if (!rel.empty()) p.relators.push_back(std::move(rel));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
  }
  if (lines.size() > 2)
    throw ParseError("unexpected content after 'rels:' line", lines[2].first, 1);

  return p;
}

/// Canonical one-line-per-section form accepted back by parse_presentation.
inline std::string serialize_presentation(const Presentation& p) {
  std::string out = "gens: ";
  for (int i = 0; i < p.num_generators(); ++i) {
    if (i) out += ",";
    out += p.generators[i].name;
  }
  out += "\nrels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += i ? ", " : " ";
    out += word_to_string(p.relators[i], p);
  }
  out += "\n";
  return out;
}

}  // namespace ordlab
