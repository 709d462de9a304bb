#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

namespace ordlab {

// A letter is a signed generator. Codes are packed so that integer order
// on codes realizes the fixed letter order g0 < g0^-1 < g1 < g1^-1 < ...
using Letter = std::int32_t;

inline Letter make_letter(int gen, int sign) { return 2 * gen + (sign < 0 ? 1 : 0); }
inline int letter_gen(Letter l) { return l >> 1; }
inline int letter_sign(Letter l) { return (l & 1) ? -1 : +1; }
inline Letter inverse_letter(Letter l) { return l ^ 1; }

/// A word in the free group on the presentation's generators.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Shortlex: length first, then letter codes left to right.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

inline bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse_letter(w[i - 1])) return false;
  return true;
}

/// The unique freely reduced word equal to w in the free group.
inline Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters) {
    if (!out.empty() && out.back() == inverse_letter(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

/// Reverse the word and flip every exponent sign.
inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.push_back(inverse_letter(*it));
  return Word(std::move(out));
}

inline Word concat(const Word& a, const Word& b) {
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters.begin(), a.letters.end());
  out.insert(out.end(), b.letters.begin(), b.letters.end());
  return Word(std::move(out));
}

/// Freely reduce, then strip cancelling ends until the word is cyclically reduced.
inline Word cyclically_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r.letters[lo] == inverse_letter(r.letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(r.letters.begin() + lo, r.letters.begin() + hi));
}

}  // namespace ordlab
