#ifndef FDREP_WORD_HPP
#define FDREP_WORD_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fdrep/errors.hpp"

namespace fdrep {

/// A generator or its inverse: x_g^{sign}.
struct Letter {
  int generator = 1;
  int sign = 1;

  Letter inverse() const { return {generator, -sign}; }
  bool cancels(const Letter& other) const {
    return generator == other.generator && sign == -other.sign;
  }
  auto operator<=>(const Letter&) const = default;
};

/// Reduced word in the free group of the given rank. Letters are stored
/// leftmost-first; when a word acts on a tuple, the rightmost letter acts
/// first.
class Word {
public:
  Word() = default;

  /// Identity word of the given rank.
  explicit Word(int rank) : rank_(rank) {
    if (rank < 1) throw DomainError("rank must be at least 1");
  }

  /// Freely reduces `letters`. Throws DomainError on an out-of-range generator.
  static Word reduce(std::span<const Letter> letters, int rank) {
    Word w(rank);
    for (const Letter& l : letters) {
      if (l.generator < 1 || l.generator > rank) {
        throw DomainError("generator x" + std::to_string(l.generator) +
                          " out of range for rank " + std::to_string(rank));
      }
      if (l.sign != 1 && l.sign != -1) throw DomainError("letter sign must be +1 or -1");
      if (!w.letters_.empty() && w.letters_.back().cancels(l)) {
        w.letters_.pop_back();
      } else {
        w.letters_.push_back(l);
      }
    }
    return w;
  }

  static Word reduce(std::initializer_list<Letter> letters, int rank) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()), rank);
  }

  /// Builds a word without reducing it. Only for exercising guards that
  /// reject non-reduced input.
  static Word unchecked(std::vector<Letter> letters, int rank) {
    Word w(rank);
    w.letters_ = std::move(letters);
    return w;
  }

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  /// Letter at position k counted from the right, 1-based (k = 1 is the
  /// letter that acts first).
  const Letter& from_right(std::size_t k) const { return letters_[letters_.size() - k]; }

  bool is_reduced() const {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
      if (letters_[i - 1].cancels(letters_[i])) return false;
    }
    return true;
  }

  Word inverse() const {
    Word w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  /// Reduced product this·other.
  Word operator*(const Word& other) const {
    if (other.rank_ != rank_) throw DomainError("rank mismatch in word product");
    std::vector<Letter> all = letters_;
    all.insert(all.end(), other.letters_.begin(), other.letters_.end());
    return reduce(all, rank_);
  }

  /// Exponent sum per generator; index 0 is generator 1.
  std::vector<int> exponent_sums() const {
    std::vector<int> sums(static_cast<std::size_t>(rank_), 0);
    for (const Letter& l : letters_) sums[static_cast<std::size_t>(l.generator - 1)] += l.sign;
    return sums;
  }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word& o) const {
    if (auto c = rank_ <=> o.rank_; c != 0) return c;
    return letters_ <=> o.letters_;
  }

private:
  int rank_ = 1;
  std::vector<Letter> letters_;
};

/// True iff every one-dimensional representation sends w to 1, i.e. each
/// generator has exponent sum zero.
inline bool is_balanced(const Word& w) {
  const auto sums = w.exponent_sums();
  return std::all_of(sums.begin(), sums.end(), [](int s) { return s == 0; });
}

inline Word letter_power(Letter l, std::size_t count, int rank) {
  std::vector<Letter> ls(count, l);
  return Word::reduce(ls, rank);
}

/// Result of endpoint normalization. With w' = w (or w^{-1} when
/// `conjugated` is set), w' = conjugator · core · conjugator^{-1}.
struct NormalizedWord {
  Word core;
  Word conjugator;
  bool conjugated = false;
};

/// Conjugates (and possibly inverts) a balanced nontrivial word so that its
/// first and last letters use different generators. The core has the
/// length of the cyclic reduction of w.
inline NormalizedWord normalize_endpoints(const Word& w) {
  if (!w.is_reduced()) throw DomainError("normalize_endpoints: word is not reduced");
  if (w.is_identity()) throw DomainError("normalize_endpoints: word is trivial");
  if (!is_balanced(w)) throw DomainError("normalize_endpoints: word is not balanced");

  const int rank = w.rank();
  const auto& ls = w.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo].cancels(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  // Balanced nontrivial words are never conjugate to the identity.
  std::vector<Letter> core(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                           ls.begin() + static_cast<std::ptrdiff_t>(hi));
  Word conjugator = Word::reduce(std::span<const Letter>(ls.data(), lo), rank);

  NormalizedWord out{Word::reduce(core, rank), conjugator, false};
  if (core.front().generator != core.back().generator) return out;

  // Cyclically reduced, so the shared endpoint letters carry the same sign.
  if (core.front().sign == -1) {
    out.core = out.core.inverse();
    out.conjugated = true;
  }
  const auto& cl = out.core.letters();
  const Letter x = cl.front();
  std::size_t lead = 0;
  while (lead < cl.size() && cl[lead] == x) ++lead;
  // core = x^lead · M · x^trail; conjugating by x^{-lead} gives M · x^{lead+trail}.
  std::vector<Letter> rotated(cl.begin() + static_cast<std::ptrdiff_t>(lead), cl.end());
  rotated.insert(rotated.end(), lead, x);
  out.core = Word::reduce(rotated, rank);
  out.conjugator = out.conjugator * letter_power(x, lead, rank);
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax: whitespace-separated tokens x<k>, x<k>^<e> (e a nonzero
// integer, expanded into |e| letters); "e" or "1" alone is the identity.

namespace detail {

inline int parse_int(std::string_view s, std::string_view token) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw ParseError("bad word token '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses word text into raw (unreduced) letters.
inline std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  std::vector<std::string> toks;
  while (in >> tok) toks.push_back(tok);
  if (toks.size() == 1 && (toks[0] == "e" || toks[0] == "1")) return out;
  for (const std::string& t : toks) {
    if (t.size() < 2 || (t[0] != 'x' && t[0] != 'X')) throw ParseError("bad word token '" + t + "'");
    const auto caret = t.find('^');
    const std::string_view gen_part = std::string_view(t).substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    const int gen = detail::parse_int(gen_part, t);
    if (gen < 1) throw ParseError("generator index must be positive in '" + t + "'");
    int exponent = 1;
    if (caret != std::string::npos) {
      std::string_view e = std::string_view(t).substr(caret + 1);
      if (!e.empty() && e.front() == '+') e.remove_prefix(1);
      exponent = detail::parse_int(e, t);
      if (exponent == 0) throw ParseError("zero exponent in '" + t + "'");
    }
    const int sign = exponent > 0 ? 1 : -1;
    for (int i = 0; i < std::abs(exponent); ++i) out.push_back({gen, sign});
  }
  return out;
}

/// Parses and reduces. rank = 0 infers the rank as the largest generator
/// index (at least 1).
inline Word parse_word(std::string_view text, int rank = 0) {
  auto letters = parse_letters(text);
  if (rank == 0) {
    rank = 1;
    for (const Letter& l : letters) rank = std::max(rank, l.generator);
  }
  return Word::reduce(letters, rank);
}

inline std::string to_string(const Word& w) {
  if (w.is_identity()) return "e";
  std::string s;
  for (const Letter& l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += 'x' + std::to_string(l.generator);
    if (l.sign < 0) s += "^-1";
  }
  return s;
}

}  // namespace fdrep

#endif
