#ifndef FDREP_TESTS_TEST_SUPPORT_HPP
#define FDREP_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "fdrep/word.hpp"

namespace fdrep::testing {

using RawLetters = std::vector<std::pair<int, int>>;

/// Reduction oracle: delete the first adjacent cancelling pair, rescan from
/// the start, until none is left. Quadratic and independent of Word::reduce.
inline RawLetters reduce_by_rescanning(RawLetters ls) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
      if (ls[i].first == ls[i + 1].first && ls[i].second == -ls[i + 1].second) {
        ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(i), ls.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
  }
  return ls;
}

inline RawLetters raw(const Word& w) {
  RawLetters out;
  for (const Letter& l : w.letters()) out.emplace_back(l.generator, l.sign);
  return out;
}

inline RawLetters concat(RawLetters a, const RawLetters& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline RawLetters inverse(const RawLetters& a) {
  RawLetters out;
  for (auto it = a.rbegin(); it != a.rend(); ++it) out.emplace_back(it->first, -it->second);
  return out;
}

template <class Rng>
std::vector<Letter> random_letters(int rank, std::size_t length, Rng& rng) {
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < length; ++i) out.push_back({gen(rng), coin(rng) ? 1 : -1});
  return out;
}

/// Random reduced balanced nontrivial word: `pairs` random letters with
/// their inverses, shuffled and reduced; retried until nontrivial. Needs rank >= 2 and pairs >= 2.
template <class Rng>
Word random_balanced_word(int rank, std::size_t pairs, Rng& rng) {
  if (rank < 2 || pairs < 2) throw DomainError("no nontrivial balanced word of this size");
  for (;;) {
    auto half = random_letters(rank, pairs, rng);
    std::vector<Letter> all = half;
    for (const Letter& l : half) all.push_back(l.inverse());
    std::shuffle(all.begin(), all.end(), rng);
    Word w = Word::reduce(all, rank);
    if (!w.is_identity()) return w;
  }
}

}  // namespace fdrep::testing

#endif
