#include <random>

#include <gtest/gtest.h>

#include "fdrep/unitary_tuple.hpp"
#include "fdrep/word.hpp"
#include "test_support.hpp"

namespace fdrep {
namespace {

using testing::raw;
using testing::reduce_by_rescanning;

Word W(const char* text, int rank = 2) { return parse_word(text, rank); }

TEST(Reduce, CancelsAdjacentInversePair) {
  EXPECT_TRUE(W("x1 x1^-1").is_identity());
  EXPECT_EQ(to_string(W("x1 x2 x2^-1 x2")), "x1 x2");
}

TEST(Reduce, ConcatenationMatchesRescanningOracle) {
  // w2^{-1} w1 with w1 = x1 x2, w2 = x2.
  const Word w1 = W("x1 x2");
  const Word w2 = W("x2");
  const auto expected = reduce_by_rescanning(testing::concat(testing::inverse(raw(w2)), raw(w1)));
  EXPECT_EQ(raw(w2.inverse() * w1), expected);
  EXPECT_EQ(to_string(w2.inverse() * w1), "x2^-1 x1 x2");
}

TEST(Reduce, RejectsGeneratorOutOfRange) {
  EXPECT_THROW(Word::reduce({{3, 1}}, 2), DomainError);
  EXPECT_THROW(Word::reduce({{0, 1}}, 2), DomainError);
}

TEST(Reduce, RandomWordsAgreeWithOracleAndAreIdempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int rank = 1 + trial % 3;
    const auto letters = testing::random_letters(rank, 1 + trial % 17, rng);
    const Word w = Word::reduce(letters, rank);
    testing::RawLetters r;
    for (const Letter& l : letters) r.emplace_back(l.generator, l.sign);
    EXPECT_EQ(raw(w), reduce_by_rescanning(r));
    EXPECT_EQ(Word::reduce(w.letters(), rank), w);
    EXPECT_LE(w.length(), letters.size());
    EXPECT_TRUE((w * w.inverse()).is_identity());
  }
}

TEST(Balanced, ExamplesFromTheCommutatorFamily) {
  EXPECT_TRUE(is_balanced(W("x1 x2 x1^-1 x2^-1")));
  EXPECT_FALSE(is_balanced(W("x1 x2 x1^-2")));
  EXPECT_TRUE(is_balanced(Word(2)));
}

TEST(Balanced, EquivalentToTrivialImageInOneDimension) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const int rank = 1 + trial % 3;
    const Word w = trial % 2 && rank > 1 ? testing::random_balanced_word(rank, 2 + trial % 5, rng)
                             : Word::reduce(testing::random_letters(rank, 1 + trial % 9, rng), rank);
    bool all_one = true;
    for (int s = 0; s < 100; ++s) {
      std::vector<Matrix> ms;
      for (int g = 0; g < rank; ++g) ms.push_back(Matrix::Constant(1, 1, std::polar(1.0, angle(rng))));
      const Complex z = word_map(w, UnitaryTuple(ms))(0, 0);
      if (std::abs(z - Complex(1.0, 0.0)) > 1e-12) all_one = false;
    }
    EXPECT_EQ(is_balanced(w), all_one) << to_string(w);
  }
}

TEST(Normalize, DistinctEndpointsAreLeftAlone) {
  const auto n = normalize_endpoints(W("x1 x2 x1^-1 x2^-1"));
  EXPECT_EQ(to_string(n.core), "x1 x2 x1^-1 x2^-1");
  EXPECT_TRUE(n.conjugator.is_identity());
  EXPECT_FALSE(n.conjugated);

  const auto m = normalize_endpoints(W("x1 x2 x2 x1^-1 x2^-1 x2^-1"));
  EXPECT_EQ(to_string(m.core), "x1 x2 x2 x1^-1 x2^-1 x2^-1");
}

TEST(Normalize, CyclicReductionRecordsConjugator) {
  const Word w = W("x1 x2 x1 x2^-1 x1^-2");
  const auto n = normalize_endpoints(w);
  EXPECT_EQ(to_string(n.core), "x2 x1 x2^-1 x1^-1");
  EXPECT_EQ(to_string(n.conjugator), "x1");
  // core = c^{-1} w c, checked with the rescanning oracle.
  const auto c = raw(n.conjugator);
  EXPECT_EQ(raw(n.core), reduce_by_rescanning(testing::concat(testing::concat(testing::inverse(c), raw(w)), c)));
}

TEST(Normalize, SharedGeneratorWithNegativeSignTakesAdjoint) {
  // Endpoints x1^-1 ... x1^-1: adjoint, then rotate the leading x1 block.
  const Word w = W("x1^-1 x2 x1 x1 x2^-1 x1^-1");
  ASSERT_TRUE(is_balanced(w));
  const auto n = normalize_endpoints(w);
  EXPECT_TRUE(n.conjugated);
  EXPECT_NE(n.core.letters().front().generator, n.core.letters().back().generator);
  EXPECT_EQ(n.core.length(), w.length());
  const Word back = n.conjugator * n.core * n.conjugator.inverse();
  EXPECT_EQ(back, w.inverse());
}

TEST(Normalize, RejectsTrivialAndUnbalanced) {
  EXPECT_THROW(normalize_endpoints(Word(2)), DomainError);
  EXPECT_THROW(normalize_endpoints(W("x1 x2 x1^-2")), DomainError);
}

std::vector<Complex> sorted_spectrum(const Matrix& m, bool conjugate) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  if (conjugate)
    for (auto& z : ev) z = std::conj(z);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });
  return ev;
}

TEST(Normalize, PreservesBalanceLengthAndSpectrumOnRandomWords) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int rank = 2 + trial % 2;
    const Word w = testing::random_balanced_word(rank, 2 + trial % 5, rng);
    const auto n = normalize_endpoints(w);
    EXPECT_TRUE(is_balanced(n.core));
    EXPECT_TRUE(n.core.is_reduced());
    EXPECT_NE(n.core.letters().front().generator, n.core.letters().back().generator);
    const Word target = n.conjugated ? w.inverse() : w;
    EXPECT_EQ(n.conjugator * n.core * n.conjugator.inverse(), target);

    // Cyclically reduced inputs keep their length.
    if (!w.letters().front().cancels(w.letters().back())) {
      EXPECT_EQ(n.core.length(), w.length());
    }

    const auto u = UnitaryTuple::random(rank, 3, rng);
    const auto a = sorted_spectrum(word_map(w, u), n.conjugated);
    const auto b = sorted_spectrum(word_map(n.core, u), false);
    // Compare as multisets on the circle, robust to the ±π seam.
    for (const Complex& z : a) {
      double best = 1e9;
      for (const Complex& y : b) best = std::min(best, std::abs(z - y));
      EXPECT_LE(best, 1e-10);
    }
  }
}

TEST(WordMap, IdentityTupleAndCommutingDiagonals) {
  const Word c = W("x1 x2 x1^-1 x2^-1");
  EXPECT_TRUE(word_map(c, UnitaryTuple::trivial(2, 3)).isApprox(Matrix::Identity(3, 3)));
  Matrix d1 = Matrix::Zero(3, 3);
  Matrix d2 = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    d1(i, i) = std::polar(1.0, 0.3 + i);
    d2(i, i) = std::polar(1.0, -1.1 * i);
  }
  const Matrix m = word_map(c, UnitaryTuple({d1, d2}));
  EXPECT_LE((m - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(WordMap, InverseWordGivesAdjoint) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Word w = Word::reduce(testing::random_letters(2, 1 + trial % 10, rng), 2);
    const auto u = UnitaryTuple::random(2, 4, rng);
    const Matrix diff = word_map(w.inverse(), u) - word_map(w, u).adjoint();
    EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(WordMap, RejectsRankMismatch) {
  EXPECT_THROW(word_map(W("x1 x2", 2), UnitaryTuple::trivial(3, 2)), DomainError);
}

TEST(WordText, ParsesPowersAndIdentity) {
  EXPECT_EQ(to_string(parse_word("x1^2 x2^-2")), "x1 x1 x2^-1 x2^-1");
  EXPECT_TRUE(parse_word("e").is_identity());
  EXPECT_TRUE(parse_word("").is_identity());
  EXPECT_EQ(parse_word("x3").rank(), 3);
  EXPECT_THROW(parse_word("y1"), ParseError);
  EXPECT_THROW(parse_word("x1^0"), ParseError);
  EXPECT_THROW(parse_word("x1^a"), ParseError);
}

}  // namespace
}  // namespace fdrep
