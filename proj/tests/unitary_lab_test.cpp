#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fdrep/clamp.hpp"
#include "fdrep/eigenvalue.hpp"
#include "fdrep/seminorm.hpp"
#include "test_support.hpp"

namespace fdrep {
namespace {

const Word kCommutator = parse_word("x1 x2 x1^-1 x2^-1");

AscentBudget small_budget(int restarts = 2, int iterations = 20) {
  AscentBudget b;
  b.restarts = restarts;
  b.max_iterations = iterations;
  return b;
}

GroupAlgebraElement one_minus(const Word& w) {
  GroupAlgebraElement a(w.rank());
  a.add_term(1.0, Word(w.rank()));
  a.add_term(-1.0, w);
  return a;
}

double smallest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

TEST(ApplyElement, IdentityWordAndDifferenceAtTrivialTuple) {
  std::mt19937_64 rng(1);
  const auto u = UnitaryTuple::random(2, 3, rng);
  EXPECT_TRUE(apply_element(GroupAlgebraElement::monomial(1.0, Word(2)), u).isApprox(Matrix::Identity(3, 3)));

  GroupAlgebraElement a(2);
  a.add_term(1.0, parse_word("x1 x2"));
  a.add_term(-1.0, parse_word("x2^-1"));
  EXPECT_EQ(apply_element(a, UnitaryTuple::trivial(2, 4)), Matrix::Zero(4, 4));
}

TEST(ApplyElement, OneMinusCommutatorAtPermutationTupleHasNormTwo) {
  const auto cert = build_perm_rep(kCommutator);
  EXPECT_NEAR(operator_norm(apply_element(one_minus(kCommutator), cert.tuple())), 2.0, 1e-12);
}

TEST(ApplyElement, RejectsRankMismatch) {
  EXPECT_THROW(apply_element(one_minus(kCommutator), UnitaryTuple::trivial(3, 2)), DomainError);
}

TEST(Seminorm, BalancedOneMinusWordVanishesInDimensionOne) {
  const auto e = seminorm_lower_bound(one_minus(kCommutator), 1, small_budget());
  EXPECT_EQ(e.value, 0.0);
}

TEST(Seminorm, SeededWithPermutationTupleReachesTwo) {
  const auto cert = build_perm_rep(kCommutator);
  const auto e = seminorm_lower_bound(one_minus(kCommutator), 8, small_budget(1, 5), {cert.tuple()});
  EXPECT_NEAR(e.value, 2.0, 1e-9);
  EXPECT_LE(e.witness.unitarity_residual(), kUnitarityTolerance);
}

TEST(Seminorm, SingleWordGivesCoefficientModulus) {
  const Complex c(0.6, -1.7);
  for (Eigen::Index d : {1, 2, 3}) {
    const auto e = seminorm_lower_bound(GroupAlgebraElement::monomial(c, parse_word("x1 x2^-1 x1")), d, small_budget(1, 3));
    EXPECT_NEAR(e.value, std::abs(c), 1e-12);
  }
}

TEST(Seminorm, RejectsInvalidBudget) {
  AscentBudget b;
  b.restarts = -1;
  EXPECT_THROW(seminorm_lower_bound(one_minus(kCommutator), 2, b), DomainError);
  b = AscentBudget{};
  b.max_iterations = 0;
  EXPECT_THROW(seminorm_lower_bound(one_minus(kCommutator), 2, b), DomainError);
}

GroupAlgebraElement random_element(int rank, int terms, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  GroupAlgebraElement a(rank);
  for (int k = 0; k < terms; ++k) {
    a.add_term(Complex(n(rng), n(rng)), Word::reduce(testing::random_letters(rank, 1 + rng() % 4, rng), rank));
  }
  return a;
}

TEST(Seminorm, BoundedByL1NormAndMonotoneInBudgetAndSeeds) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_element(2, 3, rng);
    const auto small = seminorm_lower_bound(a, 2, small_budget(1, 10));
    const auto more_restarts = seminorm_lower_bound(a, 2, small_budget(3, 10));
    const auto more_iterations = seminorm_lower_bound(a, 2, small_budget(1, 30));
    const auto seeded = seminorm_lower_bound(a, 2, small_budget(1, 10), {UnitaryTuple::random(2, 2, rng)});
    EXPECT_GE(more_restarts.value, small.value);
    EXPECT_GE(more_iterations.value, small.value);
    EXPECT_GE(seeded.value, small.value);
    for (const auto* e : {&small, &more_restarts, &more_iterations, &seeded}) {
      EXPECT_LE(e->value, a.l1_norm() + 1e-12);
      EXPECT_NEAR(e->value, operator_norm(apply_element(a, e->witness)), 1e-12);
    }
  }
}

TEST(Seminorm, BlockExtensionSeedKeepsSequenceNondecreasing) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 4; ++trial) {
    const auto a = random_element(2, 3, rng);
    auto prev = seminorm_lower_bound(a, 1, small_budget(2, 10));
    for (Eigen::Index d = 2; d <= 3; ++d) {
      const auto next = seminorm_lower_bound(a, d, small_budget(1, 10), {prev.witness.extended(1)});
      EXPECT_GE(next.value, prev.value - 1e-12);
      prev = next;
    }
  }
}

TEST(Seminorm, IsDeterministicForFixedSeed) {
  std::mt19937_64 rng(5);
  const auto a = random_element(2, 3, rng);
  AscentBudget b = small_budget(3, 10);
  b.seed = 99;
  const auto x = seminorm_lower_bound(a, 2, b);
  b.parallel = false;
  const auto y = seminorm_lower_bound(a, 2, b);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.witness.matrices()[0], y.witness.matrices()[0]);
}

// Dense grid over the torus of unit scalars, followed by a finer local grid
// around the best point.
double grid_max_two_generators(const GroupAlgebraElement& a, double step) {
  auto value = [&](double p, double q) {
    Complex s(0.0, 0.0);
    for (const auto& [w, c] : a.terms()) {
      const auto e = w.exponent_sums();
      s += c * std::polar(1.0, e[0] * p + e[1] * q);
    }
    return std::abs(s);
  };
  const int n = static_cast<int>(std::ceil(2.0 * kPi / step));
  double best = -1.0, bp = 0.0, bq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double p = -kPi + i * step, q = -kPi + j * step;
      const double v = value(p, q);
      if (v > best) {
        best = v;
        bp = p;
        bq = q;
      }
    }
  for (double h = step / 10.0; h > 1e-9; h /= 10.0) {
    const double cp = bp, cq = bq;
    for (int i = -20; i <= 20; ++i)
      for (int j = -20; j <= 20; ++j) {
        const double v = value(cp + i * h, cq + j * h);
        if (v > best) {
          best = v;
          bp = cp + i * h;
          bq = cq + j * h;
        }
      }
  }
  return best;
}

TEST(Seminorm, DimensionOneMatchesGridOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_element(2, 1 + trial % 3, rng);
    const double oracle = grid_max_two_generators(a, 1e-2);
    const auto e = seminorm_lower_bound(a, 1, small_budget(16, 100));
    EXPECT_NEAR(e.value, oracle, 1e-6) << trial;
  }
}

TEST(Arc, DimensionOneIsZeroAndPermutationDimensionIsPi) {
  EXPECT_EQ(arc_estimate(kCommutator, 1, small_budget()).theta, 0.0);
  const auto e = arc_estimate(kCommutator, 8, small_budget(1, 5));
  EXPECT_NEAR(e.theta, kPi, 1e-8);
  EXPECT_GE(max_abs_arg(word_map(kCommutator, e.witness)), e.theta - 1e-8);
}

TEST(Arc, RejectsUnbalancedAndTrivial) {
  EXPECT_THROW(arc_estimate(parse_word("x1 x2 x1^-2"), 2, small_budget()), DomainError);
  EXPECT_THROW(arc_estimate(Word(2), 2, small_budget()), DomainError);
}

TEST(Arc, ScanIsNondecreasingWithWitnesses) {
  const Word w = parse_word("x1 x2 x2 x1^-1 x2^-1 x2^-1");
  const auto scan = arc_scan(w, 4, small_budget(2, 15));
  ASSERT_EQ(scan.size(), 4u);
  EXPECT_EQ(scan[0].theta, 0.0);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    EXPECT_EQ(scan[i].dimension, static_cast<Eigen::Index>(i + 1));
    EXPECT_GE(max_abs_arg(word_map(w, scan[i].witness)), scan[i].theta - 1e-8);
    if (i > 0) {
      EXPECT_GE(scan[i].theta, scan[i - 1].theta);
    }
  }
}

TEST(PermutationPower, HalfPowersComposeToThePermutation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> im(static_cast<std::size_t>(1 + trial % 7));
    std::iota(im.begin(), im.end(), 1);
    std::shuffle(im.begin(), im.end(), rng);
    const Permutation p(im);
    const Matrix h = permutation_power(p, 0.5);
    EXPECT_LE(unitarity_residual(h), 1e-12);
    EXPECT_LE((h * h - perm_to_unitary(p)).cwiseAbs().maxCoeff(), 1e-12);
    const Matrix a = permutation_power(p, 0.3), b = permutation_power(p, 0.45);
    EXPECT_LE((a * b - permutation_power(p, 0.75)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RealizeEigenvalue, PathEndpointsOnCorpus) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Word w = testing::random_balanced_word(2 + trial % 2, 2 + trial % 4, rng);
    const PermutationPath path(w);
    EXPECT_NEAR(path.g(0.0), 1.0, 1e-10) << to_string(w);
    EXPECT_NEAR(path.g(1.0), -1.0, 1e-10) << to_string(w);
  }
}

TEST(RealizeEigenvalue, EndpointTargetsAreExact) {
  const auto one = realize_eigenvalue(kCommutator, 1.0);
  EXPECT_EQ(one.residual, 0.0);
  EXPECT_EQ(one.tuple.matrices()[0], Matrix::Identity(8, 8));
  const auto minus = realize_eigenvalue(kCommutator, -1.0);
  EXPECT_EQ(minus.residual, 0.0);
  EXPECT_EQ(minus.dimension(), 8);
  EXPECT_TRUE(verify_eigenvalue(minus));
  EXPECT_LE(smallest_singular_value(word_map(kCommutator, minus.tuple) + Matrix::Identity(8, 8)), 1e-12);
}

TEST(RealizeEigenvalue, InteriorTargetsOnTheCommutator) {
  for (double phase : {kPi / 3.0, kPi / 2.0, 2.9, -1.0}) {
    const Complex target = std::polar(1.0, phase);
    const auto c = realize_eigenvalue(kCommutator, target, 1e-6);
    EXPECT_EQ(c.dimension(), 8);
    EXPECT_LE(c.residual, 1e-6);
    EXPECT_LE(c.tuple.unitarity_residual(), 1e-10);
    EXPECT_TRUE(verify_eigenvalue(c));
    // Independent check: M − λI is numerically singular.
    const Matrix m = word_map(kCommutator, c.tuple);
    EXPECT_LE(smallest_singular_value(m - target * Matrix::Identity(8, 8)), 1e-6);
  }
}

TEST(RealizeEigenvalue, AdjointNormalizedWord) {
  const Word w = parse_word("x1^-1 x2 x1 x1 x2^-1 x1^-1");
  const Complex target = std::polar(1.0, 0.7);
  const auto c = realize_eigenvalue(w, target, 1e-7);
  EXPECT_TRUE(c.word_adjoint_normalized);
  EXPECT_LE(smallest_singular_value(word_map(w, c.tuple) - target * Matrix::Identity(c.dimension(), c.dimension())),
            1e-7);
}

TEST(RealizeEigenvalue, RejectsBadInput) {
  EXPECT_THROW(realize_eigenvalue(kCommutator, Complex(0.5, 0.5)), DomainError);
  EXPECT_THROW(realize_eigenvalue(parse_word("x1 x2"), Complex(0.0, 1.0)), DomainError);
}

TEST(Binomial, CommutatorPairAttainsTwoInDimensionEight) {
  const auto c = binomial_certificate(1.0, -1.0, parse_word("x1 x2"), parse_word("x2 x1"));
  EXPECT_EQ(c.branch, BinomialBranch::balanced);
  EXPECT_EQ(to_string(c.difference), "x1^-1 x2^-1 x1 x2");
  EXPECT_EQ(c.dimension(), 8);
  EXPECT_NEAR(c.attained_norm, 2.0, 1e-9);
  EXPECT_TRUE(verify_binomial(c));
}

TEST(Binomial, PositiveCoefficientsUseTrivialTuple) {
  const auto c = binomial_certificate(1.0, 1.0, parse_word("x1 x2"), parse_word("x2 x1"));
  EXPECT_NEAR(c.attained_norm, 2.0, 1e-12);
  for (const auto& m : c.representation.matrices()) EXPECT_EQ(m, Matrix::Identity(m.rows(), m.cols()));
}

TEST(Binomial, UnbalancedDifferenceUsesScalars) {
  const Word w1 = parse_word("x1 x2 x1^-2");
  for (double beta : {1.0, -1.0}) {
    const auto c = binomial_certificate(1.0, beta, w1, Word(2));
    EXPECT_EQ(c.branch, BinomialBranch::unbalanced);
    EXPECT_EQ(c.dimension(), 1);
    EXPECT_NEAR(c.attained_norm, 2.0, 1e-12);
  }
  const auto c = binomial_certificate(Complex(0.0, 2.0), Complex(1.0, 1.0), parse_word("x1^3 x2"), parse_word("x2^-1"));
  EXPECT_NEAR(c.attained_norm, 2.0 + std::sqrt(2.0), 1e-12);
}

TEST(Binomial, ComplexCoefficientsOnBalancedDifference) {
  const Complex alpha(0.3, 1.1), beta(-0.8, 0.4);
  const auto c = binomial_certificate(alpha, beta, parse_word("x1 x2"), parse_word("x2 x1"), 1e-7);
  EXPECT_NEAR(c.attained_norm, std::abs(alpha) + std::abs(beta), 1e-7);
  EXPECT_TRUE(verify_binomial(c));
}

TEST(Binomial, DegenerateBranches) {
  const auto z = binomial_certificate(0.0, Complex(0.0, -3.0), parse_word("x1", 2), parse_word("x2", 2));
  EXPECT_EQ(z.branch, BinomialBranch::zero_coefficient);
  EXPECT_NEAR(z.attained_norm, 3.0, 1e-12);
  const auto e = binomial_certificate(2.0, Complex(0.0, 1.0), parse_word("x1 x2"), parse_word("x1 x2"));
  EXPECT_EQ(e.branch, BinomialBranch::equal_words);
  EXPECT_NEAR(e.attained_norm, std::sqrt(5.0), 1e-12);
}

TEST(FntBound, Examples) {
  const auto a = fnt_bound_compare(parse_word("x1 x2"), parse_word("x2 x1"));
  EXPECT_EQ(a.two_ell, 8u);
  EXPECT_EQ(a.fnt, 16u);
  const auto b = fnt_bound_compare(parse_word("x1 x2 x1 x2"), parse_word("x2 x1 x2 x1"));
  EXPECT_EQ(b.two_ell, 16u);
  EXPECT_EQ(b.fnt, 64u);
  const auto c = fnt_bound_compare(parse_word("x1^2", 1), Word(1));
  EXPECT_EQ(c.two_ell, 4u);
  EXPECT_EQ(c.fnt, 4u);
  const auto big = fnt_bound_compare(parse_word("x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2 x1 x2"), Word(2));
  EXPECT_TRUE(big.fnt_saturated);
}

TEST(NormClamp, Examples) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  expected(1, 1) = 1.0;
  EXPECT_LE((norm_clamp(a, 2.0) - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(norm_clamp(a, 3.5), a);
  EXPECT_EQ(norm_clamp(Matrix::Zero(3, 3), 0.5), Matrix::Zero(3, 3));
  EXPECT_THROW(norm_clamp(a, -1.0), DomainError);
}

TEST(NormClamp, ProofIdentitiesOnRandomMatrices) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 1 + trial % 8;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
    const double na = operator_norm(a);
    const double c = unit(rng) * na;
    const Matrix b = norm_clamp(a, c);
    EXPECT_NEAR(operator_norm(b), std::min(na, c), 1e-10);
    EXPECT_NEAR(operator_norm(a - b), std::max(0.0, na - c), 1e-10);
    EXPECT_LE((norm_clamp(b, c) - b).cwiseAbs().maxCoeff(), 1e-10);
  }
}

}  // namespace
}  // namespace fdrep
