#ifndef FDREP_EIGENVALUE_HPP
#define FDREP_EIGENVALUE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fdrep/perm_rep.hpp"
#include "fdrep/seminorm.hpp"

namespace fdrep {

/// P^t on the principal branch: each eigenvalue e^{iφ}, φ ∈ (−π, π], is sent
/// to e^{itφ}. The eigenbasis is the exact Fourier basis of each cycle.
inline Matrix permutation_power(const Permutation& p, double t) {
  const int d = p.degree();
  if (t == 0.0) return Matrix::Identity(d, d);
  if (t == 1.0) return perm_to_unitary(p);
  Matrix out = Matrix::Zero(d, d);
  for (const auto& cyc : p.cycles()) {
    const int m = static_cast<int>(cyc.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < m; ++j) {
      // Angle 2πj/m moved into (−π, π]; j = m/2 stays at +π.
      const int jj = 2 * j > m ? j - m : j;
      const Complex phase = std::polar(1.0, t * 2.0 * kPi * jj / m);
      Vector v = Vector::Zero(d);
      for (int s = 0; s < m; ++s) v(cyc[static_cast<std::size_t>(s)] - 1) = std::polar(scale, -2.0 * kPi * j * s / m);
      out += phase * v * v.adjoint();
    }
  }
  return out;
}

/// Path t ↦ U(t) in U(2ℓ)^n from the trivial tuple (t = 0) to the padded
/// permutation tuple (t = 1), ℓ = length of w.
class PermutationPath {
public:
  explicit PermutationPath(const Word& w) : word_(w), perm_(build_perm_rep(w)) {
    dimension_ = 2 * static_cast<Eigen::Index>(w.length());
  }

  Eigen::Index dimension() const { return dimension_; }
  const PermRepCertificate& permutations() const { return perm_; }

  UnitaryTuple at(double t) const {
    std::vector<Matrix> ms;
    const Eigen::Index pad = dimension_ - perm_.dimension;
    for (const auto& s : perm_.sigmas) ms.push_back(direct_sum_identity(permutation_power(s, t), pad));
    return UnitaryTuple(std::move(ms));
  }

  /// Eigenvalue of w(U(t)) with the smallest real part.
  Complex min_real_eigenvalue(double t) const {
    const auto ev = eigenvalues(word_map(word_, at(t)));
    Complex best = ev.front();
    for (const Complex& z : ev)
      if (z.real() < best.real()) best = z;
    return best;
  }

  double g(double t) const { return min_real_eigenvalue(t).real(); }

private:
  Word word_;
  PermRepCertificate perm_;
  Eigen::Index dimension_ = 0;
};

struct EigenvalueCertificate {
  Word word;
  UnitaryTuple tuple;
  Complex target;
  Complex achieved;
  double residual = 0.0;
  double tolerance = 0.0;
  double path_parameter = 0.0;
  bool tuple_conjugated = false;
  bool word_adjoint_normalized = false;
  int iterations = 0;

  Eigen::Index dimension() const { return tuple.dimension(); }
};

/// Eigenvalue of m closest to target.
inline Complex closest_eigenvalue(const Matrix& m, Complex target) {
  const auto ev = eigenvalues(m);
  Complex best = ev.front();
  for (const Complex& z : ev)
    if (std::abs(z - target) < std::abs(best - target)) best = z;
  return best;
}

/// Finds U ∈ U(2ℓ)^n with target ∈ σ(w(U)) by bisecting the minimal real
/// part of the spectrum along the permutation path, then fixing the sign
/// of the imaginary part by complex conjugation of the tuple.
inline EigenvalueCertificate realize_eigenvalue(const Word& w, Complex target, double tol = 1e-6,
                                                int max_iterations = 200) {
  detail::require_balanced_nontrivial(w, "realize_eigenvalue");
  if (std::abs(std::abs(target) - 1.0) > 1e-12) throw DomainError("target eigenvalue must have modulus 1");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  const PermutationPath path(w);
  EigenvalueCertificate cert;
  cert.word = w;
  cert.target = target;
  cert.tolerance = tol;
  cert.word_adjoint_normalized = path.permutations().normalization.conjugated;

  // Endpoints have exact spectra: {1} at t = 0 and a permutation spectrum
  // containing −1 at t = 1.
  if (target == Complex(1.0, 0.0)) {
    cert.tuple = path.at(0.0);
    cert.achieved = Complex(1.0, 0.0);
    return cert;
  }
  if (target == Complex(-1.0, 0.0)) {
    cert.tuple = path.at(1.0);
    cert.achieved = Complex(-1.0, 0.0);
    cert.path_parameter = 1.0;
    return cert;
  }

  const double goal = target.real();
  double lo = 0.0;
  double hi = 1.0;
  double best_t = 0.0;
  double best_res = std::abs(target - Complex(1.0, 0.0));
  Complex best_mu(1.0, 0.0);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Complex mu = path.min_real_eigenvalue(mid);
    const double res = std::min(std::abs(mu - target), std::abs(std::conj(mu) - target));
    if (res < best_res) {
      best_res = res;
      best_t = mid;
      best_mu = mu;
    }
    if (res <= 1e-3 * tol) break;
    if (mu.real() > goal) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  cert.iterations = it + 1;
  if (best_res > tol) {
    throw ToleranceError("eigenvalue continuation reached residual " + format_double(best_res) + " > tolerance " +
                         format_double(tol));
  }

  cert.path_parameter = best_t;
  cert.tuple = path.at(best_t);
  if (std::abs(std::conj(best_mu) - target) < std::abs(best_mu - target)) {
    cert.tuple = cert.tuple.conjugate();
    cert.tuple_conjugated = true;
  }
  cert.achieved = closest_eigenvalue(word_map(w, cert.tuple), target);
  cert.residual = std::abs(cert.achieved - target);
  if (cert.residual > tol) throw ToleranceError("recomputed eigenvalue residual exceeds tolerance");
  return cert;
}

/// Recomputes the eigenvalue claim from the stored tuple.
inline bool verify_eigenvalue(const EigenvalueCertificate& c) {
  if (c.tuple.unitarity_residual() > kUnitarityTolerance) return false;
  const Complex z = closest_eigenvalue(word_map(c.word, c.tuple), c.target);
  return std::abs(z - c.target) <= c.tolerance;
}

enum class BinomialBranch { zero_coefficient, equal_words, unbalanced, balanced };

inline const char* to_string(BinomialBranch b) {
  switch (b) {
    case BinomialBranch::zero_coefficient: return "zero_coefficient";
    case BinomialBranch::equal_words: return "equal_words";
    case BinomialBranch::unbalanced: return "unbalanced";
    case BinomialBranch::balanced: return "balanced";
  }
  return "unknown";
}

/// A representation attaining ‖α·w1 + β·w2‖ = |α| + |β| (or |α + β| when
/// w1 = w2).
struct BinomialCertificate {
  Complex alpha;
  Complex beta;
  Word w1;
  Word w2;
  Word difference;  ///< reduced w2^{-1} w1
  BinomialBranch branch = BinomialBranch::balanced;
  UnitaryTuple representation;
  double attained_norm = 0.0;
  double claimed_norm = 0.0;
  double tolerance = 0.0;
  std::optional<Complex> eigenvalue_target;

  Eigen::Index dimension() const { return representation.dimension(); }
};

inline double binomial_norm(Complex alpha, const Word& w1, Complex beta, const Word& w2, const UnitaryTuple& u) {
  return operator_norm(alpha * word_map(w1, u) + beta * word_map(w2, u));
}

inline BinomialCertificate binomial_certificate(Complex alpha, Complex beta, const Word& w1, const Word& w2,
                                                double tol = 1e-6) {
  if (w1.rank() != w2.rank()) throw DomainError("w1 and w2 must have the same rank");
  if (!w1.is_reduced() || !w2.is_reduced()) throw DomainError("binomial words must be reduced");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int rank = w1.rank();

  BinomialCertificate c;
  c.alpha = alpha;
  c.beta = beta;
  c.w1 = w1;
  c.w2 = w2;
  c.difference = w2.inverse() * w1;
  c.tolerance = tol;
  c.claimed_norm = std::abs(alpha) + std::abs(beta);

  const Complex zero(0.0, 0.0);
  if (alpha == zero || beta == zero) {
    c.branch = BinomialBranch::zero_coefficient;
    c.representation = UnitaryTuple::trivial(rank, 1);
  } else if (w1 == w2) {
    c.branch = BinomialBranch::equal_words;
    c.claimed_norm = std::abs(alpha + beta);
    c.representation = UnitaryTuple::trivial(rank, 1);
  } else {
    const Complex tau = sgn(beta) / sgn(alpha);
    c.eigenvalue_target = tau;
    if (!is_balanced(c.difference)) {
      c.branch = BinomialBranch::unbalanced;
      const auto sums = c.difference.exponent_sums();
      std::vector<Matrix> ms(static_cast<std::size_t>(rank), Matrix::Identity(1, 1));
      for (std::size_t g = 0; g < sums.size(); ++g) {
        if (sums[g] != 0) {
          ms[g](0, 0) = std::polar(1.0, std::arg(tau) / sums[g]);
          break;
        }
      }
      c.representation = UnitaryTuple(std::move(ms));
    } else {
      c.branch = BinomialBranch::balanced;
      const double eig_tol = tol / std::max(1.0, std::abs(alpha));
      c.representation = realize_eigenvalue(c.difference, tau, eig_tol).tuple;
    }
  }
  c.attained_norm = binomial_norm(alpha, w1, beta, w2, c.representation);
  if (std::abs(c.attained_norm - c.claimed_norm) > tol) {
    throw ToleranceError("binomial certificate attained " + format_double(c.attained_norm) + ", expected " +
                         format_double(c.claimed_norm));
  }
  return c;
}

inline bool verify_binomial(const BinomialCertificate& c) {
  if (c.representation.unitarity_residual() > kUnitarityTolerance) return false;
  const double n = binomial_norm(c.alpha, c.w1, c.beta, c.w2, c.representation);
  return std::abs(n - c.claimed_norm) <= c.tolerance;
}

/// Dimension 2ℓ reached here against the 4·n^L bound (L the longest word length).
struct DimensionComparison {
  std::uint64_t two_ell = 0;
  std::uint64_t fnt = 0;
  bool fnt_saturated = false;
};

inline DimensionComparison fnt_bound_compare(const Word& w1, const Word& w2) {
  if (w1.rank() != w2.rank()) throw DomainError("w1 and w2 must have the same rank");
  DimensionComparison out;
  out.two_ell = 2 * static_cast<std::uint64_t>((w2.inverse() * w1).length());
  const std::size_t longest = std::max(w1.length(), w2.length());
  const auto n = static_cast<std::uint64_t>(w1.rank());
  std::uint64_t v = 4;
  for (std::size_t i = 0; i < longest; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / n) {
      out.fnt_saturated = true;
      v = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    v *= n;
  }
  out.fnt = v;
  return out;
}

}  // namespace fdrep

#endif
