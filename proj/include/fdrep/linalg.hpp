#ifndef FDREP_LINALG_HPP
#define FDREP_LINALG_HPP

#include <charconv>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdrep/errors.hpp"

namespace fdrep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Largest singular value.
inline double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

inline std::vector<Complex> eigenvalues(const Matrix& a) {
  if (a.rows() == 1) return {a(0, 0)};
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw ToleranceError("eigenvalue solver did not converge");
  const Vector& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// ‖U U* − I‖ in operator norm.
inline double unitarity_residual(const Matrix& u) {
  const Matrix r = u * u.adjoint() - Matrix::Identity(u.rows(), u.cols());
  return operator_norm(r);
}

/// exp(X) for skew-Hermitian X, computed through the Hermitian matrix -iX
/// so the result is unitary to working precision.
inline Matrix expm_skew(const Matrix& x) {
  const Matrix h = Complex(0.0, -1.0) * x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd& mu = es.eigenvalues();
  Vector phase(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) phase(i) = std::polar(1.0, mu(i));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

/// a ⊕ I_extra.
inline Matrix direct_sum_identity(const Matrix& a, Eigen::Index extra) {
  Matrix out = Matrix::Identity(a.rows() + extra, a.cols() + extra);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

/// Haar-distributed unitary from the QR decomposition of a complex
/// Gaussian matrix, with the phases of R's diagonal absorbed.
template <class Rng>
Matrix random_unitary(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double m = std::abs(rjj);
    if (m > 0) q.col(j) *= rjj / m;
  }
  return q;
}

/// SplitMix64 step; used to derive independent per-restart seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root ^ splitmix64(index + 1));
}

/// z/|z|; requires z != 0.
/// Shortest round-trip decimal form, for messages.
inline std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline Complex sgn(Complex z) {
  const double m = std::abs(z);
  if (m == 0.0) throw DomainError("sgn of zero");
  return z / m;
}

}  // namespace fdrep

#endif
