#ifndef FDREP_UNITARY_TUPLE_HPP
#define FDREP_UNITARY_TUPLE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "fdrep/linalg.hpp"
#include "fdrep/word.hpp"

namespace fdrep {

inline constexpr double kUnitarityTolerance = 1e-10;

/// Images of the generators under a representation F_n -> U(d).
class UnitaryTuple {
public:
  UnitaryTuple() = default;

  explicit UnitaryTuple(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw DomainError("unitary tuple must have at least one matrix");
    const Eigen::Index d = matrices_.front().rows();
    if (d < 1) throw DomainError("unitary tuple dimension must be positive");
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
      const Matrix& m = matrices_[i];
      if (m.rows() != d || m.cols() != d) throw DomainError("unitary tuple matrices must share one square dimension");
      const double r = fdrep::unitarity_residual(m);
      if (!(r <= kUnitarityTolerance)) {
        throw DomainError("matrix " + std::to_string(i + 1) + " is not unitary (residual " + format_double(r) + ")");
      }
    }
  }

  static UnitaryTuple trivial(int rank, Eigen::Index d) {
    return UnitaryTuple(std::vector<Matrix>(static_cast<std::size_t>(rank), Matrix::Identity(d, d)));
  }

  template <class Rng>
  static UnitaryTuple random(int rank, Eigen::Index d, Rng& rng) {
    std::vector<Matrix> ms;
    ms.reserve(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) ms.push_back(random_unitary(d, rng));
    return UnitaryTuple(std::move(ms));
  }

  int rank() const { return static_cast<int>(matrices_.size()); }
  Eigen::Index dimension() const { return matrices_.empty() ? 0 : matrices_.front().rows(); }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& operator[](std::size_t i) const { return matrices_[i]; }

  double unitarity_residual() const {
    double r = 0.0;
    for (const Matrix& m : matrices_) r = std::max(r, fdrep::unitarity_residual(m));
    return r;
  }

  /// U ⊕ I_extra for every generator.
  UnitaryTuple extended(Eigen::Index extra) const {
    std::vector<Matrix> ms;
    for (const Matrix& m : matrices_) ms.push_back(direct_sum_identity(m, extra));
    return UnitaryTuple(std::move(ms));
  }

  /// Entrywise complex conjugate.
  UnitaryTuple conjugate() const {
    std::vector<Matrix> ms;
    for (const Matrix& m : matrices_) ms.push_back(m.conjugate());
    return UnitaryTuple(std::move(ms));
  }

private:
  std::vector<Matrix> matrices_;
};

/// Word product on raw generator images, with no validation. Rightmost
/// letter applied first. In dimension 1 the generators commute and the
/// product is taken over exponent sums, so balanced words give exactly 1.
inline Matrix word_product(const Word& w, const std::vector<Matrix>& us) {
  const Eigen::Index d = us.front().rows();
  if (d == 1) {
    Complex z(1.0, 0.0);
    const auto sums = w.exponent_sums();
    for (std::size_t g = 0; g < sums.size(); ++g) {
      const Complex base = sums[g] > 0 ? us[g](0, 0) : Complex(1.0, 0.0) / us[g](0, 0);
      for (int k = 0; k < std::abs(sums[g]); ++k) z *= base;
    }
    return Matrix::Constant(1, 1, z);
  }
  Matrix out = Matrix::Identity(d, d);
  for (const Letter& l : w.letters()) {
    const Matrix& m = us[static_cast<std::size_t>(l.generator - 1)];
    if (l.sign > 0) {
      out = out * m;
    } else {
      out = out * m.adjoint();
    }
  }
  return out;
}

/// w(U_1, ..., U_n).
inline Matrix word_map(const Word& w, const UnitaryTuple& u) {
  if (w.rank() != u.rank()) {
    throw DomainError("word rank " + std::to_string(w.rank()) + " does not match tuple size " + std::to_string(u.rank()));
  }
  return word_product(w, u.matrices());
}

}  // namespace fdrep

#endif
