#ifndef FDREP_CLAMP_HPP
#define FDREP_CLAMP_HPP

#include <algorithm>

#include "fdrep/linalg.hpp"

namespace fdrep {

/// b = u·f(|a|) with f(s) = min(s, c): singular values above c are cut to c,
/// singular vectors kept. Then ‖b‖ = min(‖a‖, c) and ‖a − b‖ = max(0, ‖a‖ − c).
inline Matrix norm_clamp(const Matrix& a, double c) {
  if (!(c >= 0.0)) throw DomainError("clamp level must be nonnegative");
  if (a.size() == 0) return a;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(0) <= c) return a;
  Eigen::VectorXd clamped = s.cwiseMin(c);
  const Eigen::Index k = s.size();
  return svd.matrixU().leftCols(k) * clamped.cast<Complex>().asDiagonal() * svd.matrixV().leftCols(k).adjoint();
}

}  // namespace fdrep

#endif
