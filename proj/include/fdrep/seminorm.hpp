#ifndef FDREP_SEMINORM_HPP
#define FDREP_SEMINORM_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "fdrep/ascent.hpp"
#include "fdrep/group_algebra.hpp"
#include "fdrep/perm_rep.hpp"

namespace fdrep {

/// Certified lower bound on sup{‖π(a)‖ : π a d-dimensional representation}.
struct SeminormEstimate {
  double value = 0.0;
  UnitaryTuple witness;
  Eigen::Index dimension = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

inline SeminormEstimate seminorm_lower_bound(const GroupAlgebraElement& a, Eigen::Index d, const AscentBudget& budget,
                                             const std::vector<UnitaryTuple>& seeds = {}) {
  budget.validate();
  const TupleObjective f = [&a](const std::vector<Matrix>& ms) { return operator_norm(element_product(a, ms)); };
  const AscentResult r = maximize_over_unitaries(f, a.rank(), d, budget, seeds);
  // Report the value recomputed through the public evaluation path.
  const double value = operator_norm(apply_element(a, r.witness));
  return {value, r.witness, d, budget.seed, r.evaluations};
}

/// Lower bound on θ_d, the largest |arg λ| over eigenvalues of w(U), U ∈ U(d)^n.
struct ArcEstimate {
  double theta = 0.0;
  UnitaryTuple witness;
  Eigen::Index dimension = 0;
  std::uint64_t seed = 0;
};

inline double max_abs_arg(const Matrix& m) {
  double best = 0.0;
  for (const Complex& z : eigenvalues(m)) best = std::max(best, std::abs(std::arg(z)));
  return best;
}

namespace detail {

inline void require_balanced_nontrivial(const Word& w, const char* op) {
  if (!w.is_reduced()) throw DomainError(std::string(op) + ": word is not reduced");
  if (w.is_identity()) throw DomainError(std::string(op) + ": word is trivial");
  if (!is_balanced(w)) throw DomainError(std::string(op) + ": word is not balanced");
}

/// Permutation tuple of the word, padded with identity blocks to degree d
/// when d is at least its natural degree.
inline std::optional<UnitaryTuple> perm_seed(const Word& w, Eigen::Index d) {
  const PermRepCertificate cert = build_perm_rep(w);
  if (d < cert.dimension) return std::nullopt;
  return cert.tuple().extended(d - cert.dimension);
}

}  // namespace detail

/// Estimates θ_d from below. Seeds are the supplied tuples plus, when d is
/// at least the permutation degree, the padded permutation tuple.
inline ArcEstimate arc_estimate(const Word& w, Eigen::Index d, const AscentBudget& budget,
                                std::vector<UnitaryTuple> seeds = {}) {
  detail::require_balanced_nontrivial(w, "arc_estimate");
  budget.validate();
  if (auto s = detail::perm_seed(w, d)) seeds.push_back(*s);
  const TupleObjective f = [&w](const std::vector<Matrix>& ms) { return max_abs_arg(word_product(w, ms)); };
  const AscentResult r = maximize_over_unitaries(f, w.rank(), d, budget, seeds);
  return {max_abs_arg(word_map(w, r.witness)), r.witness, d, budget.seed};
}

/// θ estimates for d = 1..max_d. Each dimension is seeded with U ⊕ [1] of the
/// previous witness; since Σ_d ⊆ Σ_{d+1}, the previous bound carries over
/// whenever the new search does not beat it.
inline std::vector<ArcEstimate> arc_scan(const Word& w, Eigen::Index max_d, const AscentBudget& budget) {
  if (max_d < 1) throw DomainError("arc scan needs at least dimension 1");
  std::vector<ArcEstimate> out;
  for (Eigen::Index d = 1; d <= max_d; ++d) {
    AscentBudget b = budget;
    b.seed = derive_seed(budget.seed, static_cast<std::uint64_t>(d));
    std::vector<UnitaryTuple> seeds;
    if (!out.empty()) seeds.push_back(out.back().witness.extended(1));
    ArcEstimate e = arc_estimate(w, d, b, seeds);
    if (!out.empty() && out.back().theta > e.theta) {
      e.theta = out.back().theta;
      e.witness = out.back().witness.extended(1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fdrep

#endif
