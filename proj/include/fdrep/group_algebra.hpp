#ifndef FDREP_GROUP_ALGEBRA_HPP
#define FDREP_GROUP_ALGEBRA_HPP

#include <map>
#include <string>

#include "fdrep/linalg.hpp"
#include "fdrep/unitary_tuple.hpp"
#include "fdrep/word.hpp"

namespace fdrep {

/// Finite linear combination of reduced words (an element of C[F_n]).
/// Zero coefficients are never stored.
class GroupAlgebraElement {
public:
  explicit GroupAlgebraElement(int rank) : rank_(rank) {
    if (rank < 1) throw DomainError("rank must be at least 1");
  }

  static GroupAlgebraElement monomial(Complex c, const Word& w) {
    GroupAlgebraElement a(w.rank());
    a.add_term(c, w);
    return a;
  }

  GroupAlgebraElement& add_term(Complex c, const Word& w) {
    if (w.rank() != rank_) throw DomainError("word rank does not match element rank");
    if (!w.is_reduced()) throw DomainError("group algebra terms must be reduced words");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
    return *this;
  }

  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(c, w);
    return r;
  }

  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const {
    if (o.rank_ != rank_) throw DomainError("rank mismatch in group algebra product");
    GroupAlgebraElement r(rank_);
    for (const auto& [w1, c1] : terms_)
      for (const auto& [w2, c2] : o.terms_) r.add_term(c1 * c2, w1 * w2);
    return r;
  }

  int rank() const { return rank_; }
  const std::map<Word, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Σ|c|, the norm bound valid in every unitary representation.
  double l1_norm() const {
    double s = 0.0;
    for (const auto& [w, c] : terms_) s += std::abs(c);
    return s;
  }

private:
  int rank_;
  std::map<Word, Complex> terms_;
};

inline Matrix element_product(const GroupAlgebraElement& a, const std::vector<Matrix>& us) {
  const Eigen::Index d = us.front().rows();
  Matrix out = Matrix::Zero(d, d);
  for (const auto& [w, c] : a.terms()) out += c * word_product(w, us);
  return out;
}

/// π(a) = Σ c · w(U).
inline Matrix apply_element(const GroupAlgebraElement& a, const UnitaryTuple& u) {
  if (a.rank() != u.rank()) throw DomainError("element rank does not match tuple size");
  return element_product(a, u.matrices());
}

}  // namespace fdrep

#endif
