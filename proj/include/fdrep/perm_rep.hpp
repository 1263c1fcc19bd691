#ifndef FDREP_PERM_REP_HPP
#define FDREP_PERM_REP_HPP

#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "fdrep/permutation.hpp"
#include "fdrep/unitary_tuple.hpp"
#include "fdrep/word.hpp"

namespace fdrep {

/// Evaluates w on a tuple of permutations, rightmost letter first.
inline Permutation evaluate_word(const Word& w, std::span<const Permutation> sigmas) {
  if (static_cast<int>(sigmas.size()) != w.rank()) throw DomainError("permutation tuple size does not match word rank");
  const int d = sigmas.front().degree();
  std::vector<Permutation> inverses;
  for (const auto& s : sigmas) inverses.push_back(s.inverse());
  std::vector<int> im(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    int p = j;
    for (std::size_t k = 1; k <= w.length(); ++k) {
      const Letter& l = w.from_right(k);
      const auto g = static_cast<std::size_t>(l.generator - 1);
      p = l.sign > 0 ? sigmas[g](p) : inverses[g](p);
    }
    im[static_cast<std::size_t>(j - 1)] = p;
  }
  return Permutation(std::move(im));
}

inline UnitaryTuple permutation_tuple(std::span<const Permutation> sigmas) {
  std::vector<Matrix> ms;
  for (const auto& s : sigmas) ms.push_back(perm_to_unitary(s));
  return UnitaryTuple(std::move(ms));
}

/// Permutations sigma_1..sigma_n of degree 2ℓ under which the normalized word
/// contains the two-cycle (1, ℓ+1).
struct PermRepCertificate {
  Word original;
  NormalizedWord normalization;
  std::vector<Permutation> sigmas;
  std::pair<int, int> two_cycle{1, 1};
  int dimension = 0;

  const Word& word() const { return normalization.core; }
  UnitaryTuple tuple() const { return permutation_tuple(sigmas); }
};

namespace detail {

/// σ^{ε}(from) = to stored as a forward assignment on σ.
inline void require_step(std::vector<PartialPermutation>& parts, const Letter& l, int from, int to) {
  auto& p = parts[static_cast<std::size_t>(l.generator - 1)];
  if (l.sign > 0) {
    p.assign(from, to);
  } else {
    p.assign(to, from);
  }
}

}  // namespace detail

/// Imposes the path constraints on an endpoint-normalized core and completes
/// greedily. Performs no reducedness check, so a non-reduced core surfaces
/// as ConstraintConflict.
inline std::vector<Permutation> perm_rep_from_core(const Word& core) {
  const std::size_t len = core.length();
  if (len < 2) throw DomainError("core word must have length at least 2");
  if (core.from_right(1).generator == core.from_right(len).generator) {
    throw DomainError("core word endpoints share a generator");
  }
  const int ell = static_cast<int>(len);
  const int degree = 2 * ell;
  std::vector<PartialPermutation> parts(static_cast<std::size_t>(core.rank()), PartialPermutation(degree));
  for (int k = 1; k <= ell; ++k) detail::require_step(parts, core.from_right(static_cast<std::size_t>(k)), k, k + 1);
  for (int k = 1; k <= ell - 1; ++k)
    detail::require_step(parts, core.from_right(static_cast<std::size_t>(k)), ell + k, ell + k + 1);
  detail::require_step(parts, core.from_right(len), degree, 1);

  std::vector<Permutation> sigmas;
  for (const auto& p : parts) sigmas.push_back(p.complete_greedy());
  return sigmas;
}

/// Permutation representation of degree 2ℓ (ℓ = length of the normalized
/// core) in which w has -1 as an eigenvalue.
inline PermRepCertificate build_perm_rep(const Word& w) {
  PermRepCertificate cert;
  cert.original = w;
  cert.normalization = normalize_endpoints(w);
  cert.sigmas = perm_rep_from_core(cert.normalization.core);
  const int ell = static_cast<int>(cert.normalization.core.length());
  cert.dimension = 2 * ell;
  cert.two_cycle = {1, ell + 1};

  const Permutation phi = evaluate_word(cert.normalization.core, cert.sigmas);
  if (phi(1) != ell + 1 || phi(ell + 1) != 1) throw ConstraintConflict("constructed permutations miss the two-cycle");
  return cert;
}

/// Checks a certificate from its raw permutations.
inline bool verify_perm_rep(const PermRepCertificate& cert) {
  const int ell = static_cast<int>(cert.word().length());
  if (cert.dimension != 2 * ell) return false;
  for (const auto& s : cert.sigmas)
    if (s.degree() != cert.dimension) return false;
  const Permutation phi = evaluate_word(cert.word(), cert.sigmas);
  if (phi(cert.two_cycle.first) != cert.two_cycle.second || phi(cert.two_cycle.second) != cert.two_cycle.first) return false;
  // The same tuple must also give -1 for the word as originally supplied.
  return spectrum_contains_minus_one(phi) && spectrum_contains_minus_one(evaluate_word(cert.original, cert.sigmas));
}

/// Experiment for degrees below 2ℓ: imposes only the forward path
/// 1 -> 2 -> ... -> ℓ+1 and completes the remaining slots at random,
/// returning the first tuple under which w gets eigenvalue -1. No success
/// guarantee below degree 2ℓ.
inline std::optional<std::vector<Permutation>> search_perm_rep(const Word& w, int degree, int attempts,
                                                               std::uint64_t seed) {
  const NormalizedWord nw = normalize_endpoints(w);
  const Word& core = nw.core;
  const int ell = static_cast<int>(core.length());
  if (degree < ell + 1) throw DomainError("degree must be at least ell + 1");
  std::vector<PartialPermutation> parts(static_cast<std::size_t>(core.rank()), PartialPermutation(degree));
  for (int k = 1; k <= ell; ++k) detail::require_step(parts, core.from_right(static_cast<std::size_t>(k)), k, k + 1);

  std::mt19937_64 rng(seed);
  for (int a = 0; a < attempts; ++a) {
    std::vector<Permutation> sigmas;
    for (const auto& p : parts) {
      auto free = p.free_images();
      std::shuffle(free.begin(), free.end(), rng);
      sigmas.push_back(p.complete_with(free));
    }
    if (spectrum_contains_minus_one(evaluate_word(w, sigmas))) return sigmas;
  }
  return std::nullopt;
}

}  // namespace fdrep

#endif
