#ifndef FDREP_PERMUTATION_HPP
#define FDREP_PERMUTATION_HPP

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fdrep/errors.hpp"
#include "fdrep/linalg.hpp"

namespace fdrep {

/// Bijection of {1, ..., d}; images[j-1] is the image of j.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size() + 1, 0);
    for (int v : images_) {
      if (v < 1 || v > static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)]) {
        throw DomainError("image list is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Permutation identity(int degree) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<int>& images() const { return images_; }

  /// (this ∘ q)(j) = this(q(j)).
  Permutation compose(const Permutation& q) const {
    if (q.degree() != degree()) throw DomainError("degree mismatch in composition");
    std::vector<int> im(images_.size());
    for (int j = 1; j <= degree(); ++j) im[static_cast<std::size_t>(j - 1)] = (*this)(q(j));
    return Permutation(std::move(im));
  }

  Permutation inverse() const {
    std::vector<int> im(images_.size());
    for (int j = 1; j <= degree(); ++j) im[static_cast<std::size_t>((*this)(j) - 1)] = j;
    return Permutation(std::move(im));
  }

  /// Disjoint cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size() + 1, 0);
    for (int start = 1; start <= degree(); ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      std::vector<int> cyc;
      for (int j = start; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
        seen[static_cast<std::size_t>(j)] = 1;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  bool operator==(const Permutation&) const = default;

private:
  std::vector<int> images_;
};

/// Partial injective map on {1, ..., d}, used to accumulate forced values.
class PartialPermutation {
public:
  explicit PartialPermutation(int degree)
      : image_(static_cast<std::size_t>(degree) + 1, 0), preimage_(static_cast<std::size_t>(degree) + 1, 0) {}

  int degree() const { return static_cast<int>(image_.size()) - 1; }

  /// Requires from ↦ to. Throws ConstraintConflict if this contradicts an
  /// earlier requirement.
  void assign(int from, int to) {
    if (from < 1 || from > degree() || to < 1 || to > degree()) throw DomainError("point outside permutation degree");
    const int cur = image_[static_cast<std::size_t>(from)];
    const int pre = preimage_[static_cast<std::size_t>(to)];
    if (cur == to) return;
    if (cur != 0) {
      throw ConstraintConflict("point " + std::to_string(from) + " already maps to " + std::to_string(cur) +
                               ", cannot also map to " + std::to_string(to));
    }
    if (pre != 0) {
      throw ConstraintConflict("point " + std::to_string(to) + " already has preimage " + std::to_string(pre) +
                               ", cannot also be the image of " + std::to_string(from));
    }
    image_[static_cast<std::size_t>(from)] = to;
    preimage_[static_cast<std::size_t>(to)] = from;
  }

  std::optional<int> image(int from) const {
    const int v = image_[static_cast<std::size_t>(from)];
    return v == 0 ? std::nullopt : std::optional<int>(v);
  }

  std::size_t assigned_count() const {
    return static_cast<std::size_t>(std::count_if(image_.begin() + 1, image_.end(), [](int v) { return v != 0; }));
  }

  /// Fills free slots in order: smallest unassigned point ↦ smallest unused image.
  Permutation complete_greedy() const {
    std::vector<int> free_images;
    for (int v = 1; v <= degree(); ++v)
      if (preimage_[static_cast<std::size_t>(v)] == 0) free_images.push_back(v);
    return complete_with(free_images);
  }

  /// Fills free slots using the given order of unused images.
  Permutation complete_with(const std::vector<int>& free_images) const {
    std::vector<int> im(static_cast<std::size_t>(degree()));
    std::size_t next = 0;
    for (int j = 1; j <= degree(); ++j) {
      const int v = image_[static_cast<std::size_t>(j)];
      im[static_cast<std::size_t>(j - 1)] = v != 0 ? v : free_images.at(next++);
    }
    return Permutation(std::move(im));
  }

  std::vector<int> free_images() const {
    std::vector<int> out;
    for (int v = 1; v <= degree(); ++v)
      if (preimage_[static_cast<std::size_t>(v)] == 0) out.push_back(v);
    return out;
  }

private:
  std::vector<int> image_;
  std::vector<int> preimage_;
};

/// e^{2πi·index/order}, with index/order in lowest terms and 0 <= index < order.
struct RootOfUnity {
  int order = 1;
  int index = 0;

  static RootOfUnity make(int order, int index) {
    index %= order;
    if (index < 0) index += order;
    const int g = std::gcd(order, index);
    return {order / g, index / g};
  }
  Complex value() const { return std::polar(1.0, 2.0 * kPi * index / order); }
  bool is_minus_one() const { return order == 2 && index == 1; }
  auto operator<=>(const RootOfUnity&) const = default;
};

/// Exact spectrum from cycle type: each m-cycle contributes every m-th root
/// of unity once. Sorted.
inline std::vector<RootOfUnity> permutation_spectrum(const Permutation& p) {
  std::vector<RootOfUnity> out;
  for (const auto& c : p.cycles()) {
    const int m = static_cast<int>(c.size());
    for (int j = 0; j < m; ++j) out.push_back(RootOfUnity::make(m, j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool spectrum_contains_minus_one(const Permutation& p) {
  const auto cs = p.cycles();
  return std::any_of(cs.begin(), cs.end(), [](const auto& c) { return c.size() % 2 == 0; });
}

/// 0/1 matrix with M[p(j), j] = 1, so that products of matrices follow
/// composition of permutations.
inline Matrix perm_to_unitary(const Permutation& p) {
  const int d = p.degree();
  Matrix m = Matrix::Zero(d, d);
  for (int j = 1; j <= d; ++j) m(p(j) - 1, j - 1) = 1.0;
  return m;
}

}  // namespace fdrep

#endif
