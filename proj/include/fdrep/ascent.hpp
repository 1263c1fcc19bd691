#ifndef FDREP_ASCENT_HPP
#define FDREP_ASCENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <thread>
#include <vector>

#include "fdrep/linalg.hpp"
#include "fdrep/unitary_tuple.hpp"

namespace fdrep {

/// Restart/iteration configuration for the unitary-manifold ascent.
struct AscentBudget {
  int restarts = 8;
  int max_iterations = 100;
  double fd_step = 1e-6;
  double min_step = 1e-12;
  std::uint64_t seed = 0;
  bool parallel = true;

  void validate() const {
    if (restarts < 0) throw DomainError("restarts must be nonnegative");
    if (max_iterations < 1) throw DomainError("max_iterations must be positive");
    if (!(fd_step > 0.0) || !(min_step > 0.0)) throw DomainError("step sizes must be positive");
  }
};

struct AscentResult {
  double value = 0.0;
  UnitaryTuple witness;
  /// Index of the winning start: 0 is the trivial tuple, then the seeds,
  /// then the random restarts.
  std::size_t start_index = 0;
  std::size_t evaluations = 0;
};

/// Objective on raw generator images (assumed unitary).
using TupleObjective = std::function<double(const std::vector<Matrix>&)>;

namespace detail {

/// Right-multiplies column pair (p, q) of u by exp(h·E), E the k-th basis
/// element of the skew-Hermitian matrices: i·e_pp, e_pq − e_qp, i(e_pq + e_qp).
inline void apply_basis_rotation(Matrix& u, Eigen::Index d, Eigen::Index k, double h) {
  if (k < d) {
    u.col(k) *= std::polar(1.0, h);
    return;
  }
  Eigen::Index r = k - d;
  const Eigen::Index pairs = d * (d - 1) / 2;
  const bool imaginary = r >= pairs;
  if (imaginary) r -= pairs;
  Eigen::Index p = 0;
  while (r >= d - 1 - p) {
    r -= d - 1 - p;
    ++p;
  }
  const Eigen::Index q = p + 1 + r;
  const double c = std::cos(h);
  const double s = std::sin(h);
  const Vector up = u.col(p);
  const Vector uq = u.col(q);
  if (!imaginary) {
    u.col(p) = c * up - s * uq;
    u.col(q) = s * up + c * uq;
  } else {
    const Complex is(0.0, s);
    u.col(p) = c * up + is * uq;
    u.col(q) = is * up + c * uq;
  }
}

inline Matrix basis_element(Eigen::Index d, Eigen::Index k) {
  Matrix e = Matrix::Zero(d, d);
  if (k < d) {
    e(k, k) = Complex(0.0, 1.0);
    return e;
  }
  Eigen::Index r = k - d;
  const Eigen::Index pairs = d * (d - 1) / 2;
  const bool imaginary = r >= pairs;
  if (imaginary) r -= pairs;
  Eigen::Index p = 0;
  while (r >= d - 1 - p) {
    r -= d - 1 - p;
    ++p;
  }
  const Eigen::Index q = p + 1 + r;
  if (!imaginary) {
    e(p, q) = 1.0;
    e(q, p) = -1.0;
  } else {
    e(p, q) = Complex(0.0, 1.0);
    e(q, p) = Complex(0.0, 1.0);
  }
  return e;
}

struct LocalResult {
  double value = 0.0;
  std::vector<Matrix> point;
  std::size_t evaluations = 0;
};

/// Conjugate-gradient ascent (Polak-Ribiere, restarted whenever the direction
/// stops ascending) along geodesics U_i ↦ U_i·exp(s·D_i), with the gradient
/// taken by central finite differences in the skew-Hermitian basis. Only
/// improving steps are accepted, so the trajectory for a larger iteration cap
/// extends the shorter one.
inline LocalResult local_ascent(const TupleObjective& f, std::vector<Matrix> u, const AscentBudget& b) {
  LocalResult res;
  const Eigen::Index d = u.front().rows();
  const Eigen::Index dim = d * d;
  const std::size_t n = u.size() * static_cast<std::size_t>(dim);
  double fu = f(u);
  res.evaluations = 1;
  double step = 0.25;
  std::vector<double> grad(n), prev_grad, dir;
  for (int it = 0; it < b.max_iterations; ++it) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Matrix base = u[i];
      for (Eigen::Index k = 0; k < dim; ++k) {
        u[i] = base;
        apply_basis_rotation(u[i], d, k, b.fd_step);
        const double fp = f(u);
        u[i] = base;
        apply_basis_rotation(u[i], d, k, -b.fd_step);
        const double fm = f(u);
        grad[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)] = (fp - fm) / (2.0 * b.fd_step);
      }
      u[i] = base;
      res.evaluations += static_cast<std::size_t>(2 * dim);
    }
    double gg = 0.0;
    for (double g : grad) gg += g * g;
    if (!(std::sqrt(gg) > 1e-12)) break;

    if (dir.empty()) {
      dir = grad;
    } else {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        num += grad[j] * (grad[j] - prev_grad[j]);
        den += prev_grad[j] * prev_grad[j];
      }
      const double beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
      double slope = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        dir[j] = grad[j] + beta * dir[j];
        slope += dir[j] * grad[j];
      }
      if (!(slope > 0.0)) dir = grad;
    }
    prev_grad = grad;
    double dnorm2 = 0.0;
    for (double v : dir) dnorm2 += v * v;
    const double dnorm = std::sqrt(dnorm2);

    std::vector<Matrix> tangent(u.size(), Matrix::Zero(d, d));
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        tangent[i] += (dir[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)] / dnorm) * basis_element(d, k);
      }
    }

    bool improved = false;
    for (double s = std::min(2.0 * step, 1.0); s >= b.min_step; s *= 0.5) {
      std::vector<Matrix> cand(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) cand[i] = u[i] * expm_skew(s * tangent[i]);
      const double fc = f(cand);
      ++res.evaluations;
      if (fc > fu) {
        u = std::move(cand);
        fu = fc;
        step = s;
        improved = true;
        break;
      }
    }
    if (!improved) {
      if (dir == grad) break;
      dir.clear();
    }
  }
  res.value = fu;
  res.point = std::move(u);
  return res;
}

}  // namespace detail

/// Multi-start ascent. Evaluates the trivial tuple, ascends from every seed,
/// then from `restarts` Haar-random starts with seeds derived from the root
/// seed. The result is the best evaluated tuple (ties to the lowest start
/// index), so it does not depend on thread scheduling.
inline AscentResult maximize_over_unitaries(const TupleObjective& f, int rank, Eigen::Index d, const AscentBudget& b,
                                            const std::vector<UnitaryTuple>& seeds = {}) {
  b.validate();
  if (d < 1) throw DomainError("dimension must be positive");
  for (const auto& s : seeds) {
    if (s.rank() != rank || s.dimension() != d) throw DomainError("seed tuple shape does not match the search space");
  }

  std::vector<std::vector<Matrix>> starts;
  starts.push_back(UnitaryTuple::trivial(rank, d).matrices());
  for (const auto& s : seeds) starts.push_back(s.matrices());
  for (int r = 0; r < b.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(b.seed, static_cast<std::uint64_t>(r)));
    starts.push_back(UnitaryTuple::random(rank, d, rng).matrices());
  }

  std::vector<detail::LocalResult> results(starts.size());
  auto run = [&](std::size_t idx) {
    if (idx == 0) {
      results[0] = {f(starts[0]), starts[0], 1};
    } else {
      results[idx] = detail::local_ascent(f, starts[idx], b);
    }
  };
  const unsigned workers = b.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers <= 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) run(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < starts.size(); i += workers) run(i);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  AscentResult out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out.evaluations += results[i].evaluations;
    if (results[i].value > results[best].value) best = i;
  }
  out.value = results[best].value;
  out.start_index = best;
  out.witness = UnitaryTuple(results[best].point);
  return out;
}

}  // namespace fdrep

#endif
