#ifndef FDREP_TELESCOPE_HPP
#define FDREP_TELESCOPE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fdrep/golden.hpp"
#include "fdrep/linalg.hpp"

namespace fdrep::telescope {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Embedding {
  corner,    ///< a ↦ a ⊕ 0
  diagonal,  ///< a ↦ a ⊕ a, requires each dimension to double
};

inline const char* to_string(Embedding e) { return e == Embedding::corner ? "corner" : "diagonal"; }

/// Levels M_{n_1} ⊂ ... ⊂ M_{n_N} of a truncated inductive sequence. The
/// fiber over t ∈ (k−1, k] is level k; points beyond N use the top level.
class Shape {
public:
  Shape(std::vector<int> dims, Embedding embedding) : dims_(std::move(dims)), embedding_(embedding) {
    if (dims_.empty()) throw DomainError("telescope shape needs at least one level");
    if (dims_.front() < 1) throw DomainError("telescope dimensions must be positive");
    for (std::size_t k = 1; k < dims_.size(); ++k) {
      if (dims_[k] <= dims_[k - 1]) throw DomainError("telescope dimensions must be strictly increasing");
      if (embedding_ == Embedding::diagonal && dims_[k] != 2 * dims_[k - 1]) {
        throw DomainError("diagonal embedding requires n_{k+1} = 2 n_k");
      }
    }
  }

  int levels() const { return static_cast<int>(dims_.size()); }
  int dim(int level) const { return dims_.at(static_cast<std::size_t>(level - 1)); }
  const std::vector<int>& dims() const { return dims_; }
  Embedding embedding() const { return embedding_; }

  int level_of(double t) const {
    if (!(t > 0.0)) throw DomainError("telescope points must lie in (0, inf]");
    if (t >= static_cast<double>(levels())) return levels();
    return std::max(1, static_cast<int>(std::ceil(t)));
  }

  /// Image of a ∈ M_{n_from} in M_{n_to} under the connecting maps.
  Matrix embed(const Matrix& a, int from, int to) const {
    Matrix cur = a;
    for (int k = from; k < to; ++k) {
      const int n = dim(k + 1);
      Matrix next = Matrix::Zero(n, n);
      next.topLeftCorner(cur.rows(), cur.cols()) = cur;
      if (embedding_ == Embedding::diagonal) next.bottomRightCorner(cur.rows(), cur.cols()) = cur;
      cur = std::move(next);
    }
    return cur;
  }

  bool operator==(const Shape&) const = default;

private:
  std::vector<int> dims_;
  Embedding embedding_;
};

// ---------------------------------------------------------------------------
// Scalar profiles

/// v + slope·(t − anchor)
struct Linear {
  double anchor = 0.0;
  double value = 0.0;
  double slope = 0.0;
};
struct Constant {
  double value = 0.0;
};
/// base + amplitude·(1 − e^{start − t})
struct ExpApproach {
  double base = 0.0;
  double amplitude = 1.0;
  double start = 0.0;
};
using Piece = std::variant<Linear, Constant, ExpApproach>;

inline double evaluate(const Piece& p, double t) {
  return std::visit(
      [t](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Linear>) {
          return q.value + q.slope * (t - q.anchor);
        } else if constexpr (std::is_same_v<T, Constant>) {
          return q.value;
        } else {
          return q.base + q.amplitude * (1.0 - std::exp(q.start - t));
        }
      },
      p);
}

/// Limit as t → ∞; infinite for a nonconstant linear piece.
inline double limit(const Piece& p) {
  if (const auto* l = std::get_if<Linear>(&p)) {
    if (l->slope == 0.0) return l->value;
    return l->slope > 0 ? kInfinity : -kInfinity;
  }
  if (const auto* c = std::get_if<Constant>(&p)) return c->value;
  const auto& e = std::get<ExpApproach>(p);
  return e.base + e.amplitude;
}

inline Piece scale(const Piece& p, double c) {
  return std::visit(
      [c](const auto& q) -> Piece {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Linear>) {
          return Linear{q.anchor, c * q.value, c * q.slope};
        } else if constexpr (std::is_same_v<T, Constant>) {
          return Constant{c * q.value};
        } else {
          return ExpApproach{c * q.base, c * q.amplitude, q.start};
        }
      },
      p);
}

/// Sum of products of pieces.
struct Form {
  std::vector<std::vector<Piece>> monomials;

  static Form of(Piece p) { return Form{{{std::move(p)}}}; }

  double operator()(double t) const {
    double s = 0.0;
    for (const auto& m : monomials) {
      double v = 1.0;
      for (const auto& p : m) v *= evaluate(p, t);
      s += v;
    }
    return s;
  }

  double at_infinity() const {
    double s = 0.0;
    for (const auto& m : monomials) {
      double v = 1.0;
      for (const auto& p : m) v *= limit(p);
      s += v;
    }
    return s;
  }

  /// The single catalog piece, when the form is one (monotone) piece.
  const Piece* single_piece() const {
    if (monomials.size() == 1 && monomials.front().size() == 1) return &monomials.front().front();
    return nullptr;
  }

  /// Folds constant factors into their neighbours and merges all linear and
  /// constant monomials into one piece.
  Form simplified() const {
    Form out;
    std::vector<Piece> affine;  // monomials that reduce to one linear/constant piece
    for (const auto& m : monomials) {
      double coef = 1.0;
      std::vector<Piece> rest;
      for (const auto& p : m) {
        if (const auto* c = std::get_if<Constant>(&p)) {
          coef *= c->value;
        } else {
          rest.push_back(p);
        }
      }
      if (rest.empty()) {
        affine.push_back(Constant{coef});
      } else if (rest.size() == 1 && std::holds_alternative<Linear>(rest.front())) {
        affine.push_back(scale(rest.front(), coef));
      } else if (rest.size() == 1) {
        out.monomials.push_back({scale(rest.front(), coef)});
      } else {
        if (coef != 1.0) rest.front() = scale(rest.front(), coef);
        out.monomials.push_back(std::move(rest));
      }
    }
    if (affine.size() == 1) {
      out.monomials.insert(out.monomials.begin(), {affine.front()});
    } else if (!affine.empty()) {
      double slope = 0.0;
      double offset = 0.0;  // value at t = 0
      for (const auto& p : affine) {
        if (const auto* l = std::get_if<Linear>(&p)) {
          slope += l->slope;
          offset += l->value - l->slope * l->anchor;
        } else {
          offset += std::get<Constant>(p).value;
        }
      }
      Piece p = slope == 0.0 ? Piece(Constant{offset}) : Piece(Linear{0.0, offset, slope});
      out.monomials.insert(out.monomials.begin(), {p});
    }
    if (out.monomials.empty()) out.monomials.push_back({Constant{0.0}});
    return out;
  }
};

/// Form on (lo, hi]; hi may be infinite.
struct Segment {
  double lo = 0.0;
  double hi = kInfinity;
  Form form;
};

/// Continuous scalar function on (0, ∞] vanishing at 0, piecewise given by
/// catalog forms, with its value at ∞ stored explicitly.
class Profile {
public:
  Profile() : Profile({Segment{0.0, kInfinity, Form::of(Constant{0.0})}}, 0.0) {}

  Profile(std::vector<Segment> segments, double at_infinity)
      : segments_(std::move(segments)), at_infinity_(at_infinity) {
    validate();
  }

  const std::vector<Segment>& segments() const { return segments_; }
  double at_infinity() const { return at_infinity_; }

  const Segment& segment_containing(double t) const {
    for (const auto& s : segments_)
      if (t <= s.hi) return s;
    return segments_.back();
  }

  double operator()(double t) const {
    if (t == kInfinity) return at_infinity_;
    return segment_containing(t).form(t);
  }

  std::vector<double> breakpoints() const {
    std::vector<double> b;
    for (const auto& s : segments_) b.push_back(s.lo);
    return b;
  }

  Profile operator+(const Profile& o) const { return combine(o, false); }
  Profile operator*(const Profile& o) const { return combine(o, true); }
  Profile scaled(double c) const { return *this * constant(c); }

private:
  // Not a valid profile unless c = 0; only used as a multiplier.
  static Profile constant(double c) {
    Profile p;
    p.segments_ = {Segment{0.0, kInfinity, Form::of(Constant{c})}};
    p.at_infinity_ = c;
    return p;
  }

  void validate() const {
    if (segments_.empty()) throw DomainError("profile needs at least one segment");
    if (segments_.front().lo != 0.0) throw DomainError("profile must start at t = 0");
    if (segments_.back().hi != kInfinity) throw DomainError("profile must extend to infinity");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const Segment& s = segments_[i];
      if (!(s.hi > s.lo)) throw DomainError("profile segments must have positive length");
      if (i + 1 < segments_.size()) {
        const Segment& n = segments_[i + 1];
        if (n.lo != s.hi) throw DomainError("profile segments must be contiguous");
        const double l = s.form(s.hi);
        const double r = n.form(s.hi);
        if (std::abs(l - r) > 1e-12 * std::max(1.0, std::abs(l))) {
          throw DomainError("profile is discontinuous at t = " + std::to_string(s.hi));
        }
      }
    }
    if (std::abs(segments_.front().form(0.0)) > 1e-12) throw DomainError("profile must vanish at 0");
    const double lim = segments_.back().form.at_infinity();
    if (!std::isfinite(lim) || std::abs(lim - at_infinity_) > 1e-12 * std::max(1.0, std::abs(lim))) {
      throw DomainError("value at infinity must equal the limit of the last segment");
    }
  }

  Profile combine(const Profile& o, bool multiply) const {
    std::vector<double> cuts = breakpoints();
    for (double b : o.breakpoints()) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double lo = cuts[i];
      const double hi = i + 1 < cuts.size() ? cuts[i + 1] : kInfinity;
      const double probe = hi == kInfinity ? lo + 1.0 : 0.5 * (lo + hi);
      const Form& a = segment_containing(probe).form;
      const Form& b = o.segment_containing(probe).form;
      Form f;
      if (multiply) {
        for (const auto& ma : a.monomials)
          for (const auto& mb : b.monomials) {
            auto m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            f.monomials.push_back(std::move(m));
          }
      } else {
        f.monomials = a.monomials;
        f.monomials.insert(f.monomials.end(), b.monomials.begin(), b.monomials.end());
      }
      segs.push_back(Segment{lo, hi, f.simplified()});
    }
    Profile p;
    p.segments_ = std::move(segs);
    p.at_infinity_ = multiply ? at_infinity_ * o.at_infinity_ : at_infinity_ + o.at_infinity_;
    return p;
  }

  std::vector<Segment> segments_;
  double at_infinity_ = 0.0;
};

// ---------------------------------------------------------------------------
// Elements

/// Σ profile_i(t) · b_i with every b_i ∈ M_{n_1}.
class Element {
public:
  struct Term {
    Profile profile;
    Matrix b;
  };

  explicit Element(Shape shape) : shape_(std::move(shape)) {}

  Element(Shape shape, Profile p, Matrix b) : shape_(std::move(shape)) { add_term(std::move(p), std::move(b)); }

  /// Adds a term; terms with an identical matrix are merged.
  Element& add_term(Profile p, Matrix b) {
    const int n1 = shape_.dim(1);
    if (b.rows() != n1 || b.cols() != n1) throw DomainError("term matrix must lie in the first level M_{n_1}");
    for (auto& t : terms_) {
      if (t.b == b) {
        t.profile = t.profile + p;
        return *this;
      }
    }
    terms_.push_back({std::move(p), std::move(b)});
    return *this;
  }

  const Shape& shape() const { return shape_; }
  const std::vector<Term>& terms() const { return terms_; }

  Element operator+(const Element& o) const {
    if (!(o.shape_ == shape_)) throw DomainError("telescope shapes differ");
    Element r = *this;
    for (const auto& t : o.terms_) r.add_term(t.profile, t.b);
    return r;
  }

  /// Pointwise product.
  Element operator*(const Element& o) const {
    if (!(o.shape_ == shape_)) throw DomainError("telescope shapes differ");
    Element r(shape_);
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) r.add_term(a.profile * b.profile, a.b * b.b);
    return r;
  }

  Element scaled(double c) const {
    Element r(shape_);
    for (const auto& t : terms_) r.add_term(t.profile.scaled(c), t.b);
    return r;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> b{0.0};
    for (const auto& t : terms_)
      for (double x : t.profile.breakpoints()) b.push_back(x);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  }

  /// Σ profile_i(t) b_i inside M_{n_1}.
  Matrix first_level_value(double t) const {
    const int n1 = shape_.dim(1);
    Matrix m = Matrix::Zero(n1, n1);
    for (const auto& term : terms_) m += term.profile(t) * term.b;
    return m;
  }

private:
  Shape shape_;
  std::vector<Term> terms_;
};

/// f(t) as a matrix in the top level M_{n_N}.
inline Matrix eval_at(const Element& f, double t) {
  if (!(t > 0.0)) throw DomainError("eval_at requires t in (0, inf]");
  return f.shape().embed(f.first_level_value(t), 1, f.shape().levels());
}

/// f(t) in its own fiber M_{n_⌈t⌉}.
inline Matrix fiber_at(const Element& f, double t) {
  return f.shape().embed(f.first_level_value(t), 1, f.shape().level_of(t));
}

/// ‖f(t)‖. The connecting maps are isometric, so the first-level value
/// has the fiber norm.
inline double norm_at(const Element& f, double t) {
  if (!(t > 0.0)) throw DomainError("norm_at requires t in (0, inf]");
  if (f.terms().size() == 1) {
    const auto& term = f.terms().front();
    return std::abs(term.profile(t)) * operator_norm(term.b);
  }
  return operator_norm(f.first_level_value(t));
}

/// Window (lo, hi]; hi = inf includes the point at infinity.
struct Window {
  double lo = 0.0;
  double hi = kInfinity;
};

namespace detail {

inline constexpr int kSamplesPerSegment = 64;
inline constexpr double kGoldenTolerance = 1e-9;

/// max of g on [a, b]: dense samples, then golden-section refinement around
/// the best one.
inline double sampled_max(const std::function<double(double)>& g, double a, double b) {
  std::vector<double> xs(kSamplesPerSegment + 1);
  double best = -kInfinity;
  std::size_t bi = 0;
  for (int i = 0; i <= kSamplesPerSegment; ++i) {
    xs[static_cast<std::size_t>(i)] = a + (b - a) * i / kSamplesPerSegment;
    const double v = g(xs[static_cast<std::size_t>(i)]);
    if (v > best) {
      best = v;
      bi = static_cast<std::size_t>(i);
    }
  }
  const double lo = xs[bi == 0 ? 0 : bi - 1];
  const double hi = xs[std::min(bi + 1, xs.size() - 1)];
  if (hi > lo) best = std::max(best, golden_section_maximize(g, lo, hi, kGoldenTolerance).value);
  return best;
}

}  // namespace detail

/// sup ‖f(t)‖ over the window. Single-term elements whose profile is one
/// catalog piece on a segment are monotone there, so the segment sup sits at
/// an endpoint; everything else is sampled and refined by golden section.
inline double sup_norm(const Element& f, Window w = {}) {
  if (!(w.hi > w.lo) || w.lo < 0.0) throw DomainError("sup_norm window must be a nonempty subset of (0, inf]");
  if (f.terms().empty()) return 0.0;

  std::vector<double> cuts{w.lo};
  for (double b : f.breakpoints())
    if (b > w.lo && b < w.hi) cuts.push_back(b);
  if (w.hi != kInfinity) cuts.push_back(w.hi);

  const bool single = f.terms().size() == 1;
  const double bnorm = single ? operator_norm(f.terms().front().b) : 0.0;
  // Norm with segment forms fixed by a probe point, so evaluation at a
  // segment's left end gives the one-sided limit.
  auto norm_with = [&f](double probe) {
    std::vector<const Form*> forms;
    for (const auto& term : f.terms()) forms.push_back(&term.profile.segment_containing(probe).form);
    return [&f, forms](double t) {
      const int n1 = f.shape().dim(1);
      Matrix m = Matrix::Zero(n1, n1);
      for (std::size_t i = 0; i < forms.size(); ++i) m += (*forms[i])(t)*f.terms()[i].b;
      return operator_norm(m);
    };
  };

  double best = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double a = cuts[i];
    const bool last = i + 1 == cuts.size();
    if (last && w.hi != kInfinity) break;
    const double b = last ? kInfinity : cuts[i + 1];
    const double probe = b == kInfinity ? a + 1.0 : 0.5 * (a + b);
    const Piece* piece = single ? f.terms().front().profile.segment_containing(probe).form.single_piece() : nullptr;
    if (piece != nullptr) {
      const double right = b == kInfinity ? limit(*piece) : evaluate(*piece, b);
      best = std::max({best, std::abs(evaluate(*piece, a)) * bnorm, std::abs(right) * bnorm});
      continue;
    }
    const auto g = norm_with(probe);
    if (b != kInfinity) {
      best = std::max(best, detail::sampled_max(g, a, b));
    } else {
      // t = a + u/(1 − u) maps [0, 1) onto [a, ∞).
      auto gu = [&g, a](double u) { return g(a + u / (1.0 - u)); };
      best = std::max(best, detail::sampled_max(gu, 0.0, 1.0 - 1e-9));
    }
  }
  if (w.hi == kInfinity) best = std::max(best, norm_at(f, kInfinity));
  return best;
}

struct SeminormSequence {
  std::vector<double> values;
  double total_norm = 0.0;
};

/// ‖f‖_{M_{n_k}} = sup_{t ∈ (0,k]} ‖f(t)‖ for k = 1..N, and the full norm.
inline SeminormSequence seminorm_sequence(const Element& f) {
  SeminormSequence s;
  for (int k = 1; k <= f.shape().levels(); ++k) s.values.push_back(sup_norm(f, {0.0, static_cast<double>(k)}));
  s.total_norm = sup_norm(f, {0.0, kInfinity});
  return s;
}

inline Matrix unit_e11(int n) {
  Matrix b = Matrix::Zero(n, n);
  b(0, 0) = 1.0;
  return b;
}

/// Single-term element with seminorm sequence `lambdas` (one per level):
/// piecewise linear through (k, λ_k), then constant, or, when strict,
/// approaching `total` only at infinity.
inline Element construct_prescribed(const Shape& shape, const std::vector<double>& lambdas, bool strict = false,
                                    std::optional<double> total = std::nullopt) {
  if (static_cast<int>(lambdas.size()) != shape.levels()) {
    throw DomainError("need exactly one prescribed value per telescope level");
  }
  double prev = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw DomainError("prescribed values must be nonnegative");
    if (l < prev) throw DomainError("prescribed values must be nondecreasing");
    prev = l;
  }
  const double last = lambdas.back();
  std::vector<Segment> segs;
  prev = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const auto lo = static_cast<double>(k);
    segs.push_back(Segment{lo, lo + 1.0, Form::of(Linear{lo, prev, lambdas[k] - prev})});
    prev = lambdas[k];
  }
  const auto n = static_cast<double>(lambdas.size());
  double at_inf = last;
  if (strict) {
    if (!total || !(*total > last)) throw DomainError("strict construction needs a total norm above the last value");
    segs.push_back(Segment{n, kInfinity, Form::of(ExpApproach{last, *total - last, n})});
    at_inf = *total;
  } else {
    if (total && *total != last) throw DomainError("non-strict construction has total norm equal to the last value");
    segs.push_back(Segment{n, kInfinity, Form::of(Constant{last})});
  }
  return Element(shape, Profile(std::move(segs), at_inf), unit_e11(shape.dim(1)));
}

/// (1 − e^{−t})·x: its norm is approached only at infinity.
inline Element fdi_witness(const Shape& shape, std::optional<Matrix> x = std::nullopt) {
  Profile p({Segment{0.0, kInfinity, Form::of(ExpApproach{0.0, 1.0, 0.0})}}, 1.0);
  return Element(shape, std::move(p), x ? *x : unit_e11(shape.dim(1)));
}

/// Pair whose members attain their norm 2 at t = n while the sum vanishes on
/// (0, 2n] and only approaches its norm 1 at infinity.
inline std::pair<Element, Element> counterexample_additive(const Shape& shape, int n) {
  if (n < 1) throw DomainError("breakpoint index must be at least 1");
  const double nn = n;
  const Matrix b = unit_e11(shape.dim(1));
  Profile p1({Segment{0.0, nn, Form::of(Linear{0.0, 0.0, 2.0 / nn})},
              Segment{nn, 2.0 * nn, Form::of(Linear{nn, 2.0, -2.0 / nn})},
              Segment{2.0 * nn, kInfinity, Form::of(ExpApproach{0.0, 1.0, 2.0 * nn})}},
             1.0);
  Profile p2({Segment{0.0, nn, Form::of(Linear{0.0, 0.0, -2.0 / nn})},
              Segment{nn, 2.0 * nn, Form::of(Linear{nn, -2.0, 2.0 / nn})},
              Segment{2.0 * nn, kInfinity, Form::of(Constant{0.0})}},
             0.0);
  return {Element(shape, std::move(p1), b), Element(shape, std::move(p2), b)};
}

/// Pair attaining their norm 1 at t = n1 and t = n2 whose product only
/// approaches its norm 1 at infinity.
inline std::pair<Element, Element> counterexample_multiplicative(const Shape& shape, int n1, int n2) {
  if (n1 < 1 || n2 <= n1) throw DomainError("need 1 <= n1 < n2");
  const double a = n1;
  const double c = n2;
  const Matrix b = unit_e11(shape.dim(1));
  Profile p1({Segment{0.0, a, Form::of(Linear{0.0, 0.0, 1.0 / a})},
              Segment{a, c, Form::of(Linear{a, 1.0, -1.0 / (c - a)})},
              Segment{c, kInfinity, Form::of(ExpApproach{0.0, 1.0, c})}},
             1.0);
  Profile p2({Segment{0.0, c, Form::of(Linear{0.0, 0.0, 1.0 / c})}, Segment{c, kInfinity, Form::of(Constant{1.0})}},
             1.0);
  return {Element(shape, std::move(p1), b), Element(shape, std::move(p2), b)};
}

/// (t, ‖f(t)‖) on the grid step, 2·step, ..., t_max.
inline std::vector<std::pair<double, double>> sample_norms(const Element& f, double t_max, double step) {
  if (!(step > 0.0) || !(t_max > 0.0)) throw DomainError("sampling needs positive step and range");
  std::vector<std::pair<double, double>> out;
  const auto count = static_cast<long>(std::floor(t_max / step + 1e-9));
  for (long i = 1; i <= count; ++i) {
    const double t = static_cast<double>(i) * step;
    out.emplace_back(t, norm_at(f, t));
  }
  return out;
}

}  // namespace fdrep::telescope

#endif
