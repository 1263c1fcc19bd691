#ifndef FDREP_IO_HPP
#define FDREP_IO_HPP

// JSON and text forms of the library's values and certificates. Complex
// numbers are [re, im]; matrices are row-major nested arrays of complex numbers.

#include <cmath>
#include <string>
#include <string_view>

#include "json.hpp"

#include "fdrep/clamp.hpp"
#include "fdrep/eigenvalue.hpp"
#include "fdrep/group_algebra.hpp"
#include "fdrep/perm_rep.hpp"
#include "fdrep/seminorm.hpp"
#include "fdrep/telescope.hpp"

namespace fdrep::io {

using Json = nlohmann::ordered_json;

// --- scalars -------------------------------------------------------------

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (whitespace ignored).
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty complex number");
  auto num = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParseError("bad complex number '" + std::string(text) + "'");
    }
    if (used != part.size()) throw ParseError("bad complex number '" + std::string(text) + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {num(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, num(s)};
  return {num(s.substr(0, split)), num(s.substr(split))};
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

inline Json to_json(const UnitaryTuple& u) {
  Json a = Json::array();
  for (const Matrix& m : u.matrices()) a.push_back(to_json(m));
  return a;
}

inline UnitaryTuple tuple_from_json(const Json& j) {
  std::vector<Matrix> ms;
  for (const Json& m : j) ms.push_back(matrix_from_json(m));
  return UnitaryTuple(std::move(ms));
}

// --- words and elements --------------------------------------------------

inline Json to_json(const Word& w) {
  Json letters = Json::array();
  for (const Letter& l : w.letters()) letters.push_back(Json::array({l.generator, l.sign}));
  return Json{{"rank", w.rank()}, {"text", to_string(w)}, {"letters", std::move(letters)}};
}

inline Word word_from_json(const Json& j) {
  if (j.is_string()) return parse_word(j.get<std::string>());
  const int rank = j.at("rank").get<int>();
  std::vector<Letter> ls;
  for (const Json& p : j.at("letters")) ls.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  return Word::reduce(ls, rank);
}

inline Json to_json(const GroupAlgebraElement& a) {
  Json terms = Json::array();
  for (const auto& [w, c] : a.terms()) terms.push_back(Json{{"coefficient", to_json(c)}, {"word", to_json(w)}});
  return Json{{"rank", a.rank()}, {"terms", std::move(terms)}};
}

inline GroupAlgebraElement element_from_json(const Json& j) {
  GroupAlgebraElement a(j.at("rank").get<int>());
  for (const Json& t : j.at("terms")) a.add_term(complex_from_json(t.at("coefficient")), word_from_json(t.at("word")));
  return a;
}

/// "c:word" term syntax, e.g. "-1:x1 x2 x1^-1 x2^-1" or "0.5+2i:e".
inline std::pair<Complex, std::vector<Letter>> parse_term(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("term must have the form <coefficient>:<word>");
  return {parse_complex(text.substr(0, colon)), parse_letters(text.substr(colon + 1))};
}

// --- certificates --------------------------------------------------------

inline Json to_json(const PermRepCertificate& c) {
  Json sigmas = Json::array();
  for (const auto& s : c.sigmas) sigmas.push_back(s.images());
  return Json{{"kind", "perm_rep"},
              {"word", to_json(c.original)},
              {"core", to_json(c.normalization.core)},
              {"conjugator", to_json(c.normalization.conjugator)},
              {"adjoint_taken", c.normalization.conjugated},
              {"dimension", c.dimension},
              {"two_cycle", Json::array({c.two_cycle.first, c.two_cycle.second})},
              {"sigmas", std::move(sigmas)}};
}

inline PermRepCertificate perm_rep_from_json(const Json& j) {
  PermRepCertificate c;
  c.original = word_from_json(j.at("word"));
  c.normalization.core = word_from_json(j.at("core"));
  c.normalization.conjugator = word_from_json(j.at("conjugator"));
  c.normalization.conjugated = j.at("adjoint_taken").get<bool>();
  c.dimension = j.at("dimension").get<int>();
  c.two_cycle = {j.at("two_cycle").at(0).get<int>(), j.at("two_cycle").at(1).get<int>()};
  for (const Json& s : j.at("sigmas")) c.sigmas.emplace_back(s.get<std::vector<int>>());
  return c;
}

inline Json to_json(const EigenvalueCertificate& c) {
  return Json{{"kind", "eigenvalue"},
              {"word", to_json(c.word)},
              {"dimension", c.dimension()},
              {"target", to_json(c.target)},
              {"achieved", to_json(c.achieved)},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"path_parameter", c.path_parameter},
              {"tuple_conjugated", c.tuple_conjugated},
              {"adjoint_normalized", c.word_adjoint_normalized},
              {"iterations", c.iterations},
              {"unitarity_residual", c.tuple.unitarity_residual()},
              {"tuple", to_json(c.tuple)}};
}

inline EigenvalueCertificate eigenvalue_from_json(const Json& j) {
  EigenvalueCertificate c;
  c.word = word_from_json(j.at("word"));
  c.tuple = tuple_from_json(j.at("tuple"));
  c.target = complex_from_json(j.at("target"));
  c.achieved = complex_from_json(j.at("achieved"));
  c.residual = j.at("residual").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.path_parameter = j.value("path_parameter", 0.0);
  c.tuple_conjugated = j.value("tuple_conjugated", false);
  c.word_adjoint_normalized = j.value("adjoint_normalized", false);
  c.iterations = j.value("iterations", 0);
  return c;
}

inline Json to_json(const BinomialCertificate& c) {
  const DimensionComparison cmp = fnt_bound_compare(c.w1, c.w2);
  Json j{{"kind", "binomial"},
         {"alpha", to_json(c.alpha)},
         {"beta", to_json(c.beta)},
         {"w1", to_json(c.w1)},
         {"w2", to_json(c.w2)},
         {"difference", to_json(c.difference)},
         {"ell", c.difference.length()},
         {"branch", to_string(c.branch)},
         {"dimension", c.dimension()},
         {"claimed_norm", c.claimed_norm},
         {"attained_norm", c.attained_norm},
         {"tolerance", c.tolerance}};
  if (c.eigenvalue_target) j["eigenvalue_target"] = to_json(*c.eigenvalue_target);
  j["fnt_bound"] = Json{{"two_ell", cmp.two_ell}, {"fnt", cmp.fnt}, {"fnt_saturated", cmp.fnt_saturated}};
  j["representation"] = to_json(c.representation);
  return j;
}

inline BinomialCertificate binomial_from_json(const Json& j) {
  BinomialCertificate c;
  c.alpha = complex_from_json(j.at("alpha"));
  c.beta = complex_from_json(j.at("beta"));
  c.w1 = word_from_json(j.at("w1"));
  c.w2 = word_from_json(j.at("w2"));
  c.difference = c.w2.inverse() * c.w1;
  c.claimed_norm = j.at("claimed_norm").get<double>();
  c.attained_norm = j.at("attained_norm").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.representation = tuple_from_json(j.at("representation"));
  if (j.contains("eigenvalue_target")) c.eigenvalue_target = complex_from_json(j.at("eigenvalue_target"));
  return c;
}

// --- telescope -----------------------------------------------------------

namespace tel = fdrep::telescope;

inline Json to_json(const tel::Piece& p) {
  return std::visit(
      [](const auto& q) -> Json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, tel::Linear>) {
          return Json{{"type", "linear"}, {"anchor", q.anchor}, {"value", q.value}, {"slope", q.slope}};
        } else if constexpr (std::is_same_v<T, tel::Constant>) {
          return Json{{"type", "constant"}, {"value", q.value}};
        } else {
          return Json{{"type", "exp_approach"}, {"base", q.base}, {"amplitude", q.amplitude}, {"start", q.start}};
        }
      },
      p);
}

inline tel::Piece piece_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "linear") return tel::Linear{j.at("anchor").get<double>(), j.at("value").get<double>(), j.at("slope").get<double>()};
  if (type == "constant") return tel::Constant{j.at("value").get<double>()};
  if (type == "exp_approach") {
    return tel::ExpApproach{j.at("base").get<double>(), j.at("amplitude").get<double>(), j.at("start").get<double>()};
  }
  throw ParseError("unknown profile piece type '" + type + "'");
}

inline Json to_json(const tel::Profile& p) {
  Json segs = Json::array();
  for (const auto& s : p.segments()) {
    Json form = Json::array();
    for (const auto& m : s.form.monomials) {
      Json mono = Json::array();
      for (const auto& piece : m) mono.push_back(to_json(piece));
      form.push_back(std::move(mono));
    }
    segs.push_back(Json{{"lo", s.lo}, {"hi", s.hi == tel::kInfinity ? Json(nullptr) : Json(s.hi)}, {"form", std::move(form)}});
  }
  return Json{{"segments", std::move(segs)}, {"at_infinity", p.at_infinity()}};
}

inline tel::Profile profile_from_json(const Json& j) {
  std::vector<tel::Segment> segs;
  for (const Json& s : j.at("segments")) {
    tel::Segment seg;
    seg.lo = s.at("lo").get<double>();
    seg.hi = s.at("hi").is_null() ? tel::kInfinity : s.at("hi").get<double>();
    for (const Json& m : s.at("form")) {
      std::vector<tel::Piece> mono;
      for (const Json& piece : m) mono.push_back(piece_from_json(piece));
      seg.form.monomials.push_back(std::move(mono));
    }
    segs.push_back(std::move(seg));
  }
  return tel::Profile(std::move(segs), j.at("at_infinity").get<double>());
}

inline Json to_json(const tel::Shape& s) {
  return Json{{"dims", s.dims()}, {"embedding", tel::to_string(s.embedding())}};
}

inline tel::Embedding embedding_from_string(const std::string& s) {
  if (s == "corner") return tel::Embedding::corner;
  if (s == "diagonal") return tel::Embedding::diagonal;
  throw ParseError("embedding must be 'corner' or 'diagonal'");
}

inline tel::Shape shape_from_json(const Json& j) {
  return tel::Shape(j.at("dims").get<std::vector<int>>(), embedding_from_string(j.at("embedding").get<std::string>()));
}

inline Json to_json(const tel::Element& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(Json{{"profile", to_json(t.profile)}, {"matrix", to_json(t.b)}});
  return Json{{"shape", to_json(f.shape())}, {"terms", std::move(terms)}};
}

inline tel::Element telescope_element_from_json(const Json& j) {
  tel::Element f(shape_from_json(j.at("shape")));
  for (const Json& t : j.at("terms")) f.add_term(profile_from_json(t.at("profile")), matrix_from_json(t.at("matrix")));
  return f;
}

inline Json to_json(const tel::SeminormSequence& s) {
  return Json{{"values", s.values}, {"total_norm", s.total_norm}};
}

inline Json telescope_certificate(const tel::Element& f) {
  return Json{{"kind", "telescope"}, {"element", to_json(f)}, {"seminorms", to_json(tel::seminorm_sequence(f))}};
}

/// Two elements and their sum or product.
inline Json telescope_pair_certificate(const std::string& operation, const tel::Element& f1, const tel::Element& f2,
                                       const tel::Element& combined) {
  return Json{{"kind", "telescope_pair"},
              {"operation", operation},
              {"f1", telescope_certificate(f1)},
              {"f2", telescope_certificate(f2)},
              {"combined", telescope_certificate(combined)}};
}

// --- estimates -----------------------------------------------------------

inline Json seminorm_certificate(const GroupAlgebraElement& a, const SeminormEstimate& e, const AscentBudget& b) {
  return Json{{"kind", "seminorm"},
              {"element", to_json(a)},
              {"dimension", e.dimension},
              {"value", e.value},
              {"seed", e.seed},
              {"restarts", b.restarts},
              {"max_iterations", b.max_iterations},
              {"evaluations", e.evaluations},
              {"unitarity_residual", e.witness.unitarity_residual()},
              {"witness", to_json(e.witness)}};
}

/// Arc scan rows carry residual = π − θ, the distance from containing −1.
inline Json arc_scan_certificate(const Word& w, const std::vector<ArcEstimate>& scan, const AscentBudget& b) {
  Json rows = Json::array();
  for (const auto& e : scan) {
    rows.push_back(Json{{"d", e.dimension},
                        {"theta", e.theta},
                        {"residual", kPi - e.theta},
                        {"seed", e.seed},
                        {"witness", to_json(e.witness)}});
  }
  return Json{{"kind", "arc_scan"},
              {"word", to_json(w)},
              {"seed", b.seed},
              {"restarts", b.restarts},
              {"max_iterations", b.max_iterations},
              {"estimates", std::move(rows)}};
}

// --- verification --------------------------------------------------------

struct Verification {
  std::string kind;
  bool ok = false;
  std::string detail;
};

/// Re-derives the claim of a certificate from its raw data only.
inline Verification verify_certificate(const Json& j) {
  Verification v;
  v.kind = j.at("kind").get<std::string>();
  auto fail = [&v](std::string why) {
    v.ok = false;
    v.detail = std::move(why);
    return v;
  };
  if (v.kind == "perm_rep") {
    const PermRepCertificate c = perm_rep_from_json(j);
    const NormalizedWord n = normalize_endpoints(c.original);
    if (!(n.core == c.word())) return fail("stored core is not the normalization of the word");
    if (!verify_perm_rep(c)) return fail("permutations do not realize the two-cycle");
  } else if (v.kind == "eigenvalue") {
    if (!verify_eigenvalue(eigenvalue_from_json(j))) return fail("target is not an eigenvalue within tolerance");
  } else if (v.kind == "binomial") {
    const BinomialCertificate c = binomial_from_json(j);
    const double expected = c.w1 == c.w2 ? std::abs(c.alpha + c.beta) : std::abs(c.alpha) + std::abs(c.beta);
    if (std::abs(c.claimed_norm - expected) > 1e-12) return fail("claimed norm is not the attainable bound");
    if (!verify_binomial(c)) return fail("norm is not attained within tolerance");
  } else if (v.kind == "seminorm") {
    const GroupAlgebraElement a = element_from_json(j.at("element"));
    const UnitaryTuple u = tuple_from_json(j.at("witness"));
    if (u.unitarity_residual() > kUnitarityTolerance) return fail("witness is not unitary");
    const double value = operator_norm(apply_element(a, u));
    if (std::abs(value - j.at("value").get<double>()) > 1e-9) return fail("witness does not attain the stated value");
  } else if (v.kind == "arc_scan") {
    const Word w = word_from_json(j.at("word"));
    double prev = 0.0;
    for (const Json& row : j.at("estimates")) {
      const UnitaryTuple u = tuple_from_json(row.at("witness"));
      const double theta = row.at("theta").get<double>();
      if (u.unitarity_residual() > kUnitarityTolerance) return fail("witness is not unitary");
      if (u.dimension() != row.at("d").get<Eigen::Index>()) return fail("witness dimension mismatch");
      if (max_abs_arg(word_map(w, u)) < theta - 1e-8) return fail("witness does not reach the stated angle");
      if (theta < prev) return fail("angles are not nondecreasing");
      prev = theta;
    }
  } else if (v.kind == "telescope") {
    const auto f = telescope_element_from_json(j.at("element"));
    const auto seq = tel::seminorm_sequence(f);
    const Json& claimed = j.at("seminorms");
    const auto values = claimed.at("values").get<std::vector<double>>();
    if (values.size() != seq.values.size()) return fail("wrong number of seminorm values");
    for (std::size_t k = 0; k < values.size(); ++k)
      if (std::abs(values[k] - seq.values[k]) > 1e-9) return fail("seminorm value " + std::to_string(k + 1) + " differs");
    if (std::abs(claimed.at("total_norm").get<double>() - seq.total_norm) > 1e-9) return fail("total norm differs");
  } else if (v.kind == "telescope_pair") {
    for (const char* key : {"f1", "f2", "combined"}) {
      const Verification inner = verify_certificate(j.at(key));
      if (!inner.ok) return fail(std::string(key) + ": " + inner.detail);
    }
  } else {
    throw ParseError("unknown certificate kind '" + v.kind + "'");
  }
  v.ok = true;
  v.detail = "ok";
  return v;
}

}  // namespace fdrep::io

#endif
