// fdrep: command-line front end for words, permutation certificates,
// seminorm and arc estimates, and telescope constructions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdrep/io.hpp"

namespace {

using namespace fdrep;
using io::Json;
namespace tel = fdrep::telescope;

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kTolerance = 3 };

struct RunConfig {
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  int restarts = 8;
  int max_iterations = 100;
  bool emit_csv = false;
  std::string out;

  AscentBudget budget() const {
    AscentBudget b;
    b.seed = seed;
    b.restarts = restarts;
    b.max_iterations = max_iterations;
    return b;
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw DomainError("cannot write " + cfg.out);
  f << text;
}

void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

std::string csv_number(double v) { return format_double(v); }

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + item + "' in list");
    }
    if (used != item.size()) throw ParseError("bad number '" + item + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_number_list(text)) {
    if (v != std::floor(v)) throw ParseError("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// "a..b" or a single integer b (meaning 1..b).
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) return {1, std::stoi(text)};
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("bad range '" + text + "', expected a..b");
  }
}

/// Parsed target on the unit circle. Values within 1e-6 of modulus 1 are
/// projected onto the circle, so that rounded decimal input is accepted.
Complex unit_target(const std::string& lambda, const std::optional<double>& arg) {
  if (arg) return std::polar(1.0, *arg);
  const Complex z = io::parse_complex(lambda);
  const double r = std::abs(z);
  if (std::abs(r - 1.0) > 1e-6) throw DomainError("lambda must have modulus 1 (got " + csv_number(r) + ")");
  return z / r;
}

// --- word ----------------------------------------------------------------

void add_word_commands(CLI::App& app, RunConfig& cfg) {
  auto* word = app.add_subcommand("word", "Free group word utilities");
  word->require_subcommand(1);
  auto text = std::make_shared<std::string>();
  auto rank = std::make_shared<int>(0);

  auto* reduce = word->add_subcommand("reduce", "Print the reduced form ('e' for the identity)");
  reduce->add_option("word", *text, "Word such as \"x1 x2 x1^-1\"")->required();
  reduce->add_option("--rank", *rank, "Number of generators (default: largest index)");
  reduce->callback([&cfg, text, rank] { emit(cfg, to_string(parse_word(*text, *rank)) + "\n"); });

  auto* balance = word->add_subcommand("balance", "Print true if every generator has exponent sum zero");
  balance->add_option("word", *text)->required();
  balance->callback([&cfg, text] { emit(cfg, std::string(is_balanced(parse_word(*text)) ? "true" : "false") + "\n"); });

  auto* normalize = word->add_subcommand("normalize", "Conjugate a balanced word so its end letters use different generators");
  normalize->add_option("word", *text)->required();
  normalize->add_option("--rank", *rank);
  normalize->callback([&cfg, text, rank] {
    const Word w = parse_word(*text, *rank);
    const NormalizedWord n = normalize_endpoints(w);
    emit_json(cfg, Json{{"word", to_string(w)},
                        {"core", to_string(n.core)},
                        {"conjugator", to_string(n.conjugator)},
                        {"adjoint_taken", n.conjugated}});
  });
}

// --- rep -----------------------------------------------------------------

void add_rep_commands(CLI::App& app, RunConfig& cfg, int& status) {
  auto* rep = app.add_subcommand("rep", "Certificates: permutation representations, eigenvalues, binomial norms");
  rep->require_subcommand(1);

  auto perm_word = std::make_shared<std::string>();
  auto* perm = rep->add_subcommand("perm", "Permutation tuple of degree 2l under which the word has eigenvalue -1");
  perm->add_option("word", *perm_word)->required();
  perm->callback([&cfg, perm_word] { emit_json(cfg, io::to_json(build_perm_rep(parse_word(*perm_word)))); });

  struct EigArgs {
    std::string word;
    std::string lambda;
    std::optional<double> lambda_arg;
  };
  auto ea = std::make_shared<EigArgs>();
  auto* eig = rep->add_subcommand("eig", "Tuple in dimension 2l with lambda in the spectrum of the word");
  eig->add_option("word", ea->word)->required();
  auto* lam = eig->add_option("--lambda", ea->lambda, "Target on the unit circle, e.g. 0.5+0.8660254i");
  auto* lam_arg = eig->add_option("--lambda-arg", ea->lambda_arg, "Target given by its argument in radians");
  lam->excludes(lam_arg);
  eig->callback([&cfg, ea, lam, lam_arg] {
    if (lam->count() == 0 && lam_arg->count() == 0) throw ParseError("one of --lambda or --lambda-arg is required");
    const Complex target = unit_target(ea->lambda, ea->lambda_arg);
    emit_json(cfg, io::to_json(realize_eigenvalue(parse_word(ea->word), target, cfg.tolerance)));
  });

  struct BinArgs {
    std::string alpha = "1";
    std::string beta = "-1";
    std::string w1;
    std::string w2;
    int rank = 0;
  };
  auto ba = std::make_shared<BinArgs>();
  auto* bin = rep->add_subcommand("binomial", "Representation attaining |alpha| + |beta| for alpha*w1 + beta*w2");
  bin->add_option("--alpha", ba->alpha, "Complex coefficient")->capture_default_str();
  bin->add_option("--beta", ba->beta, "Complex coefficient")->capture_default_str();
  bin->add_option("--w1", ba->w1)->required();
  bin->add_option("--w2", ba->w2)->required();
  bin->add_option("--rank", ba->rank, "Number of generators (default: largest index in either word)");
  bin->callback([&cfg, ba] {
    int rank = ba->rank;
    if (rank == 0) rank = std::max({1, parse_word(ba->w1).rank(), parse_word(ba->w2).rank()});
    const auto c = binomial_certificate(io::parse_complex(ba->alpha), io::parse_complex(ba->beta),
                                        parse_word(ba->w1, rank), parse_word(ba->w2, rank), cfg.tolerance);
    emit_json(cfg, io::to_json(c));
  });

  auto file = std::make_shared<std::string>();
  auto* verify = rep->add_subcommand("verify", "Recompute the claim of any certificate file; exit 1 on mismatch");
  verify->add_option("file", *file)->required();
  verify->callback([&cfg, &status, file] {
    const io::Verification v = io::verify_certificate(read_json_file(*file));
    emit_json(cfg, Json{{"kind", v.kind}, {"ok", v.ok}, {"detail", v.detail}});
    if (!v.ok) status = kDomain;
  });
}

// --- seminorm and arc ----------------------------------------------------

void add_estimate_commands(CLI::App& app, RunConfig& cfg) {
  struct SemArgs {
    std::vector<std::string> terms;
    Eigen::Index dim = 1;
    int rank = 0;
  };
  auto sa = std::make_shared<SemArgs>();
  auto* sem = app.add_subcommand("seminorm", "Lower bound on sup ||pi(a)|| over representations of dimension --dim");
  sem->add_option("--term", sa->terms, "Term <coefficient>:<word>, repeatable")->required();
  sem->add_option("--dim", sa->dim, "Representation dimension")->required()->check(CLI::PositiveNumber);
  sem->add_option("--rank", sa->rank, "Number of generators (default: largest index)");
  sem->callback([&cfg, sa] {
    std::vector<std::pair<Complex, std::vector<Letter>>> parsed;
    int rank = std::max(1, sa->rank);
    for (const auto& t : sa->terms) {
      parsed.push_back(io::parse_term(t));
      if (sa->rank == 0)
        for (const Letter& l : parsed.back().second) rank = std::max(rank, l.generator);
    }
    GroupAlgebraElement a(rank);
    for (const auto& [c, ls] : parsed) a.add_term(c, Word::reduce(ls, rank));
    const AscentBudget b = cfg.budget();
    emit_json(cfg, io::seminorm_certificate(a, seminorm_lower_bound(a, sa->dim, b), b));
  });

  auto* arc = app.add_subcommand("arc", "Spectral arc estimates of a balanced word");
  arc->require_subcommand(1);
  struct ArcArgs {
    std::string word;
    std::string dims = "1..8";
  };
  auto aa = std::make_shared<ArcArgs>();
  auto* scan = arc->add_subcommand("scan",
                                   "Lower bounds on the largest |arg| of an eigenvalue, for each dimension in --dims.\n"
                                   "CSV columns: d, theta, residual (= pi - theta)");
  scan->add_option("word", aa->word)->required();
  scan->add_option("--dims", aa->dims, "Dimension range a..b (the scan always starts at 1)")->capture_default_str();
  scan->callback([&cfg, aa] {
    const auto [from, to] = parse_range(aa->dims);
    if (from < 1 || to < from) throw DomainError("dimension range must satisfy 1 <= a <= b");
    const Word w = parse_word(aa->word);
    const AscentBudget b = cfg.budget();
    auto all = arc_scan(w, to, b);
    std::vector<ArcEstimate> rows(all.begin() + (from - 1), all.end());
    if (cfg.emit_csv) {
      std::string out = "d,theta,residual\n";
      for (const auto& e : rows)
        out += std::to_string(e.dimension) + "," + csv_number(e.theta) + "," + csv_number(kPi - e.theta) + "\n";
      emit(cfg, out);
    } else {
      emit_json(cfg, io::arc_scan_certificate(w, rows, b));
    }
  });
}

// --- telescope -----------------------------------------------------------

struct ShapeArgs {
  std::string dims;
  std::string embedding = "corner";
  double t_max = 0.0;
  double step = 0.05;
};

void add_shape_options(CLI::App* cmd, ShapeArgs& s, const std::string& default_dims) {
  s.dims = default_dims;
  cmd->add_option("--dims", s.dims, "Strictly increasing level dimensions, comma separated")->capture_default_str();
  cmd->add_option("--embedding", s.embedding, "corner (a -> a+0) or diagonal (a -> a+a)")
      ->check(CLI::IsMember({"corner", "diagonal"}))
      ->capture_default_str();
  cmd->add_option("--t-max", s.t_max, "CSV sampling range (default: levels + 5)");
  cmd->add_option("--step", s.step, "CSV sampling step")->capture_default_str();
}

tel::Shape make_shape(const ShapeArgs& s) { return tel::Shape(parse_int_list(s.dims), io::embedding_from_string(s.embedding)); }

void emit_telescope(const RunConfig& cfg, const ShapeArgs& s, const tel::Element& sampled, const Json& j) {
  if (!cfg.emit_csv) {
    emit_json(cfg, j);
    return;
  }
  const double t_max = s.t_max > 0.0 ? s.t_max : sampled.shape().levels() + 5.0;
  std::string out = "t,norm\n";
  for (const auto& [t, v] : tel::sample_norms(sampled, t_max, s.step)) out += csv_number(t) + "," + csv_number(v) + "\n";
  emit(cfg, out);
}

std::string range_list(int n) {
  std::string s;
  for (int k = 1; k <= n; ++k) s += (k > 1 ? "," : "") + std::to_string(k);
  return s;
}

void add_telescope_commands(CLI::App& app, RunConfig& cfg) {
  auto* tele = app.add_subcommand("telescope", "Finite mapping telescope constructions. CSV columns: t, norm");
  tele->require_subcommand(1);

  struct PrescribeArgs {
    ShapeArgs shape;
    std::string lambdas;
    bool strict = false;
    std::optional<double> total;
  };
  auto pa = std::make_shared<PrescribeArgs>();
  auto* pre = tele->add_subcommand("prescribe", "Element whose k-th seminorm is the k-th value of --lambdas");
  add_shape_options(pre, pa->shape, "");
  pre->add_option("--lambdas", pa->lambdas, "Nondecreasing values, comma separated")->required();
  pre->add_flag("--strict", pa->strict, "Reach the total norm only at infinity");
  pre->add_option("--total", pa->total, "Total norm (required with --strict)");
  pre->callback([&cfg, pa] {
    const auto lambdas = parse_number_list(pa->lambdas);
    ShapeArgs s = pa->shape;
    if (s.dims.empty()) s.dims = range_list(static_cast<int>(lambdas.size()));
    const tel::Element f = tel::construct_prescribed(make_shape(s), lambdas, pa->strict, pa->total);
    emit_telescope(cfg, s, f, io::telescope_certificate(f));
  });

  auto wa = std::make_shared<ShapeArgs>();
  auto* wit = tele->add_subcommand("witness", "(1 - e^-t) e11: norm reached only at infinity");
  add_shape_options(wit, *wa, "1,2,4");
  wit->callback([&cfg, wa] {
    const tel::Element f = tel::fdi_witness(make_shape(*wa));
    emit_telescope(cfg, *wa, f, io::telescope_certificate(f));
  });

  auto* cex = tele->add_subcommand("counterexample", "Pairs attaining their norms whose sum or product does not");
  cex->require_subcommand(1);

  struct AddArgs {
    ShapeArgs shape;
    int n = 2;
  };
  auto ad = std::make_shared<AddArgs>();
  auto* add = cex->add_subcommand("additive", "f1, f2 with norm 2 at t = n; f1 + f2 vanishes on (0, 2n]");
  add_shape_options(add, ad->shape, "");
  add->add_option("--n", ad->n, "Breakpoint")->capture_default_str()->check(CLI::PositiveNumber);
  add->callback([&cfg, ad] {
    ShapeArgs s = ad->shape;
    if (s.dims.empty()) s.dims = range_list(2 * ad->n);
    const auto [f1, f2] = tel::counterexample_additive(make_shape(s), ad->n);
    const tel::Element sum = f1 + f2;
    emit_telescope(cfg, s, sum, io::telescope_pair_certificate("sum", f1, f2, sum));
  });

  struct MulArgs {
    ShapeArgs shape;
    int n1 = 1;
    int n2 = 2;
  };
  auto ma = std::make_shared<MulArgs>();
  auto* mul = cex->add_subcommand("multiplicative", "f1, f2 with norm 1 at n1 and n2; f1 f2 reaches 1 only at infinity");
  add_shape_options(mul, ma->shape, "");
  mul->add_option("--n1", ma->n1)->capture_default_str();
  mul->add_option("--n2", ma->n2)->capture_default_str();
  mul->callback([&cfg, ma] {
    ShapeArgs s = ma->shape;
    if (s.dims.empty()) s.dims = range_list(std::max(1, ma->n2));
    const auto [f1, f2] = tel::counterexample_multiplicative(make_shape(s), ma->n1, ma->n2);
    const tel::Element prod = f1 * f2;
    emit_telescope(cfg, s, prod, io::telescope_pair_certificate("product", f1, f2, prod));
  });

  auto file = std::make_shared<std::string>();
  auto* sem = tele->add_subcommand("seminorms", "Seminorm sequence of an element (or telescope certificate) in a JSON file");
  sem->add_option("file", *file)->required();
  sem->callback([&cfg, file] {
    const Json j = read_json_file(*file);
    const Json& e = j.contains("element") ? j.at("element") : j;
    const tel::Element f = io::telescope_element_from_json(e);
    emit_json(cfg, io::to_json(tel::seminorm_sequence(f)));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional representations of free groups and finite mapping telescopes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.footer("Exit codes: 0 ok, 1 domain error or failed verification, 2 usage error, 3 tolerance not reached");

  RunConfig cfg;
  int status = kOk;
  app.add_option("--seed", cfg.seed, "Root seed for randomized searches")->capture_default_str();
  app.add_option("--tol", cfg.tolerance, "Tolerance for eigenvalue and norm certificates")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--restarts", cfg.restarts, "Random restarts per search")->capture_default_str()->check(CLI::Range(1, 1 << 20));
  app.add_option("--max-iter", cfg.max_iterations, "Ascent iterations per restart")
      ->capture_default_str()
      ->check(CLI::Range(1, 1 << 20));
  app.add_flag("--emit-csv", cfg.emit_csv, "CSV instead of JSON where supported (arc scan, telescope)");
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

  add_word_commands(app, cfg);
  add_rep_commands(app, cfg, status);
  add_estimate_commands(app, cfg);
  add_telescope_commands(app, cfg);
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* s2 : sub->get_subcommands({})) {
      s2->fallthrough();
      for (CLI::App* s3 : s2->get_subcommands({})) s3->fallthrough();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ToleranceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTolerance;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const ConstraintConflict& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
