#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "segre/fischer.hpp"
#include "segre/json_io.hpp"

namespace segre {

namespace {

enum Exit { kOk = 0, kValidation = 2, kUniqueness = 3, kInconclusive = 4, kIo = 5 };

struct CliError {
  int exit_code;
  std::string code;
  std::string message;
  Json witness;
};

struct Config {
  std::string input, map, target, output, format = "json";
  std::optional<int> degree;
  std::uint64_t seed = 1;
  int m0 = 0, k0 = 3, threads = 1;
  std::string density = "1/2";
  bool probe = false;
};

int max_degree() {
  const char* env = std::getenv("SEGRE_MAX_DEGREE");
  if (!env) return 12;
  try {
    return std::stoi(env);
  } catch (...) {
    throw CliError{kValidation, "E_MAX_DEGREE", "SEGRE_MAX_DEGREE is not an integer", nullptr};
  }
}

void check_degree(int D) {
  if (D > max_degree())
    throw CliError{kValidation, "E_MAX_DEGREE", "degree " + std::to_string(D) + " exceeds SEGRE_MAX_DEGREE", {{"D", D}}};
}

Json read_json(const std::string& path) {
  if (path.empty()) throw CliError{kIo, "E_IO", "missing --input", nullptr};
  std::ifstream in(path);
  if (!in) throw CliError{kIo, "E_IO", "cannot open " + path, nullptr};
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw CliError{kIo, "E_PARSE", path + ": " + e.what(), nullptr};
  }
}

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <typename F>
auto parsed(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw CliError{kIo, "E_PARSE", e.what(), nullptr};
  } catch (const Json::exception& e) {
    throw CliError{kIo, "E_PARSE", e.what(), nullptr};
  }
}

Hypersurface load_surface(const std::string& path, const Config& cfg) {
  Hypersurface M = parsed([&] { return hypersurface_from_json(read_json(path)); });
  if (cfg.degree) {
    M.D = *cfg.degree;
    for (auto it = M.phi.begin(); it != M.phi.end();)
      it = it->first.degree() > M.D ? M.phi.erase(it) : std::next(it);
  }
  check_degree(M.D);
  auto issues = validate(M);
  if (!issues.empty()) {
    Json w = Json::array();
    for (const auto& i : issues) w.push_back({{"code", i.code}, {"message", i.message}});
    throw CliError{kValidation, issues.front().code, issues.front().message, w};
  }
  return M;
}

void text_poly(std::ostream& os, const char* name, const Poly& p) { os << name << " = " << to_string(p) << "\n"; }

struct Output {
  Json json;
  std::string text;
  int exit_code = kOk;
};

Output cmd_fischer(const Config& cfg) {
  const Json j = read_json(cfg.input);
  const Poly F = parsed([&] { return poly_from_json(field_of(j, "F")); });
  const Poly Pp = parsed([&] { return poly_from_json(field_of(j, "P")); });
  if (Pp.is_zero()) throw CliError{kValidation, "E_ZERO_DIVISOR", "P must be nonzero", nullptr};
  HomogeneousPoly P;
  try {
    P = HomogeneousPoly(Pp);
  } catch (const std::invalid_argument& e) {
    throw CliError{kValidation, "E_NOT_HOMOGENEOUS", e.what(), nullptr};
  }
  if (F.max_degree()) check_degree(*F.max_degree());
  const FischerSplit s = fischer_decompose(F, P);
  const Poly defect = F - mul(s.G, P.poly(), *F.max_degree() + P.degree()) - s.H;
  const bool harmonic = apolar_apply(P, s.H).is_zero();
  Output o;
  o.json = {{"G", poly_to_json(s.G)}, {"H", poly_to_json(s.H)}, {"check", "F-G*P-H == 0"},
            {"check_passed", defect.is_zero()}, {"apolar_H_zero", harmonic}};
  std::ostringstream os;
  text_poly(os, "G", s.G);
  text_poly(os, "H", s.H);
  os << "F-G*P-H == 0: " << (defect.is_zero() ? "yes" : "no") << "\nP*(H) == 0: " << (harmonic ? "yes" : "no") << "\n";
  o.text = os.str();
  return o;
}

Output cmd_graph(const Config& cfg) {
  const Hypersurface M = load_surface(cfg.input, cfg);
  const Poly Q = solve_graph(M);
  const bool zero = complexify(M).evaluate(Q).is_zero();
  Output o;
  o.json = {{"Q", poly_to_json(Q)}, {"D", M.D}, {"residual_zero", zero}};
  std::ostringstream os;
  text_poly(os, "Q", Q);
  os << "relation residual zero: " << (zero ? "yes" : "no") << "\n";
  o.text = os.str();
  return o;
}

Json kernel_witness(const NonUniqueStage& e) {
  Json basis = Json::array();
  for (Eigen::Index c = 0; c < e.kernel().cols(); ++c) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < e.kernel().rows(); ++i)
      if (!e.kernel()(i, c).is_zero()) v.push_back({{"unknown", e.unknowns()[i]}, {"c", to_json(e.kernel()(i, c))}});
    basis.push_back(v);
  }
  return {{"N", e.stage()}, {"kernel_dim", e.kernel().cols()}, {"kernel", basis}};
}

template <typename F>
auto solver_errors(F&& f) {
  try {
    return f();
  } catch (const NonUniqueStage& e) {
    throw CliError{kUniqueness, "E_NON_UNIQUE", e.what(), kernel_witness(e)};
  } catch (const InconsistentStage& e) {
    throw CliError{kUniqueness, "E_INCONSISTENT", e.what(), {{"N", e.stage()}, {"row", e.witness()}}};
  } catch (const DegenerateModel& e) {
    throw CliError{kUniqueness, "E_DEGENERATE_MODEL", e.what(), nullptr};
  }
}

Output cmd_normalize(const Config& cfg) {
  const Hypersurface M = load_surface(cfg.input, cfg);
  NormalizeOptions opts;
  opts.threads = cfg.threads;
  const NormalizationResult r = solver_errors([&] { return normalize(M, opts); });
  Output o;
  o.json = to_json(r);
  std::ostringstream os;
  os << "normalized in " << r.sweeps << " sweep(s); reality preserved: " << (r.reality_preserved ? "yes" : "no") << "\n";
  for (const auto& d : r.diagnostics)
    os << "level " << d.N << ": unknowns " << d.n_unknowns << ", rows " << d.n_rows << ", rank " << d.rank
       << ", kernel " << d.kernel_dim << "\n";
  Poly phi;
  for (const auto& [mono, c] : r.surface.phi) phi.add_term(mono, c);
  text_poly(os, "phi'", phi);
  o.text = os.str();
  return o;
}

Output cmd_residual(const Config& cfg) {
  const Hypersurface M = load_surface(cfg.input, cfg);
  const Hypersurface Mp = cfg.target.empty() ? M : load_surface(cfg.target, cfg);
  SegreMap T = SegreMap::identity(M.D);
  if (!cfg.map.empty()) T = parsed([&] { return segremap_from_json(read_json(cfg.map)); });
  Poly E;
  try {
    E = transform_residual(M, T, Mp);
  } catch (const ModelMismatch& e) {
    throw CliError{kValidation, "E_MODEL_MISMATCH", e.what(), nullptr};
  }
  Output o;
  o.json = {{"residual", poly_to_json(E)}, {"zero", E.is_zero()},
            {"first_nonzero_degree", E.is_zero() ? Json(nullptr) : Json(*E.min_degree())}};
  std::ostringstream os;
  text_poly(os, "E", E);
  o.text = os.str();
  return o;
}

Output report_output(const DeterminationReport& r, bool exit_by_verdict) {
  Output o;
  o.json = to_json(r);
  std::ostringstream os;
  os << "verdict: " << r.verdict << " (D = " << r.D << ", verified through degree " << r.verified_degree << ")\n";
  for (std::size_t d = 1; d < r.kernel_dims.size(); ++d) os << "degree " << d << ": kernel " << r.kernel_dims[d] << "\n";
  o.text = os.str();
  if (exit_by_verdict) o.exit_code = r.verdict == "determined" ? kOk : r.verdict == "not-determined" ? kUniqueness : kInconclusive;
  return o;
}

Output cmd_selfmap(const Config& cfg, bool exit_by_verdict) {
  const Hypersurface M = load_surface(cfg.input, cfg);
  SelfmapOptions opts;
  opts.probe = cfg.probe;
  opts.threads = cfg.threads;
  return report_output(solver_errors([&] { return selfmap_kernel(M, M.D, opts); }), exit_by_verdict);
}

Output cmd_gen(const Config& cfg) {
  if (!cfg.degree) throw CliError{kValidation, "E_BAD_PARAMETERS", "gen needs --degree", nullptr};
  check_degree(*cfg.degree);
  Rational density;
  try {
    density = parse_rational(cfg.density);
  } catch (const std::invalid_argument& e) {
    throw CliError{kValidation, "E_BAD_PARAMETERS", e.what(), nullptr};
  }
  Hypersurface M;
  try {
    M = generate_random(cfg.seed, cfg.m0, cfg.k0, *cfg.degree, density);
  } catch (const BadParameters& e) {
    throw CliError{kValidation, "E_BAD_PARAMETERS", e.what(), nullptr};
  }
  Output o;
  o.json = to_json(M);
  std::ostringstream os;
  text_poly(os, "L", M.L);
  Poly phi;
  for (const auto& [mono, c] : M.phi) phi.add_term(mono, c);
  text_poly(os, "phi", phi);
  o.text = os.str();
  return o;
}

Output cmd_check(const Config& cfg) {
  const Hypersurface M = load_surface(cfg.input, cfg);
  const NormalizationCheck c = solver_errors([&] { return check_normalized(M); });
  Output o;
  o.json = to_json(c);
  std::ostringstream os;
  os << (c.passed ? "normalized" : "not normalized") << "\n";
  for (const auto& v : c.violations) os << v.label << " " << v.detail << ": " << to_string(v.value) << "\n";
  o.text = os.str();
  if (!c.passed) o.exit_code = kUniqueness;
  return o;
}

void emit(const Config& cfg, const std::string& body, std::ostream& out) {
  if (cfg.output.empty()) {
    out << body;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw CliError{kIo, "E_IO", "cannot write " + cfg.output, nullptr};
  f << body;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact normal forms and jet determination for Segre-preserving maps"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "Write the artifact here instead of stdout");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--degree", cfg.degree, "Truncation degree override");
  };
  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Input JSON")->required();
    common(sub);
    return sub;
  };
  auto* fischer = with_input(app.add_subcommand("fischer", "Fischer decomposition of {F, P}"));
  auto* graph = with_input(app.add_subcommand("graph", "Graph series Q of a surface"));
  auto* norm = with_input(app.add_subcommand("normalize", "Normal form and normalizing map"));
  auto* resid = with_input(app.add_subcommand("residual", "Transforming-equation residual"));
  resid->add_option("--map", cfg.map, "SegreMap JSON (default identity)");
  resid->add_option("--target", cfg.target, "Target surface JSON (default the input)");
  auto* selfmap = with_input(app.add_subcommand("selfmap-kernel", "Self-map kernel dimensions per degree"));
  selfmap->add_flag("--probe", cfg.probe, "Admit linear map coefficients and use the model surface");
  auto* jet = with_input(app.add_subcommand("jet-check", "Jet determination verdict"));
  auto* check = with_input(app.add_subcommand("check-normalized", "Check the normalization conditions"));
  auto* gen = app.add_subcommand("gen", "Seeded random surface");
  gen->add_option("--seed", cfg.seed, "64-bit seed");
  gen->add_option("--m0", cfg.m0, "Power of Re w");
  gen->add_option("--k0", cfg.k0, "Weighted degree of the model");
  gen->add_option("--density", cfg.density, "Tail density num/den in (0, 1]");
  common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kIo;
  }

  try {
    Output o;
    if (fischer->parsed()) o = cmd_fischer(cfg);
    else if (graph->parsed()) o = cmd_graph(cfg);
    else if (norm->parsed()) o = cmd_normalize(cfg);
    else if (resid->parsed()) o = cmd_residual(cfg);
    else if (selfmap->parsed()) o = cmd_selfmap(cfg, false);
    else if (jet->parsed()) o = cmd_selfmap(cfg, true);
    else if (check->parsed()) o = cmd_check(cfg);
    else o = cmd_gen(cfg);
    emit(cfg, cfg.format == "text" ? o.text : canonical_dump(o.json), out);
    return o.exit_code;
  } catch (const CliError& e) {
    err << canonical_dump({{"code", e.code}, {"message", e.message}, {"witness", e.witness}});
    return e.exit_code;
  } catch (const InvalidSurface& e) {
    err << canonical_dump({{"code", e.issues().front().code}, {"message", e.what()}, {"witness", nullptr}});
    return kValidation;
  } catch (const std::exception& e) {
    err << canonical_dump({{"code", "E_INTERNAL"}, {"message", e.what()}, {"witness", nullptr}});
    return kIo;
  }
}

}  // namespace segre
