// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any line fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "segre/fischer.hpp"
#include "segre/jetdet.hpp"
#include "segre/json_io.hpp"
#include "segre/normalform.hpp"
#include "support.hpp"

using namespace segre;
using namespace segre::test;

namespace {

constexpr double kFischerSeconds = 60.0;
constexpr double kNormalizeSeconds = 300.0;
constexpr int kGraphDegree = 10;
constexpr int kCliRepeats = 3;
constexpr int kCliThreads = 4;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
}

Poly nu_power(int e) { return Poly::term({0, 0, e}, GaussianScalar(1)); }

void fischer_suite() {
  std::mt19937_64 rng(20240601);
  bool identity = true, harmonic = true, unique = true;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const int a = 1 + static_cast<int>(rng() % 4);
    const HomogeneousPoly P(random_homogeneous(rng, a));
    const Poly F = random_poly(rng, 0, 8);
    const FischerSplit s = fischer_decompose(F, P);
    identity = identity && F == mul(s.G, P.poly(), 8) + s.H;
    harmonic = harmonic && oracle::apolar_brute(P.poly(), s.H).is_zero();
    FischerOptions shuffled;
    shuffled.permutation_seed = 1 + rng();
    const FischerSplit t = fischer_decompose(F, P, shuffled);
    unique = unique && t.G == s.G && t.H == s.H;
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << std::boolalpha;
  os << "Fischer 200 pairs: identity " << identity << ", P*(H)=0 " << harmonic << ", order-independent " << unique
     << ", " << dt << " s (limit " << kFischerSeconds << ")";
  report(1, identity && harmonic && unique && dt < kFischerSeconds, os.str());
}

void graph_suite() {
  bool relation = true, closed = true, leading = true, printed_m0_0 = true, printed_m0_1_differs = true;
  for (int m0 : {0, 1}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const int k0 = m0 + 3 + static_cast<int>(seed % 3);
      Hypersurface M = generate_random(1000 * (m0 + 1) + seed, m0, k0, kGraphDegree, Rational(1, 2));
      const Poly Q = solve_graph(M);
      relation = relation && oracle::relation_residual(M, Q).is_zero();
      const Poly lead = GaussianScalar(0, 2) * mul(nu_power(m0), M.L, kGraphDegree);
      const Poly got = homogeneous_component(Q, k0).poly();
      leading = leading && got == lead;
      const Poly printed = GaussianScalar(Rational(1, 1 << m0)) * lead;
      if (m0 == 0) printed_m0_0 = printed_m0_0 && got == printed;
      if (m0 == 1) printed_m0_1_differs = printed_m0_1_differs && got != printed;
      if (m0 == 1) {
        M.phi.clear();
        closed = closed && solve_graph(M) == oracle::closed_form_m0_1(M.L, kGraphDegree);
      }
    }
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << "graph 2x20 instances at D=" << kGraphDegree << ": relation residual zero " << relation
     << ", m0=1 closed form " << closed << ", Q_k0 = 2i nu^m0 L " << leading
     << "; the /2^m0 form agrees for m0=0 (" << printed_m0_0 << ") and is off by 2 for m0=1 (" << printed_m0_1_differs
     << ")";
  report(2, relation && closed && leading && printed_m0_0 && printed_m0_1_differs, os.str());
}

struct Instance {
  Hypersurface M;
  NormalizationResult result;
};

std::vector<Instance> normalize_suite(int id, int m0, int k0) {
  const int D = k0 + 3;
  std::vector<Instance> out;
  bool kernels = true, sound = true, normalized = true, agree = true;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Hypersurface M = generate_random(seed, m0, k0, D, Rational(1, 2));
    const ConstraintSet cs = build_constraints(m0, k0, M.L, D);
    NormalizeOptions no;
    no.constraints = &cs;
    NormalizationResult r = normalize(M, no);
    for (const auto& st : r.diagnostics) kernels = kernels && st.kernel_dim == 0;
    sound = sound && is_equivalence(M, r.map, r.surface).holds;
    normalized = normalized && check_normalized(r.surface, &cs).passed;
    GlobalSolveOptions go;
    go.constraints = &cs;
    const NormalizationResult g = global_solve(M, go);
    agree = agree && g.map == r.map && g.surface == r.surface;
    out.push_back({M, std::move(r)});
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << std::boolalpha;
  os << "normalize m0=" << m0 << " k0=" << k0 << " D=" << D << " x10: kernel 0 at every stage " << kernels
     << ", is_equivalence " << sound << ", check_normalized " << normalized << ", equals global_solve " << agree << ", "
     << dt << " s (limit " << kNormalizeSeconds << ")";
  report(id, kernels && sound && normalized && agree && dt < kNormalizeSeconds, os.str());
  return out;
}

void selfmap_suite(const std::vector<Instance>& all) {
  bool zero = true;
  for (const auto& inst : all) {
    const DeterminationReport r = selfmap_kernel(inst.M, inst.M.D);
    for (int d : r.kernel_dims) zero = zero && d == 0;
  }
  SelfmapOptions probe;
  probe.probe = true;
  const DeterminationReport p = selfmap_kernel(all.front().M, all.front().M.D, probe);
  const int probe_dim = p.kernel_dims.size() > 1 ? p.kernel_dims[1] : 0;
  std::ostringstream os;
  os << std::boolalpha;
  os << "self-map kernel zero at every degree on " << all.size() << " instances " << zero
     << "; probe without the 1-jet constraint has kernel " << probe_dim << " at degree 1";
  report(5, zero && probe_dim >= 1, os.str());
}

void idempotence_suite(const std::vector<Instance>& all) {
  bool ok = true;
  for (const auto& inst : all) {
    const NormalizationResult again = normalize(inst.result.surface);
    ok = ok && again.map.is_identity() && again.surface == inst.result.surface;
  }
  report(6, ok, "normalize of a normal form returns the identity and the same surface on " +
                    std::to_string(all.size()) + " instances");
}

std::string scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "segre_acceptance";
  std::filesystem::create_directories(dir);
  return dir.string();
}

/// Stdout of the CLI binary plus its exit status.
std::pair<std::string, int> cli(const std::string& args) {
  const std::string cmd = std::string(SEGRE_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {"", -1};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {out, status};
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

void determinism_suite() {
  const std::string dir = scratch_dir();
  std::vector<std::string> runs;
  const struct {
    int seed, m0, k0, D;
  } gens[] = {{1, 0, 3, 6}, {2, 1, 4, 7}};
  for (const auto& g : gens) {
    const std::string surf = dir + "/s" + std::to_string(g.seed) + ".json";
    const std::string args = "gen --seed " + std::to_string(g.seed) + " --m0 " + std::to_string(g.m0) + " --k0 " +
                             std::to_string(g.k0) + " --degree " + std::to_string(g.D);
    write_file(surf, cli(args).first);
    runs.push_back(args);
    for (const char* sub : {"graph", "normalize", "residual", "selfmap-kernel", "jet-check", "check-normalized"})
      for (const char* fmt : {"json", "text"})
        runs.push_back(std::string(sub) + " --input " + surf + " --format " + fmt);
    runs.push_back("selfmap-kernel --probe --input " + surf);
  }
  const std::string fin = dir + "/fischer.json";
  std::mt19937_64 rng(7);
  write_file(fin, canonical_dump({{"F", poly_to_json(random_poly(rng, 0, 6))}, {"P", poly_to_json(random_homogeneous(rng, 3))}}));
  runs.push_back("fischer --input " + fin);

  bool repeat = true, threads = true, nonempty = true;
  for (const auto& args : runs) {
    const auto base = cli(args + " --threads 1");
    nonempty = nonempty && !base.first.empty();
    for (int k = 1; k < kCliRepeats; ++k) repeat = repeat && cli(args + " --threads 1") == base;
    threads = threads && cli(args + " --threads " + std::to_string(kCliThreads)) == base;
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << runs.size() << " CLI invocations: byte-identical over " << kCliRepeats << " repeats " << repeat << ", 1 vs "
     << kCliThreads << " threads " << threads << ", all produced output " << nonempty;
  report(7, repeat && threads && nonempty, os.str());
}

void map_algebra_suite() {
  std::mt19937_64 rng(99);
  bool round_trip = true, assoc = true, functorial = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int D = 3 + static_cast<int>(rng() % 4);
    const SegreMap S = random_map(rng, D), T = random_map(rng, D), U = random_map(rng, D);
    round_trip = round_trip && compose(S, invert(S)).is_identity() && compose(invert(S), S).is_identity() &&
                 invert(invert(S)) == S;
    assoc = assoc && compose(compose(S, T), U) == compose(S, compose(T, U));
    for (int k = 1; k <= D; ++k) {
      const SegreMap Sk = from_jet(jet(S, k), k), Tk = from_jet(jet(T, k), k);
      functorial = functorial && jet(compose(S, T), k) == jet(compose(Sk, Tk), k);
    }
  }
  std::ostringstream os;
  os << std::boolalpha;
  os << "100 seeded maps: compose/invert round trips " << round_trip << ", associativity " << assoc
     << ", jet(S o T, k) from k-jets " << functorial;
  report(8, round_trip && assoc && functorial, os.str());
}

}  // namespace

int main() {
  std::cout << std::boolalpha;
  fischer_suite();
  graph_suite();
  auto all = normalize_suite(3, 0, 3);
  auto m01 = normalize_suite(4, 1, 4);
  all.insert(all.end(), m01.begin(), m01.end());
  selfmap_suite(all);
  idempotence_suite(all);
  determinism_suite();
  map_algebra_suite();
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
