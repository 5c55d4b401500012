#include "segre/json_io.hpp"

#include <cstdint>
#include <cstdio>

namespace segre {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

int int_field_or(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  return int_field(j, key);
}

Rational rational_from(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rationals must be strings \"num/den\"");
}

Json table_to_json(const CoeffTable& t) {
  Json a = Json::array();
  for (const auto& [kl, c] : t) a.push_back({{"k", kl.first}, {"l", kl.second}, {"c", to_json(c)}});
  return a;
}

CoeffTable table_from_json(const Json& j) {
  CoeffTable t;
  if (!j.is_array()) throw ParseError("map tables must be arrays");
  for (const auto& e : j) {
    const std::pair<int, int> kl{int_field(e, "k"), int_field(e, "l")};
    const GaussianScalar c = scalar_from_json(field(e, "c"));
    if (t.count(kl)) throw ParseError("duplicate map index");
    if (!c.is_zero()) t[kl] = c;
  }
  return t;
}

const char* kTables[] = {"f", "g", "ft", "gt"};

}  // namespace

Json to_json(const GaussianScalar& c) { return {{"re", format_rational(c.re)}, {"im", format_rational(c.im)}}; }

GaussianScalar scalar_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return GaussianScalar(rational_from(j));
  if (!j.is_object()) throw ParseError("complex rationals are objects {\"re\", \"im\"}");
  Rational re = j.contains("re") ? rational_from(j.at("re")) : Rational(0);
  Rational im = j.contains("im") ? rational_from(j.at("im")) : Rational(0);
  return GaussianScalar(re, im);
}

Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& [mono, c] : p) a.push_back({{"m", mono.m}, {"n", mono.n}, {"p", mono.p}, {"c", to_json(c)}});
  return a;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("polynomials are arrays of terms");
  Poly p;
  for (const auto& e : j) {
    const Monomial mono{int_field(e, "m"), int_field(e, "n"), int_field_or(e, "p", 0)};
    if (mono.m < 0 || mono.n < 0 || mono.p < 0) throw ParseError("negative exponent");
    if (!p.coeff(mono).is_zero()) throw ParseError("duplicate monomial");
    p.add_term(mono, scalar_from_json(field(e, "c")));
  }
  return p;
}

Json to_json(const Hypersurface& M) {
  Poly phi;
  for (const auto& [mono, c] : M.phi) phi.add_term(mono, c);
  return {{"m0", M.m0}, {"k0", M.k0}, {"D", M.D}, {"L", poly_to_json(M.L)}, {"phi", poly_to_json(phi)}, {"real", M.real}};
}

Hypersurface hypersurface_from_json(const Json& j) {
  Hypersurface M;
  M.m0 = int_field(j, "m0");
  M.k0 = int_field(j, "k0");
  M.D = int_field(j, "D");
  M.L = poly_from_json(field(j, "L"));
  if (j.contains("phi"))
    for (const auto& [mono, c] : poly_from_json(j.at("phi"))) M.phi[mono] = c;
  if (j.contains("real")) {
    if (!j.at("real").is_boolean()) throw ParseError("field \"real\" must be a boolean");
    M.real = j.at("real").get<bool>();
  }
  return M;
}

Json to_json(const SegreMap& T) {
  Json j = {{"D", T.D}};
  for (int t = 0; t < 4; ++t) j[kTables[t]] = table_to_json(T.table(static_cast<Table>(t)));
  return j;
}

SegreMap segremap_from_json(const Json& j) {
  SegreMap T = SegreMap::identity(int_field(j, "D"));
  for (int t = 0; t < 4; ++t)
    if (j.contains(kTables[t])) T.table(static_cast<Table>(t)) = table_from_json(j.at(kTables[t]));
  try {
    T.normalize_storage();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return T;
}

Json to_json(const StageDiagnostics& d) {
  return {{"N", d.N},
          {"n_unknowns", d.n_unknowns},
          {"n_rows", d.n_rows},
          {"rank", d.rank},
          {"kernel_dim", d.kernel_dim},
          {"determined", d.determined},
          {"deferred", d.deferred},
          {"newton_iters", d.newton_iters}};
}

Json to_json(const NormalizationResult& r) {
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
  return {{"surface", to_json(r.surface)},
          {"map", to_json(r.map)},
          {"diagnostics", diags},
          {"reality_preserved", r.reality_preserved},
          {"sweeps", r.sweeps}};
}

Json to_json(const DeterminationReport& r) {
  Json certs = Json::array();
  for (Eigen::Index c = 0; c < r.certificates.cols(); ++c) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < r.certificates.rows(); ++i)
      if (!r.certificates(i, c).is_zero()) v.push_back({{"unknown", r.unknowns[i]}, {"c", to_json(r.certificates(i, c))}});
    certs.push_back(v);
  }
  return {{"surface_hash", r.surface_hash},
          {"D", r.D},
          {"probe", r.probe},
          {"kernel_dims", r.kernel_dims},
          {"verdict", r.verdict},
          {"verified_degree", r.verified_degree},
          {"deferred", r.deferred},
          {"certificates", certs},
          {"certificates_valid", r.certificates_valid}};
}

Json to_json(const NormalizationCheck& c) {
  Json v = Json::array();
  for (const auto& x : c.violations)
    v.push_back({{"label", x.label}, {"detail", x.detail}, {"level", x.level}, {"value", to_json(x.value)}});
  return {{"passed", c.passed}, {"violations", v}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string surface_hash(const Hypersurface& M) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_json(M).dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace segre
