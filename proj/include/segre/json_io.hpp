#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "segre/hypersurface.hpp"
#include "segre/jetdet.hpp"
#include "segre/normalform.hpp"
#include "segre/segremap.hpp"

namespace segre {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const GaussianScalar& c);
GaussianScalar scalar_from_json(const Json& j);

/// List of {"m","n","p","c"} in canonical order.
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json to_json(const Hypersurface& M);
Hypersurface hypersurface_from_json(const Json& j);

Json to_json(const SegreMap& T);
SegreMap segremap_from_json(const Json& j);

Json to_json(const StageDiagnostics& d);
Json to_json(const NormalizationResult& r);
Json to_json(const DeterminationReport& r);
Json to_json(const NormalizationCheck& c);

/// Keys sorted, two-space indentation, trailing newline.
std::string canonical_dump(const Json& j);

/// FNV-1a 64 of the canonical JSON of M, as 16 hex digits.
std::string surface_hash(const Hypersurface& M);

}  // namespace segre
