#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sitelab/bridge.hpp"
#include "sitelab/fincat.hpp"
#include "sitelab/geolog/ast.hpp"
#include "sitelab/geolog/structure.hpp"
#include "sitelab/setfunctor.hpp"
#include "sitelab/sheaf.hpp"
#include "sitelab/topology.hpp"

namespace sitelab::io {

// Insertion-ordered, so every report serializes with a stable key order.
using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);  // IoError
Json read_json_file(const std::string& path);         // IoError, ParseError

// Category file: {"objects", "arrows": [{"id","dom","cod"}], "compose": [{"first","then","equals"}]}.
RawCategory category_from_json(const Json& j);
Json category_to_json(const FinCategory& c);
FinCategory load_category(const std::string& path);

// Topology file: {"covers": {"<object>": [["arrowId", ...], ...]}}. Maximal
// sieves are inserted on load.
SieveFamily family_from_json(const FinCategory& c, const Json& j);
GrothendieckTopology topology_from_json(const FinCategory& c, const Json& j, const Bounds& bounds = {});
Json topology_to_json(const FinCategory& c, const GrothendieckTopology& t);
Json family_to_json(const FinCategory& c, const SieveFamily& f);

// {"base": "<object>", "arrows": ["id", ...]}
Sieve sieve_from_json(const FinCategory& c, const Json& j);
Json sieve_to_json(const FinCategory& c, const Sieve& s);
// {"axioms": [<sieve>, ...]} or a bare array of sieves.
std::vector<Sieve> axioms_from_json(const FinCategory& c, const Json& j);
Json derivation_to_json(const FinCategory& c, const Derivation& d);

// Presheaf file: {"at": {"<object>": [...]}, "act": {"<arrow>": {"<elem of cod>": "<elem of dom>"}}}.
// Identity actions may be omitted.
Presheaf presheaf_from_json(const FinCategory& c, const Json& j);
Json presheaf_to_json(const FinCategory& c, const Presheaf& p);

// Structure file: {"carriers": {"<sort>": [...]}, "functions": {"<f>": {"<a1,a2,...>": "<value>"}},
// "relations": {"<R>": [["<a1>", ...], ...]}}.
geolog::FinStructure structure_from_json(const geolog::Signature& sig, const Json& j);
Json structure_to_json(const geolog::Signature& sig, const geolog::FinStructure& m);

// {"at": {"<object>": n}, "act": {"<arrow>": [images]}}
Json functor_to_json(const FinCategory& c, const SetFunctor& f);

Json fingerprint_to_json(const InvariantFingerprint& fp);
Json property_to_json(const PropertyCheck& p);

/// Realization file: {"category": <path or inline category>, "theory": <path>,
/// "hom": "homomorphism"|"embedding", "objects": {"<object>": <path or inline structure>},
/// "arrows": {"<arrow>": {"<sort>": {"<elem>": "<elem>"}}}}. Paths are
/// relative to the realization file; identity arrows may be omitted.
struct LoadedRealization {
  FinCategory fpcat;
  geolog::Theory theory;
  Realization realization;
  HomKind kind = HomKind::Homomorphism;
};
LoadedRealization load_realization(const std::string& path);

}  // namespace sitelab::io
