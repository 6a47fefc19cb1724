#pragma once

#include <string>
#include <vector>

#include "sitelab/bounds.hpp"
#include "sitelab/fincat.hpp"
#include "sitelab/geolog/ast.hpp"
#include "sitelab/geolog/structure.hpp"
#include "sitelab/setfunctor.hpp"
#include "sitelab/topology.hpp"

namespace sitelab::geolog {

/// Identifier for a category id: alphanumerics kept, '_' doubled, ':' as
/// "_c", anything else as "_uHHHH". Names that would start with a digit or
/// collide with a DSL keyword get an "x_" prefix.
std::string mangle(std::string_view id);

/// Object -> sort and arrow -> function symbol names, by index.
struct FlatDictionary {
  std::vector<std::string> sort_of_object;
  std::vector<std::string> function_of_arrow;
};

struct FlatTheory {
  Theory theory;
  FlatDictionary dictionary;
};

struct FlatTheoryOptions {
  // Emit the covering axiom for every J-cover instead of only the least
  // cover on each object.
  bool all_covers = false;
};

/// The theory of J-continuous flat functors on C. Axioms are labeled by
/// group: id_*, comp_*, nonempty, cone_*, eq_*, cover_*.
FlatTheory flat_functor_theory(const FinCategory& c, const GrothendieckTopology& j,
                               const FlatTheoryOptions& opts = {});

/// Literal check: nonempty category of elements, cones for every pair of
/// elements, equalizing arrows for every parallel pair, and surjectivity of
/// every J-cover.
bool is_flat_continuous(const FinCategory& c, const GrothendieckTopology& j, const SetFunctor& f);

FinStructure functor_to_structure(const FinCategory& c, const SetFunctor& f);
SetFunctor structure_to_functor(const FinCategory& c, const FinStructure& m);

/// J-continuous flat functors with carriers <= max_size, one per
/// isomorphism class, in the canonical order of their structures over the
/// flat signature (so they line up with enumerate_models output).
std::vector<SetFunctor> enumerate_flat_functors(const FinCategory& c, const GrothendieckTopology& j,
                                                std::size_t max_size, const Bounds& bounds = {});

}  // namespace sitelab::geolog
