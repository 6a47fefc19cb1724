#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sitelab/bounds.hpp"
#include "sitelab/geolog/ast.hpp"
#include "sitelab/geolog/structure.hpp"

namespace sitelab::geolog {

/// Variable -> element name, in context order.
using Assignment = std::vector<std::pair<std::string, std::string>>;

struct ModelCheck {
  bool ok = true;
  int axiom = -1;                          // failing axiom (theory form only)
  std::optional<Assignment> falsifying;    // context assignment where premise holds and conclusion fails
};

/// Tarskian evaluation of one sequent over every assignment of its context.
/// Classical semantics for not / implies / forall. Throws SignatureMismatch.
ModelCheck model_check(const Signature& sig, const Sequent& s, const FinStructure& m);
/// First failing axiom, if any.
ModelCheck model_check(const Theory& t, const FinStructure& m);

struct EnumerateOptions {
  bool up_to_iso = false;
  // Enumerate models of first-order theories too (classical semantics);
  // otherwise NotGeometric is raised for them.
  bool allow_first_order = false;
};

/// Every structure with all carriers of size <= max_size satisfying all
/// axioms, sorted by structure_key. With up_to_iso, one canonical_form per
/// isomorphism class. Throws ExplosionGuard past bounds.search_budget.
std::vector<FinStructure> enumerate_models(const Theory& t, std::size_t max_size, const EnumerateOptions& opts = {},
                                           const Bounds& bounds = {});

}  // namespace sitelab::geolog
