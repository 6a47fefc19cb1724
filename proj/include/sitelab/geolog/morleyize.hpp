#pragma once

#include <string>

#include "sitelab/geolog/ast.hpp"

namespace sitelab::geolog {

/// Canonical text of a formula together with the sorts of its free
/// variables; the key behind the C_/D_ relation names.
std::string canonical_text(const Formula& f, const Context& free);

/// Coherent theory over the input signature plus relations C_<hash> (the
/// subformula) and D_<hash> (its negation) for each distinct subformula,
/// declared children first. Each input axiom phi |- psi becomes
/// C_phi |- C_psi. Models restrict bijectively to models of the input.
Theory morleyize(const Theory& t);

}  // namespace sitelab::geolog
