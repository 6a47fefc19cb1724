#pragma once

#include <string>
#include <string_view>

#include "sitelab/geolog/ast.hpp"

namespace sitelab::geolog {

/// Parses the theory DSL. Declarations are keyword-led (`theory`, `sort`,
/// `fun`, `rel`, `axiom`), so line breaks are not significant; '#' starts a
/// comment. Throws SyntaxError, SortError or UnknownSymbol with line/column.
Theory parse_theory(std::string_view text);

/// DSL rendering; parse_theory(print_theory(t)) == t for parsed theories (the
/// fragment tag is not printed, so a Morleyized theory re-parses as geometric).
std::string print_theory(const Theory& t);
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

}  // namespace sitelab::geolog
