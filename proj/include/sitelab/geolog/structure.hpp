#pragma once

#include <string>
#include <vector>

#include "sitelab/geolog/ast.hpp"

namespace sitelab::geolog {

/// Finite structure over a Signature. Tables are indexed by argument tuples
/// in row-major order (first argument most significant); relations store one
/// truth value per tuple.
struct FinStructure {
  std::vector<std::vector<std::string>> elements;  // per sort
  std::vector<std::vector<int>> functions;         // per function symbol
  std::vector<std::vector<char>> relations;        // per relation symbol

  int size(int sort) const { return static_cast<int>(elements[sort].size()); }

  friend bool operator==(const FinStructure&, const FinStructure&) = default;
};

/// Number of argument tuples for a list of sorts.
std::size_t tuple_count(const Signature& sig, const FinStructure& m, const std::vector<std::string>& sorts);

/// Throws SignatureMismatch unless every table has the right shape and range.
void require_matches(const Signature& sig, const FinStructure& m);

/// Structure with carriers {"0", ..., "n-1"} and all-zero tables.
FinStructure blank_structure(const Signature& sig, const std::vector<int>& sizes);

/// Integer serialization: carrier sizes, then function tables, then
/// relation tables. Comparison of keys orders structures canonically.
std::vector<int> structure_key(const FinStructure& m);

/// Representative of the isomorphism class: the relabeling (one permutation
/// per sort) with the smallest key, carriers renamed "0".."n-1".
FinStructure canonical_form(const Signature& sig, const FinStructure& m);

/// Restriction to a sub-signature (symbols matched by name).
FinStructure reduct(const Signature& from, const FinStructure& m, const Signature& to);

}  // namespace sitelab::geolog
