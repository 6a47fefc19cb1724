#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sitelab::geolog {

struct SourceSpan {
  int line = 0;
  int column = 0;
};

struct FunctionSymbol {
  std::string name;
  std::vector<std::string> args;
  std::string result;
  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

struct RelationSymbol {
  std::string name;
  std::vector<std::string> args;
  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<FunctionSymbol> functions;
  std::vector<RelationSymbol> relations;

  std::optional<int> find_sort(std::string_view name) const;
  std::optional<int> find_function(std::string_view name) const;
  std::optional<int> find_relation(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Term {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  std::string name;
  std::vector<Term> args;
  SourceSpan span;

  static Term var(std::string name) { return Term{Kind::Var, std::move(name), {}, {}}; }
  static Term app(std::string fn, std::vector<Term> args) { return Term{Kind::App, std::move(fn), std::move(args), {}}; }

  // Structural equality; spans are ignored.
  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
  }
};

struct Formula {
  enum class Kind { Top, Bot, Eq, Rel, And, Or, Exists, Not, Implies, Forall };
  Kind kind = Kind::Top;
  std::string name;                // relation (Rel) or bound variable (Exists, Forall)
  std::string sort;                // bound variable sort
  std::vector<Term> terms;         // Eq: two terms; Rel: arguments
  std::vector<Formula> children;   // And/Or: any number; Not/Exists/Forall: one; Implies: two
  SourceSpan span;

  static Formula top();
  static Formula bot();
  static Formula eq(Term a, Term b);
  static Formula rel(std::string r, std::vector<Term> args);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula exists(std::string var, std::string sort, Formula body);
  static Formula forall(std::string var, std::string sort, Formula body);
  static Formula negation(Formula body);
  static Formula implies(Formula a, Formula b);

  bool is_geometric() const;  // no Not / Implies / Forall anywhere

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.kind == b.kind && a.name == b.name && a.sort == b.sort && a.terms == b.terms &&
           a.children == b.children;
  }
};

using Context = std::vector<std::pair<std::string, std::string>>;  // (variable, sort)

struct Sequent {
  std::string label;
  Context context;
  Formula premise;
  Formula conclusion;
  SourceSpan span;

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.label == b.label && a.context == b.context && a.premise == b.premise && a.conclusion == b.conclusion;
  }
};

enum class Fragment { Cartesian, Regular, Coherent, Geometric, FirstOrder };
std::string_view to_string(Fragment f);

struct Theory {
  std::string name;
  Signature signature;
  std::vector<Sequent> axioms;
  Fragment fragment = Fragment::Geometric;

  friend bool operator==(const Theory&, const Theory&) = default;
};

/// Geometric unless some axiom uses Not, Implies or Forall.
Fragment detect_fragment(const Theory& t);

/// Throws NotGeometric when the theory uses first-order-only connectives.
void require_geometric(const Theory& t);

/// Sort of a term in a context; throws UnknownSymbol or SortError.
std::string sort_of(const Signature& sig, const Context& ctx, const Term& t);
/// Well-sortedness of a formula in a context; throws UnknownSymbol or SortError.
void check_formula(const Signature& sig, const Context& ctx, const Formula& f);
/// Checks the signature (declared sorts, unique names) and every axiom.
void check_theory(const Theory& t);

/// Free variables with their sorts, ordered by name.
Context free_variables(const Signature& sig, const Context& ctx, const Formula& f);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace sitelab::geolog
