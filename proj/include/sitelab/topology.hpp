#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sitelab/bounds.hpp"
#include "sitelab/fincat.hpp"

namespace sitelab {

/// A sieve on `base`: arrows into base, closed under precomposition.
struct Sieve {
  int base = 0;
  ArrowSet arrows;

  friend bool operator==(const Sieve&, const Sieve&) = default;
  friend auto operator<=>(const Sieve&, const Sieve&) = default;
};

/// "[f, id:b]" style rendering of a set of arrows (ids in order).
std::string arrows_text(const FinCategory& c, ArrowSet arrows);

bool is_sieve(const FinCategory& c, const Sieve& s);
/// Throws InvalidSieve naming the offending arrow.
void require_sieve(const FinCategory& c, const Sieve& s);

/// f*(S) = { g into dom f | f∘g ∈ S }. Throws BaseMismatch unless cod f = base S.
Sieve pullback_sieve(const FinCategory& c, const Sieve& s, int f);

/// Smallest sieve on `base` containing `generators`. Throws BaseMismatch.
Sieve generated_sieve(const FinCategory& c, int base, ArrowSet generators);

/// All sieves of a category, per object, in canonical order, together with
/// a pullback table. Building it enumerates subsets of arrows into each
/// object, so it is guarded by Bounds::fan_in.
class SieveUniverse {
 public:
  SieveUniverse(const FinCategory& c, const Bounds& bounds);

  const FinCategory& category() const { return *cat_; }
  int object_count() const { return static_cast<int>(sieves_.size()); }
  const std::vector<ArrowSet>& sieves(int obj) const { return sieves_[obj]; }
  int index_of(int obj, ArrowSet s) const;
  // Index of f*(S_i) on dom f, for S_i the i-th sieve on cod f.
  int pullback(int f, int i) const { return pullback_[f][i]; }
  int maximal_index(int obj) const { return maximal_[obj]; }
  std::size_t total() const;

 private:
  const FinCategory* cat_;
  std::vector<std::vector<ArrowSet>> sieves_;
  std::vector<std::unordered_map<std::uint64_t, int>> index_;
  std::vector<std::vector<int>> pullback_;
  std::vector<int> maximal_;
};

/// Per-object families of sieves, sorted and de-duplicated. Used both for
/// unvalidated candidates and for validated topologies.
class SieveFamily {
 public:
  SieveFamily() = default;
  explicit SieveFamily(int object_count) : covers_(object_count) {}

  int object_count() const { return static_cast<int>(covers_.size()); }
  const std::vector<ArrowSet>& at(int obj) const { return covers_[obj]; }
  bool contains(int obj, ArrowSet s) const;
  bool contains(const Sieve& s) const { return contains(s.base, s.arrows); }
  void insert(int obj, ArrowSet s);
  void insert(const Sieve& s) { insert(s.base, s.arrows); }
  std::size_t size() const;
  bool subset_of(const SieveFamily& other) const;

  friend bool operator==(const SieveFamily&, const SieveFamily&) = default;

 private:
  std::vector<std::vector<ArrowSet>> covers_;
};

/// A validated Grothendieck topology. Only obtainable from operations that
/// establish the axioms (or from from_family, which checks them).
class GrothendieckTopology {
 public:
  /// Throws NotATopology with the violation text when the axioms fail.
  static GrothendieckTopology from_family(const FinCategory& c, SieveFamily family, const Bounds& bounds = {});

  const SieveFamily& covers() const { return family_; }
  const std::vector<ArrowSet>& at(int obj) const { return family_.at(obj); }
  bool covers(const Sieve& s) const { return family_.contains(s); }
  bool covers(int obj, ArrowSet s) const { return family_.contains(obj, s); }
  bool subset_of(const GrothendieckTopology& o) const { return family_.subset_of(o.family_); }
  std::size_t size() const { return family_.size(); }

  friend bool operator==(const GrothendieckTopology&, const GrothendieckTopology&) = default;
  // Canonical order: fewer covers first, then lexicographic per object.
  friend bool operator<(const GrothendieckTopology& a, const GrothendieckTopology& b);

 private:
  explicit GrothendieckTopology(SieveFamily f) : family_(std::move(f)) {}
  SieveFamily family_;

  friend GrothendieckTopology unchecked_topology(SieveFamily f);
};

// Wraps a family already known to satisfy the axioms.
GrothendieckTopology unchecked_topology(SieveFamily f);

enum class TopologyAxiom { Maximality, Stability, Transitivity };
std::string_view to_string(TopologyAxiom a);

struct TopologyViolation {
  TopologyAxiom axiom;
  std::string description;
};

struct TopologyCheck {
  bool ok = true;
  std::optional<TopologyViolation> violation;  // first violated instance
};

/// Checks maximality, stability and transitivity (in that order). Every
/// candidate sieve must be valid (InvalidSieve otherwise).
TopologyCheck is_topology(const FinCategory& c, const SieveFamily& candidate, const Bounds& bounds = {});

/// Least family containing `axioms` and all maximal sieves that is closed
/// under the stability and transitivity rules.
GrothendieckTopology generate_topology(const FinCategory& c, const std::vector<Sieve>& axioms,
                                       const Bounds& bounds = {});

/// A proof in the sieve proof system. Leaves are axioms or maximal sieves;
/// Stability has one premise R and concludes f*(R); Transitivity has the
/// premise Z followed by one premise per member f of Z (ascending index)
/// concluding f*(R), and concludes R.
struct Derivation {
  enum class Rule { Axiom, Maximal, Stability, Transitivity };

  Rule rule = Rule::Axiom;
  Sieve conclusion;
  int arrow = -1;  // Stability only
  std::vector<std::shared_ptr<const Derivation>> premises;

  std::size_t node_count() const;
};

std::string_view to_string(Derivation::Rule r);

/// Independent re-validation of a derivation against the rule schemas.
/// On failure, `why` (if given) receives a description of the bad node.
bool check_derivation(const FinCategory& c, const std::vector<Sieve>& axioms, const Derivation& d,
                      std::string* why = nullptr);

/// Forward proof search; returns a derivation iff `goal` is provable from `axioms`.
std::optional<std::shared_ptr<const Derivation>> derives(const FinCategory& c, const std::vector<Sieve>& axioms,
                                                         const Sieve& goal, const Bounds& bounds = {});

/// All topologies (optionally only those containing `containing`), in canonical order.
std::vector<GrothendieckTopology> enumerate_topologies(const FinCategory& c,
                                                       const std::optional<GrothendieckTopology>& containing = std::nullopt,
                                                       const Bounds& bounds = {});

enum class LatticeOp { Meet, Join, Implies };
std::optional<LatticeOp> parse_lattice_op(std::string_view s);

GrothendieckTopology lattice_op(const FinCategory& c, LatticeOp op, const GrothendieckTopology& j1,
                                const GrothendieckTopology& j2, const Bounds& bounds = {});

/// J-closure of a sieve: { f into base | f*(S) ∈ J(dom f) }.
ArrowSet closure(const FinCategory& c, const GrothendieckTopology& j, const Sieve& s);
/// J-relative pseudo-complement of a sieve: arrows f such that every g with
/// f∘g in cl_J(S) has dom g covered by the empty sieve.
ArrowSet negation(const FinCategory& c, const GrothendieckTopology& j, const Sieve& s);

enum class SpecialKind { Trivial, Maximal, Atomic, DenseRelative };
std::optional<SpecialKind> parse_special_kind(std::string_view s);

/// Trivial, maximal, atomic (RightOreRequired unless right Ore) or the
/// double-negation topology relative to `relative` (DenseRelative; the
/// trivial topology is used when `relative` is absent).
GrothendieckTopology special_topology(const FinCategory& c, SpecialKind kind,
                                      const std::optional<GrothendieckTopology>& relative = std::nullopt,
                                      const Bounds& bounds = {});

}  // namespace sitelab
