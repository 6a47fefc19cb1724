#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sitelab/bounds.hpp"
#include "sitelab/fincat.hpp"
#include "sitelab/topology.hpp"

namespace sitelab {

/// Finite-set-valued presheaf (contravariant functor C^op -> FinSet).
/// For f: a -> b, action[f][y] is the index in elements[a] of the
/// restriction of the element y of elements[b].
struct Presheaf {
  std::vector<std::vector<std::string>> elements;
  std::vector<std::vector<int>> action;

  int size(int obj) const { return static_cast<int>(elements[obj].size()); }
  int restrict(int f, int y) const { return action[f][y]; }

  friend bool operator==(const Presheaf&, const Presheaf&) = default;
};

/// Throws NotFunctorial naming the failing arrow (or pair of arrows).
void require_presheaf(const FinCategory& c, const Presheaf& p);

Presheaf terminal_presheaf(const FinCategory& c);
Presheaf representable(const FinCategory& c, int obj);

struct MatchingFamily {
  int object = 0;
  ArrowSet cover;
  std::vector<std::pair<int, int>> values;  // (arrow in cover, element of P(dom arrow))
};

struct SheafCheck {
  bool ok = true;
  std::optional<MatchingFamily> failure;
  int amalgamations = 1;  // number of amalgamations of the failing family
};

/// Exhaustive sheaf condition: every matching family for every cover has
/// exactly one amalgamation.
SheafCheck is_sheaf(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& p,
                    const Bounds& bounds = {});

/// Natural transformation between presheaves: one component map per object.
using NatTrans = std::vector<std::vector<int>>;

std::vector<NatTrans> natural_transformations(const FinCategory& c, const Presheaf& from, const Presheaf& to,
                                              const Bounds& bounds = {});
std::optional<NatTrans> find_isomorphism(const FinCategory& c, const Presheaf& p, const Presheaf& q,
                                         const Bounds& bounds = {});

struct Sheafification {
  Presheaf sheaf;
  NatTrans unit;  // P -> sheaf
};

/// Associated sheaf via two applications of the plus construction. On a
/// finite site every J(c) has a least cover (covers are closed under
/// intersection), so the colimit over covers is the set of matching
/// families on that least cover.
Sheafification sheafify(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& p,
                        const Bounds& bounds = {});

/// Ω_J: the J-closed sieves on each object, acting by pullback.
struct ClosedSieveClassifier {
  std::vector<std::vector<ArrowSet>> fibers;
  Presheaf presheaf;
};

ClosedSieveClassifier classifier(const FinCategory& c, const GrothendieckTopology& j, const Bounds& bounds = {});

/// A subpresheaf, as a bitmask of element indices per object.
using Subobject = std::vector<std::uint64_t>;

/// Subobjects of the sheaf X in Sh(C, J): its J-closed subpresheaves, sorted.
std::vector<Subobject> subobjects(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x,
                                  const Bounds& bounds = {});
/// Smallest J-closed subpresheaf of X containing `a` (X a sheaf, `a` a subpresheaf).
Subobject close_subobject(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x, Subobject a);

/// Subterminal sheaves, enumerated as J-closed subfunctors of the terminal
/// presheaf (downward-closed, J-saturated sets of objects).
std::vector<std::vector<int>> subterminals(const FinCategory& c, const GrothendieckTopology& j);
/// Global sections of Ω_J (an independent count of subterminals).
std::size_t classifier_global_sections(const FinCategory& c, const GrothendieckTopology& j,
                                       const Bounds& bounds = {});

enum class ToposInvariant { TwoValued, Boolean, DeMorgan, Atomic };
std::string_view to_string(ToposInvariant t);
std::optional<ToposInvariant> parse_topos_invariant(std::string_view s);

bool topos_invariant(const FinCategory& c, const GrothendieckTopology& j, ToposInvariant which,
                     const Bounds& bounds = {});

enum class ObjectInvariant { Atom, Indecomposable, Irreducible, Compact };
std::string_view to_string(ObjectInvariant t);
std::optional<ObjectInvariant> parse_object_invariant(std::string_view s);

/// X must be a J-sheaf (NotASheaf otherwise). Irreducibility is checked
/// against test sheaves with carriers of size at most bounds.irreducible_bound.
bool object_invariant(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x, ObjectInvariant which,
                      const Bounds& bounds = {});

struct InvariantFingerprint {
  bool two_valued = false;
  bool boolean = false;
  bool de_morgan = false;
  bool atomic = false;
  std::size_t subterminal_count = 0;
  std::size_t topology_count_above_j = 0;
  std::size_t point_count = 0;  // J-continuous flat functors up to iso
  std::size_t point_bound = 0;  // carrier bound used for point_count

  friend bool operator==(const InvariantFingerprint&, const InvariantFingerprint&) = default;
};

InvariantFingerprint fingerprint(const FinCategory& c, const GrothendieckTopology& j, std::size_t point_bound,
                                 const Bounds& bounds = {});

}  // namespace sitelab
