#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sitelab/bounds.hpp"
#include "sitelab/fincat.hpp"
#include "sitelab/geolog/flat.hpp"
#include "sitelab/geolog/structure.hpp"
#include "sitelab/sheaf.hpp"
#include "sitelab/topology.hpp"

namespace sitelab {

/// A quotient of the flat-functor theory of (C, J), presented by a larger
/// topology J' on the same category.
struct QuotientSpec {
  GrothendieckTopology base;
  GrothendieckTopology larger;
  geolog::FlatTheory theory;       // flat_functor_theory(C, J')
  std::vector<std::string> added;  // labels of axioms absent from the base theory
};

/// Throws NotContaining unless J ⊆ J'.
QuotientSpec quotient_theory_for_topology(const FinCategory& c, const GrothendieckTopology& j,
                                          const GrothendieckTopology& larger);

/// Quotient by the topology of J-dense covers.
QuotientSpec booleanization(const FinCategory& c, const GrothendieckTopology& j, const Bounds& bounds = {});

struct DeMorganization {
  GrothendieckTopology topology;
  std::vector<GrothendieckTopology> candidates;  // J ⊆ K ⊆ dense_relative(J) with De Morgan sheaves
};

/// Smallest topology K with J ⊆ K ⊆ dense_relative(C, J) whose sheaf topos
/// is De Morgan, i.e. the largest dense De Morgan subtopos. Throws Ambiguous
/// (listing the candidates) if the candidates have no least element.
DeMorganization demorganization_topology(const FinCategory& c, const GrothendieckTopology& j,
                                         const Bounds& bounds = {});

struct FraisseReport {
  PropertyCheck amalgamation;
  PropertyCheck joint_embedding;
  std::optional<GrothendieckTopology> atomic_site;  // atomic topology on C^op, when AP holds
  bool two_valued = false;
  bool atomic_topos = false;
  bool complete_and_atomic = false;

  std::string conclusion() const { return complete_and_atomic ? "complete-and-atomic" : "not-applicable"; }
};

FraisseReport fraisse_report(const FinCategory& c, const Bounds& bounds = {});

/// Finite models realizing the objects of an fpcat, with one element map
/// per arrow (indexed by element of the domain structure).
struct Realization {
  std::vector<geolog::FinStructure> objects;  // by object index
  std::vector<std::vector<std::vector<int>>> arrows;  // by arrow index, then sort, then element
};

enum class HomKind { Homomorphism, Embedding };

struct HomogeneityWitness {
  int arrow = -1;                        // j: a -> b in the fpcat
  std::vector<std::vector<int>> chi;     // chi: a -> M, per sort
};

struct HomogeneityResult {
  bool homogeneous = true;
  std::optional<HomogeneityWitness> failure;
};

/// Checks that the realization is functorial and that arrow maps are
/// morphisms of the requested kind (InconsistentRealization otherwise).
void require_realization(const geolog::Signature& sig, const FinCategory& fpcat, const Realization& r,
                         HomKind kind = HomKind::Homomorphism);

/// Every morphism (of the given kind) of the form chi: a -> M extends along
/// every fpcat arrow j: a -> b. Checked exhaustively.
HomogeneityResult homogeneity_check(const geolog::Signature& sig, const geolog::FinStructure& m,
                                    const FinCategory& fpcat, const Realization& r,
                                    HomKind kind = HomKind::Homomorphism, const Bounds& bounds = {});

/// All morphisms (of the given kind) between two structures.
std::vector<std::vector<std::vector<int>>> structure_morphisms(const geolog::Signature& sig,
                                                               const geolog::FinStructure& from,
                                                               const geolog::FinStructure& to, HomKind kind,
                                                               const Bounds& bounds = {});

struct MoritaVerdict {
  bool refuted = false;
  InvariantFingerprint first;
  InvariantFingerprint second;
  std::vector<std::string> differing;  // names of the fields that differ
};

MoritaVerdict morita_fingerprint_compare(const FinCategory& c1, const GrothendieckTopology& j1,
                                         const FinCategory& c2, const GrothendieckTopology& j2,
                                         std::size_t point_bound, const Bounds& bounds = {});

}  // namespace sitelab
