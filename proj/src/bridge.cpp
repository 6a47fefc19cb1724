#include "sitelab/bridge.hpp"

#include <algorithm>
#include <functional>

#include "sitelab/error.hpp"
#include "sitelab/geolog/model.hpp"

namespace sitelab {

namespace {

using geolog::FinStructure;
using geolog::Signature;
using ElementMap = std::vector<std::vector<int>>;  // per sort

std::string first_missing(const FinCategory& c, const GrothendieckTopology& small, const GrothendieckTopology& big) {
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet s : small.at(o)) {
      if (!big.covers(o, s)) return arrows_text(c, s) + " on '" + c.object_name(o) + "'";
    }
  }
  return "";
}

std::vector<int> sort_indices(const Signature& sig, const std::vector<std::string>& sorts) {
  std::vector<int> out;
  for (const auto& s : sorts) out.push_back(*sig.find_sort(s));
  return out;
}

// Image of the tuple with row-major index `idx` under the map h.
std::size_t mapped_index(const FinStructure& from, const FinStructure& to, const std::vector<int>& sorts,
                         const ElementMap& h, std::size_t idx) {
  std::vector<int> digits(sorts.size());
  for (std::size_t k = sorts.size(); k-- > 0;) {
    digits[k] = static_cast<int>(idx % from.size(sorts[k]));
    idx /= from.size(sorts[k]);
  }
  std::size_t out = 0;
  for (std::size_t k = 0; k < sorts.size(); ++k) out = out * to.size(sorts[k]) + h[sorts[k]][digits[k]];
  return out;
}

bool is_morphism(const Signature& sig, const FinStructure& from, const FinStructure& to, const ElementMap& h,
                 HomKind kind) {
  if (kind == HomKind::Embedding) {
    for (const auto& images : h) {
      std::vector<int> sorted = images;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    }
  }
  for (std::size_t f = 0; f < sig.functions.size(); ++f) {
    const auto args = sort_indices(sig, sig.functions[f].args);
    const int result = *sig.find_sort(sig.functions[f].result);
    for (std::size_t i = 0; i < from.functions[f].size(); ++i) {
      if (h[result][from.functions[f][i]] != to.functions[f][mapped_index(from, to, args, h, i)]) return false;
    }
  }
  for (std::size_t r = 0; r < sig.relations.size(); ++r) {
    const auto args = sort_indices(sig, sig.relations[r].args);
    for (std::size_t i = 0; i < from.relations[r].size(); ++i) {
      const bool src = from.relations[r][i] != 0;
      const bool dst = to.relations[r][mapped_index(from, to, args, h, i)] != 0;
      if (src && !dst) return false;
      if (kind == HomKind::Embedding && dst && !src) return false;
    }
  }
  return true;
}

}  // namespace

QuotientSpec quotient_theory_for_topology(const FinCategory& c, const GrothendieckTopology& j,
                                          const GrothendieckTopology& larger) {
  if (!j.subset_of(larger)) {
    throw Error("NotContaining", "the larger topology misses the cover " + first_missing(c, j, larger));
  }
  QuotientSpec q{j, larger, geolog::flat_functor_theory(c, larger), {}};
  const geolog::FlatTheory base = geolog::flat_functor_theory(c, j);
  for (const auto& ax : q.theory.theory.axioms) {
    if (std::find(base.theory.axioms.begin(), base.theory.axioms.end(), ax) == base.theory.axioms.end()) {
      q.added.push_back(ax.label);
    }
  }
  return q;
}

QuotientSpec booleanization(const FinCategory& c, const GrothendieckTopology& j, const Bounds& bounds) {
  return quotient_theory_for_topology(c, j, special_topology(c, SpecialKind::DenseRelative, j, bounds));
}

DeMorganization demorganization_topology(const FinCategory& c, const GrothendieckTopology& j, const Bounds& bounds) {
  const GrothendieckTopology dense = special_topology(c, SpecialKind::DenseRelative, j, bounds);
  std::vector<GrothendieckTopology> candidates;
  for (auto& k : enumerate_topologies(c, j, bounds)) {
    if (k.subset_of(dense) && topos_invariant(c, k, ToposInvariant::DeMorgan, bounds)) candidates.push_back(k);
  }
  for (const auto& k : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](const GrothendieckTopology& o) { return k.subset_of(o); })) {
      return DeMorganization{k, candidates};
    }
  }
  throw Error("Ambiguous", std::to_string(candidates.size()) + " De Morgan dense topologies without a least one");
}

FraisseReport fraisse_report(const FinCategory& c, const Bounds& bounds) {
  FraisseReport r;
  r.amalgamation = check_site_property(c, SiteProperty::Amalgamation);
  r.joint_embedding = check_site_property(c, SiteProperty::JointEmbedding);
  if (r.amalgamation.holds) {
    const FinCategory op = opposite(c);
    r.atomic_site = special_topology(op, SpecialKind::Atomic, std::nullopt, bounds);
    r.two_valued = topos_invariant(op, *r.atomic_site, ToposInvariant::TwoValued, bounds);
    r.atomic_topos = topos_invariant(op, *r.atomic_site, ToposInvariant::Atomic, bounds);
  }
  r.complete_and_atomic = r.amalgamation.holds && r.joint_embedding.holds && r.two_valued && r.atomic_topos;
  return r;
}

std::vector<ElementMap> structure_morphisms(const Signature& sig, const FinStructure& from, const FinStructure& to,
                                            HomKind kind, const Bounds& bounds) {
  std::vector<ElementMap> out;
  ElementMap h(sig.sorts.size());
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) h[s].assign(from.size(static_cast<int>(s)), 0);
  std::size_t steps = 0;
  std::function<void(std::size_t, std::size_t)> step = [&](std::size_t s, std::size_t e) {
    if (s == sig.sorts.size()) {
      if (is_morphism(sig, from, to, h, kind)) out.push_back(h);
      return;
    }
    if (e == h[s].size()) {
      step(s + 1, 0);
      return;
    }
    for (int v = 0; v < to.size(static_cast<int>(s)); ++v) {
      if (++steps > bounds.search_budget) throw explosion_guard("morphism search exceeded its search budget");
      if (kind == HomKind::Embedding && std::find(h[s].begin(), h[s].begin() + static_cast<long>(e), v) !=
                                            h[s].begin() + static_cast<long>(e)) {
        continue;
      }
      h[s][e] = v;
      step(s, e + 1);
    }
  };
  step(0, 0);
  return out;
}

void require_realization(const Signature& sig, const FinCategory& fpcat, const Realization& r, HomKind kind) {
  if (r.objects.size() != static_cast<std::size_t>(fpcat.object_count()) ||
      r.arrows.size() != static_cast<std::size_t>(fpcat.arrow_count())) {
    throw Error("InconsistentRealization", "realization must bind every object and every arrow");
  }
  for (const auto& m : r.objects) geolog::require_matches(sig, m);
  for (int f = 0; f < fpcat.arrow_count(); ++f) {
    const FinStructure& a = r.objects[fpcat.dom(f)];
    const FinStructure& b = r.objects[fpcat.cod(f)];
    const ElementMap& h = r.arrows[f];
    bool shaped = h.size() == sig.sorts.size();
    for (std::size_t s = 0; shaped && s < h.size(); ++s) {
      shaped = h[s].size() == a.elements[s].size();
      for (int v : h[s]) shaped = shaped && v >= 0 && v < b.size(static_cast<int>(s));
    }
    if (!shaped) throw Error("InconsistentRealization", "map of '" + fpcat.arrow_name(f) + "' is not total");
    if (!is_morphism(sig, a, b, h, kind)) {
      throw Error("InconsistentRealization", "map of '" + fpcat.arrow_name(f) + "' is not a " +
                                                 (kind == HomKind::Embedding ? "embedding" : "homomorphism"));
    }
    if (fpcat.is_identity(f)) {
      for (std::size_t s = 0; s < h.size(); ++s) {
        for (std::size_t e = 0; e < h[s].size(); ++e) {
          if (h[s][e] != static_cast<int>(e)) {
            throw Error("InconsistentRealization", "'" + fpcat.arrow_name(f) + "' is not realized as the identity");
          }
        }
      }
    }
  }
  for (int f = 0; f < fpcat.arrow_count(); ++f) {
    for (int g : fpcat.arrows_from(fpcat.cod(f))) {
      const int gf = fpcat.after(g, f);
      for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
        for (std::size_t e = 0; e < r.arrows[f][s].size(); ++e) {
          if (r.arrows[g][s][r.arrows[f][s][e]] != r.arrows[gf][s][e]) {
            throw Error("InconsistentRealization", "maps of '" + fpcat.arrow_name(f) + "' then '" +
                                                       fpcat.arrow_name(g) + "' do not compose to '" +
                                                       fpcat.arrow_name(gf) + "'");
          }
        }
      }
    }
  }
}

HomogeneityResult homogeneity_check(const Signature& sig, const FinStructure& m, const FinCategory& fpcat,
                                    const Realization& r, HomKind kind, const Bounds& bounds) {
  geolog::require_matches(sig, m);
  require_realization(sig, fpcat, r, kind);
  std::vector<std::vector<ElementMap>> into(fpcat.object_count());
  for (int o = 0; o < fpcat.object_count(); ++o) into[o] = structure_morphisms(sig, r.objects[o], m, kind, bounds);

  HomogeneityResult out;
  for (int j = 0; j < fpcat.arrow_count(); ++j) {
    for (const ElementMap& chi : into[fpcat.dom(j)]) {
      const bool extends = std::any_of(into[fpcat.cod(j)].begin(), into[fpcat.cod(j)].end(), [&](const ElementMap& ext) {
        for (std::size_t s = 0; s < chi.size(); ++s) {
          for (std::size_t e = 0; e < chi[s].size(); ++e) {
            if (ext[s][r.arrows[j][s][e]] != chi[s][e]) return false;
          }
        }
        return true;
      });
      if (!extends) {
        out.homogeneous = false;
        out.failure = HomogeneityWitness{j, chi};
        return out;
      }
    }
  }
  return out;
}

MoritaVerdict morita_fingerprint_compare(const FinCategory& c1, const GrothendieckTopology& j1,
                                         const FinCategory& c2, const GrothendieckTopology& j2,
                                         std::size_t point_bound, const Bounds& bounds) {
  MoritaVerdict v;
  v.first = fingerprint(c1, j1, point_bound, bounds);
  v.second = fingerprint(c2, j2, point_bound, bounds);
  auto diff = [&](const char* name, auto a, auto b) {
    if (a != b) v.differing.emplace_back(name);
  };
  diff("two_valued", v.first.two_valued, v.second.two_valued);
  diff("boolean", v.first.boolean, v.second.boolean);
  diff("de_morgan", v.first.de_morgan, v.second.de_morgan);
  diff("atomic", v.first.atomic, v.second.atomic);
  diff("subterminal_count", v.first.subterminal_count, v.second.subterminal_count);
  diff("topology_count_above_j", v.first.topology_count_above_j, v.second.topology_count_above_j);
  diff("point_count", v.first.point_count, v.second.point_count);
  v.refuted = !v.differing.empty();
  return v;
}

}  // namespace sitelab
