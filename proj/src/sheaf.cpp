#include "sitelab/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "sitelab/error.hpp"
#include "sitelab/geolog/flat.hpp"
#include "sitelab/setfunctor.hpp"

namespace sitelab {

namespace {

class Budget {
 public:
  Budget(const Bounds& b, const char* what) : limit_(b.search_budget), what_(what) {}
  void tick() {
    if (++steps_ > limit_) throw explosion_guard(std::string(what_) + " exceeded its search budget");
  }

 private:
  std::size_t limit_;
  std::size_t steps_ = 0;
  const char* what_;
};

// Visits every matching family for `sieve` on `obj`; values[i] belongs to
// the i-th member of the sieve.
void for_each_matching_family(const FinCategory& c, const Presheaf& p, ArrowSet sieve, Budget& budget,
                              const std::function<void(const std::vector<int>&, const std::vector<int>&)>& visit) {
  const std::vector<int> members = sieve.members();
  std::vector<int> pos(c.arrow_count(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  std::vector<int> values(members.size(), 0);

  std::function<void(std::size_t)> step = [&](std::size_t i) {
    if (i == members.size()) {
      visit(members, values);
      return;
    }
    const int f = members[i];
    for (int x = 0; x < p.size(c.dom(f)); ++x) {
      budget.tick();
      values[i] = x;
      bool ok = true;
      for (int g : c.arrows_into(c.dom(f))) {
        int h = pos[c.after(f, g)];
        if (h <= static_cast<int>(i) && p.restrict(g, x) != values[h]) {
          ok = false;
          break;
        }
      }
      for (std::size_t k = 0; ok && k < i; ++k) {
        const int f2 = members[k];
        for (int g : c.arrows_into(c.dom(f2))) {
          if (c.after(f2, g) == f && p.restrict(g, values[k]) != x) {
            ok = false;
            break;
          }
        }
      }
      if (ok) step(i + 1);
    }
  };
  step(0);
}

ArrowSet least_cover(const FinCategory& c, const GrothendieckTopology& j, int obj) {
  ArrowSet m = c.maximal_sieve(obj);
  for (ArrowSet s : j.at(obj)) m = m & s;
  return m;
}

struct PlusResult {
  Presheaf plus;
  NatTrans unit;
};

PlusResult plus_construction(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& p, Budget& budget) {
  const int n = c.object_count();
  std::vector<ArrowSet> least(n);
  std::vector<std::vector<int>> members(n);
  std::vector<std::map<std::vector<int>, int>> index(n);
  std::vector<std::vector<std::vector<int>>> families(n);
  for (int o = 0; o < n; ++o) {
    least[o] = least_cover(c, j, o);
    members[o] = least[o].members();
    for_each_matching_family(c, p, least[o], budget, [&](const std::vector<int>&, const std::vector<int>& v) {
      index[o].emplace(v, static_cast<int>(families[o].size()));
      families[o].push_back(v);
    });
  }
  auto position = [&](int o, int f) {
    auto it = std::find(members[o].begin(), members[o].end(), f);
    return static_cast<int>(it - members[o].begin());
  };

  PlusResult out;
  out.plus.elements.resize(n);
  for (int o = 0; o < n; ++o) {
    for (std::size_t k = 0; k < families[o].size(); ++k) out.plus.elements[o].push_back(std::to_string(k));
  }
  out.plus.action.resize(c.arrow_count());
  for (int g = 0; g < c.arrow_count(); ++g) {
    const int d = c.dom(g);
    const int cc = c.cod(g);
    for (const auto& fam : families[cc]) {
      std::vector<int> restricted;
      for (int h : members[d]) restricted.push_back(fam[position(cc, c.after(g, h))]);
      out.plus.action[g].push_back(index[d].at(restricted));
    }
  }
  out.unit.resize(n);
  for (int o = 0; o < n; ++o) {
    for (int x = 0; x < p.size(o); ++x) {
      std::vector<int> fam;
      for (int f : members[o]) fam.push_back(p.restrict(f, x));
      out.unit[o].push_back(index[o].at(fam));
    }
  }
  return out;
}

// Backtracking over component maps; `bijective` restricts to isomorphisms.
void for_each_nat_trans(const FinCategory& c, const Presheaf& from, const Presheaf& to, bool bijective,
                        Budget& budget, const std::function<bool(const NatTrans&)>& visit) {
  const int n = c.object_count();
  NatTrans alpha(n);
  bool stop = false;

  auto natural_upto = [&](int obj) {
    for (int f = 0; f < c.arrow_count(); ++f) {
      const int a = c.dom(f);
      const int b = c.cod(f);
      if (std::max(a, b) != obj) continue;
      for (int y = 0; y < from.size(b); ++y) {
        if (alpha[a][from.restrict(f, y)] != to.restrict(f, alpha[b][y])) return false;
      }
    }
    return true;
  };

  std::function<void(int)> object_step = [&](int obj) {
    if (stop) return;
    if (obj == n) {
      if (!visit(alpha)) stop = true;
      return;
    }
    const int k = from.size(obj);
    const int m = to.size(obj);
    if (bijective && k != m) return;
    if (k > 0 && m == 0) return;
    auto& comp = alpha[obj];
    comp.assign(k, 0);
    if (bijective) {
      for (int x = 0; x < k; ++x) comp[x] = x;
      do {
        budget.tick();
        if (natural_upto(obj)) object_step(obj + 1);
        if (stop) return;
      } while (std::next_permutation(comp.begin(), comp.end()));
      return;
    }
    while (true) {
      budget.tick();
      if (natural_upto(obj)) object_step(obj + 1);
      if (stop) return;
      int i = 0;
      while (i < k && ++comp[i] == m) comp[i++] = 0;
      if (i == k) break;
    }
  };
  object_step(0);
}

std::uint64_t full_mask(int size) { return size >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1); }

void require_small_carriers(const FinCategory& c, const Presheaf& x) {
  for (int o = 0; o < c.object_count(); ++o) {
    if (x.size(o) > 24) throw explosion_guard("subobject enumeration needs carriers of at most 24 elements");
  }
}

struct SubobjectLattice {
  std::vector<Subobject> elems;
  Subobject bottom;
  Subobject top;
};

SubobjectLattice lattice_of(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x,
                            const Bounds& bounds) {
  SubobjectLattice l;
  l.elems = subobjects(c, j, x, bounds);
  l.bottom = close_subobject(c, j, x, Subobject(c.object_count(), 0));
  l.top.resize(c.object_count());
  for (int o = 0; o < c.object_count(); ++o) l.top[o] = full_mask(x.size(o));
  return l;
}

Subobject meet(const Subobject& a, const Subobject& b) {
  Subobject out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool below(const Subobject& a, const Subobject& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

Subobject join(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x, const Subobject& a,
               const Subobject& b) {
  Subobject u(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) u[i] = a[i] | b[i];
  return close_subobject(c, j, x, u);
}

bool is_boolean_lattice(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x,
                        const SubobjectLattice& l, Budget& budget) {
  for (const auto& a : l.elems) {
    bool complemented = false;
    for (const auto& b : l.elems) {
      budget.tick();
      if (meet(a, b) == l.bottom && join(c, j, x, a, b) == l.top) {
        complemented = true;
        break;
      }
    }
    if (!complemented) return false;
  }
  for (const auto& a : l.elems) {
    for (const auto& b : l.elems) {
      for (const auto& d : l.elems) {
        budget.tick();
        if (meet(a, join(c, j, x, b, d)) != join(c, j, x, meet(a, b), meet(a, d))) return false;
      }
    }
  }
  return true;
}

std::vector<Subobject> atoms_of(const SubobjectLattice& l) {
  std::vector<Subobject> atoms;
  for (const auto& a : l.elems) {
    if (a == l.bottom) continue;
    bool minimal = true;
    for (const auto& b : l.elems) {
      if (b != l.bottom && b != a && below(b, a)) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(a);
  }
  return atoms;
}

bool is_atomic_lattice(const SubobjectLattice& l) {
  const auto atoms = atoms_of(l);
  for (const auto& a : l.elems) {
    if (a == l.bottom) continue;
    if (std::none_of(atoms.begin(), atoms.end(), [&](const Subobject& t) { return below(t, a); })) return false;
  }
  return true;
}

Presheaf presheaf_from_functor(const SetFunctor& fn) {
  Presheaf p;
  for (int n : fn.sizes) {
    std::vector<std::string> names;
    for (int k = 0; k < n; ++k) names.push_back(std::to_string(k));
    p.elements.push_back(std::move(names));
  }
  p.action = fn.action;
  return p;
}

}  // namespace

void require_presheaf(const FinCategory& c, const Presheaf& p) {
  if (p.elements.size() != static_cast<std::size_t>(c.object_count()) ||
      p.action.size() != static_cast<std::size_t>(c.arrow_count())) {
    throw Error("NotFunctorial", "presheaf does not match the category's objects and arrows");
  }
  for (int f = 0; f < c.arrow_count(); ++f) {
    if (p.action[f].size() != static_cast<std::size_t>(p.size(c.cod(f)))) {
      throw Error("NotFunctorial", "action of '" + c.arrow_name(f) + "' is not total");
    }
    for (int v : p.action[f]) {
      if (v < 0 || v >= p.size(c.dom(f))) {
        throw Error("NotFunctorial", "action of '" + c.arrow_name(f) + "' leaves its codomain");
      }
    }
    if (c.is_identity(f)) {
      for (int y = 0; y < p.size(c.cod(f)); ++y) {
        if (p.action[f][y] != y) throw Error("NotFunctorial", "'" + c.arrow_name(f) + "' does not act as the identity");
      }
    }
  }
  for (int f = 0; f < c.arrow_count(); ++f) {
    for (int g : c.arrows_from(c.cod(f))) {
      const int h = c.after(g, f);
      for (int z = 0; z < p.size(c.cod(g)); ++z) {
        if (p.restrict(f, p.restrict(g, z)) != p.restrict(h, z)) {
          throw Error("NotFunctorial", "restriction along '" + c.arrow_name(h) + "' differs from '" + c.arrow_name(g) +
                                           "' followed by '" + c.arrow_name(f) + "'");
        }
      }
    }
  }
}

Presheaf terminal_presheaf(const FinCategory& c) {
  Presheaf p;
  p.elements.assign(c.object_count(), {"*"});
  p.action.assign(c.arrow_count(), {0});
  return p;
}

Presheaf representable(const FinCategory& c, int obj) {
  Presheaf p;
  p.elements.resize(c.object_count());
  std::vector<std::vector<int>> hom(c.object_count());
  std::vector<int> position(c.arrow_count(), -1);
  for (int f : c.arrows_into(obj)) {
    position[f] = static_cast<int>(hom[c.dom(f)].size());
    hom[c.dom(f)].push_back(f);
    p.elements[c.dom(f)].push_back(c.arrow_name(f));
  }
  p.action.resize(c.arrow_count());
  for (int g = 0; g < c.arrow_count(); ++g) {
    for (int f : hom[c.cod(g)]) p.action[g].push_back(position[c.after(f, g)]);
  }
  return p;
}

SheafCheck is_sheaf(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& p, const Bounds& bounds) {
  Budget budget(bounds, "sheaf check");
  SheafCheck out;
  for (int o = 0; o < c.object_count() && out.ok; ++o) {
    for (ArrowSet cover : j.at(o)) {
      if (!out.ok) break;
      for_each_matching_family(c, p, cover, budget, [&](const std::vector<int>& members, const std::vector<int>& values) {
        if (!out.ok) return;
        int count = 0;
        for (int x = 0; x < p.size(o); ++x) {
          bool ok = true;
          for (std::size_t i = 0; i < members.size() && ok; ++i) ok = p.restrict(members[i], x) == values[i];
          count += ok ? 1 : 0;
        }
        if (count != 1) {
          out.ok = false;
          out.amalgamations = count;
          MatchingFamily fam{o, cover, {}};
          for (std::size_t i = 0; i < members.size(); ++i) fam.values.emplace_back(members[i], values[i]);
          out.failure = std::move(fam);
        }
      });
    }
  }
  return out;
}

std::vector<NatTrans> natural_transformations(const FinCategory& c, const Presheaf& from, const Presheaf& to,
                                              const Bounds& bounds) {
  Budget budget(bounds, "natural transformation search");
  std::vector<NatTrans> out;
  for_each_nat_trans(c, from, to, false, budget, [&](const NatTrans& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::optional<NatTrans> find_isomorphism(const FinCategory& c, const Presheaf& p, const Presheaf& q,
                                         const Bounds& bounds) {
  Budget budget(bounds, "isomorphism search");
  std::optional<NatTrans> found;
  for_each_nat_trans(c, p, q, true, budget, [&](const NatTrans& t) {
    found = t;
    return false;
  });
  return found;
}

Sheafification sheafify(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& p, const Bounds& bounds) {
  require_presheaf(c, p);
  Budget budget(bounds, "sheafification");
  PlusResult once = plus_construction(c, j, p, budget);
  PlusResult twice = plus_construction(c, j, once.plus, budget);

  Sheafification out;
  out.sheaf = std::move(twice.plus);
  out.unit.resize(c.object_count());
  for (int o = 0; o < c.object_count(); ++o) {
    for (int x = 0; x < p.size(o); ++x) out.unit[o].push_back(twice.unit[o][once.unit[o][x]]);
    // Name each element after its preimages under the unit.
    for (int k = 0; k < out.sheaf.size(o); ++k) {
      std::string name;
      for (int x = 0; x < p.size(o); ++x) {
        if (out.unit[o][x] != k) continue;
        if (!name.empty()) name += "|";
        name += p.elements[o][x];
      }
      out.sheaf.elements[o][k] = name.empty() ? "#" + std::to_string(k) : name;
    }
  }
  if (!is_sheaf(c, j, out.sheaf, bounds).ok) throw Error("InternalError", "plus construction did not produce a sheaf");
  return out;
}

ClosedSieveClassifier classifier(const FinCategory& c, const GrothendieckTopology& j, const Bounds& bounds) {
  SieveUniverse u(c, bounds);
  ClosedSieveClassifier out;
  out.fibers.resize(c.object_count());
  out.presheaf.elements.resize(c.object_count());
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet s : u.sieves(o)) {
      if (closure(c, j, Sieve{o, s}) == s) {
        out.fibers[o].push_back(s);
        out.presheaf.elements[o].push_back(arrows_text(c, s));
      }
    }
  }
  out.presheaf.action.resize(c.arrow_count());
  for (int f = 0; f < c.arrow_count(); ++f) {
    const auto& target = out.fibers[c.dom(f)];
    for (ArrowSet s : out.fibers[c.cod(f)]) {
      ArrowSet pb = pullback_sieve(c, Sieve{c.cod(f), s}, f).arrows;
      auto it = std::lower_bound(target.begin(), target.end(), pb);
      if (it == target.end() || *it != pb) throw Error("InternalError", "pullback of a closed sieve is not closed");
      out.presheaf.action[f].push_back(static_cast<int>(it - target.begin()));
    }
  }
  return out;
}

Subobject close_subobject(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x, Subobject a) {
  Subobject out(c.object_count(), 0);
  for (int o = 0; o < c.object_count(); ++o) {
    for (int e = 0; e < x.size(o); ++e) {
      ArrowSet s;
      for (int f : c.arrows_into(o)) {
        if ((a[c.dom(f)] >> x.restrict(f, e)) & 1U) s.insert(f);
      }
      if (j.covers(o, s)) out[o] |= std::uint64_t{1} << e;
    }
  }
  return out;
}

std::vector<Subobject> subobjects(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x,
                                  const Bounds& bounds) {
  require_small_carriers(c, x);
  Budget budget(bounds, "subobject enumeration");
  const int n = c.object_count();
  std::vector<Subobject> out;
  Subobject current(n, 0);

  auto stable_upto = [&](int obj) {
    for (int f = 0; f < c.arrow_count(); ++f) {
      const int a = c.dom(f);
      const int b = c.cod(f);
      if (std::max(a, b) != obj) continue;
      for (int y = 0; y < x.size(b); ++y) {
        if (((current[b] >> y) & 1U) && !((current[a] >> x.restrict(f, y)) & 1U)) return false;
      }
    }
    return true;
  };
  std::function<void(int)> step = [&](int obj) {
    if (obj == n) {
      if (close_subobject(c, j, x, current) == current) out.push_back(current);
      return;
    }
    for (std::uint64_t m = 0; m <= full_mask(x.size(obj)); ++m) {
      budget.tick();
      current[obj] = m;
      if (stable_upto(obj)) step(obj + 1);
    }
  };
  step(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> subterminals(const FinCategory& c, const GrothendieckTopology& j) {
  const int n = c.object_count();
  if (n > 20) throw explosion_guard("subterminal enumeration is limited to 20 objects");
  std::vector<std::vector<int>> out;
  for (std::uint32_t u = 0; u < (std::uint32_t{1} << n); ++u) {
    auto in = [&](int o) { return (u >> o) & 1U; };
    bool ok = true;
    for (int f = 0; f < c.arrow_count() && ok; ++f) {
      if (in(c.cod(f)) && !in(c.dom(f))) ok = false;
    }
    for (int o = 0; o < n && ok; ++o) {
      if (in(o)) continue;
      for (ArrowSet s : j.at(o)) {
        bool inside = true;
        for (int f : s.members()) inside = inside && in(c.dom(f));
        if (inside) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<int> objs;
    for (int o = 0; o < n; ++o) {
      if (in(o)) objs.push_back(o);
    }
    out.push_back(std::move(objs));
  }
  return out;
}

std::size_t classifier_global_sections(const FinCategory& c, const GrothendieckTopology& j, const Bounds& bounds) {
  const ClosedSieveClassifier omega = classifier(c, j, bounds);
  Budget budget(bounds, "global section count");
  const int n = c.object_count();
  std::vector<int> choice(n, 0);
  std::size_t count = 0;
  std::function<void(int)> step = [&](int obj) {
    if (obj == n) {
      ++count;
      return;
    }
    for (int k = 0; k < omega.presheaf.size(obj); ++k) {
      budget.tick();
      choice[obj] = k;
      bool ok = true;
      for (int f = 0; f < c.arrow_count() && ok; ++f) {
        if (std::max(c.dom(f), c.cod(f)) != obj) continue;
        ok = omega.presheaf.restrict(f, choice[c.cod(f)]) == choice[c.dom(f)];
      }
      if (ok) step(obj + 1);
    }
  };
  step(0);
  return count;
}

std::string_view to_string(ToposInvariant t) {
  switch (t) {
    case ToposInvariant::TwoValued: return "two_valued";
    case ToposInvariant::Boolean: return "boolean";
    case ToposInvariant::DeMorgan: return "de_morgan";
    case ToposInvariant::Atomic: return "atomic";
  }
  return "?";
}

std::optional<ToposInvariant> parse_topos_invariant(std::string_view s) {
  for (auto t : {ToposInvariant::TwoValued, ToposInvariant::Boolean, ToposInvariant::DeMorgan, ToposInvariant::Atomic}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

bool topos_invariant(const FinCategory& c, const GrothendieckTopology& j, ToposInvariant which, const Bounds& bounds) {
  switch (which) {
    case ToposInvariant::TwoValued: return subterminals(c, j).size() == 2;
    case ToposInvariant::Boolean:
    case ToposInvariant::DeMorgan: {
      const ClosedSieveClassifier omega = classifier(c, j, bounds);
      for (int o = 0; o < c.object_count(); ++o) {
        for (ArrowSet s : omega.fibers[o]) {
          ArrowSet neg = negation(c, j, Sieve{o, s});
          ArrowSet negneg = negation(c, j, Sieve{o, neg});
          if (which == ToposInvariant::Boolean) {
            if (negneg != s) return false;
          } else if (closure(c, j, Sieve{o, neg | negneg}) != c.maximal_sieve(o)) {
            return false;
          }
        }
      }
      return true;
    }
    case ToposInvariant::Atomic: {
      Budget budget(bounds, "atomicity check");
      for (int o = 0; o < c.object_count(); ++o) {
        const Presheaf x = sheafify(c, j, representable(c, o), bounds).sheaf;
        const SubobjectLattice l = lattice_of(c, j, x, bounds);
        if (!is_boolean_lattice(c, j, x, l, budget) || !is_atomic_lattice(l)) return false;
      }
      return true;
    }
  }
  return false;
}

std::string_view to_string(ObjectInvariant t) {
  switch (t) {
    case ObjectInvariant::Atom: return "atom";
    case ObjectInvariant::Indecomposable: return "indecomposable";
    case ObjectInvariant::Irreducible: return "irreducible";
    case ObjectInvariant::Compact: return "compact";
  }
  return "?";
}

std::optional<ObjectInvariant> parse_object_invariant(std::string_view s) {
  for (auto t : {ObjectInvariant::Atom, ObjectInvariant::Indecomposable, ObjectInvariant::Irreducible,
                 ObjectInvariant::Compact}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

bool object_invariant(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& x, ObjectInvariant which,
                      const Bounds& bounds) {
  require_presheaf(c, x);
  auto check = is_sheaf(c, j, x, bounds);
  if (!check.ok) {
    throw Error("NotASheaf", "object invariants are defined for sheaves; the family on " +
                                 arrows_text(c, check.failure->cover) + " over '" +
                                 c.object_name(check.failure->object) + "' has " +
                                 std::to_string(check.amalgamations) + " amalgamations");
  }
  const SubobjectLattice l = lattice_of(c, j, x, bounds);
  switch (which) {
    case ObjectInvariant::Atom: return l.elems.size() == 2;
    case ObjectInvariant::Indecomposable: {
      if (l.top == l.bottom) return false;
      for (const auto& a : l.elems) {
        if (a == l.bottom || a == l.top) continue;
        for (const auto& b : l.elems) {
          if (b == l.bottom || b == l.top) continue;
          if (meet(a, b) == l.bottom && join(c, j, x, a, b) == l.top) return false;
        }
      }
      return true;
    }
    case ObjectInvariant::Compact: {
      // The subobject lattice is finite, so any covering family is its own
      // finite subcover. Greedily extract one from the family of all
      // subobjects to confirm the cover exists.
      Subobject acc = l.bottom;
      for (const auto& a : l.elems) {
        if (below(a, acc)) continue;
        acc = join(c, j, x, acc, a);
      }
      return acc == l.top;
    }
    case ObjectInvariant::Irreducible: {
      // X is irreducible iff every jointly epimorphic family into X has a
      // split member; equivalently the maps into X without a section are
      // not jointly epimorphic.
      Budget budget(bounds, "irreducibility check");
      const FinCategory op = opposite(c);
      Subobject unsplit_images(c.object_count(), 0);
      const NatTrans identity = [&] {
        NatTrans id(c.object_count());
        for (int o = 0; o < c.object_count(); ++o) {
          for (int e = 0; e < x.size(o); ++e) id[o].push_back(e);
        }
        return id;
      }();
      enumerate_set_functors(op, bounds.irreducible_bound, bounds, [&](const SetFunctor& fn) {
        const Presheaf a = presheaf_from_functor(fn);
        if (!is_sheaf(c, j, a, bounds).ok) return true;
        for_each_nat_trans(c, a, x, false, budget, [&](const NatTrans& g) {
          bool split = false;
          for_each_nat_trans(c, x, a, false, budget, [&](const NatTrans& s) {
            NatTrans composite(c.object_count());
            for (int o = 0; o < c.object_count(); ++o) {
              for (int e = 0; e < x.size(o); ++e) composite[o].push_back(g[o][s[o][e]]);
            }
            split = composite == identity;
            return !split;
          });
          if (!split) {
            for (int o = 0; o < c.object_count(); ++o) {
              for (int v : g[o]) unsplit_images[o] |= std::uint64_t{1} << v;
            }
          }
          return true;
        });
        return true;
      });
      return close_subobject(c, j, x, unsplit_images) != l.top;
    }
  }
  return false;
}

InvariantFingerprint fingerprint(const FinCategory& c, const GrothendieckTopology& j, std::size_t point_bound,
                                 const Bounds& bounds) {
  InvariantFingerprint fp;
  fp.subterminal_count = subterminals(c, j).size();
  if (classifier_global_sections(c, j, bounds) != fp.subterminal_count) {
    throw Error("InternalError", "global sections of the classifier disagree with the subterminal count");
  }
  fp.two_valued = fp.subterminal_count == 2;
  fp.boolean = topos_invariant(c, j, ToposInvariant::Boolean, bounds);
  fp.de_morgan = topos_invariant(c, j, ToposInvariant::DeMorgan, bounds);
  fp.atomic = topos_invariant(c, j, ToposInvariant::Atomic, bounds);
  fp.topology_count_above_j = enumerate_topologies(c, j, bounds).size();
  fp.point_bound = point_bound;
  fp.point_count = geolog::enumerate_flat_functors(c, j, point_bound, bounds).size();
  return fp;
}

}  // namespace sitelab
