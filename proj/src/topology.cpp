#include "sitelab/topology.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sitelab/error.hpp"

namespace sitelab {

std::string arrows_text(const FinCategory& c, ArrowSet arrows) {
  std::string out = "[";
  bool first = true;
  for (int f : arrows.members()) {
    if (!first) out += ", ";
    out += c.arrow_name(f);
    first = false;
  }
  return out + "]";
}

namespace {

std::string sieve_text(const FinCategory& c, const Sieve& s) {
  return arrows_text(c, s.arrows) + " on " + c.object_name(s.base);
}

// Pullback without the base check, for internal callers that already know cod f = base.
ArrowSet pullback_mask(const FinCategory& c, ArrowSet s, int f) {
  ArrowSet out;
  for (int g : c.arrows_into(c.dom(f))) {
    if (s.contains(c.after(f, g))) out.insert(g);
  }
  return out;
}

void check_fan_in(const FinCategory& c, const Bounds& bounds) {
  for (int o = 0; o < c.object_count(); ++o) {
    if (c.arrows_into(o).size() > bounds.fan_in) {
      throw explosion_guard("object '" + c.object_name(o) + "' has " + std::to_string(c.arrows_into(o).size()) +
                            " incoming arrows (fan-in bound " + std::to_string(bounds.fan_in) + ")");
    }
  }
}

}  // namespace

bool is_sieve(const FinCategory& c, const Sieve& s) {
  if (s.base < 0 || s.base >= c.object_count()) return false;
  if (!s.arrows.subset_of(c.maximal_sieve(s.base))) return false;
  for (int f : s.arrows.members()) {
    for (int g : c.arrows_into(c.dom(f))) {
      if (!s.arrows.contains(c.after(f, g))) return false;
    }
  }
  return true;
}

void require_sieve(const FinCategory& c, const Sieve& s) {
  if (s.base < 0 || s.base >= c.object_count()) throw Error("InvalidSieve", "sieve base is not an object");
  for (int f : s.arrows.members()) {
    if (f >= c.arrow_count()) throw Error("InvalidSieve", "sieve mentions an arrow outside the category");
    if (c.cod(f) != s.base) {
      throw Error("InvalidSieve", "arrow '" + c.arrow_name(f) + "' does not have codomain '" +
                                      c.object_name(s.base) + "'");
    }
    for (int g : c.arrows_into(c.dom(f))) {
      if (!s.arrows.contains(c.after(f, g))) {
        throw Error("InvalidSieve", sieve_text(c, s) + " contains '" + c.arrow_name(f) + "' but not its precomposite with '" +
                                        c.arrow_name(g) + "'");
      }
    }
  }
}

Sieve pullback_sieve(const FinCategory& c, const Sieve& s, int f) {
  if (c.cod(f) != s.base) {
    throw Error("BaseMismatch", "cannot pull back a sieve on '" + c.object_name(s.base) + "' along '" + c.arrow_name(f) +
                                    "'");
  }
  return Sieve{c.dom(f), pullback_mask(c, s.arrows, f)};
}

Sieve generated_sieve(const FinCategory& c, int base, ArrowSet generators) {
  ArrowSet out;
  for (int f : generators.members()) {
    if (c.cod(f) != base) {
      throw Error("BaseMismatch", "generator '" + c.arrow_name(f) + "' does not have codomain '" + c.object_name(base) + "'");
    }
    for (int g : c.arrows_into(c.dom(f))) out.insert(c.after(f, g));
  }
  return Sieve{base, out};
}

SieveUniverse::SieveUniverse(const FinCategory& c, const Bounds& bounds) : cat_(&c) {
  check_fan_in(c, bounds);
  const int n = c.object_count();
  sieves_.resize(n);
  index_.resize(n);
  maximal_.resize(n);
  for (int o = 0; o < n; ++o) {
    const auto& into = c.arrows_into(o);
    const std::size_t k = into.size();
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << k); ++subset) {
      ArrowSet s;
      for (std::size_t i = 0; i < k; ++i) {
        if ((subset >> i) & 1U) s.insert(into[i]);
      }
      if (is_sieve(c, Sieve{o, s})) sieves_[o].push_back(s);
    }
    std::sort(sieves_[o].begin(), sieves_[o].end());
    for (std::size_t i = 0; i < sieves_[o].size(); ++i) index_[o].emplace(sieves_[o][i].bits(), static_cast<int>(i));
    maximal_[o] = index_of(o, c.maximal_sieve(o));
  }
  pullback_.resize(c.arrow_count());
  for (int f = 0; f < c.arrow_count(); ++f) {
    const auto& targets = sieves_[c.cod(f)];
    pullback_[f].reserve(targets.size());
    for (ArrowSet s : targets) pullback_[f].push_back(index_of(c.dom(f), pullback_mask(c, s, f)));
  }
}

int SieveUniverse::index_of(int obj, ArrowSet s) const {
  auto it = index_[obj].find(s.bits());
  if (it == index_[obj].end()) throw Error("InvalidSieve", "not a sieve on '" + cat_->object_name(obj) + "'");
  return it->second;
}

std::size_t SieveUniverse::total() const {
  std::size_t t = 0;
  for (const auto& v : sieves_) t += v.size();
  return t;
}

bool SieveFamily::contains(int obj, ArrowSet s) const {
  return std::binary_search(covers_[obj].begin(), covers_[obj].end(), s);
}

void SieveFamily::insert(int obj, ArrowSet s) {
  auto& v = covers_[obj];
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) v.insert(it, s);
}

std::size_t SieveFamily::size() const {
  std::size_t t = 0;
  for (const auto& v : covers_) t += v.size();
  return t;
}

bool SieveFamily::subset_of(const SieveFamily& other) const {
  for (int o = 0; o < object_count(); ++o) {
    if (!std::includes(other.covers_[o].begin(), other.covers_[o].end(), covers_[o].begin(), covers_[o].end())) {
      return false;
    }
  }
  return true;
}

bool operator<(const GrothendieckTopology& a, const GrothendieckTopology& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (int o = 0; o < a.family_.object_count(); ++o) {
    const auto& x = a.at(o);
    const auto& y = b.at(o);
    if (x != y) return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }
  return false;
}

GrothendieckTopology unchecked_topology(SieveFamily f) { return GrothendieckTopology(std::move(f)); }

GrothendieckTopology GrothendieckTopology::from_family(const FinCategory& c, SieveFamily family, const Bounds& bounds) {
  if (family.object_count() != c.object_count()) {
    throw Error("NotATopology", "family has the wrong number of objects");
  }
  auto check = is_topology(c, family, bounds);
  if (!check.ok) {
    throw Error("NotATopology",
                std::string(to_string(check.violation->axiom)) + " violated: " + check.violation->description);
  }
  return GrothendieckTopology(std::move(family));
}

std::string_view to_string(TopologyAxiom a) {
  switch (a) {
    case TopologyAxiom::Maximality: return "maximality";
    case TopologyAxiom::Stability: return "stability";
    case TopologyAxiom::Transitivity: return "transitivity";
  }
  return "?";
}

TopologyCheck is_topology(const FinCategory& c, const SieveFamily& candidate, const Bounds& bounds) {
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet s : candidate.at(o)) require_sieve(c, Sieve{o, s});
  }
  for (int o = 0; o < c.object_count(); ++o) {
    if (!candidate.contains(o, c.maximal_sieve(o))) {
      return {false, TopologyViolation{TopologyAxiom::Maximality,
                                       "maximal sieve on '" + c.object_name(o) + "' is not a cover"}};
    }
  }
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet s : candidate.at(o)) {
      for (int f : c.arrows_into(o)) {
        ArrowSet pb = pullback_mask(c, s, f);
        if (!candidate.contains(c.dom(f), pb)) {
          return {false, TopologyViolation{TopologyAxiom::Stability,
                                           c.arrow_name(f) + "*(" + arrows_text(c, s) + ") = " + arrows_text(c, pb) +
                                               " is not a cover of '" + c.object_name(c.dom(f)) + "'"}};
        }
      }
    }
  }
  SieveUniverse universe(c, bounds);
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet r : universe.sieves(o)) {
      if (candidate.contains(o, r)) continue;
      ArrowSet locally_covered;
      for (int f : c.arrows_into(o)) {
        if (candidate.contains(c.dom(f), pullback_mask(c, r, f))) locally_covered.insert(f);
      }
      for (ArrowSet z : candidate.at(o)) {
        if (z.subset_of(locally_covered)) {
          return {false, TopologyViolation{TopologyAxiom::Transitivity,
                                           "Z = " + arrows_text(c, z) + " covers '" + c.object_name(o) +
                                               "' and f*(R) is a cover for every f in Z, but R = " +
                                               arrows_text(c, r) + " is not a cover"}};
        }
      }
    }
  }
  return {};
}

namespace {

// Membership flags per object, indexed like SieveUniverse::sieves(obj).
using Marks = std::vector<std::vector<char>>;

Marks empty_marks(const SieveUniverse& u) {
  Marks m(u.object_count());
  for (int o = 0; o < u.object_count(); ++o) m[o].assign(u.sieves(o).size(), 0);
  return m;
}

// Least fixpoint of the stability and transitivity rules above `m`.
void close_marks(const SieveUniverse& u, Marks& m) {
  const FinCategory& c = u.category();
  for (int o = 0; o < u.object_count(); ++o) m[o][u.maximal_index(o)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int o = 0; o < u.object_count(); ++o) {
      for (std::size_t i = 0; i < m[o].size(); ++i) {
        if (!m[o][i]) continue;
        for (int f : c.arrows_into(o)) {
          char& t = m[c.dom(f)][u.pullback(f, static_cast<int>(i))];
          if (!t) {
            t = 1;
            changed = true;
          }
        }
      }
    }
    for (int o = 0; o < u.object_count(); ++o) {
      const auto& sieves = u.sieves(o);
      for (std::size_t r = 0; r < sieves.size(); ++r) {
        if (m[o][r]) continue;
        ArrowSet locally_covered;
        for (int f : c.arrows_into(o)) {
          if (m[c.dom(f)][u.pullback(f, static_cast<int>(r))]) locally_covered.insert(f);
        }
        for (std::size_t z = 0; z < sieves.size(); ++z) {
          if (m[o][z] && sieves[z].subset_of(locally_covered)) {
            m[o][r] = 1;
            changed = true;
            break;
          }
        }
      }
    }
  }
}

SieveFamily family_of(const SieveUniverse& u, const Marks& m) {
  SieveFamily fam(u.object_count());
  for (int o = 0; o < u.object_count(); ++o) {
    for (std::size_t i = 0; i < m[o].size(); ++i) {
      if (m[o][i]) fam.insert(o, u.sieves(o)[i]);
    }
  }
  return fam;
}

Marks marks_of(const SieveUniverse& u, const SieveFamily& fam) {
  Marks m = empty_marks(u);
  for (int o = 0; o < u.object_count(); ++o) {
    for (ArrowSet s : fam.at(o)) m[o][u.index_of(o, s)] = 1;
  }
  return m;
}

}  // namespace

GrothendieckTopology generate_topology(const FinCategory& c, const std::vector<Sieve>& axioms, const Bounds& bounds) {
  for (const auto& s : axioms) require_sieve(c, s);
  SieveUniverse u(c, bounds);
  Marks m = empty_marks(u);
  for (const auto& s : axioms) m[s.base][u.index_of(s.base, s.arrows)] = 1;
  close_marks(u, m);
  return unchecked_topology(family_of(u, m));
}

std::size_t Derivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p->node_count();
  return n;
}

std::string_view to_string(Derivation::Rule r) {
  switch (r) {
    case Derivation::Rule::Axiom: return "axiom";
    case Derivation::Rule::Maximal: return "maximal";
    case Derivation::Rule::Stability: return "stability";
    case Derivation::Rule::Transitivity: return "transitivity";
  }
  return "?";
}

bool check_derivation(const FinCategory& c, const std::vector<Sieve>& axioms, const Derivation& d, std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg + " (at node concluding " + sieve_text(c, d.conclusion) + ")";
    return false;
  };
  if (!is_sieve(c, d.conclusion)) return reject("conclusion is not a sieve");
  switch (d.rule) {
    case Derivation::Rule::Axiom:
      if (!d.premises.empty()) return reject("axiom leaf has premises");
      if (std::find(axioms.begin(), axioms.end(), d.conclusion) == axioms.end()) return reject("not an axiom");
      return true;
    case Derivation::Rule::Maximal:
      if (!d.premises.empty()) return reject("maximal leaf has premises");
      if (d.conclusion.arrows != c.maximal_sieve(d.conclusion.base)) return reject("not a maximal sieve");
      return true;
    case Derivation::Rule::Stability: {
      if (d.premises.size() != 1) return reject("stability needs exactly one premise");
      const Sieve& r = d.premises[0]->conclusion;
      if (d.arrow < 0 || d.arrow >= c.arrow_count() || c.cod(d.arrow) != r.base) {
        return reject("stability arrow does not land on the premise's base");
      }
      if (pullback_sieve(c, r, d.arrow) != d.conclusion) return reject("conclusion is not the pullback of the premise");
      return check_derivation(c, axioms, *d.premises[0], why);
    }
    case Derivation::Rule::Transitivity: {
      if (d.premises.empty()) return reject("transitivity needs the premise Z");
      const Sieve& z = d.premises[0]->conclusion;
      if (z.base != d.conclusion.base) return reject("Z lives on a different object");
      auto members = z.arrows.members();
      if (d.premises.size() != members.size() + 1) return reject("one premise per member of Z is required");
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (d.premises[i + 1]->conclusion != pullback_sieve(c, d.conclusion, members[i])) {
          return reject("premise for '" + c.arrow_name(members[i]) + "' is not the pullback of the conclusion");
        }
      }
      for (const auto& p : d.premises) {
        if (!check_derivation(c, axioms, *p, why)) return false;
      }
      return true;
    }
  }
  return reject("unknown rule");
}

std::optional<std::shared_ptr<const Derivation>> derives(const FinCategory& c, const std::vector<Sieve>& axioms,
                                                         const Sieve& goal, const Bounds& bounds) {
  for (const auto& s : axioms) require_sieve(c, s);
  require_sieve(c, goal);
  check_fan_in(c, bounds);

  using Proof = std::shared_ptr<const Derivation>;
  std::map<Sieve, Proof> proven;
  auto add = [&](Derivation d) {
    Sieve key = d.conclusion;
    return proven.emplace(key, std::make_shared<const Derivation>(std::move(d))).second;
  };

  for (const auto& a : axioms) add(Derivation{Derivation::Rule::Axiom, a, -1, {}});
  for (int o = 0; o < c.object_count(); ++o) {
    add(Derivation{Derivation::Rule::Maximal, Sieve{o, c.maximal_sieve(o)}, -1, {}});
  }

  // Candidate conclusions of the transitivity rule: every sieve, obtained as
  // the sieve generated by each subset of incoming arrows.
  std::vector<std::vector<Sieve>> candidates(c.object_count());
  for (int o = 0; o < c.object_count(); ++o) {
    const auto& into = c.arrows_into(o);
    std::vector<Sieve> found;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << into.size()); ++subset) {
      ArrowSet gens;
      for (std::size_t i = 0; i < into.size(); ++i) {
        if ((subset >> i) & 1U) gens.insert(into[i]);
      }
      found.push_back(generated_sieve(c, o, gens));
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    candidates[o] = std::move(found);
  }

  std::size_t steps = 0;
  bool changed = true;
  while (!proven.count(goal) && changed) {
    changed = false;
    std::vector<Proof> snapshot;
    for (const auto& [s, p] : proven) snapshot.push_back(p);
    for (const auto& p : snapshot) {
      for (int f : c.arrows_into(p->conclusion.base)) {
        if (++steps > bounds.search_budget) throw explosion_guard("proof search exceeded its step budget");
        changed |= add(Derivation{Derivation::Rule::Stability, pullback_sieve(c, p->conclusion, f), f, {p}});
      }
    }
    for (int o = 0; o < c.object_count(); ++o) {
      for (const Sieve& r : candidates[o]) {
        if (proven.count(r)) continue;
        for (auto it = proven.lower_bound(Sieve{o, ArrowSet{}}); it != proven.end() && it->first.base == o; ++it) {
          if (++steps > bounds.search_budget) throw explosion_guard("proof search exceeded its step budget");
          std::vector<Proof> premises{it->second};
          bool all = true;
          for (int f : it->first.arrows.members()) {
            auto pf = proven.find(pullback_sieve(c, r, f));
            if (pf == proven.end()) {
              all = false;
              break;
            }
            premises.push_back(pf->second);
          }
          if (all) {
            changed |= add(Derivation{Derivation::Rule::Transitivity, r, -1, std::move(premises)});
            break;
          }
        }
      }
    }
  }
  auto it = proven.find(goal);
  if (it == proven.end()) return std::nullopt;
  return it->second;
}

std::vector<GrothendieckTopology> enumerate_topologies(const FinCategory& c,
                                                       const std::optional<GrothendieckTopology>& containing,
                                                       const Bounds& bounds) {
  SieveUniverse u(c, bounds);
  // Ganter's NextClosure over the non-maximal sieves, with the generated
  // topology (above `containing`) as the closure operator.
  std::vector<std::pair<int, int>> elems;
  for (int o = 0; o < c.object_count(); ++o) {
    for (int i = 0; i < static_cast<int>(u.sieves(o).size()); ++i) {
      if (i != u.maximal_index(o)) elems.emplace_back(o, i);
    }
  }
  const std::size_t m = elems.size();
  Marks base = containing ? marks_of(u, containing->covers()) : empty_marks(u);

  auto close = [&](const std::vector<char>& chosen) {
    Marks marks = base;
    for (std::size_t e = 0; e < m; ++e) {
      if (chosen[e]) marks[elems[e].first][elems[e].second] = 1;
    }
    close_marks(u, marks);
    std::vector<char> out(m, 0);
    for (std::size_t e = 0; e < m; ++e) out[e] = marks[elems[e].first][elems[e].second];
    return out;
  };
  auto to_topology = [&](const std::vector<char>& chosen) {
    Marks marks = empty_marks(u);
    for (int o = 0; o < c.object_count(); ++o) marks[o][u.maximal_index(o)] = 1;
    for (std::size_t e = 0; e < m; ++e) {
      if (chosen[e]) marks[elems[e].first][elems[e].second] = 1;
    }
    return unchecked_topology(family_of(u, marks));
  };

  std::vector<GrothendieckTopology> out;
  std::size_t closures = 0;
  std::vector<char> current = close(std::vector<char>(m, 0));
  out.push_back(to_topology(current));
  while (true) {
    bool advanced = false;
    for (std::size_t idx = m; idx-- > 0;) {
      if (current[idx]) {
        current[idx] = 0;
        continue;
      }
      std::vector<char> trial = current;
      trial[idx] = 1;
      if (++closures > bounds.search_budget / 16 + 1) throw explosion_guard("topology enumeration budget exhausted");
      std::vector<char> closed = close(trial);
      bool canonical = true;
      for (std::size_t j = 0; j < idx; ++j) {
        if (closed[j] != current[j]) {
          canonical = false;
          break;
        }
      }
      if (canonical) {
        current = std::move(closed);
        out.push_back(to_topology(current));
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<LatticeOp> parse_lattice_op(std::string_view s) {
  if (s == "meet") return LatticeOp::Meet;
  if (s == "join") return LatticeOp::Join;
  if (s == "implies") return LatticeOp::Implies;
  return std::nullopt;
}

namespace {

GrothendieckTopology meet(const FinCategory& c, const GrothendieckTopology& a, const GrothendieckTopology& b) {
  SieveFamily fam(c.object_count());
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet s : a.at(o)) {
      if (b.covers(o, s)) fam.insert(o, s);
    }
  }
  return unchecked_topology(std::move(fam));
}

}  // namespace

GrothendieckTopology lattice_op(const FinCategory& c, LatticeOp op, const GrothendieckTopology& j1,
                                const GrothendieckTopology& j2, const Bounds& bounds) {
  switch (op) {
    case LatticeOp::Meet: return meet(c, j1, j2);
    case LatticeOp::Join: {
      std::vector<Sieve> gens;
      for (const auto* j : {&j1, &j2}) {
        for (int o = 0; o < c.object_count(); ++o) {
          for (ArrowSet s : j->at(o)) gens.push_back(Sieve{o, s});
        }
      }
      return generate_topology(c, gens, bounds);
    }
    case LatticeOp::Implies: {
      std::vector<Sieve> gens;
      for (const auto& k : enumerate_topologies(c, std::nullopt, bounds)) {
        if (!meet(c, k, j1).subset_of(j2)) continue;
        for (int o = 0; o < c.object_count(); ++o) {
          for (ArrowSet s : k.at(o)) gens.push_back(Sieve{o, s});
        }
      }
      GrothendieckTopology best = generate_topology(c, gens, bounds);
      if (!meet(c, best, j1).subset_of(j2)) {
        throw Error("InternalError", "the admissible topologies have no largest element");
      }
      return best;
    }
  }
  throw Error("InternalError", "unknown lattice operation");
}

ArrowSet closure(const FinCategory& c, const GrothendieckTopology& j, const Sieve& s) {
  ArrowSet out;
  for (int f : c.arrows_into(s.base)) {
    if (j.covers(c.dom(f), pullback_mask(c, s.arrows, f))) out.insert(f);
  }
  return out;
}

ArrowSet negation(const FinCategory& c, const GrothendieckTopology& j, const Sieve& s) {
  const ArrowSet closed = closure(c, j, s);
  ArrowSet out;
  for (int f : c.arrows_into(s.base)) {
    bool ok = true;
    for (int g : c.arrows_into(c.dom(f))) {
      if (closed.contains(c.after(f, g)) && !j.covers(c.dom(g), ArrowSet{})) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(f);
  }
  return out;
}

std::optional<SpecialKind> parse_special_kind(std::string_view s) {
  if (s == "trivial") return SpecialKind::Trivial;
  if (s == "maximal") return SpecialKind::Maximal;
  if (s == "atomic") return SpecialKind::Atomic;
  if (s == "dense" || s == "dense-relative" || s == "dense_relative") return SpecialKind::DenseRelative;
  return std::nullopt;
}

GrothendieckTopology special_topology(const FinCategory& c, SpecialKind kind,
                                      const std::optional<GrothendieckTopology>& relative, const Bounds& bounds) {
  SieveFamily fam(c.object_count());
  switch (kind) {
    case SpecialKind::Trivial:
      for (int o = 0; o < c.object_count(); ++o) fam.insert(o, c.maximal_sieve(o));
      return unchecked_topology(std::move(fam));
    case SpecialKind::Maximal: {
      SieveUniverse u(c, bounds);
      for (int o = 0; o < c.object_count(); ++o) {
        for (ArrowSet s : u.sieves(o)) fam.insert(o, s);
      }
      return unchecked_topology(std::move(fam));
    }
    case SpecialKind::Atomic: {
      auto ore = check_site_property(c, SiteProperty::RightOre);
      if (!ore.holds) {
        throw Error("RightOreRequired", "cospan (" + ore.counterexample->first + ", " + ore.counterexample->second +
                                            ") has no commuting completion");
      }
      SieveUniverse u(c, bounds);
      for (int o = 0; o < c.object_count(); ++o) {
        for (ArrowSet s : u.sieves(o)) {
          if (s.empty()) continue;
          for (int f : c.arrows_into(o)) {
            if (pullback_mask(c, s, f).empty()) {
              throw Error("InternalError", "right Ore holds but a non-empty sieve pulls back to the empty sieve");
            }
          }
          fam.insert(o, s);
        }
      }
      return GrothendieckTopology::from_family(c, std::move(fam), bounds);
    }
    case SpecialKind::DenseRelative: {
      GrothendieckTopology j = relative ? *relative : special_topology(c, SpecialKind::Trivial);
      SieveUniverse u(c, bounds);
      for (int o = 0; o < c.object_count(); ++o) {
        const ArrowSet top = c.maximal_sieve(o);
        for (ArrowSet s : u.sieves(o)) {
          ArrowSet neg = negation(c, j, Sieve{o, s});
          if (negation(c, j, Sieve{o, neg}) == top) fam.insert(o, s);
        }
      }
      auto result = GrothendieckTopology::from_family(c, std::move(fam), bounds);
      if (!j.subset_of(result)) throw Error("InternalError", "double-negation topology does not contain its base");
      return result;
    }
  }
  throw Error("InternalError", "unknown special topology");
}

}  // namespace sitelab
