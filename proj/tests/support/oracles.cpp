#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace sitelab::testing {

std::vector<ArrowSet> naive_sieves(const FinCategory& c, int obj) {
  const auto& into = c.arrows_into(obj);
  std::vector<ArrowSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << into.size()); ++mask) {
    ArrowSet s;
    for (std::size_t i = 0; i < into.size(); ++i) {
      if ((mask >> i) & 1U) s.insert(into[i]);
    }
    bool closed = true;
    for (int f : s.members()) {
      for (int g : c.arrows_into(c.dom(f))) {
        if (!s.contains(c.after(f, g))) closed = false;
      }
    }
    if (closed) out.push_back(s);
  }
  return out;
}

namespace {

ArrowSet naive_pullback(const FinCategory& c, ArrowSet s, int f) {
  ArrowSet out;
  for (int g : c.arrows_into(c.dom(f))) {
    if (s.contains(c.after(f, g))) out.insert(g);
  }
  return out;
}

bool member(const std::vector<ArrowSet>& v, ArrowSet s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

std::vector<SieveFamily> brute_force_topologies(const FinCategory& c) {
  int n = c.object_count();
  std::vector<std::vector<ArrowSet>> sieves(n);
  int bits = 0;
  for (int o = 0; o < n; ++o) {
    sieves[o] = naive_sieves(c, o);
    bits += static_cast<int>(sieves[o].size());
  }
  if (bits > 24) throw std::runtime_error("brute force too large");

  std::vector<SieveFamily> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<std::vector<ArrowSet>> j(n);
    int bit = 0;
    for (int o = 0; o < n; ++o) {
      for (ArrowSet s : sieves[o]) {
        if ((mask >> bit++) & 1U) j[o].push_back(s);
      }
    }
    bool ok = true;
    for (int o = 0; o < n && ok; ++o) {
      if (!member(j[o], c.maximal_sieve(o))) ok = false;
    }
    for (int o = 0; o < n && ok; ++o) {
      for (ArrowSet s : j[o]) {
        for (int f : c.arrows_into(o)) {
          if (!member(j[c.dom(f)], naive_pullback(c, s, f))) ok = false;
        }
      }
    }
    for (int o = 0; o < n && ok; ++o) {
      for (ArrowSet s : j[o]) {
        for (ArrowSet r : sieves[o]) {
          bool all = true;
          for (int f : s.members()) {
            if (!member(j[c.dom(f)], naive_pullback(c, r, f))) all = false;
          }
          if (all && !member(j[o], r)) ok = false;
        }
      }
    }
    if (!ok) continue;
    SieveFamily fam(n);
    for (int o = 0; o < n; ++o) {
      for (ArrowSet s : j[o]) fam.insert(o, s);
    }
    out.push_back(fam);
  }
  return out;
}

SieveFamily brute_force_generated(const FinCategory& c, const std::vector<Sieve>& axioms) {
  std::optional<SieveFamily> acc;
  for (const auto& t : brute_force_topologies(c)) {
    bool contains = std::all_of(axioms.begin(), axioms.end(), [&](const Sieve& s) { return t.contains(s); });
    if (!contains) continue;
    if (!acc) {
      acc = t;
      continue;
    }
    SieveFamily meet(c.object_count());
    for (int o = 0; o < c.object_count(); ++o) {
      for (ArrowSet s : acc->at(o)) {
        if (t.contains(o, s)) meet.insert(o, s);
      }
    }
    acc = meet;
  }
  return *acc;
}

namespace {

int naive_term(const geolog::Signature& sig, const geolog::FinStructure& m, const geolog::Term& t, const Env& env) {
  if (t.kind == geolog::Term::Kind::Var) return env.at(t.name);
  int fi = *sig.find_function(t.name);
  const auto& fs = sig.functions[fi];
  std::size_t idx = 0;
  for (std::size_t k = 0; k < t.args.size(); ++k) {
    idx = idx * m.size(*sig.find_sort(fs.args[k])) + naive_term(sig, m, t.args[k], env);
  }
  return m.functions[fi][idx];
}

}  // namespace

bool naive_holds(const geolog::Signature& sig, const geolog::FinStructure& m, const geolog::Formula& f, Env env) {
  using K = geolog::Formula::Kind;
  switch (f.kind) {
    case K::Top:
      return true;
    case K::Bot:
      return false;
    case K::Eq:
      return naive_term(sig, m, f.terms[0], env) == naive_term(sig, m, f.terms[1], env);
    case K::Rel: {
      int ri = *sig.find_relation(f.name);
      const auto& rs = sig.relations[ri];
      std::size_t idx = 0;
      for (std::size_t k = 0; k < f.terms.size(); ++k) {
        idx = idx * m.size(*sig.find_sort(rs.args[k])) + naive_term(sig, m, f.terms[k], env);
      }
      return m.relations[ri][idx] != 0;
    }
    case K::And:
      for (const auto& g : f.children) {
        if (!naive_holds(sig, m, g, env)) return false;
      }
      return true;
    case K::Or:
      for (const auto& g : f.children) {
        if (naive_holds(sig, m, g, env)) return true;
      }
      return false;
    case K::Not:
      return !naive_holds(sig, m, f.children[0], env);
    case K::Implies:
      return !naive_holds(sig, m, f.children[0], env) || naive_holds(sig, m, f.children[1], env);
    case K::Exists:
    case K::Forall: {
      int n = m.size(*sig.find_sort(f.sort));
      bool want = f.kind == K::Exists;
      for (int x = 0; x < n; ++x) {
        env[f.name] = x;
        if (naive_holds(sig, m, f.children[0], env) == want) return want;
      }
      return !want;
    }
  }
  return false;
}

bool naive_satisfies(const geolog::Theory& t, const geolog::FinStructure& m) {
  const auto& sig = t.signature;
  for (const auto& ax : t.axioms) {
    Env env;
    std::function<bool(std::size_t)> all = [&](std::size_t k) {
      if (k == ax.context.size()) {
        return !naive_holds(sig, m, ax.premise, env) || naive_holds(sig, m, ax.conclusion, env);
      }
      int n = m.size(*sig.find_sort(ax.context[k].second));
      for (int x = 0; x < n; ++x) {
        env[ax.context[k].first] = x;
        if (!all(k + 1)) return false;
      }
      return true;
    };
    if (!all(0)) return false;
  }
  return true;
}

std::vector<geolog::FinStructure> all_structures(const geolog::Signature& sig, int max_size) {
  std::vector<geolog::FinStructure> out;
  std::size_t ns = sig.sorts.size();
  std::vector<int> sizes(ns, 0);
  auto count = [&](const std::vector<std::string>& sorts) {
    std::size_t n = 1;
    for (const auto& s : sorts) n *= sizes[*sig.find_sort(s)];
    return n;
  };
  for (;;) {
    geolog::FinStructure m;
    for (std::size_t s = 0; s < ns; ++s) {
      std::vector<std::string> e;
      for (int x = 0; x < sizes[s]; ++x) e.push_back(std::to_string(x));
      m.elements.push_back(e);
    }
    // (table, entry, range) slots
    struct Slot {
      bool fn;
      std::size_t sym;
      std::size_t entry;
      int range;
    };
    std::vector<Slot> slots;
    bool empty_range = false;
    for (std::size_t i = 0; i < sig.functions.size(); ++i) {
      std::size_t n = count(sig.functions[i].args);
      int range = sizes[*sig.find_sort(sig.functions[i].result)];
      m.functions.emplace_back(n, 0);
      if (n > 0 && range == 0) empty_range = true;
      for (std::size_t e = 0; e < n; ++e) slots.push_back({true, i, e, range});
    }
    for (std::size_t i = 0; i < sig.relations.size(); ++i) {
      std::size_t n = count(sig.relations[i].args);
      m.relations.emplace_back(n, 0);
      for (std::size_t e = 0; e < n; ++e) slots.push_back({false, i, e, 2});
    }
    if (!empty_range) {
      for (;;) {
        out.push_back(m);
        std::size_t k = 0;
        for (; k < slots.size(); ++k) {
          const Slot& sl = slots[k];
          if (sl.fn) {
            int& v = m.functions[sl.sym][sl.entry];
            if (++v < sl.range) break;
            v = 0;
          } else {
            char& v = m.relations[sl.sym][sl.entry];
            if (++v < 2) break;
            v = 0;
          }
        }
        if (k == slots.size()) break;
      }
    }
    std::size_t s = 0;
    for (; s < ns; ++s) {
      if (++sizes[s] <= max_size) break;
      sizes[s] = 0;
    }
    if (s == ns) break;
  }
  return out;
}

bool naive_isomorphic(const geolog::Signature& sig, const geolog::FinStructure& a, const geolog::FinStructure& b) {
  std::size_t ns = sig.sorts.size();
  for (std::size_t s = 0; s < ns; ++s) {
    if (a.size(static_cast<int>(s)) != b.size(static_cast<int>(s))) return false;
  }
  std::vector<std::vector<int>> perm(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    perm[s].resize(a.size(static_cast<int>(s)));
    std::iota(perm[s].begin(), perm[s].end(), 0);
  }
  auto tuples = [&](const std::vector<std::string>& sorts, auto&& visit) {
    std::vector<int> t(sorts.size(), 0);
    std::vector<int> sz;
    for (const auto& s : sorts) sz.push_back(a.size(*sig.find_sort(s)));
    for (int n : sz) {
      if (n == 0) return;
    }
    for (;;) {
      visit(t, sz);
      std::size_t k = t.size();
      while (k > 0) {
        --k;
        if (++t[k] < sz[k]) break;
        t[k] = 0;
        if (k == 0) return;
      }
      if (t.empty()) return;
    }
  };
  auto index = [](const std::vector<int>& t, const std::vector<int>& sz) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < t.size(); ++k) i = i * sz[k] + t[k];
    return i;
  };
  auto check = [&]() {
    for (std::size_t fi = 0; fi < sig.functions.size(); ++fi) {
      const auto& fs = sig.functions[fi];
      int rs = *sig.find_sort(fs.result);
      bool ok = true;
      tuples(fs.args, [&](const std::vector<int>& t, const std::vector<int>& sz) {
        std::vector<int> pt(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) pt[k] = perm[*sig.find_sort(fs.args[k])][t[k]];
        if (perm[rs][a.functions[fi][index(t, sz)]] != b.functions[fi][index(pt, sz)]) ok = false;
      });
      if (!ok) return false;
    }
    for (std::size_t ri = 0; ri < sig.relations.size(); ++ri) {
      const auto& rsym = sig.relations[ri];
      bool ok = true;
      tuples(rsym.args, [&](const std::vector<int>& t, const std::vector<int>& sz) {
        std::vector<int> pt(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) pt[k] = perm[*sig.find_sort(rsym.args[k])][t[k]];
        if ((a.relations[ri][index(t, sz)] != 0) != (b.relations[ri][index(pt, sz)] != 0)) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t s) {
    if (s == ns) return check();
    std::sort(perm[s].begin(), perm[s].end());
    do {
      if (search(s + 1)) return true;
    } while (std::next_permutation(perm[s].begin(), perm[s].end()));
    return false;
  };
  return search(0);
}

std::size_t count_iso_classes(const geolog::Signature& sig, const std::vector<geolog::FinStructure>& ms) {
  std::vector<const geolog::FinStructure*> reps;
  for (const auto& m : ms) {
    bool seen = std::any_of(reps.begin(), reps.end(), [&](const auto* r) { return naive_isomorphic(sig, *r, m); });
    if (!seen) reps.push_back(&m);
  }
  return reps.size();
}

bool naive_flat(const FinCategory& c, const GrothendieckTopology& j, const SetFunctor& f) {
  int n = c.object_count();
  std::vector<std::pair<int, int>> elems;
  for (int o = 0; o < n; ++o) {
    for (int x = 0; x < f.sizes[o]; ++x) elems.emplace_back(o, x);
  }
  if (elems.empty()) return false;
  auto img = [&](int arrow, int x) { return f.action[arrow][x]; };
  for (auto [a, x] : elems) {
    for (auto [b, y] : elems) {
      bool found = false;
      for (auto [o, z] : elems) {
        for (int u : c.arrows_from(o)) {
          if (c.cod(u) != a || img(u, z) != x) continue;
          for (int v : c.arrows_from(o)) {
            if (c.cod(v) == b && img(v, z) == y) found = true;
          }
        }
      }
      if (!found) return false;
    }
  }
  for (int fa = 0; fa < c.arrow_count(); ++fa) {
    for (int ga = 0; ga < c.arrow_count(); ++ga) {
      if (c.dom(fa) != c.dom(ga) || c.cod(fa) != c.cod(ga)) continue;
      int a = c.dom(fa);
      for (int x = 0; x < f.sizes[a]; ++x) {
        if (img(fa, x) != img(ga, x)) continue;
        bool found = false;
        for (auto [o, z] : elems) {
          for (int h : c.arrows_from(o)) {
            if (c.cod(h) == a && img(h, z) == x && c.after(fa, h) == c.after(ga, h)) found = true;
          }
        }
        if (!found) return false;
      }
    }
  }
  for (int o = 0; o < n; ++o) {
    for (ArrowSet s : j.at(o)) {
      for (int x = 0; x < f.sizes[o]; ++x) {
        bool hit = false;
        for (int g : s.members()) {
          for (int y = 0; y < f.sizes[c.dom(g)]; ++y) {
            if (img(g, y) == x) hit = true;
          }
        }
        if (!hit) return false;
      }
    }
  }
  return true;
}

bool naive_functor_isomorphic(const FinCategory& c, const SetFunctor& a, const SetFunctor& b) {
  if (a.sizes != b.sizes) return false;
  int n = c.object_count();
  std::vector<std::vector<int>> perm(n);
  for (int o = 0; o < n; ++o) {
    perm[o].resize(a.sizes[o]);
    std::iota(perm[o].begin(), perm[o].end(), 0);
  }
  std::function<bool(int)> search = [&](int o) {
    if (o == n) {
      for (int f = 0; f < c.arrow_count(); ++f) {
        for (int x = 0; x < a.sizes[c.dom(f)]; ++x) {
          if (perm[c.cod(f)][a.action[f][x]] != b.action[f][perm[c.dom(f)][x]]) return false;
        }
      }
      return true;
    }
    std::sort(perm[o].begin(), perm[o].end());
    do {
      if (search(o + 1)) return true;
    } while (std::next_permutation(perm[o].begin(), perm[o].end()));
    return false;
  };
  return search(0);
}

}  // namespace sitelab::testing
