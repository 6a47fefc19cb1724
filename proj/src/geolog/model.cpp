#include "sitelab/geolog/model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sitelab/error.hpp"

namespace sitelab::geolog {

namespace {

// Formulas are compiled once per sequent: variables become slots in an
// environment vector and symbols become table indices.
struct CTerm {
  int slot = -1;  // variable slot, or -1 for an application
  int fn = -1;
  std::vector<CTerm> args;
};

struct CFormula {
  Formula::Kind kind = Formula::Kind::Top;
  int rel = -1;
  int slot = -1;  // bound variable slot
  int sort = -1;  // bound variable sort
  std::vector<CTerm> terms;
  std::vector<CFormula> children;
};

struct CSequent {
  std::vector<int> context_sorts;
  CFormula premise;
  CFormula conclusion;
  int slots = 0;
};

class Compiler {
 public:
  explicit Compiler(const Signature& sig) : sig_(sig) {}

  CSequent compile(const Sequent& s) {
    CSequent out;
    scope_.clear();
    used_ = 0;
    for (const auto& [v, sort] : s.context) {
      out.context_sorts.push_back(sort_index(sort));
      push(v);
    }
    out.premise = formula(s.premise);
    out.conclusion = formula(s.conclusion);
    out.slots = used_;
    return out;
  }

 private:
  const Signature& sig_;
  std::vector<std::pair<std::string, int>> scope_;
  int used_ = 0;

  int sort_index(const std::string& s) const {
    auto i = sig_.find_sort(s);
    if (!i) throw Error("UnknownSymbol", "unknown sort '" + s + "'");
    return *i;
  }
  int push(const std::string& v) {
    int slot = static_cast<int>(scope_.size());
    scope_.emplace_back(v, slot);
    used_ = std::max(used_, slot + 1);
    return slot;
  }
  CTerm term(const Term& t) const {
    CTerm out;
    if (t.kind == Term::Kind::Var) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
        if (it->first == t.name) {
          out.slot = it->second;
          return out;
        }
      }
      throw Error("UnknownSymbol", "unbound variable '" + t.name + "'");
    }
    auto fi = sig_.find_function(t.name);
    if (!fi) throw Error("UnknownSymbol", "unknown function '" + t.name + "'");
    out.fn = *fi;
    for (const auto& a : t.args) out.args.push_back(term(a));
    return out;
  }
  CFormula formula(const Formula& f) {
    CFormula out;
    out.kind = f.kind;
    for (const auto& t : f.terms) out.terms.push_back(term(t));
    if (f.kind == Formula::Kind::Rel) {
      auto ri = sig_.find_relation(f.name);
      if (!ri) throw Error("UnknownSymbol", "unknown relation '" + f.name + "'");
      out.rel = *ri;
    }
    if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) {
      out.sort = sort_index(f.sort);
      out.slot = push(f.name);
      out.children.push_back(formula(f.children[0]));
      scope_.pop_back();
      return out;
    }
    for (const auto& c : f.children) out.children.push_back(formula(c));
    return out;
  }
};

class Evaluator {
 public:
  Evaluator(const Signature& sig, const FinStructure& m) : m_(m) {
    for (const auto& fn : sig.functions) fn_args_.push_back(indices(sig, fn.args));
    for (const auto& r : sig.relations) rel_args_.push_back(indices(sig, r.args));
  }

  int term(const CTerm& t, const std::vector<int>& env) const {
    if (t.slot >= 0) return env[t.slot];
    std::size_t idx = 0;
    for (std::size_t k = 0; k < t.args.size(); ++k) idx = idx * m_.size(fn_args_[t.fn][k]) + term(t.args[k], env);
    return m_.functions[t.fn][idx];
  }

  bool formula(const CFormula& f, std::vector<int>& env) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Top: return true;
      case K::Bot: return false;
      case K::Eq: return term(f.terms[0], env) == term(f.terms[1], env);
      case K::Rel: {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < f.terms.size(); ++k) {
          idx = idx * m_.size(rel_args_[f.rel][k]) + term(f.terms[k], env);
        }
        return m_.relations[f.rel][idx] != 0;
      }
      case K::And:
        for (const auto& c : f.children) {
          if (!formula(c, env)) return false;
        }
        return true;
      case K::Or:
        for (const auto& c : f.children) {
          if (formula(c, env)) return true;
        }
        return false;
      case K::Not: return !formula(f.children[0], env);
      case K::Implies: return !formula(f.children[0], env) || formula(f.children[1], env);
      case K::Exists:
      case K::Forall: {
        const bool ex = f.kind == K::Exists;
        const int saved = env[f.slot];
        bool result = !ex;
        for (int e = 0; e < m_.size(f.sort); ++e) {
          env[f.slot] = e;
          if (formula(f.children[0], env) == ex) {
            result = ex;
            break;
          }
        }
        env[f.slot] = saved;
        return result;
      }
    }
    return false;
  }

  // First context assignment (odometer order) falsifying the sequent.
  std::optional<std::vector<int>> falsify(const CSequent& s) const {
    std::vector<int> env(std::max(s.slots, 1), 0);
    const std::size_t k = s.context_sorts.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (m_.size(s.context_sorts[i]) == 0) return std::nullopt;
    }
    while (true) {
      if (formula(s.premise, env) && !formula(s.conclusion, env)) {
        return std::vector<int>(env.begin(), env.begin() + static_cast<long>(k));
      }
      std::size_t i = k;
      while (i > 0 && ++env[i - 1] == m_.size(s.context_sorts[i - 1])) env[--i] = 0;
      if (i == 0) return std::nullopt;
    }
  }

 private:
  const FinStructure& m_;
  std::vector<std::vector<int>> fn_args_;
  std::vector<std::vector<int>> rel_args_;

  static std::vector<int> indices(const Signature& sig, const std::vector<std::string>& sorts) {
    std::vector<int> out;
    for (const auto& s : sorts) out.push_back(*sig.find_sort(s));
    return out;
  }
};

void symbols_in(const Signature& sig, const Term& t, std::set<int>& fns) {
  if (t.kind == Term::Kind::App) fns.insert(*sig.find_function(t.name));
  for (const auto& a : t.args) symbols_in(sig, a, fns);
}

void symbols_in(const Signature& sig, const Formula& f, std::set<int>& fns, std::set<int>& rels) {
  for (const auto& t : f.terms) symbols_in(sig, t, fns);
  if (f.kind == Formula::Kind::Rel) rels.insert(*sig.find_relation(f.name));
  for (const auto& c : f.children) symbols_in(sig, c, fns, rels);
}

Assignment named(const Sequent& s, const FinStructure& m, const Signature& sig, const std::vector<int>& values) {
  Assignment out;
  for (std::size_t i = 0; i < s.context.size(); ++i) {
    out.emplace_back(s.context[i].first, m.elements[*sig.find_sort(s.context[i].second)][values[i]]);
  }
  return out;
}

// Steps a table of digits in base `range` like an odometer; false on wrap.
bool advance(std::vector<int>& tab, int range) {
  std::size_t i = 0;
  while (i < tab.size() && ++tab[i] == range) tab[i++] = 0;
  return i < tab.size();
}

bool advance(std::vector<char>& tab) {
  std::size_t i = 0;
  while (i < tab.size() && ++tab[i] == 2) tab[i++] = 0;
  return i < tab.size();
}

}  // namespace

ModelCheck model_check(const Signature& sig, const Sequent& s, const FinStructure& m) {
  require_matches(sig, m);
  const CSequent cs = Compiler(sig).compile(s);
  ModelCheck out;
  if (auto bad = Evaluator(sig, m).falsify(cs)) {
    out.ok = false;
    out.falsifying = named(s, m, sig, *bad);
  }
  return out;
}

ModelCheck model_check(const Theory& t, const FinStructure& m) {
  require_matches(t.signature, m);
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    ModelCheck r = model_check(t.signature, t.axioms[i], m);
    if (!r.ok) {
      r.axiom = static_cast<int>(i);
      return r;
    }
  }
  return {};
}

std::vector<FinStructure> enumerate_models(const Theory& t, std::size_t max_size, const EnumerateOptions& opts,
                                           const Bounds& bounds) {
  if (!opts.allow_first_order) require_geometric(t);
  check_theory(t);
  const Signature& sig = t.signature;
  const std::size_t nf = sig.functions.size();
  const std::size_t nsym = nf + sig.relations.size();

  Compiler compiler(sig);
  std::vector<CSequent> compiled;
  // Each axiom is checked as soon as the last symbol it mentions is assigned.
  std::vector<std::vector<int>> ready(nsym + 1);
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    compiled.push_back(compiler.compile(t.axioms[i]));
    std::set<int> fns;
    std::set<int> rels;
    symbols_in(sig, t.axioms[i].premise, fns, rels);
    symbols_in(sig, t.axioms[i].conclusion, fns, rels);
    int level = 0;
    if (!fns.empty()) level = std::max(level, *fns.rbegin() + 1);
    if (!rels.empty()) level = std::max(level, static_cast<int>(nf) + *rels.rbegin() + 1);
    ready[level].push_back(static_cast<int>(i));
  }

  std::size_t steps = 0;
  auto tick = [&] {
    if (++steps > bounds.search_budget) throw explosion_guard("model enumeration exceeded its search budget");
  };

  std::map<std::vector<int>, FinStructure> found;
  std::vector<int> sizes(sig.sorts.size(), 0);
  while (true) {
    FinStructure m = blank_structure(sig, sizes);
    Evaluator eval(sig, m);
    auto passes = [&](std::size_t level) {
      for (int a : ready[level]) {
        if (eval.falsify(compiled[a])) return false;
      }
      return true;
    };
    std::function<void(std::size_t)> assign = [&](std::size_t p) {
      if (p == nsym) {
        if (opts.up_to_iso) {
          FinStructure c = canonical_form(sig, m);
          found.emplace(structure_key(c), std::move(c));
        } else {
          found.emplace(structure_key(m), m);
        }
        return;
      }
      if (p < nf) {
        auto& tab = m.functions[p];
        const int range = m.size(*sig.find_sort(sig.functions[p].result));
        if (!tab.empty() && range == 0) return;
        std::fill(tab.begin(), tab.end(), 0);
        do {
          tick();
          if (passes(p + 1)) assign(p + 1);
        } while (advance(tab, range));
      } else {
        auto& tab = m.relations[p - nf];
        std::fill(tab.begin(), tab.end(), 0);
        do {
          tick();
          if (passes(p + 1)) assign(p + 1);
        } while (advance(tab));
      }
    };
    if (passes(0)) assign(0);

    std::size_t s = 0;
    while (s < sizes.size() && ++sizes[s] > static_cast<int>(max_size)) sizes[s++] = 0;
    if (s == sizes.size()) break;
  }

  std::vector<FinStructure> out;
  for (auto& [key, m] : found) out.push_back(std::move(m));
  return out;
}

}  // namespace sitelab::geolog
