#include "sitelab/geolog/ast.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sitelab/error.hpp"

namespace sitelab::geolog {

namespace {

template <class T>
std::optional<int> find_named(const std::vector<T>& items, std::string_view name) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string where(const SourceSpan& s) {
  if (s.line == 0) return "";
  return " (line " + std::to_string(s.line) + ", column " + std::to_string(s.column) + ")";
}

const std::string* lookup(const Context& ctx, const std::string& var) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    if (it->first == var) return &it->second;
  }
  return nullptr;
}

void require_sort(const Signature& sig, const std::string& sort, const SourceSpan& span) {
  if (!sig.find_sort(sort)) throw Error("UnknownSymbol", "unknown sort '" + sort + "'" + where(span));
}

void collect_free_term(const Context& bound, const Context& outer, const Term& t,
                       std::map<std::string, std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (lookup(bound, t.name)) return;
    const std::string* s = lookup(outer, t.name);
    out.emplace(t.name, s ? *s : std::string());
    return;
  }
  for (const auto& a : t.args) collect_free_term(bound, outer, a, out);
}

}  // namespace

std::optional<int> Signature::find_sort(std::string_view name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (sorts[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}
std::optional<int> Signature::find_function(std::string_view name) const { return find_named(functions, name); }
std::optional<int> Signature::find_relation(std::string_view name) const { return find_named(relations, name); }

Formula Formula::top() { return Formula{Kind::Top, {}, {}, {}, {}, {}}; }
Formula Formula::bot() { return Formula{Kind::Bot, {}, {}, {}, {}, {}}; }
Formula Formula::eq(Term a, Term b) { return Formula{Kind::Eq, {}, {}, {std::move(a), std::move(b)}, {}, {}}; }
Formula Formula::rel(std::string r, std::vector<Term> args) {
  return Formula{Kind::Rel, std::move(r), {}, std::move(args), {}, {}};
}
Formula Formula::conj(std::vector<Formula> parts) { return Formula{Kind::And, {}, {}, {}, std::move(parts), {}}; }
Formula Formula::disj(std::vector<Formula> parts) { return Formula{Kind::Or, {}, {}, {}, std::move(parts), {}}; }
Formula Formula::exists(std::string var, std::string sort, Formula body) {
  return Formula{Kind::Exists, std::move(var), std::move(sort), {}, {std::move(body)}, {}};
}
Formula Formula::forall(std::string var, std::string sort, Formula body) {
  return Formula{Kind::Forall, std::move(var), std::move(sort), {}, {std::move(body)}, {}};
}
Formula Formula::negation(Formula body) { return Formula{Kind::Not, {}, {}, {}, {std::move(body)}, {}}; }
Formula Formula::implies(Formula a, Formula b) {
  return Formula{Kind::Implies, {}, {}, {}, {std::move(a), std::move(b)}, {}};
}

bool Formula::is_geometric() const {
  if (kind == Kind::Not || kind == Kind::Implies || kind == Kind::Forall) return false;
  return std::all_of(children.begin(), children.end(), [](const Formula& c) { return c.is_geometric(); });
}

std::string_view to_string(Fragment f) {
  switch (f) {
    case Fragment::Cartesian: return "cartesian";
    case Fragment::Regular: return "regular";
    case Fragment::Coherent: return "coherent";
    case Fragment::Geometric: return "geometric";
    case Fragment::FirstOrder: return "first-order";
  }
  return "?";
}

Fragment detect_fragment(const Theory& t) {
  for (const auto& ax : t.axioms) {
    if (!ax.premise.is_geometric() || !ax.conclusion.is_geometric()) return Fragment::FirstOrder;
  }
  return Fragment::Geometric;
}

void require_geometric(const Theory& t) {
  for (const auto& ax : t.axioms) {
    if (!ax.premise.is_geometric() || !ax.conclusion.is_geometric()) {
      throw Error("NotGeometric", "axiom" + (ax.label.empty() ? std::string() : " '" + ax.label + "'") +
                                      " uses not, implies or forall" + where(ax.span));
    }
  }
}

std::string sort_of(const Signature& sig, const Context& ctx, const Term& t) {
  if (t.kind == Term::Kind::Var) {
    const std::string* s = lookup(ctx, t.name);
    if (!s) throw Error("UnknownSymbol", "unbound variable '" + t.name + "'" + where(t.span));
    return *s;
  }
  auto fi = sig.find_function(t.name);
  if (!fi) throw Error("UnknownSymbol", "unknown function '" + t.name + "'" + where(t.span));
  const FunctionSymbol& fn = sig.functions[*fi];
  if (fn.args.size() != t.args.size()) {
    throw Error("SortError", "'" + t.name + "' expects " + std::to_string(fn.args.size()) + " arguments, got " +
                                 std::to_string(t.args.size()) + where(t.span));
  }
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    std::string s = sort_of(sig, ctx, t.args[i]);
    if (s != fn.args[i]) {
      throw Error("SortError", "argument " + std::to_string(i + 1) + " of '" + t.name + "' has sort " + s +
                                   ", expected " + fn.args[i] + where(t.args[i].span));
    }
  }
  return fn.result;
}

void check_formula(const Signature& sig, const Context& ctx, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top:
    case K::Bot: return;
    case K::Eq: {
      std::string a = sort_of(sig, ctx, f.terms[0]);
      std::string b = sort_of(sig, ctx, f.terms[1]);
      if (a != b) throw Error("SortError", "equation between sorts " + a + " and " + b + where(f.span));
      return;
    }
    case K::Rel: {
      auto ri = sig.find_relation(f.name);
      if (!ri) throw Error("UnknownSymbol", "unknown relation '" + f.name + "'" + where(f.span));
      const RelationSymbol& r = sig.relations[*ri];
      if (r.args.size() != f.terms.size()) {
        throw Error("SortError", "'" + f.name + "' expects " + std::to_string(r.args.size()) + " arguments, got " +
                                     std::to_string(f.terms.size()) + where(f.span));
      }
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        std::string s = sort_of(sig, ctx, f.terms[i]);
        if (s != r.args[i]) {
          throw Error("SortError", "argument " + std::to_string(i + 1) + " of '" + f.name + "' has sort " + s +
                                       ", expected " + r.args[i] + where(f.terms[i].span));
        }
      }
      return;
    }
    case K::Exists:
    case K::Forall: {
      require_sort(sig, f.sort, f.span);
      Context inner = ctx;
      inner.emplace_back(f.name, f.sort);
      check_formula(sig, inner, f.children[0]);
      return;
    }
    default:
      for (const auto& c : f.children) check_formula(sig, ctx, c);
  }
}

void check_theory(const Theory& t) {
  const Signature& sig = t.signature;
  std::set<std::string> seen;
  for (const auto& s : sig.sorts) {
    if (!seen.insert(s).second) throw Error("SortError", "sort '" + s + "' declared twice");
  }
  seen.clear();
  for (const auto& fn : sig.functions) {
    if (!seen.insert(fn.name).second) throw Error("SortError", "function '" + fn.name + "' declared twice");
    for (const auto& s : fn.args) require_sort(sig, s, {});
    require_sort(sig, fn.result, {});
  }
  seen.clear();
  for (const auto& r : sig.relations) {
    if (!seen.insert(r.name).second) throw Error("SortError", "relation '" + r.name + "' declared twice");
    for (const auto& s : r.args) require_sort(sig, s, {});
  }
  for (const auto& ax : t.axioms) {
    std::set<std::string> vars;
    for (const auto& [v, s] : ax.context) {
      require_sort(sig, s, ax.span);
      if (!vars.insert(v).second) throw Error("SortError", "variable '" + v + "' repeated in context" + where(ax.span));
    }
    check_formula(sig, ax.context, ax.premise);
    check_formula(sig, ax.context, ax.conclusion);
  }
}

namespace {

void collect_free(const Signature& sig, Context& bound, const Formula& f, const Context& outer,
                  std::map<std::string, std::string>& out) {
  using K = Formula::Kind;
  for (const auto& t : f.terms) collect_free_term(bound, outer, t, out);
  if (f.kind == K::Exists || f.kind == K::Forall) {
    bound.emplace_back(f.name, f.sort);
    collect_free(sig, bound, f.children[0], outer, out);
    bound.pop_back();
    return;
  }
  for (const auto& c : f.children) collect_free(sig, bound, c, outer, out);
}

}  // namespace

Context free_variables(const Signature& sig, const Context& ctx, const Formula& f) {
  std::map<std::string, std::string> out;
  Context bound;
  collect_free(sig, bound, f, ctx, out);
  return Context(out.begin(), out.end());
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace sitelab::geolog
