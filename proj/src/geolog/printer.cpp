#include "sitelab/geolog/parser.hpp"

namespace sitelab::geolog {

namespace {

std::string joined(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string print_term(const Term& t) {
  if (t.kind == Term::Kind::Var) return t.name;
  std::vector<std::string> args;
  for (const auto& a : t.args) args.push_back(print_term(a));
  return t.name + "(" + joined(args, ", ") + ")";
}

std::string print_formula(const Formula& f) {
  using K = Formula::Kind;
  std::vector<std::string> parts;
  switch (f.kind) {
    case K::Top: return "top";
    case K::Bot: return "bot";
    case K::Eq: return print_term(f.terms[0]) + " = " + print_term(f.terms[1]);
    case K::Rel:
      for (const auto& t : f.terms) parts.push_back(print_term(t));
      return f.name + "(" + joined(parts, ", ") + ")";
    case K::And:
    case K::Or:
    case K::Implies:
      for (const auto& c : f.children) parts.push_back(print_formula(c));
      return std::string(f.kind == K::And ? "and" : f.kind == K::Or ? "or" : "implies") + "[" + joined(parts, ", ") +
             "]";
    case K::Not: return "not " + print_formula(f.children[0]);
    case K::Exists:
    case K::Forall:
      return std::string(f.kind == K::Exists ? "exists " : "forall ") + f.name + ":" + f.sort + ". " +
             print_formula(f.children[0]);
  }
  return "?";
}

std::string print_theory(const Theory& t) {
  std::string out;
  if (!t.name.empty()) out += "theory " + t.name + "\n";
  for (const auto& s : t.signature.sorts) out += "sort " + s + "\n";
  for (const auto& fn : t.signature.functions) {
    out += "fun " + fn.name + " :";
    for (const auto& a : fn.args) out += " " + a;
    out += " -> " + fn.result + "\n";
  }
  for (const auto& r : t.signature.relations) {
    out += "rel " + r.name + " :";
    for (const auto& a : r.args) out += " " + a;
    out += "\n";
  }
  for (const auto& ax : t.axioms) {
    out += "axiom";
    if (!ax.label.empty()) out += "[" + ax.label + "]";
    std::vector<std::string> ctx;
    for (const auto& [v, s] : ax.context) ctx.push_back(v + ":" + s);
    out += " (" + joined(ctx, ", ") + ") " + print_formula(ax.premise) + " |- " + print_formula(ax.conclusion) + "\n";
  }
  return out;
}

}  // namespace sitelab::geolog
