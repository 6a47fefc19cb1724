#include "sitelab/geolog/morleyize.hpp"

#include <cstdio>
#include <map>

#include "sitelab/error.hpp"
#include "sitelab/geolog/parser.hpp"

namespace sitelab::geolog {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Context extended(Context ctx, const std::string& var, const std::string& sort) {
  ctx.emplace_back(var, sort);
  return ctx;
}

class Morleyizer {
 public:
  explicit Morleyizer(const Theory& t) : in_(t) {
    out_.name = t.name.empty() ? "morleyized" : t.name + "_morleyized";
    out_.signature = t.signature;
    out_.fragment = Fragment::Coherent;
  }

  Theory run() {
    for (std::size_t i = 0; i < in_.axioms.size(); ++i) {
      const Sequent& ax = in_.axioms[i];
      Formula p = classify(ax.premise, ax.context).c;
      Formula q = classify(ax.conclusion, ax.context).c;
      translated_.push_back(Sequent{"ax_" + (ax.label.empty() ? std::to_string(i) : ax.label), ax.context,
                                    std::move(p), std::move(q), {}});
    }
    for (auto& s : translated_) out_.axioms.push_back(std::move(s));
    return out_;
  }

 private:
  struct Classified {
    Formula c;  // C_h applied to the free variables
    Formula d;  // D_h applied to the free variables
  };

  const Theory& in_;
  Theory out_;
  std::vector<Sequent> translated_;
  std::map<std::string, std::string> hash_of_;  // canonical text -> hex
  std::map<std::string, std::string> text_of_;  // hex -> canonical text

  void add(const std::string& label, const Context& ctx, Formula p, Formula q) {
    out_.axioms.push_back(Sequent{label, ctx, std::move(p), std::move(q), {}});
  }

  Classified classify(const Formula& f, const Context& ctx) {
    using K = Formula::Kind;
    const Context fv = free_variables(in_.signature, ctx, f);
    const std::string text = canonical_text(f, fv);
    std::vector<Term> args;
    std::vector<std::string> arg_sorts;
    for (const auto& [v, s] : fv) {
      args.push_back(Term::var(v));
      arg_sorts.push_back(s);
    }
    auto found = hash_of_.find(text);
    if (found != hash_of_.end()) {
      return {Formula::rel("C_" + found->second, args), Formula::rel("D_" + found->second, args)};
    }

    // children first, so their relations are declared earlier
    std::vector<Classified> kids;
    if (f.kind == K::Exists || f.kind == K::Forall) {
      kids.push_back(classify(f.children[0], extended(ctx, f.name, f.sort)));
    } else {
      for (const auto& ch : f.children) kids.push_back(classify(ch, ctx));
    }

    const std::string h = hex64(fnv1a64(text));
    if (text_of_.count(h)) throw Error("InternalError", "subformula hash collision on " + h);
    hash_of_.emplace(text, h);
    text_of_.emplace(h, text);
    out_.signature.relations.push_back(RelationSymbol{"C_" + h, arg_sorts});
    out_.signature.relations.push_back(RelationSymbol{"D_" + h, arg_sorts});
    Formula c = Formula::rel("C_" + h, args);
    Formula d = Formula::rel("D_" + h, args);

    add("compl_" + h + "_0", fv, Formula::conj({c, d}), Formula::bot());
    add("compl_" + h + "_1", fv, Formula::top(), Formula::disj({c, d}));

    const std::string def = "def_" + h + "_";
    switch (f.kind) {
      case K::Top: add(def + "0", fv, Formula::top(), c); break;
      case K::Bot: add(def + "0", fv, c, Formula::bot()); break;
      case K::Eq:
      case K::Rel:
        add(def + "0", fv, c, f);
        add(def + "1", fv, f, c);
        break;
      case K::And: {
        std::vector<Formula> parts;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          add(def + std::to_string(i), fv, c, kids[i].c);
          parts.push_back(kids[i].c);
        }
        add(def + std::to_string(kids.size()), fv, Formula::conj(std::move(parts)), c);
        break;
      }
      case K::Or: {
        std::vector<Formula> parts;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          add(def + std::to_string(i), fv, kids[i].c, c);
          parts.push_back(kids[i].c);
        }
        add(def + std::to_string(kids.size()), fv, c, Formula::disj(std::move(parts)));
        break;
      }
      case K::Not:
        add(def + "0", fv, c, kids[0].d);
        add(def + "1", fv, kids[0].d, c);
        break;
      case K::Implies:
        add(def + "0", fv, c, Formula::disj({kids[0].d, kids[1].c}));
        add(def + "1", fv, kids[0].d, c);
        add(def + "2", fv, kids[1].c, c);
        break;
      case K::Exists: {
        const Context inner = extended(fv, f.name, f.sort);
        add(def + "0", fv, c, Formula::exists(f.name, f.sort, kids[0].c));
        add(def + "1", inner, kids[0].c, c);
        break;
      }
      case K::Forall: {
        const Context inner = extended(fv, f.name, f.sort);
        add(def + "0", inner, c, kids[0].c);
        add(def + "1", fv, d, Formula::exists(f.name, f.sort, kids[0].d));
        add(def + "2", inner, kids[0].d, d);
        break;
      }
    }
    return {c, d};
  }
};

}  // namespace

std::string canonical_text(const Formula& f, const Context& free) {
  std::string out = print_formula(f) + " |";
  for (const auto& [v, s] : free) out += " " + v + ":" + s;
  return out;
}

Theory morleyize(const Theory& t) {
  check_theory(t);
  return Morleyizer(t).run();
}

}  // namespace sitelab::geolog
