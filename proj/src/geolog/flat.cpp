#include "sitelab/geolog/flat.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <set>

namespace sitelab::geolog {

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "theory", "sort", "fun", "rel", "axiom", "top", "bot", "and", "or", "exists", "not", "implies", "forall"};

Signature flat_signature(const FinCategory& c, FlatDictionary& dict) {
  Signature sig;
  for (int o = 0; o < c.object_count(); ++o) {
    dict.sort_of_object.push_back(mangle(c.object_name(o)));
    sig.sorts.push_back(dict.sort_of_object.back());
  }
  for (int f = 0; f < c.arrow_count(); ++f) {
    dict.function_of_arrow.push_back(mangle(c.arrow_name(f)));
    sig.functions.push_back(FunctionSymbol{dict.function_of_arrow.back(), {dict.sort_of_object[c.dom(f)]},
                                           dict.sort_of_object[c.cod(f)]});
  }
  return sig;
}

}  // namespace

std::string mangle(std::string_view id) {
  std::string out;
  for (unsigned char ch : id) {
    if (std::isalnum(ch)) {
      out += static_cast<char>(ch);
    } else if (ch == '_') {
      out += "__";
    } else if (ch == ':') {
      out += "_c";
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "_u%04X", ch);
      out += buf;
    }
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])) || kReserved.count(out)) out = "x_" + out;
  return out;
}

FlatTheory flat_functor_theory(const FinCategory& c, const GrothendieckTopology& j, const FlatTheoryOptions& opts) {
  FlatTheory out;
  Theory& t = out.theory;
  t.name = "flat_functors";
  t.signature = flat_signature(c, out.dictionary);
  const auto& sort = out.dictionary.sort_of_object;
  const auto& fn = out.dictionary.function_of_arrow;
  auto apply = [&](int f, Term arg) { return Term::app(fn[f], {std::move(arg)}); };
  const Term x = Term::var("x");
  const Term y = Term::var("y");
  const Term z = Term::var("z");

  for (int o = 0; o < c.object_count(); ++o) {
    t.axioms.push_back(
        Sequent{"id_" + sort[o], {{"x", sort[o]}}, Formula::top(), Formula::eq(apply(c.identity(o), x), x), {}});
  }
  for (int g = 0; g < c.arrow_count(); ++g) {
    for (int h : c.arrows_from(c.cod(g))) {
      const int f = c.after(h, g);
      t.axioms.push_back(Sequent{"comp_" + fn[g] + "_" + fn[h], {{"x", sort[c.dom(g)]}}, Formula::top(),
                                 Formula::eq(apply(f, x), apply(h, apply(g, x))), {}});
    }
  }
  {
    std::vector<Formula> parts;
    for (int o = 0; o < c.object_count(); ++o) parts.push_back(Formula::exists("x", sort[o], Formula::top()));
    t.axioms.push_back(Sequent{"nonempty", {}, Formula::top(), Formula::disj(std::move(parts)), {}});
  }
  for (int a = 0; a < c.object_count(); ++a) {
    for (int b = 0; b < c.object_count(); ++b) {
      std::vector<Formula> parts;
      for (int f : c.arrows_into(a)) {
        for (int g : c.arrows_into(b)) {
          if (c.dom(f) != c.dom(g)) continue;
          parts.push_back(Formula::exists(
              "z", sort[c.dom(f)], Formula::conj({Formula::eq(apply(f, z), x), Formula::eq(apply(g, z), y)})));
        }
      }
      t.axioms.push_back(Sequent{"cone_" + sort[a] + "_" + sort[b], {{"x", sort[a]}, {"y", sort[b]}}, Formula::top(),
                                 Formula::disj(std::move(parts)), {}});
    }
  }
  for (int f = 0; f < c.arrow_count(); ++f) {
    for (int g = f + 1; g < c.arrow_count(); ++g) {
      if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      std::vector<Formula> parts;
      for (int h : c.arrows_into(c.dom(f))) {
        if (c.after(f, h) == c.after(g, h)) parts.push_back(Formula::exists("z", sort[c.dom(h)], Formula::eq(apply(h, z), x)));
      }
      t.axioms.push_back(Sequent{"eq_" + fn[f] + "_" + fn[g], {{"x", sort[c.dom(f)]}},
                                 Formula::eq(apply(f, x), apply(g, x)), Formula::disj(std::move(parts)), {}});
    }
  }
  for (int o = 0; o < c.object_count(); ++o) {
    std::vector<ArrowSet> covers;
    if (opts.all_covers) {
      covers = j.at(o);
    } else {
      ArrowSet least = c.maximal_sieve(o);
      for (ArrowSet s : j.at(o)) least = least & s;
      covers.push_back(least);
    }
    for (std::size_t k = 0; k < covers.size(); ++k) {
      std::vector<Formula> parts;
      for (int f : covers[k].members()) parts.push_back(Formula::exists("y", sort[c.dom(f)], Formula::eq(apply(f, y), x)));
      std::string label = "cover_" + sort[o];
      if (opts.all_covers) label += "_" + std::to_string(k);
      t.axioms.push_back(Sequent{label, {{"x", sort[o]}}, Formula::top(), Formula::disj(std::move(parts)), {}});
    }
  }
  t.fragment = Fragment::Geometric;
  return out;
}

bool is_flat_continuous(const FinCategory& c, const GrothendieckTopology& j, const SetFunctor& F) {
  const int n = c.object_count();
  bool nonempty = false;
  for (int o = 0; o < n; ++o) nonempty = nonempty || F.sizes[o] > 0;
  if (!nonempty) return false;

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int x = 0; x < F.sizes[a]; ++x) {
        for (int y = 0; y < F.sizes[b]; ++y) {
          bool cone = false;
          for (int f : c.arrows_into(a)) {
            for (int g : c.arrows_into(b)) {
              if (c.dom(f) != c.dom(g)) continue;
              for (int w = 0; w < F.sizes[c.dom(f)] && !cone; ++w) cone = F.action[f][w] == x && F.action[g][w] == y;
            }
          }
          if (!cone) return false;
        }
      }
    }
  }

  for (int f = 0; f < c.arrow_count(); ++f) {
    for (int g = 0; g < c.arrow_count(); ++g) {
      if (f == g || c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      for (int x = 0; x < F.sizes[c.dom(f)]; ++x) {
        if (F.action[f][x] != F.action[g][x]) continue;
        bool equalized = false;
        for (int h : c.arrows_into(c.dom(f))) {
          if (c.after(f, h) != c.after(g, h)) continue;
          for (int w = 0; w < F.sizes[c.dom(h)] && !equalized; ++w) equalized = F.action[h][w] == x;
        }
        if (!equalized) return false;
      }
    }
  }

  for (int o = 0; o < n; ++o) {
    for (ArrowSet s : j.at(o)) {
      for (int x = 0; x < F.sizes[o]; ++x) {
        bool hit = false;
        for (int f : s.members()) {
          for (int w = 0; w < F.sizes[c.dom(f)] && !hit; ++w) hit = F.action[f][w] == x;
        }
        if (!hit) return false;
      }
    }
  }
  return true;
}

FinStructure functor_to_structure(const FinCategory& c, const SetFunctor& f) {
  FinStructure m;
  for (int o = 0; o < c.object_count(); ++o) {
    std::vector<std::string> names;
    for (int k = 0; k < f.sizes[o]; ++k) names.push_back(std::to_string(k));
    m.elements.push_back(std::move(names));
  }
  m.functions = f.action;
  return m;
}

SetFunctor structure_to_functor(const FinCategory& c, const FinStructure& m) {
  SetFunctor f;
  for (int o = 0; o < c.object_count(); ++o) f.sizes.push_back(m.size(o));
  f.action = m.functions;
  return f;
}

std::vector<SetFunctor> enumerate_flat_functors(const FinCategory& c, const GrothendieckTopology& j,
                                                std::size_t max_size, const Bounds& bounds) {
  FlatDictionary dict;
  const Signature sig = flat_signature(c, dict);
  std::map<std::vector<int>, SetFunctor> found;
  enumerate_set_functors(c, max_size, bounds, [&](const SetFunctor& f) {
    if (is_flat_continuous(c, j, f)) {
      FinStructure canon = canonical_form(sig, functor_to_structure(c, f));
      found.emplace(structure_key(canon), structure_to_functor(c, canon));
    }
    return true;
  });
  std::vector<SetFunctor> out;
  for (auto& [key, f] : found) out.push_back(std::move(f));
  return out;
}

}  // namespace sitelab::geolog
