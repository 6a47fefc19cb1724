#include <algorithm>
#include <cstdio>
#include <set>

#include "doctest.h"
#include "sitelab/geolog/model.hpp"
#include "sitelab/geolog/morleyize.hpp"
#include "sitelab/geolog/parser.hpp"
#include "sitelab/io.hpp"

using namespace sitelab;
using namespace sitelab::geolog;

namespace {

Theory corpus_theory(const std::string& name) {
  return parse_theory(io::read_text_file(std::string(SITELAB_CORPUS_DIR) + "/theories/" + name + ".theory"));
}

bool is_coherent_formula(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind == K::Not || f.kind == K::Implies || f.kind == K::Forall) return false;
  return std::all_of(f.children.begin(), f.children.end(), is_coherent_formula);
}

}  // namespace

TEST_CASE("the sample theory") {
  auto t = corpus_theory("no_r");
  auto m = morleyize(t);
  CHECK(m.name == "no_r_morleyized");
  CHECK(m.fragment == Fragment::Coherent);
  CHECK(m.signature.functions == t.signature.functions);
  for (const auto& ax : m.axioms) {
    CHECK(is_coherent_formula(ax.premise));
    CHECK(is_coherent_formula(ax.conclusion));
  }
  // subformulas: top, R(x), not R(x), forall x. not R(x)
  CHECK(m.signature.relations.size() == t.signature.relations.size() + 8);
  CHECK(m.axioms.back().label == "ax_empty_r");
  auto reparsed = parse_theory(print_theory(m));
  CHECK(reparsed.signature == m.signature);
  CHECK(reparsed.axioms == m.axioms);
}

TEST_CASE("relation names are hashes of canonical text") {
  auto t = corpus_theory("no_r");
  auto m = morleyize(t);
  auto f = Formula::rel("R", {Term::var("x")});
  auto text = canonical_text(f, {{"x", "A"}});
  char buf[32];
  std::snprintf(buf, sizeof buf, "C_%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  CHECK(m.signature.find_relation(buf).has_value());
  CHECK(canonical_text(f, {{"x", "A"}}) != canonical_text(f, {{"x", "B"}}));
}

TEST_CASE("shared subformulas are introduced once") {
  auto t = parse_theory(
      "theory s sort A rel P : A "
      "axiom[a] (x:A) top |- implies[P(x), P(x)] "
      "axiom[b] (x:A) not P(x) |- not P(x)");
  auto m = morleyize(t);
  // top, P(x), implies[P(x), P(x)], not P(x)
  CHECK(m.signature.relations.size() == 1 + 8);
}

TEST_CASE("models restrict bijectively to the original theory") {
  EnumerateOptions fo;
  fo.allow_first_order = true;
  for (const char* name : {"no_r", "strict_order", "involution", "pointed_graph", "nonempty_set"}) {
    auto t = corpus_theory(name);
    auto m = morleyize(t);
    CAPTURE(name);
    auto original = enumerate_models(t, 2, fo);
    auto extended = enumerate_models(m, 2);
    CHECK(original.size() == extended.size());
    std::set<std::vector<int>> a, b;
    for (const auto& s : original) a.insert(structure_key(s));
    for (const auto& s : extended) b.insert(structure_key(reduct(m.signature, s, t.signature)));
    CHECK(a == b);
  }
}
