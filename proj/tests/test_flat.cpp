#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "sitelab/geolog/flat.hpp"
#include "sitelab/geolog/model.hpp"
#include "sitelab/geolog/parser.hpp"
#include "sitelab/io.hpp"

using namespace sitelab;
using namespace sitelab::geolog;

namespace {

std::string corpus(const std::string& rel) { return std::string(SITELAB_CORPUS_DIR) + "/" + rel; }
FinCategory site(const std::string& name) { return io::load_category(corpus("sites/" + name + ".json")); }

std::vector<std::string> labels(const Theory& t) {
  std::vector<std::string> out;
  for (const auto& a : t.axioms) out.push_back(a.label);
  return out;
}

bool has_label(const Theory& t, const std::string& l) {
  auto ls = labels(t);
  return std::find(ls.begin(), ls.end(), l) != ls.end();
}

}  // namespace

TEST_CASE("mangling") {
  CHECK(mangle("f") == "f");
  CHECK(mangle("id:a") == "id_ca");
  CHECK(mangle("a_b") == "a__b");
  CHECK(mangle("2x") == "x_2x");
  CHECK(mangle("sort") == "x_sort");
  CHECK(mangle("") == "x_");
  CHECK(mangle("a-b") == "a_u002Db");
}

TEST_CASE("flat theory layout") {
  auto c = site("parallel");
  auto j = special_topology(c, SpecialKind::Trivial);
  auto ft = flat_functor_theory(c, j);
  const auto& t = ft.theory;
  CHECK(t.signature.sorts == std::vector<std::string>{"a", "b"});
  CHECK(ft.dictionary.function_of_arrow[c.arrow_index("id:a")] == "id_ca");
  CHECK(has_label(t, "id_a"));
  CHECK(has_label(t, "nonempty"));
  CHECK(has_label(t, "cone_a_b"));
  CHECK(has_label(t, "eq_f_g"));
  CHECK_FALSE(has_label(t, "eq_g_f"));
  CHECK(has_label(t, "cover_b"));
  CHECK(t.fragment == Fragment::Geometric);
  CHECK(parse_theory(print_theory(t)) == t);
}

TEST_CASE("all-covers option emits one axiom per cover") {
  auto c = site("arrow");
  auto j = special_topology(c, SpecialKind::Maximal);
  auto ft = flat_functor_theory(c, j, FlatTheoryOptions{true});
  std::size_t covers = 0;
  for (const auto& l : labels(ft.theory)) covers += l.rfind("cover_", 0) == 0;
  CHECK(covers == j.size());
}

TEST_CASE("flatness agrees with the category-of-elements check") {
  for (const char* name : {"terminal", "arrow", "c2", "discrete2", "parallel", "idempotent", "span", "cospan"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      enumerate_set_functors(c, 2, Bounds{}, [&](const SetFunctor& f) {
        CHECK(is_flat_continuous(c, j, f) == testing::naive_flat(c, j, f));
        CHECK(structure_to_functor(c, functor_to_structure(c, f)) == f);
        return true;
      });
    }
  }
}

TEST_CASE("flat functor enumeration is complete and free of duplicates") {
  for (const char* name : {"arrow", "c2", "discrete2", "parallel", "idempotent", "span"}) {
    auto c = site(name);
    CAPTURE(name);
    for (const auto& j : enumerate_topologies(c)) {
      std::vector<SetFunctor> naive;
      enumerate_set_functors(c, 2, Bounds{}, [&](const SetFunctor& f) {
        if (!testing::naive_flat(c, j, f)) return true;
        bool seen = std::any_of(naive.begin(), naive.end(),
                                [&](const SetFunctor& g) { return testing::naive_functor_isomorphic(c, f, g); });
        if (!seen) naive.push_back(f);
        return true;
      });
      auto lib = enumerate_flat_functors(c, j, 2);
      CHECK(lib.size() == naive.size());
      for (const auto& f : lib) CHECK(testing::naive_flat(c, j, f));
    }
  }
}

TEST_CASE("points of small toposes") {
  auto arrow = site("arrow");
  // Sierpinski space has two points
  CHECK(enumerate_flat_functors(arrow, special_topology(arrow, SpecialKind::Trivial), 3).size() == 2);
  CHECK(enumerate_flat_functors(arrow, special_topology(arrow, SpecialKind::Atomic), 3).size() == 1);
  CHECK(enumerate_flat_functors(arrow, special_topology(arrow, SpecialKind::Maximal), 3).empty());
  auto c2 = site("c2");
  auto pts = enumerate_flat_functors(c2, special_topology(c2, SpecialKind::Trivial), 3);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].sizes == std::vector<int>{2});
}

TEST_CASE("models of the flat theory are the flat functors") {
  for (const char* name : {"arrow", "c2", "discrete2", "idempotent"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      auto ft = flat_functor_theory(c, j);
      auto models = enumerate_models(ft.theory, 2, EnumerateOptions{true, false});
      auto points = enumerate_flat_functors(c, j, 2);
      REQUIRE(models.size() == points.size());
      for (std::size_t i = 0; i < models.size(); ++i) {
        CHECK(structure_to_functor(c, models[i]) == points[i]);
      }
    }
  }
}
