#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "sitelab/error.hpp"
#include "sitelab/geolog/model.hpp"
#include "sitelab/geolog/parser.hpp"
#include "sitelab/io.hpp"

using namespace sitelab;
using namespace sitelab::geolog;

namespace {

Theory corpus_theory(const std::string& name) {
  return parse_theory(io::read_text_file(std::string(SITELAB_CORPUS_DIR) + "/theories/" + name + ".theory"));
}

std::vector<std::vector<int>> keys(const std::vector<FinStructure>& ms) {
  std::vector<std::vector<int>> out;
  for (const auto& m : ms) out.push_back(structure_key(m));
  std::sort(out.begin(), out.end());
  return out;
}

const char* kTheories[] = {"equality", "no_r", "strict_order", "involution", "pointed_graph", "nonempty_set"};

}  // namespace

TEST_CASE("model_check agrees with the naive evaluator") {
  for (const char* name : kTheories) {
    auto t = corpus_theory(name);
    CAPTURE(name);
    for (const auto& m : testing::all_structures(t.signature, 2)) {
      CHECK(model_check(t, m).ok == testing::naive_satisfies(t, m));
    }
  }
}

TEST_CASE("enumeration finds exactly the naive models") {
  EnumerateOptions fo;
  fo.allow_first_order = true;
  for (const char* name : kTheories) {
    auto t = corpus_theory(name);
    CAPTURE(name);
    std::vector<FinStructure> naive;
    for (const auto& m : testing::all_structures(t.signature, 2)) {
      if (testing::naive_satisfies(t, m)) naive.push_back(m);
    }
    auto lib = enumerate_models(t, 2, fo);
    CHECK(keys(lib) == keys(naive));
    CHECK(std::is_sorted(lib.begin(), lib.end(),
                         [](const auto& a, const auto& b) { return structure_key(a) < structure_key(b); }));
    fo.up_to_iso = true;
    CHECK(enumerate_models(t, 2, fo).size() == testing::count_iso_classes(t.signature, naive));
    fo.up_to_iso = false;
  }
}

TEST_CASE("isomorphism counts at size three") {
  EnumerateOptions fo{true, true};
  auto order = corpus_theory("strict_order");
  // strict partial orders on at most 3 points: 1 + 1 + 2 + 5
  CHECK(enumerate_models(order, 3, fo).size() == 9);
  auto eq = corpus_theory("equality");
  CHECK(enumerate_models(eq, 3, fo).size() == 4);
}

TEST_CASE("first-order theories need the explicit option") {
  auto t = corpus_theory("no_r");
  try {
    enumerate_models(t, 2);
    FAIL("expected NotGeometric");
  } catch (const Error& e) {
    CHECK(e.name() == "NotGeometric");
  }
}

TEST_CASE("falsifying assignments are reported") {
  auto t = corpus_theory("strict_order");
  auto m = blank_structure(t.signature, {2});
  m.relations[0] = {1, 0, 0, 0};  // L(0, 0)
  auto r = model_check(t, m);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == 0);
  REQUIRE(r.falsifying.has_value());
  CHECK(*r.falsifying == Assignment{{"x", "0"}});
}

TEST_CASE("empty carriers make sequents vacuous") {
  auto t = corpus_theory("nonempty_set");
  auto empty = blank_structure(t.signature, {0});
  CHECK_FALSE(model_check(t, empty).ok);
  auto eq = parse_theory("theory t sort A axiom (x:A) top |- bot");
  CHECK(model_check(eq, blank_structure(eq.signature, {0})).ok);
}

TEST_CASE("canonical forms identify isomorphic structures") {
  auto t = corpus_theory("involution");
  auto all = testing::all_structures(t.signature, 3);
  for (std::size_t i = 0; i < all.size(); i += 3) {
    for (std::size_t k = i; k < all.size() && k < i + 20; ++k) {
      bool iso = testing::naive_isomorphic(t.signature, all[i], all[k]);
      CHECK(iso == (canonical_form(t.signature, all[i]) == canonical_form(t.signature, all[k])));
    }
  }
}

TEST_CASE("reduct keeps the named symbols") {
  auto big = corpus_theory("pointed_graph");
  auto small = parse_theory("theory s sort V rel E : V V");
  auto m = blank_structure(big.signature, {2});
  m.relations[0] = {1, 1, 0, 0};
  auto r = reduct(big.signature, m, small.signature);
  CHECK(r.relations.size() == 1);
  CHECK(r.functions.empty());
  CHECK(r.relations[0] == m.relations[0]);
}

TEST_CASE("shape mismatches are rejected") {
  auto t = corpus_theory("involution");
  auto m = blank_structure(t.signature, {2});
  m.functions[0] = {0, 5};
  try {
    require_matches(t.signature, m);
    FAIL("expected SignatureMismatch");
  } catch (const Error& e) {
    CHECK(e.name() == "SignatureMismatch");
  }
}

TEST_CASE("search budget guard") {
  auto t = corpus_theory("strict_order");
  Bounds b;
  b.search_budget = 10;
  try {
    enumerate_models(t, 3, EnumerateOptions{false, true}, b);
    FAIL("expected ExplosionGuard");
  } catch (const Error& e) {
    CHECK(e.name() == "ExplosionGuard");
  }
}
