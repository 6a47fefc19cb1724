#include <algorithm>
#include <functional>

#include "doctest.h"
#include "sitelab/bridge.hpp"
#include "sitelab/error.hpp"
#include "sitelab/geolog/parser.hpp"
#include "sitelab/io.hpp"

using namespace sitelab;

namespace {

std::string corpus(const std::string& rel) { return std::string(SITELAB_CORPUS_DIR) + "/" + rel; }
FinCategory site(const std::string& name) { return io::load_category(corpus("sites/" + name + ".json")); }
GrothendieckTopology topo(const FinCategory& c, const std::string& name) {
  return io::topology_from_json(c, io::read_json_file(corpus("topologies/" + name + ".json")));
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

}  // namespace

TEST_CASE("quotient theories") {
  auto c = site("arrow");
  auto trivial = topo(c, "arrow_trivial");
  auto atomic = topo(c, "arrow_atomic");
  auto q = quotient_theory_for_topology(c, trivial, atomic);
  CHECK(q.added == std::vector<std::string>{"cover_b"});
  CHECK(q.theory.theory == geolog::flat_functor_theory(c, atomic).theory);
  CHECK(error_of([&] { quotient_theory_for_topology(c, atomic, trivial); }) == "NotContaining");
  CHECK(quotient_theory_for_topology(c, atomic, atomic).added.empty());
}

TEST_CASE("booleanization") {
  auto c = site("arrow");
  auto b = booleanization(c, topo(c, "arrow_trivial"));
  CHECK(b.larger == topo(c, "arrow_atomic"));
  auto again = booleanization(c, b.larger);
  CHECK(again.larger == b.larger);
  CHECK(again.added.empty());
  auto fp = fingerprint(c, b.larger, 3);
  CHECK(fp.two_valued);
  CHECK(fp.boolean);
  CHECK(fp.atomic);
}

TEST_CASE("booleanization is boolean on every corpus site") {
  for (const char* name : {"arrow", "c2", "discrete2", "chain3", "span", "cospan", "idempotent", "parallel"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      auto b = booleanization(c, j);
      CHECK(j.subset_of(b.larger));
      CHECK(topos_invariant(c, b.larger, ToposInvariant::Boolean));
    }
  }
}

TEST_CASE("DeMorganization") {
  auto arrow = site("arrow");
  auto d = demorganization_topology(arrow, topo(arrow, "arrow_trivial"));
  CHECK(d.topology == topo(arrow, "arrow_trivial"));
  CHECK(d.candidates.size() == 2);

  auto cospan = site("cospan");
  auto j = special_topology(cospan, SpecialKind::Trivial);
  auto dm = demorganization_topology(cospan, j);
  CHECK(topos_invariant(cospan, dm.topology, ToposInvariant::DeMorgan));
  CHECK(j.subset_of(dm.topology));
  CHECK(dm.topology.subset_of(special_topology(cospan, SpecialKind::DenseRelative, j)));
  for (const auto& k : dm.candidates) CHECK(dm.topology.subset_of(k));
  CHECK_FALSE(dm.topology == j);
}

TEST_CASE("Fraisse analysis") {
  auto chain = fraisse_report(site("chain3"));
  CHECK(chain.amalgamation.holds);
  CHECK(chain.joint_embedding.holds);
  CHECK(chain.atomic_site.has_value());
  CHECK(chain.two_valued);
  CHECK(chain.atomic_topos);
  CHECK(chain.conclusion() == "complete-and-atomic");

  auto d2 = fraisse_report(site("discrete2"));
  CHECK(d2.amalgamation.holds);
  CHECK_FALSE(d2.joint_embedding.holds);
  CHECK_FALSE(d2.two_valued);
  CHECK(d2.conclusion() == "not-applicable");

  auto span = fraisse_report(site("span"));
  CHECK_FALSE(span.amalgamation.holds);
  CHECK_FALSE(span.atomic_site.has_value());
  CHECK_FALSE(span.complete_and_atomic);
}

TEST_CASE("structure morphisms") {
  auto t = geolog::parse_theory("theory e sort A");
  auto two = geolog::blank_structure(t.signature, {2});
  auto three = geolog::blank_structure(t.signature, {3});
  CHECK(structure_morphisms(t.signature, two, three, HomKind::Homomorphism).size() == 9);
  CHECK(structure_morphisms(t.signature, two, three, HomKind::Embedding).size() == 6);
  CHECK(structure_morphisms(t.signature, three, two, HomKind::Embedding).empty());

  auto r = geolog::parse_theory("theory r sort A rel R : A");
  auto m = geolog::blank_structure(r.signature, {2});
  m.relations[0] = {1, 0};
  // embeddings must reflect R
  CHECK(structure_morphisms(r.signature, m, m, HomKind::Embedding).size() == 1);
  CHECK(structure_morphisms(r.signature, m, m, HomKind::Homomorphism).size() == 2);
}

TEST_CASE("homogeneity relative to injection categories") {
  auto small = io::load_realization(corpus("fpcat/injections_le2.json"));
  auto big = io::load_realization(corpus("fpcat/injections_le3.json"));
  auto m = io::structure_from_json(small.theory.signature, io::read_json_file(corpus("structures/set2.json")));
  CHECK(small.kind == HomKind::Embedding);
  auto ok = homogeneity_check(small.theory.signature, m, small.fpcat, small.realization, small.kind);
  CHECK(ok.homogeneous);
  auto bad = homogeneity_check(big.theory.signature, m, big.fpcat, big.realization, big.kind);
  CHECK_FALSE(bad.homogeneous);
  REQUIRE(bad.failure.has_value());
  int j = bad.failure->arrow;
  CHECK(big.fpcat.object_name(big.fpcat.cod(j)) == "s3");

  auto m3 = io::structure_from_json(big.theory.signature, io::read_json_file(corpus("structures/set3.json")));
  CHECK(homogeneity_check(big.theory.signature, m3, big.fpcat, big.realization, big.kind).homogeneous);
}

TEST_CASE("inconsistent realizations are rejected") {
  auto r = io::load_realization(corpus("fpcat/injections_le2.json"));
  auto broken = r.realization;
  int j = r.fpcat.arrow_index("j12_0");
  broken.arrows[j][0] = {5};
  CHECK(error_of([&] { require_realization(r.theory.signature, r.fpcat, broken, r.kind); }) ==
        "InconsistentRealization");
  auto swapped = r.realization;
  int t = r.fpcat.arrow_index("j22_10");
  swapped.arrows[t][0] = {0, 0};
  CHECK(error_of([&] { require_realization(r.theory.signature, r.fpcat, swapped, HomKind::Embedding); }) ==
        "InconsistentRealization");
}

TEST_CASE("Morita comparison") {
  auto c2 = site("c2");
  auto d2 = site("discrete2");
  auto v = morita_fingerprint_compare(c2, special_topology(c2, SpecialKind::Trivial), d2,
                                      special_topology(d2, SpecialKind::Trivial), 3);
  CHECK(v.refuted);
  CHECK(std::find(v.differing.begin(), v.differing.end(), "subterminal_count") != v.differing.end());
  auto arrow = site("arrow");
  auto same = morita_fingerprint_compare(arrow, topo(arrow, "arrow_atomic"), site("terminal"),
                                         special_topology(site("terminal"), SpecialKind::Trivial), 3);
  CHECK_FALSE(same.refuted);
  CHECK(same.differing.empty());
}
