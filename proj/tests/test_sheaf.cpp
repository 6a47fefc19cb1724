#include <algorithm>
#include <functional>

#include "doctest.h"
#include "sitelab/error.hpp"
#include "sitelab/io.hpp"
#include "sitelab/sheaf.hpp"

using namespace sitelab;

namespace {

std::string corpus(const std::string& rel) { return std::string(SITELAB_CORPUS_DIR) + "/" + rel; }
FinCategory site(const std::string& name) { return io::load_category(corpus("sites/" + name + ".json")); }
GrothendieckTopology topo(const FinCategory& c, const std::string& name) {
  return io::topology_from_json(c, io::read_json_file(corpus("topologies/" + name + ".json")));
}
Presheaf presheaf(const FinCategory& c, const std::string& name) {
  return io::presheaf_from_json(c, io::read_json_file(corpus("presheaves/" + name + ".json")));
}

// Every matching family on every cover has exactly one amalgamation.
bool naive_sheaf(const FinCategory& c, const GrothendieckTopology& j, const Presheaf& p) {
  for (int o = 0; o < c.object_count(); ++o) {
    for (ArrowSet s : j.at(o)) {
      auto arrows = s.members();
      std::vector<int> pick(arrows.size(), 0);
      std::function<bool(std::size_t)> go = [&](std::size_t k) {
        if (k < arrows.size()) {
          for (int y = 0; y < p.size(c.dom(arrows[k])); ++y) {
            pick[k] = y;
            if (!go(k + 1)) return false;
          }
          return true;
        }
        for (std::size_t i = 0; i < arrows.size(); ++i) {
          for (int g : c.arrows_into(c.dom(arrows[i]))) {
            int fg = c.after(arrows[i], g);
            auto at = std::find(arrows.begin(), arrows.end(), fg) - arrows.begin();
            if (p.restrict(g, pick[i]) != pick[at]) return true;  // not matching
          }
        }
        int amalgamations = 0;
        for (int x = 0; x < p.size(o); ++x) {
          bool ok = true;
          for (std::size_t i = 0; i < arrows.size(); ++i) ok = ok && p.restrict(arrows[i], x) == pick[i];
          amalgamations += ok;
        }
        return amalgamations == 1;
      };
      if (!go(0)) return false;
    }
  }
  return true;
}

std::vector<Presheaf> test_presheaves(const FinCategory& c) {
  std::vector<Presheaf> out{terminal_presheaf(c)};
  for (int o = 0; o < c.object_count(); ++o) out.push_back(representable(c, o));
  return out;
}

}  // namespace

TEST_CASE("representables and the terminal presheaf are functorial") {
  for (const char* name : {"arrow", "c2", "chain3", "parallel", "square", "idempotent"}) {
    auto c = site(name);
    for (const auto& p : test_presheaves(c)) CHECK_NOTHROW(require_presheaf(c, p));
    for (int o = 0; o < c.object_count(); ++o) {
      CHECK(representable(c, o).size(o) == static_cast<int>(c.hom(o, o).size()));
    }
  }
}

TEST_CASE("non-functorial presheaf is rejected") {
  auto c = site("c2");
  Presheaf p;
  p.elements = {{"x", "y"}};
  p.action = {{0, 1}, {0, 0}};  // g acts as a constant but g∘g = id
  int g = c.arrow_index("g");
  p.action[g] = {0, 0};
  p.action[c.identity(0)] = {0, 1};
  try {
    require_presheaf(c, p);
    FAIL("expected NotFunctorial");
  } catch (const Error& e) {
    CHECK(e.name() == "NotFunctorial");
  }
}

TEST_CASE("sheaf condition agrees with the naive check") {
  for (const char* name : {"arrow", "c2", "discrete2", "chain3", "idempotent", "parallel", "span"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      for (const auto& p : test_presheaves(c)) {
        CHECK(is_sheaf(c, j, p).ok == naive_sheaf(c, j, p));
        auto a = sheafify(c, j, p);
        CHECK(naive_sheaf(c, j, a.sheaf));
      }
    }
  }
}

TEST_CASE("the two-over-one presheaf is not an atomic sheaf") {
  auto c = site("arrow");
  auto p = presheaf(c, "arrow_two_over_one");
  auto r = is_sheaf(c, topo(c, "arrow_atomic"), p);
  CHECK_FALSE(r.ok);
  REQUIRE(r.failure.has_value());
  CHECK(r.amalgamations == 2);
  CHECK(is_sheaf(c, topo(c, "arrow_trivial"), p).ok);
  auto a = sheafify(c, topo(c, "arrow_atomic"), p);
  CHECK(a.sheaf.size(0) == 1);
  CHECK(a.sheaf.size(1) == 1);
}

TEST_CASE("sheafification has the universal property on test sheaves") {
  for (const char* name : {"arrow", "c2", "chain3", "parallel"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      std::vector<Presheaf> sheaves;
      for (const auto& p : test_presheaves(c)) sheaves.push_back(sheafify(c, j, p).sheaf);
      for (const auto& p : test_presheaves(c)) {
        auto a = sheafify(c, j, p);
        for (const auto& f : sheaves) {
          CHECK(natural_transformations(c, p, f).size() == natural_transformations(c, a.sheaf, f).size());
        }
        // sheafifying a sheaf changes nothing up to isomorphism
        CHECK(find_isomorphism(c, a.sheaf, sheafify(c, j, a.sheaf).sheaf).has_value());
      }
    }
  }
}

TEST_CASE("classifier fibers count subobjects of representables") {
  for (const char* name : {"arrow", "c2", "discrete2", "chain3", "span", "cospan", "idempotent"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      auto omega = classifier(c, j);
      CHECK(is_sheaf(c, j, omega.presheaf).ok);
      for (int o = 0; o < c.object_count(); ++o) {
        auto y = sheafify(c, j, representable(c, o)).sheaf;
        CHECK(subobjects(c, j, y).size() == omega.fibers[o].size());
      }
      CHECK(subterminals(c, j).size() == classifier_global_sections(c, j));
    }
  }
}

TEST_CASE("classifier of the arrow category") {
  auto c = site("arrow");
  auto omega = classifier(c, topo(c, "arrow_trivial"));
  CHECK(omega.fibers[0].size() == 2);
  CHECK(omega.fibers[1].size() == 3);
  auto closed = classifier(c, topo(c, "arrow_atomic"));
  CHECK(closed.fibers[1].size() == 2);
}

TEST_CASE("close_subobject is idempotent and inflationary") {
  auto c = site("arrow");
  auto j = topo(c, "arrow_atomic");
  auto x = sheafify(c, j, representable(c, 1)).sheaf;
  Subobject empty(c.object_count(), 0);
  auto cl = close_subobject(c, j, x, empty);
  CHECK(close_subobject(c, j, x, cl) == cl);
}

TEST_CASE("topos invariants of familiar toposes") {
  auto arrow = site("arrow");
  auto trivial = topo(arrow, "arrow_trivial");
  CHECK_FALSE(topos_invariant(arrow, trivial, ToposInvariant::Boolean));
  CHECK(topos_invariant(arrow, trivial, ToposInvariant::DeMorgan));
  CHECK_FALSE(topos_invariant(arrow, trivial, ToposInvariant::Atomic));
  CHECK_FALSE(topos_invariant(arrow, trivial, ToposInvariant::TwoValued));
  auto atomic = topo(arrow, "arrow_atomic");
  for (auto t : {ToposInvariant::Boolean, ToposInvariant::DeMorgan, ToposInvariant::Atomic, ToposInvariant::TwoValued}) {
    CHECK(topos_invariant(arrow, atomic, t));
  }
  auto cospan = site("cospan");
  auto ct = special_topology(cospan, SpecialKind::Trivial);
  CHECK_FALSE(topos_invariant(cospan, ct, ToposInvariant::DeMorgan));

  auto c2 = site("c2");
  auto j2 = special_topology(c2, SpecialKind::Trivial);
  CHECK(topos_invariant(c2, j2, ToposInvariant::Boolean));
  CHECK(topos_invariant(c2, j2, ToposInvariant::Atomic));
}

TEST_CASE("invariants respect the implications between them") {
  for (const char* name : {"arrow", "c2", "discrete2", "chain3", "span", "cospan", "idempotent", "parallel"}) {
    auto c = site(name);
    for (const auto& j : enumerate_topologies(c)) {
      bool b = topos_invariant(c, j, ToposInvariant::Boolean);
      bool dm = topos_invariant(c, j, ToposInvariant::DeMorgan);
      bool at = topos_invariant(c, j, ToposInvariant::Atomic);
      bool tv = topos_invariant(c, j, ToposInvariant::TwoValued);
      CHECK((!b || dm));
      CHECK((!at || b));
      CHECK(tv == (subterminals(c, j).size() == 2));
    }
  }
}

TEST_CASE("object invariants") {
  auto c2 = site("c2");
  auto j = special_topology(c2, SpecialKind::Trivial);
  auto y = representable(c2, 0);
  CHECK(object_invariant(c2, j, y, ObjectInvariant::Atom));
  CHECK(object_invariant(c2, j, y, ObjectInvariant::Indecomposable));
  CHECK(object_invariant(c2, j, y, ObjectInvariant::Irreducible));
  CHECK(object_invariant(c2, j, y, ObjectInvariant::Compact));

  auto d2 = site("discrete2");
  auto jd = special_topology(d2, SpecialKind::Trivial);
  auto one = terminal_presheaf(d2);
  CHECK_FALSE(object_invariant(d2, jd, one, ObjectInvariant::Indecomposable));
  CHECK_FALSE(object_invariant(d2, jd, one, ObjectInvariant::Irreducible));
  CHECK_FALSE(object_invariant(d2, jd, one, ObjectInvariant::Atom));
  CHECK(object_invariant(d2, jd, one, ObjectInvariant::Compact));

  auto arrow = site("arrow");
  auto p = presheaf(arrow, "arrow_two_over_one");
  try {
    object_invariant(arrow, topo(arrow, "arrow_atomic"), p, ObjectInvariant::Atom);
    FAIL("expected NotASheaf");
  } catch (const Error& e) {
    CHECK(e.name() == "NotASheaf");
  }
}

TEST_CASE("fingerprints of the small corpus sites") {
  auto c2 = site("c2");
  auto fp = fingerprint(c2, special_topology(c2, SpecialKind::Trivial), 3);
  CHECK(fp.boolean);
  CHECK(fp.two_valued);
  CHECK(fp.atomic);
  CHECK(fp.subterminal_count == 2);
  auto d2 = site("discrete2");
  auto fd = fingerprint(d2, special_topology(d2, SpecialKind::Trivial), 3);
  CHECK(fd.subterminal_count == 4);
  CHECK_FALSE(fd.two_valued);
}
