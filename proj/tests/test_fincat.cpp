#include <random>

#include "doctest.h"
#include "random_category.hpp"
#include "sitelab/error.hpp"
#include "sitelab/fincat.hpp"
#include "sitelab/io.hpp"

using namespace sitelab;

namespace {

FinCategory site(const std::string& name) { return io::load_category(std::string(SITELAB_CORPUS_DIR) + "/sites/" + name + ".json"); }

std::string error_name(const RawCategory& raw) {
  try {
    validate_category(raw);
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

}  // namespace

TEST_CASE("identities are inserted and sorted by id") {
  auto c = site("arrow");
  CHECK(c.object_count() == 2);
  CHECK(c.arrow_count() == 3);
  CHECK(c.arrow_name(0) == "f");
  CHECK(c.arrow_name(1) == "id:a");
  CHECK(c.arrow_name(2) == "id:b");
  int f = c.arrow_index("f");
  CHECK(c.after(c.identity(c.cod(f)), f) == f);
  CHECK(c.after(f, c.identity(c.dom(f))) == f);
  CHECK_FALSE(c.compose(f, f).has_value());
  CHECK(c.hom(c.object_index("a"), c.object_index("b")) == std::vector<int>{f});
}

TEST_CASE("c2 composition table") {
  auto c = site("c2");
  int g = c.arrow_index("g");
  CHECK(c.after(g, g) == c.identity(0));
  CHECK(c.maximal_sieve(0).size() == 2);
}

TEST_CASE("validation errors carry stable names") {
  RawCategory dangling{{"a"}, {{"f", "a", "b"}}, {}};
  CHECK(error_name(dangling) == "DanglingEndpoint");

  RawCategory dup{{"a", "b"}, {{"f", "a", "b"}, {"f", "a", "b"}}, {}};
  CHECK(error_name(dup) == "DuplicateId");

  RawCategory reserved{{"a"}, {{"id:x", "a", "a"}}, {}};
  CHECK(error_name(reserved) == "ReservedId");

  RawCategory missing{{"a"}, {{"g", "a", "a"}}, {}};
  CHECK(error_name(missing) == "MissingComposite");

  RawCategory not_composable{{"a", "b"}, {{"f", "a", "b"}}, {{"f", "f", "f"}}};
  CHECK(error_name(not_composable) == "NotComposable");

  RawCategory unknown{{"a"}, {{"g", "a", "a"}}, {{"g", "h", "g"}}};
  CHECK(error_name(unknown) == "UnknownArrow");

  // (p;p);p = q;p = p but p;(p;p) = p;q = q
  RawCategory nonassoc{{"a"},
                       {{"p", "a", "a"}, {"q", "a", "a"}},
                       {{"p", "p", "q"}, {"p", "q", "q"}, {"q", "p", "p"}, {"q", "q", "q"}}};
  CHECK(error_name(nonassoc) == "AssociativityViolation");

  RawCategory conflict{{"a"}, {{"e", "a", "a"}}, {{"e", "e", "e"}, {"e", "e", "id:a"}}};
  CHECK(error_name(conflict) == "ConflictingComposite");
}

TEST_CASE("opposite reverses arrows and composition") {
  auto c = site("chain3");
  auto op = opposite(c);
  int f = op.arrow_index("f"), g = op.arrow_index("g"), gf = op.arrow_index("gf");
  CHECK(op.object_name(op.dom(f)) == "b");
  CHECK(op.object_name(op.cod(f)) == "a");
  CHECK(op.after(f, g) == gf);
  CHECK(opposite(op) == c);
}

TEST_CASE("site properties on small categories") {
  auto arrow = site("arrow");
  CHECK(check_site_property(arrow, SiteProperty::RightOre).holds);
  CHECK(check_site_property(arrow, SiteProperty::JointEmbedding).holds);
  auto d2 = site("discrete2");
  auto jep = check_site_property(d2, SiteProperty::JointEmbedding);
  CHECK_FALSE(jep.holds);
  REQUIRE(jep.counterexample.has_value());
  CHECK(check_site_property(d2, SiteProperty::Amalgamation).holds);
  auto cospan = site("cospan");
  CHECK_FALSE(check_site_property(cospan, SiteProperty::RightOre).holds);
  auto span = site("span");
  CHECK(check_site_property(span, SiteProperty::RightOre).holds);
  CHECK_FALSE(check_site_property(span, SiteProperty::Amalgamation).holds);
  CHECK(check_site_property(cospan, SiteProperty::Amalgamation).holds);
}

TEST_CASE("property witnesses commute") {
  auto c = site("square");
  auto p = check_site_property(c, SiteProperty::RightOre);
  REQUIRE(p.holds);
  for (const auto& w : p.witnesses) {
    int f = c.arrow_index(w.input_first), g = c.arrow_index(w.input_second);
    int h = c.arrow_index(w.output_first), k = c.arrow_index(w.output_second);
    CHECK(c.after(f, h) == c.after(g, k));
  }
}

TEST_CASE("random concrete categories round trip through their raw form") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    auto c = testing::random_category(rng, 3, 12);
    CHECK(validate_category(c.to_raw()) == c);
    for (int f = 0; f < c.arrow_count(); ++f) {
      for (int g : c.arrows_from(c.cod(f))) {
        for (int h : c.arrows_from(c.cod(g))) {
          CHECK(c.after(h, c.after(g, f)) == c.after(c.after(h, g), f));
        }
      }
    }
  }
}

TEST_CASE("more than 64 arrows is refused") {
  RawCategory raw;
  for (int i = 0; i < 70; ++i) raw.objects.push_back("o" + std::to_string(i));
  CHECK(error_name(raw) == "TooLarge");
}
