#include <filesystem>
#include <functional>
#include <fstream>

#include "doctest.h"
#include "sitelab/error.hpp"
#include "sitelab/geolog/parser.hpp"
#include "sitelab/io.hpp"

using namespace sitelab;
using io::Json;

namespace {

std::string corpus(const std::string& rel) { return std::string(SITELAB_CORPUS_DIR) + "/" + rel; }

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("sitelab_io_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("categories round trip") {
  for (const char* name : {"terminal", "arrow", "c2", "chain3", "square"}) {
    auto c = io::load_category(corpus(std::string("sites/") + name + ".json"));
    auto again = validate_category(io::category_from_json(io::category_to_json(c)));
    CHECK(again == c);
  }
}

TEST_CASE("topologies round trip and include maximal sieves") {
  auto c = io::load_category(corpus("sites/arrow.json"));
  auto t = io::topology_from_json(c, io::read_json_file(corpus("topologies/arrow_atomic.json")));
  CHECK(t.covers(0, c.maximal_sieve(0)));
  CHECK(t.covers(1, c.maximal_sieve(1)));
  CHECK(io::topology_from_json(c, io::topology_to_json(c, t)) == t);
  auto bad = Json::parse(R"({"covers": {"b": [[]]}})");
  CHECK(error_of([&] { io::topology_from_json(c, bad); }) == "NotATopology");
}

TEST_CASE("sieves and presheaves round trip") {
  auto c = io::load_category(corpus("sites/arrow.json"));
  Sieve s{1, ArrowSet::single(c.arrow_index("f"))};
  CHECK(io::sieve_from_json(c, io::sieve_to_json(c, s)) == s);
  auto p = io::presheaf_from_json(c, io::read_json_file(corpus("presheaves/arrow_two_over_one.json")));
  CHECK(p.size(0) == 1);
  CHECK(p.size(1) == 2);
  CHECK(io::presheaf_from_json(c, io::presheaf_to_json(c, p)) == p);
  auto unknown = Json::parse(R"({"at": {"a": ["*"], "b": ["0"]}, "act": {"f": {"0": "nope"}}})");
  CHECK(error_of([&] { io::presheaf_from_json(c, unknown); }) == "UnknownElement");
}

TEST_CASE("structures round trip") {
  auto t = geolog::parse_theory(io::read_text_file(corpus("theories/pointed_graph.theory")));
  auto m = geolog::blank_structure(t.signature, {2});
  m.functions[0] = {1};
  m.relations[0] = {0, 1, 1, 1};
  CHECK(io::structure_from_json(t.signature, io::structure_to_json(t.signature, m)) == m);
}

TEST_CASE("schema, parse and io errors") {
  CHECK(error_of([] { io::read_text_file("/nonexistent/sitelab/file"); }) == "IoError");
  auto broken = temp_file("broken.json", "{ not json");
  CHECK(error_of([&] { io::read_json_file(broken); }) == "ParseError");
  auto extra = Json::parse(R"({"objects": ["a"], "arrows": [], "colour": 1})");
  CHECK(error_of([&] { io::category_from_json(extra); }) == "SchemaError");
  auto shape = Json::parse(R"({"objects": "a"})");
  CHECK(error_of([&] { io::category_from_json(shape); }) == "SchemaError");
}

TEST_CASE("realizations load with identities filled in") {
  auto r = io::load_realization(corpus("fpcat/injections_le2.json"));
  CHECK(r.fpcat.object_count() == 2);
  CHECK(r.fpcat.arrow_count() == 5);
  CHECK(r.realization.objects.size() == 2);
  CHECK(r.realization.arrows.size() == 5);
  int id2 = r.fpcat.identity(1);
  CHECK(r.realization.arrows[id2][0] == std::vector<int>{0, 1});
}
