#include "sitelab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sitelab/error.hpp"
#include "sitelab/geolog/parser.hpp"

namespace sitelab::io {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw Error("SchemaError", what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw Error("SchemaError", "unknown key '" + it.key() + "' in " + what);
  }
}

std::string str(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error("SchemaError", what + " must be a string");
  return j.get<std::string>();
}

const Json& member(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw Error("SchemaError", what + " lacks \"" + key + "\"");
  return j.at(key);
}

const Json& array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error("SchemaError", what + " must be an array");
  return j;
}

int element_index(const std::vector<std::string>& names, const std::string& name, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw Error("UnknownElement", "'" + name + "' is not an element of " + where);
}

ArrowSet arrow_list(const FinCategory& c, const Json& j) {
  if (!j.is_array()) throw Error("SchemaError", "a sieve must be an array of arrow ids");
  ArrowSet s;
  for (const auto& a : j) s.insert(c.arrow_index(str(a, "arrow id")));
  return s;
}

Json arrow_names(const FinCategory& c, ArrowSet s) {
  Json out = Json::array();
  for (const auto& n : c.names_of(s)) out.push_back(n);
  return out;
}

std::string resolve(const std::string& base_file, const std::string& rel) {
  std::filesystem::path p(rel);
  if (p.is_absolute()) return rel;
  return (std::filesystem::path(base_file).parent_path() / p).string();
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("ParseError", "'" + path + "': " + e.what());
  }
}

RawCategory category_from_json(const Json& j) {
  require_keys(j, {"objects", "arrows", "compose"}, "category");
  RawCategory raw;
  for (const auto& o : array(member(j, "objects", "category"), "category objects")) raw.objects.push_back(str(o, "object id"));
  if (j.contains("arrows")) {
    for (const auto& a : array(j.at("arrows"), "category arrows")) {
      require_keys(a, {"id", "dom", "cod"}, "arrow");
      raw.arrows.push_back(RawArrow{str(member(a, "id", "arrow"), "arrow id"), str(member(a, "dom", "arrow"), "dom"),
                                    str(member(a, "cod", "arrow"), "cod")});
    }
  }
  if (j.contains("compose")) {
    for (const auto& e : array(j.at("compose"), "category compose")) {
      require_keys(e, {"first", "then", "equals"}, "compose entry");
      raw.composites.push_back(RawComposite{str(member(e, "first", "compose entry"), "first"),
                                            str(member(e, "then", "compose entry"), "then"),
                                            str(member(e, "equals", "compose entry"), "equals")});
    }
  }
  return raw;
}

Json category_to_json(const FinCategory& c) {
  const RawCategory raw = c.to_raw();
  Json out;
  out["objects"] = raw.objects;
  out["arrows"] = Json::array();
  for (const auto& a : raw.arrows) out["arrows"].push_back(Json{{"id", a.id}, {"dom", a.dom}, {"cod", a.cod}});
  out["compose"] = Json::array();
  for (const auto& e : raw.composites) {
    out["compose"].push_back(Json{{"first", e.first}, {"then", e.then}, {"equals", e.equals}});
  }
  return out;
}

FinCategory load_category(const std::string& path) { return validate_category(category_from_json(read_json_file(path))); }

SieveFamily family_from_json(const FinCategory& c, const Json& j) {
  require_keys(j, {"covers"}, "topology");
  SieveFamily f(c.object_count());
  for (int o = 0; o < c.object_count(); ++o) f.insert(o, c.maximal_sieve(o));
  if (!j.contains("covers")) return f;
  const Json& covers = j.at("covers");
  if (!covers.is_object()) throw Error("SchemaError", "\"covers\" must map objects to lists of sieves");
  for (auto it = covers.begin(); it != covers.end(); ++it) {
    const int o = c.object_index(it.key());
    if (!it.value().is_array()) throw Error("SchemaError", "covers of '" + it.key() + "' must be an array");
    for (const auto& s : it.value()) {
      Sieve sv{o, arrow_list(c, s)};
      require_sieve(c, sv);
      f.insert(sv);
    }
  }
  return f;
}

GrothendieckTopology topology_from_json(const FinCategory& c, const Json& j, const Bounds& bounds) {
  return GrothendieckTopology::from_family(c, family_from_json(c, j), bounds);
}

Json family_to_json(const FinCategory& c, const SieveFamily& f) {
  Json covers = Json::object();
  for (int o = 0; o < c.object_count(); ++o) {
    Json list = Json::array();
    for (ArrowSet s : f.at(o)) list.push_back(arrow_names(c, s));
    covers[c.object_name(o)] = std::move(list);
  }
  return Json{{"covers", covers}};
}

Json topology_to_json(const FinCategory& c, const GrothendieckTopology& t) { return family_to_json(c, t.covers()); }

Sieve sieve_from_json(const FinCategory& c, const Json& j) {
  require_keys(j, {"base", "arrows"}, "sieve");
  Sieve s{c.object_index(str(member(j, "base", "sieve"), "base")), arrow_list(c, member(j, "arrows", "sieve"))};
  require_sieve(c, s);
  return s;
}

Json sieve_to_json(const FinCategory& c, const Sieve& s) {
  return Json{{"base", c.object_name(s.base)}, {"arrows", arrow_names(c, s.arrows)}};
}

std::vector<Sieve> axioms_from_json(const FinCategory& c, const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    require_keys(j, {"axioms"}, "axiom file");
    list = &member(j, "axioms", "axiom file");
  }
  if (!list->is_array()) throw Error("SchemaError", "axioms must be an array of sieves");
  std::vector<Sieve> out;
  for (const auto& s : *list) out.push_back(sieve_from_json(c, s));
  return out;
}

Json derivation_to_json(const FinCategory& c, const Derivation& d) {
  Json out;
  out["rule"] = std::string(to_string(d.rule));
  out["conclusion"] = sieve_to_json(c, d.conclusion);
  if (d.rule == Derivation::Rule::Stability) out["arrow"] = c.arrow_name(d.arrow);
  Json premises = Json::array();
  for (const auto& p : d.premises) premises.push_back(derivation_to_json(c, *p));
  out["premises"] = std::move(premises);
  return out;
}

Presheaf presheaf_from_json(const FinCategory& c, const Json& j) {
  require_keys(j, {"at", "act"}, "presheaf");
  Presheaf p;
  p.elements.resize(c.object_count());
  const Json& at = member(j, "at", "presheaf");
  if (!at.is_object()) throw Error("SchemaError", "\"at\" must map objects to element lists");
  std::vector<bool> seen(c.object_count(), false);
  for (auto it = at.begin(); it != at.end(); ++it) {
    const int o = c.object_index(it.key());
    seen[o] = true;
    for (const auto& e : it.value()) p.elements[o].push_back(str(e, "element"));
  }
  for (int o = 0; o < c.object_count(); ++o) {
    if (!seen[o]) throw Error("SchemaError", "presheaf gives no elements for '" + c.object_name(o) + "'");
  }
  p.action.resize(c.arrow_count());
  const Json act = j.contains("act") ? j.at("act") : Json::object();
  for (int f = 0; f < c.arrow_count(); ++f) {
    const int cod = c.cod(f);
    const int dom = c.dom(f);
    if (!act.contains(c.arrow_name(f))) {
      if (!c.is_identity(f)) throw Error("NotFunctorial", "no action given for '" + c.arrow_name(f) + "'");
      for (int y = 0; y < p.size(cod); ++y) p.action[f].push_back(y);
      continue;
    }
    const Json& table = act.at(c.arrow_name(f));
    p.action[f].assign(p.size(cod), -1);
    for (auto it = table.begin(); it != table.end(); ++it) {
      const int y = element_index(p.elements[cod], it.key(), "'" + c.object_name(cod) + "'");
      p.action[f][y] = element_index(p.elements[dom], str(it.value(), "element"), "'" + c.object_name(dom) + "'");
    }
    for (int y = 0; y < p.size(cod); ++y) {
      if (p.action[f][y] < 0) {
        throw Error("NotFunctorial", "action of '" + c.arrow_name(f) + "' misses '" + p.elements[cod][y] + "'");
      }
    }
  }
  for (auto it = act.begin(); it != act.end(); ++it) c.arrow_index(it.key());
  require_presheaf(c, p);
  return p;
}

Json presheaf_to_json(const FinCategory& c, const Presheaf& p) {
  Json at = Json::object();
  for (int o = 0; o < c.object_count(); ++o) at[c.object_name(o)] = p.elements[o];
  Json act = Json::object();
  for (int f = 0; f < c.arrow_count(); ++f) {
    Json table = Json::object();
    for (int y = 0; y < p.size(c.cod(f)); ++y) table[p.elements[c.cod(f)][y]] = p.elements[c.dom(f)][p.action[f][y]];
    act[c.arrow_name(f)] = std::move(table);
  }
  return Json{{"at", at}, {"act", act}};
}

geolog::FinStructure structure_from_json(const geolog::Signature& sig, const Json& j) {
  require_keys(j, {"carriers", "functions", "relations"}, "structure");
  geolog::FinStructure m;
  const Json& carriers = member(j, "carriers", "structure");
  for (const auto& s : sig.sorts) {
    if (!carriers.contains(s)) throw Error("SignatureMismatch", "structure has no carrier for sort '" + s + "'");
    std::vector<std::string> names;
    for (const auto& e : array(carriers.at(s), "carrier")) names.push_back(str(e, "element"));
    m.elements.push_back(std::move(names));
  }
  for (auto it = carriers.begin(); it != carriers.end(); ++it) {
    if (!sig.find_sort(it.key())) throw Error("SignatureMismatch", "unknown sort '" + it.key() + "'");
  }
  auto decode = [&](const std::vector<std::string>& sorts, const std::string& key, const std::string& sym) {
    std::vector<std::string> parts;
    if (!sorts.empty()) {
      std::stringstream ss(key);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(item);
      if (key.empty() || key.back() == ',') parts.push_back("");
    }
    if (parts.size() != sorts.size()) throw Error("SignatureMismatch", "bad argument tuple '" + key + "' for " + sym);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < sorts.size(); ++k) {
      const int s = *sig.find_sort(sorts[k]);
      idx = idx * m.size(s) + element_index(m.elements[s], parts[k], "sort " + sorts[k]);
    }
    return idx;
  };
  const Json functions = j.contains("functions") ? j.at("functions") : Json::object();
  for (const auto& fn : sig.functions) {
    std::vector<int> table(tuple_count(sig, m, fn.args), -1);
    if (!functions.contains(fn.name)) {
      if (!table.empty()) throw Error("SignatureMismatch", "structure has no table for '" + fn.name + "'");
    } else {
      const Json& t = functions.at(fn.name);
      if (!t.is_object()) throw Error("SchemaError", "table of '" + fn.name + "' must be an object");
      const int result = *sig.find_sort(fn.result);
      for (auto it = t.begin(); it != t.end(); ++it) {
        table[decode(fn.args, it.key(), "'" + fn.name + "'")] =
            element_index(m.elements[result], str(it.value(), "element"), "sort " + fn.result);
      }
      for (int v : table) {
        if (v < 0) throw Error("SignatureMismatch", "table of '" + fn.name + "' is not total");
      }
    }
    m.functions.push_back(std::move(table));
  }
  const Json relations = j.contains("relations") ? j.at("relations") : Json::object();
  for (const auto& r : sig.relations) {
    std::vector<char> table(tuple_count(sig, m, r.args), 0);
    if (relations.contains(r.name)) {
      for (const auto& tuple : array(relations.at(r.name), "relation table")) {
        array(tuple, "relation tuple");
        std::string key;
        for (std::size_t k = 0; k < tuple.size(); ++k) key += (k ? "," : "") + str(tuple[k], "element");
        table[decode(r.args, key, "'" + r.name + "'")] = 1;
      }
    }
    m.relations.push_back(std::move(table));
  }
  for (auto it = functions.begin(); it != functions.end(); ++it) {
    if (!sig.find_function(it.key())) throw Error("SignatureMismatch", "unknown function '" + it.key() + "'");
  }
  for (auto it = relations.begin(); it != relations.end(); ++it) {
    if (!sig.find_relation(it.key())) throw Error("SignatureMismatch", "unknown relation '" + it.key() + "'");
  }
  return m;
}

Json structure_to_json(const geolog::Signature& sig, const geolog::FinStructure& m) {
  auto tuple_names = [&](const std::vector<std::string>& sorts, std::size_t idx) {
    std::vector<std::string> names(sorts.size());
    for (std::size_t k = sorts.size(); k-- > 0;) {
      const int s = *sig.find_sort(sorts[k]);
      names[k] = m.elements[s][idx % m.size(s)];
      idx /= m.size(s);
    }
    return names;
  };
  Json carriers = Json::object();
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) carriers[sig.sorts[s]] = m.elements[s];
  Json functions = Json::object();
  for (std::size_t f = 0; f < sig.functions.size(); ++f) {
    const auto& fn = sig.functions[f];
    const int result = *sig.find_sort(fn.result);
    Json table = Json::object();
    for (std::size_t i = 0; i < m.functions[f].size(); ++i) {
      std::string key;
      const auto names = tuple_names(fn.args, i);
      for (std::size_t k = 0; k < names.size(); ++k) key += (k ? "," : "") + names[k];
      table[key] = m.elements[result][m.functions[f][i]];
    }
    functions[fn.name] = std::move(table);
  }
  Json relations = Json::object();
  for (std::size_t r = 0; r < sig.relations.size(); ++r) {
    Json tuples = Json::array();
    for (std::size_t i = 0; i < m.relations[r].size(); ++i) {
      if (m.relations[r][i]) tuples.push_back(tuple_names(sig.relations[r].args, i));
    }
    relations[sig.relations[r].name] = std::move(tuples);
  }
  return Json{{"carriers", carriers}, {"functions", functions}, {"relations", relations}};
}

Json functor_to_json(const FinCategory& c, const SetFunctor& f) {
  Json at = Json::object();
  for (int o = 0; o < c.object_count(); ++o) at[c.object_name(o)] = f.sizes[o];
  Json act = Json::object();
  for (int a = 0; a < c.arrow_count(); ++a) act[c.arrow_name(a)] = f.action[a];
  return Json{{"at", at}, {"act", act}};
}

Json fingerprint_to_json(const InvariantFingerprint& fp) {
  Json out;
  out["two_valued"] = fp.two_valued;
  out["boolean"] = fp.boolean;
  out["de_morgan"] = fp.de_morgan;
  out["atomic"] = fp.atomic;
  out["subterminal_count"] = fp.subterminal_count;
  out["topology_count_above_j"] = fp.topology_count_above_j;
  out["point_count"] = fp.point_count;
  out["point_bound"] = fp.point_bound;
  return out;
}

Json property_to_json(const PropertyCheck& p) {
  Json out;
  out["property"] = std::string(to_string(p.property));
  out["holds"] = p.holds;
  Json w = Json::array();
  for (const auto& c : p.witnesses) {
    w.push_back(Json{{"input", {c.input_first, c.input_second}}, {"completion", {c.output_first, c.output_second}}});
  }
  out["witnesses"] = std::move(w);
  if (p.counterexample) {
    out["counterexample"] = Json{p.counterexample->first, p.counterexample->second};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

LoadedRealization load_realization(const std::string& path) {
  const Json j = read_json_file(path);
  require_keys(j, {"category", "theory", "hom", "objects", "arrows"}, "realization");
  auto load_json = [&](const Json& v) { return v.is_string() ? read_json_file(resolve(path, v.get<std::string>())) : v; };

  LoadedRealization out{validate_category(category_from_json(load_json(member(j, "category", "realization")))),
                        geolog::parse_theory(read_text_file(resolve(path, str(member(j, "theory", "realization"), "theory")))),
                        {},
                        HomKind::Homomorphism};
  if (j.contains("hom")) {
    const std::string hom = str(j.at("hom"), "hom");
    if (hom == "embedding") {
      out.kind = HomKind::Embedding;
    } else if (hom != "homomorphism") {
      throw Error("SchemaError", "\"hom\" must be \"homomorphism\" or \"embedding\"");
    }
  }
  const FinCategory& c = out.fpcat;
  const geolog::Signature& sig = out.theory.signature;
  const Json& objects = member(j, "objects", "realization");
  for (int o = 0; o < c.object_count(); ++o) {
    if (!objects.contains(c.object_name(o))) {
      throw Error("InconsistentRealization", "object '" + c.object_name(o) + "' has no structure");
    }
    out.realization.objects.push_back(structure_from_json(sig, load_json(objects.at(c.object_name(o)))));
  }
  for (auto it = objects.begin(); it != objects.end(); ++it) c.object_index(it.key());
  const Json arrows = j.contains("arrows") ? j.at("arrows") : Json::object();
  for (int f = 0; f < c.arrow_count(); ++f) {
    const auto& dom = out.realization.objects[c.dom(f)];
    const auto& cod = out.realization.objects[c.cod(f)];
    std::vector<std::vector<int>> map(sig.sorts.size());
    if (!arrows.contains(c.arrow_name(f))) {
      if (!c.is_identity(f)) throw Error("InconsistentRealization", "arrow '" + c.arrow_name(f) + "' has no map");
      for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
        for (int e = 0; e < dom.size(static_cast<int>(s)); ++e) map[s].push_back(e);
      }
    } else {
      const Json& per_sort = arrows.at(c.arrow_name(f));
      for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
        map[s].assign(dom.size(static_cast<int>(s)), -1);
        if (!per_sort.contains(sig.sorts[s])) continue;
        const Json& table = per_sort.at(sig.sorts[s]);
        for (auto it = table.begin(); it != table.end(); ++it) {
          map[s][element_index(dom.elements[s], it.key(), "the domain of '" + c.arrow_name(f) + "'")] =
              element_index(cod.elements[s], str(it.value(), "element"), "the codomain of '" + c.arrow_name(f) + "'");
        }
      }
    }
    out.realization.arrows.push_back(std::move(map));
  }
  for (auto it = arrows.begin(); it != arrows.end(); ++it) c.arrow_index(it.key());
  require_realization(sig, c, out.realization, out.kind);
  return out;
}

}  // namespace sitelab::io
