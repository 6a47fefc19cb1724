#include "sitelab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "sitelab/bridge.hpp"
#include "sitelab/error.hpp"
#include "sitelab/geolog/model.hpp"
#include "sitelab/geolog/morleyize.hpp"
#include "sitelab/geolog/parser.hpp"
#include "sitelab/io.hpp"

namespace sitelab::cli {

namespace {

using io::Json;

struct Options {
  std::size_t max_size = 3;
  std::size_t point_bound = 3;
  std::size_t fan_in = 12;
  bool up_to_iso = false;
  std::string format = "text";
  std::string output;
  std::vector<std::string> inputs;

  // per-command flags
  bool opposite = false;
  std::string topology;
  std::string containing;
  std::string relative;
  std::vector<std::string> properties;
  std::vector<std::string> which;
  std::string presheaf;
  bool all_covers = false;
  bool first_order = false;
  std::string check;
  std::string hom;

  Bounds bounds() const {
    Bounds b;
    b.max_size = max_size;
    b.point_bound = point_bound;
    b.fan_in = fan_in;
    return b;
  }
};

struct Report {
  Json json;
  std::string text;
};

std::string plural(std::size_t n, const std::string& word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// A topology argument is a topology file, or one of the names trivial,
// maximal, atomic (built on the spot).
GrothendieckTopology topology_arg(const FinCategory& c, const std::string& arg, const Bounds& b) {
  if (!std::filesystem::exists(arg)) {
    if (auto kind = parse_special_kind(arg); kind && *kind != SpecialKind::DenseRelative) {
      return special_topology(c, *kind, std::nullopt, b);
    }
  }
  return io::topology_from_json(c, io::read_json_file(arg), b);
}

std::string topology_text(const FinCategory& c, const GrothendieckTopology& t) {
  std::string out;
  for (int o = 0; o < c.object_count(); ++o) {
    if (o) out += "; ";
    out += c.object_name(o) + ":";
    for (ArrowSet s : t.at(o)) out += " " + arrows_text(c, s);
  }
  return out;
}

std::string property_text(const PropertyCheck& p) {
  std::string out = std::string(to_string(p.property)) + ": " + (p.holds ? "holds" : "fails");
  if (p.counterexample) out += " at (" + p.counterexample->first + ", " + p.counterexample->second + ")";
  return out;
}

std::string fingerprint_text(const InvariantFingerprint& fp) {
  std::ostringstream s;
  s << "two_valued: " << yes_no(fp.two_valued) << "\n"
    << "boolean: " << yes_no(fp.boolean) << "\n"
    << "de_morgan: " << yes_no(fp.de_morgan) << "\n"
    << "atomic: " << yes_no(fp.atomic) << "\n"
    << "subterminal_count: " << fp.subterminal_count << "\n"
    << "topology_count_above_j: " << fp.topology_count_above_j << "\n"
    << "point_count: " << fp.point_count << " (carriers <= " << fp.point_bound << ")\n";
  return s.str();
}

std::string derivation_text(const FinCategory& c, const Derivation& d, int depth) {
  std::string out(static_cast<std::size_t>(depth) * 2, ' ');
  out += std::string(to_string(d.rule)) + " " + arrows_text(c, d.conclusion.arrows) + " on " +
         c.object_name(d.conclusion.base);
  if (d.rule == Derivation::Rule::Stability) out += " along " + c.arrow_name(d.arrow);
  out += "\n";
  for (const auto& p : d.premises) out += derivation_text(c, *p, depth + 1);
  return out;
}

Report quotient_report(const FinCategory& c, const QuotientSpec& q) {
  Report r;
  r.json["base"] = io::topology_to_json(c, q.base);
  r.json["topology"] = io::topology_to_json(c, q.larger);
  r.json["added_axioms"] = q.added;
  r.json["theory"] = geolog::print_theory(q.theory.theory);
  r.text = "topology: " + topology_text(c, q.larger) + "\nadded axioms:";
  for (const auto& a : q.added) r.text += " " + a;
  r.text += "\n" + geolog::print_theory(q.theory.theory);
  return r;
}

void need(const Options& o, std::size_t n, const std::string& usage) {
  if (o.inputs.size() != n) throw CLI::ValidationError("expected " + usage);
}

using Handler = std::function<Report(const Options&)>;

std::map<std::string, Handler> handlers() {
  std::map<std::string, Handler> h;

  h["validate"] = [](const Options& o) {
    need(o, 1, "<category>");
    const FinCategory c = io::load_category(o.inputs[0]);
    Report r;
    r.json["objects"] = c.object_count();
    r.json["arrows"] = c.arrow_count();
    r.text = "ok: " + plural(c.object_count(), "object") + ", " + plural(c.arrow_count(), "arrow") + "\n";
    if (!o.topology.empty()) {
      const SieveFamily fam = io::family_from_json(c, io::read_json_file(o.topology));
      const TopologyCheck check = is_topology(c, fam, o.bounds());
      if (!check.ok) {
        throw Error("NotATopology", std::string(to_string(check.violation->axiom)) + ": " + check.violation->description);
      }
      r.json["topology_covers"] = fam.size();
      r.text += "topology: ok, " + plural(fam.size(), "cover") + "\n";
    }
    if (o.opposite) {
      r.json["opposite"] = io::category_to_json(opposite(c));
      r.text += "opposite:\n" + r.json["opposite"].dump(2) + "\n";
    }
    return r;
  };

  h["props"] = [](const Options& o) {
    need(o, 1, "<category>");
    const FinCategory c = io::load_category(o.inputs[0]);
    std::vector<SiteProperty> props;
    if (o.properties.empty()) {
      props = {SiteProperty::RightOre, SiteProperty::Amalgamation, SiteProperty::JointEmbedding};
    }
    for (const auto& p : o.properties) {
      auto parsed = parse_site_property(p);
      if (!parsed) throw CLI::ValidationError("unknown property '" + p + "'");
      props.push_back(*parsed);
    }
    Report r;
    r.json = Json::array();
    for (auto p : props) {
      const PropertyCheck check = check_site_property(c, p);
      r.json.push_back(io::property_to_json(check));
      r.text += property_text(check) + "\n";
    }
    return r;
  };

  h["topologies"] = [](const Options& o) {
    need(o, 1, "<category>");
    const FinCategory c = io::load_category(o.inputs[0]);
    std::optional<GrothendieckTopology> base;
    if (!o.containing.empty()) base = topology_arg(c, o.containing, o.bounds());
    const auto all = enumerate_topologies(c, base, o.bounds());
    Report r;
    r.json = Json::array();
    r.text = std::to_string(all.size()) + (all.size() == 1 ? " topology\n" : " topologies\n");
    for (std::size_t i = 0; i < all.size(); ++i) {
      r.json.push_back(io::topology_to_json(c, all[i]));
      r.text += "J" + std::to_string(i) + ": " + topology_text(c, all[i]) + "\n";
    }
    return r;
  };

  h["generate"] = [](const Options& o) {
    need(o, 2, "<category> <axioms>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto axioms = io::axioms_from_json(c, io::read_json_file(o.inputs[1]));
    const GrothendieckTopology t = generate_topology(c, axioms, o.bounds());
    return Report{io::topology_to_json(c, t), topology_text(c, t) + "\n"};
  };

  h["derive"] = [](const Options& o) {
    need(o, 3, "<category> <axioms> <goal-sieve>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto axioms = io::axioms_from_json(c, io::read_json_file(o.inputs[1]));
    const Sieve goal = io::sieve_from_json(c, io::read_json_file(o.inputs[2]));
    const auto d = derives(c, axioms, goal, o.bounds());
    Report r;
    r.json["derivable"] = d.has_value();
    r.json["derivation"] = d ? io::derivation_to_json(c, **d) : Json(nullptr);
    r.text = d ? "derivable:\n" + derivation_text(c, **d, 1) : "not derivable\n";
    return r;
  };

  h["lattice"] = [](const Options& o) {
    need(o, 4, "<category> meet|join|implies <topology1> <topology2>");
    const FinCategory c = io::load_category(o.inputs[0]);
    auto op = parse_lattice_op(o.inputs[1]);
    if (!op) throw CLI::ValidationError("unknown lattice operation '" + o.inputs[1] + "'");
    const auto j1 = topology_arg(c, o.inputs[2], o.bounds());
    const auto j2 = topology_arg(c, o.inputs[3], o.bounds());
    const auto t = lattice_op(c, *op, j1, j2, o.bounds());
    return Report{io::topology_to_json(c, t), topology_text(c, t) + "\n"};
  };

  h["special"] = [](const Options& o) {
    need(o, 2, "<category> trivial|maximal|atomic|dense");
    const FinCategory c = io::load_category(o.inputs[0]);
    auto kind = parse_special_kind(o.inputs[1]);
    if (!kind) throw CLI::ValidationError("unknown special topology '" + o.inputs[1] + "'");
    std::optional<GrothendieckTopology> rel;
    if (!o.relative.empty()) rel = topology_arg(c, o.relative, o.bounds());
    const auto t = special_topology(c, *kind, rel, o.bounds());
    return Report{io::topology_to_json(c, t), topology_text(c, t) + "\n"};
  };

  h["invariants"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    Report r;
    if (o.presheaf.empty()) {
      std::vector<std::string> which = o.which;
      if (which.empty()) which = {"two_valued", "boolean", "de_morgan", "atomic"};
      for (const auto& w : which) {
        auto inv = parse_topos_invariant(w);
        if (!inv) throw CLI::ValidationError("unknown topos invariant '" + w + "'");
        const bool v = topos_invariant(c, j, *inv, o.bounds());
        r.json[w] = v;
        r.text += w + ": " + yes_no(v) + "\n";
      }
      return r;
    }
    const Presheaf p = io::presheaf_from_json(c, io::read_json_file(o.presheaf));
    const SheafCheck sc = is_sheaf(c, j, p, o.bounds());
    r.json["is_sheaf"] = sc.ok;
    r.text = "is_sheaf: " + yes_no(sc.ok) + "\n";
    if (!sc.ok) {
      Json fam;
      fam["object"] = c.object_name(sc.failure->object);
      fam["cover"] = io::sieve_to_json(c, Sieve{sc.failure->object, sc.failure->cover})["arrows"];
      Json values = Json::object();
      for (const auto& [f, x] : sc.failure->values) values[c.arrow_name(f)] = p.elements[c.dom(f)][x];
      fam["family"] = std::move(values);
      fam["amalgamations"] = sc.amalgamations;
      r.json["failure"] = std::move(fam);
      r.text += "failing cover " + arrows_text(c, sc.failure->cover) + " on " + c.object_name(sc.failure->object) +
                " with " + std::to_string(sc.amalgamations) + " amalgamations\n";
    }
    const Sheafification sh = sheafify(c, j, p, o.bounds());
    r.json["sheafification"] = io::presheaf_to_json(c, sh.sheaf);
    r.text += "sheafification: " + r.json["sheafification"].dump() + "\n";
    std::vector<std::string> which = o.which;
    if (which.empty()) which = {"atom", "indecomposable", "irreducible", "compact"};
    Json inv_json;
    for (const auto& w : which) {
      auto inv = parse_object_invariant(w);
      if (!inv) throw CLI::ValidationError("unknown object invariant '" + w + "'");
      const bool v = object_invariant(c, j, sh.sheaf, *inv, o.bounds());
      inv_json[w] = v;
      r.text += w + ": " + yes_no(v) + "\n";
    }
    r.json["object_invariants"] = std::move(inv_json);
    return r;
  };

  h["classifier"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    const ClosedSieveClassifier omega = classifier(c, j, o.bounds());
    Report r;
    Json fibers = Json::object();
    for (int ob = 0; ob < c.object_count(); ++ob) {
      Json list = Json::array();
      r.text += c.object_name(ob) + ": " + plural(omega.fibers[ob].size(), "closed sieve") + ":";
      for (ArrowSet s : omega.fibers[ob]) {
        list.push_back(io::sieve_to_json(c, Sieve{ob, s})["arrows"]);
        r.text += " " + arrows_text(c, s);
      }
      r.text += "\n";
      fibers[c.object_name(ob)] = std::move(list);
    }
    r.json["fibers"] = std::move(fibers);
    r.json["presheaf"] = io::presheaf_to_json(c, omega.presheaf);
    return r;
  };

  h["theory-flat"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    const auto ft = geolog::flat_functor_theory(c, j, geolog::FlatTheoryOptions{o.all_covers});
    Report r;
    r.text = geolog::print_theory(ft.theory);
    r.json["theory"] = r.text;
    Json sorts = Json::object();
    for (int ob = 0; ob < c.object_count(); ++ob) sorts[c.object_name(ob)] = ft.dictionary.sort_of_object[ob];
    Json fns = Json::object();
    for (int f = 0; f < c.arrow_count(); ++f) fns[c.arrow_name(f)] = ft.dictionary.function_of_arrow[f];
    r.json["dictionary"] = Json{{"objects", sorts}, {"arrows", fns}};
    return r;
  };

  h["morleyize"] = [](const Options& o) {
    need(o, 1, "<theory>");
    const geolog::Theory t = geolog::parse_theory(io::read_text_file(o.inputs[0]));
    const geolog::Theory m = geolog::morleyize(t);
    Report r;
    r.text = geolog::print_theory(m);
    r.json["fragment"] = std::string(to_string(m.fragment));
    r.json["theory"] = r.text;
    return r;
  };

  h["models"] = [](const Options& o) {
    need(o, 1, "<theory>");
    const geolog::Theory t = geolog::parse_theory(io::read_text_file(o.inputs[0]));
    Report r;
    if (!o.check.empty()) {
      const auto m = io::structure_from_json(t.signature, io::read_json_file(o.check));
      const auto mc = geolog::model_check(t, m);
      r.json["model"] = mc.ok;
      r.text = "model: " + yes_no(mc.ok) + "\n";
      if (!mc.ok) {
        const auto& ax = t.axioms[mc.axiom];
        Json assignment = Json::object();
        for (const auto& [v, e] : *mc.falsifying) assignment[v] = e;
        r.json["failing_axiom"] = ax.label.empty() ? Json(mc.axiom) : Json(ax.label);
        r.json["assignment"] = assignment;
        r.text += "fails axiom " + (ax.label.empty() ? std::to_string(mc.axiom) : ax.label) + " at " +
                  assignment.dump() + "\n";
      }
      return r;
    }
    geolog::EnumerateOptions opts;
    opts.up_to_iso = o.up_to_iso;
    opts.allow_first_order = o.first_order;
    const auto models = geolog::enumerate_models(t, o.max_size, opts, o.bounds());
    r.json = Json::array();
    r.text = plural(models.size(), "model") + "\n";
    for (const auto& m : models) {
      r.json.push_back(io::structure_to_json(t.signature, m));
      r.text += r.json.back().dump() + "\n";
    }
    return r;
  };

  h["flat-functors"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    const auto fs = geolog::enumerate_flat_functors(c, j, o.max_size, o.bounds());
    Report r;
    r.json = Json::array();
    r.text = plural(fs.size(), "flat functor") + " up to isomorphism\n";
    for (const auto& f : fs) {
      r.json.push_back(io::functor_to_json(c, f));
      r.text += r.json.back().dump() + "\n";
    }
    return r;
  };

  h["quotient"] = [](const Options& o) {
    need(o, 3, "<category> <topology> <larger-topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    const auto k = topology_arg(c, o.inputs[2], o.bounds());
    return quotient_report(c, quotient_theory_for_topology(c, j, k));
  };

  h["booleanize"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    return quotient_report(c, booleanization(c, j, o.bounds()));
  };

  h["demorganize"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    const DeMorganization d = demorganization_topology(c, j, o.bounds());
    Report r;
    r.json["topology"] = io::topology_to_json(c, d.topology);
    r.json["candidates"] = Json::array();
    for (const auto& k : d.candidates) r.json["candidates"].push_back(io::topology_to_json(c, k));
    r.text = "topology: " + topology_text(c, d.topology) + "\n" + plural(d.candidates.size(), "candidate") + "\n";
    return r;
  };

  h["fraisse"] = [](const Options& o) {
    need(o, 1, "<category>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const FraisseReport f = fraisse_report(c, o.bounds());
    Report r;
    r.json["amalgamation"] = io::property_to_json(f.amalgamation);
    r.json["joint_embedding"] = io::property_to_json(f.joint_embedding);
    r.json["atomic_site"] = f.atomic_site ? io::topology_to_json(opposite(c), *f.atomic_site) : Json(nullptr);
    r.json["two_valued"] = f.two_valued;
    r.json["atomic_topos"] = f.atomic_topos;
    r.json["conclusion"] = f.conclusion();
    r.text = "AP: " + yes_no(f.amalgamation.holds) + "\n" + "JEP: " + yes_no(f.joint_embedding.holds) + "\n";
    if (f.atomic_site) {
      r.text += "atomic site on the opposite category: " + topology_text(opposite(c), *f.atomic_site) + "\n";
      r.text += "two_valued: " + yes_no(f.two_valued) + "\natomic_topos: " + yes_no(f.atomic_topos) + "\n";
    } else {
      r.text += "atomic site: not constructed (no amalgamation)\n";
    }
    r.text += "conclusion: " + f.conclusion() + "\n";
    return r;
  };

  h["homcheck"] = [](const Options& o) {
    need(o, 2, "<realization> <structure>");
    const io::LoadedRealization lr = io::load_realization(o.inputs[0]);
    HomKind kind = lr.kind;
    if (o.hom == "embedding") kind = HomKind::Embedding;
    if (o.hom == "homomorphism") kind = HomKind::Homomorphism;
    const auto& sig = lr.theory.signature;
    const auto m = io::structure_from_json(sig, io::read_json_file(o.inputs[1]));
    const auto res = homogeneity_check(sig, m, lr.fpcat, lr.realization, kind, o.bounds());
    Report r;
    r.json["scope"] = "relative to the supplied finite subcategory";
    r.json["hom"] = kind == HomKind::Embedding ? "embedding" : "homomorphism";
    r.json["homogeneous"] = res.homogeneous;
    r.text = "homogeneous: " + yes_no(res.homogeneous) + " (relative to the supplied fpcat)\n";
    if (res.failure) {
      const int jarrow = res.failure->arrow;
      Json chi = Json::object();
      for (std::size_t s = 0; s < sig.sorts.size(); ++s) {
        Json table = Json::object();
        const auto& dom = lr.realization.objects[lr.fpcat.dom(jarrow)];
        for (std::size_t e = 0; e < res.failure->chi[s].size(); ++e) {
          table[dom.elements[s][e]] = m.elements[s][res.failure->chi[s][e]];
        }
        chi[sig.sorts[s]] = std::move(table);
      }
      r.json["failure"] = Json{{"arrow", lr.fpcat.arrow_name(jarrow)},
                               {"dom", lr.fpcat.object_name(lr.fpcat.dom(jarrow))},
                               {"cod", lr.fpcat.object_name(lr.fpcat.cod(jarrow))},
                               {"chi", chi}};
      r.text += "no extension along " + lr.fpcat.arrow_name(jarrow) + " of chi = " + chi.dump() + "\n";
    }
    return r;
  };

  h["fingerprint"] = [](const Options& o) {
    need(o, 2, "<category> <topology>");
    const FinCategory c = io::load_category(o.inputs[0]);
    const auto j = topology_arg(c, o.inputs[1], o.bounds());
    const auto fp = fingerprint(c, j, o.point_bound, o.bounds());
    return Report{io::fingerprint_to_json(fp), fingerprint_text(fp)};
  };

  h["morita-compare"] = [](const Options& o) {
    need(o, 4, "<category1> <topology1> <category2> <topology2>");
    const FinCategory c1 = io::load_category(o.inputs[0]);
    const auto j1 = topology_arg(c1, o.inputs[1], o.bounds());
    const FinCategory c2 = io::load_category(o.inputs[2]);
    const auto j2 = topology_arg(c2, o.inputs[3], o.bounds());
    const auto v = morita_fingerprint_compare(c1, j1, c2, j2, o.point_bound, o.bounds());
    Report r;
    r.json["verdict"] = v.refuted ? "refuted" : "consistent";
    r.json["differing"] = v.differing;
    r.json["first"] = io::fingerprint_to_json(v.first);
    r.json["second"] = io::fingerprint_to_json(v.second);
    r.text = "verdict: " + std::string(v.refuted ? "refuted" : "consistent (not a proof of equivalence)") + "\n";
    for (const auto& d : v.differing) r.text += "differs: " + d + "\n";
    r.text += "first:\n" + fingerprint_text(v.first) + "second:\n" + fingerprint_text(v.second);
    return r;
  };

  return h;
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"validate", "validate a category file (optionally a topology file)"},
    {"props", "check right Ore, amalgamation and joint embedding"},
    {"topologies", "enumerate all Grothendieck topologies"},
    {"generate", "topology generated by a set of sieves"},
    {"derive", "derive a sieve from axioms in the sieve proof system"},
    {"lattice", "meet, join or implication of two topologies"},
    {"special", "trivial, maximal, atomic or dense topology"},
    {"invariants", "topos invariants, or sheaf and object invariants of a presheaf"},
    {"classifier", "closed-sieve subobject classifier"},
    {"theory-flat", "theory of J-continuous flat functors"},
    {"morleyize", "coherent Morleyization of a first-order theory"},
    {"models", "enumerate finite models, or check one structure"},
    {"flat-functors", "enumerate J-continuous flat functors"},
    {"quotient", "quotient theory for a larger topology"},
    {"booleanize", "Booleanization of a site"},
    {"demorganize", "DeMorganization topology of a site"},
    {"fraisse", "amalgamation / joint embedding analysis"},
    {"homcheck", "homogeneity of a finite model relative to a realized fpcat"},
    {"fingerprint", "invariant fingerprint of a site"},
    {"morita-compare", "compare two sites by fingerprint"},
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite sites, sheaves and geometric theories", "sitelab"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("inputs", o.inputs, "input files and arguments");
    sub->add_option("--max-size", o.max_size, "carrier bound for model and functor enumeration");
    sub->add_option("--point-bound", o.point_bound, "carrier bound for point counts");
    sub->add_option("--fan-in-bound", o.fan_in, "maximum number of arrows into one object");
    sub->add_flag("--up-to-iso", o.up_to_iso, "one representative per isomorphism class");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o", o.output, "write the output to this file");
    subs[name] = sub;
  }
  subs["validate"]->add_flag("--opposite", o.opposite, "also print the opposite category");
  subs["validate"]->add_option("--topology", o.topology, "topology file to check against the axioms");
  subs["props"]->add_option("--property", o.properties, "right-ore, amalgamation or joint-embedding");
  subs["topologies"]->add_option("--containing", o.containing, "only topologies containing this one");
  subs["special"]->add_option("--relative", o.relative, "base topology for dense");
  subs["invariants"]->add_option("--which", o.which, "invariants to compute");
  subs["invariants"]->add_option("--presheaf", o.presheaf, "presheaf file: check, sheafify, object invariants");
  subs["theory-flat"]->add_flag("--all-covers", o.all_covers, "emit a covering axiom for every cover");
  subs["models"]->add_flag("--first-order", o.first_order, "allow not / implies / forall (classical semantics)");
  subs["models"]->add_option("--check", o.check, "structure file to model-check instead of enumerating");
  subs["homcheck"]->add_option("--hom", o.hom, "homomorphism or embedding (overrides the realization)")
      ->check(CLI::IsMember({"homomorphism", "embedding"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (auto* s : app.get_subcommands()) target = s;
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Handler handler = handlers().at(name);
  Report report;
  try {
    report = handler(o);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.detail() << "\n";
    if (o.format == "json") {
      Json j;
      j["command"] = name;
      j["error"] = Json{{"name", e.name()}, {"detail", e.detail()}};
      out << j.dump(2) << "\n";
    }
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: SchemaError: " << e.what() << "\n";
    return 1;
  }

  Json bounds;
  bounds["max_size"] = o.max_size;
  bounds["point_bound"] = o.point_bound;
  bounds["fan_in"] = o.fan_in;
  std::string text;
  if (o.format == "json") {
    Json envelope;
    envelope["command"] = name;
    envelope["bounds"] = bounds;
    envelope["result"] = report.json;
    text = envelope.dump(2) + "\n";
  } else {
    text = "# " + name + " (max-size " + std::to_string(o.max_size) + ", point-bound " + std::to_string(o.point_bound) +
           ", fan-in " + std::to_string(o.fan_in) + ")\n" + report.text;
  }
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) {
      err << "error: IoError: cannot write '" << o.output << "'\n";
      return 1;
    }
    f << text;
  }
  return 0;
}

}  // namespace sitelab::cli
