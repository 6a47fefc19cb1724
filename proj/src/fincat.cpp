#include "sitelab/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sitelab/error.hpp"

namespace sitelab {

std::vector<int> ArrowSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::strong_ordering operator<=>(ArrowSet a, ArrowSet b) {
  std::uint64_t diff = a.bits_ ^ b.bits_;
  if (diff == 0) return std::strong_ordering::equal;
  int k = std::countr_zero(diff);
  std::uint64_t above = (k == 63) ? 0 : (~std::uint64_t{0} << (k + 1));
  // The set holding k continues the common prefix with k; the other one
  // either ends there (and is a proper prefix) or continues with something > k.
  if (a.contains(k)) {
    return (b.bits_ & above) == 0 ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return (a.bits_ & above) == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::optional<int> FinCategory::find_object(std::string_view name) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), name);
  if (it == objects_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - objects_.begin());
}

std::optional<int> FinCategory::find_arrow(std::string_view name) const {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), name,
                             [](const Arrow& a, std::string_view n) { return a.id < n; });
  if (it == arrows_.end() || it->id != name) return std::nullopt;
  return static_cast<int>(it - arrows_.begin());
}

int FinCategory::object_index(std::string_view name) const {
  if (auto o = find_object(name)) return *o;
  throw Error("UnknownObject", "no object named '" + std::string(name) + "'");
}

int FinCategory::arrow_index(std::string_view name) const {
  if (auto f = find_arrow(name)) return *f;
  throw Error("UnknownArrow", "no arrow named '" + std::string(name) + "'");
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int f : from_[a]) {
    if (arrows_[f].cod == b) out.push_back(f);
  }
  return out;
}

ArrowSet FinCategory::maximal_sieve(int obj) const {
  ArrowSet s;
  for (int f : into_[obj]) s.insert(f);
  return s;
}

ArrowSet FinCategory::arrows_named(const std::vector<std::string>& ids) const {
  ArrowSet s;
  for (const auto& id : ids) s.insert(arrow_index(id));
  return s;
}

std::vector<std::string> FinCategory::names_of(ArrowSet arrows) const {
  std::vector<std::string> out;
  for (int f : arrows.members()) out.push_back(arrows_[f].id);
  return out;
}

RawCategory FinCategory::to_raw() const {
  RawCategory raw;
  raw.objects = objects_;
  for (int f = 0; f < arrow_count(); ++f) {
    if (!is_identity(f)) {
      raw.arrows.push_back({arrows_[f].id, objects_[arrows_[f].dom], objects_[arrows_[f].cod]});
    }
  }
  for (int f = 0; f < arrow_count(); ++f) {
    if (is_identity(f)) continue;
    for (int g : from_[arrows_[f].cod]) {
      if (is_identity(g)) continue;
      raw.composites.push_back({arrows_[f].id, arrows_[g].id, arrows_[after(g, f)].id});
    }
  }
  return raw;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  return a.objects_ == b.objects_ && a.arrows_ == b.arrows_ && a.table_ == b.table_;
}

void FinCategory::build_indices() {
  into_.assign(objects_.size(), {});
  from_.assign(objects_.size(), {});
  identities_.assign(objects_.size(), -1);
  for (int f = 0; f < arrow_count(); ++f) {
    into_[arrows_[f].cod].push_back(f);
    from_[arrows_[f].dom].push_back(f);
  }
  for (int o = 0; o < object_count(); ++o) {
    identities_[o] = *find_arrow(std::string(kIdentityPrefix) + objects_[o]);
  }
}

namespace {

std::string pair_text(const std::string& f, const std::string& g) { return "(" + f + ", " + g + ")"; }

}  // namespace

FinCategory validate_category(const RawCategory& raw) {
  FinCategory c;

  std::set<std::string> object_set;
  for (const auto& o : raw.objects) {
    if (o.empty()) throw Error("DuplicateId", "object ids must be non-empty");
    if (!object_set.insert(o).second) throw Error("DuplicateId", "object '" + o + "' listed twice");
  }
  c.objects_.assign(object_set.begin(), object_set.end());

  std::map<std::string, FinCategory::Arrow> arrow_map;
  for (const auto& o : c.objects_) {
    int idx = static_cast<int>(std::lower_bound(c.objects_.begin(), c.objects_.end(), o) - c.objects_.begin());
    arrow_map.emplace(std::string(kIdentityPrefix) + o, FinCategory::Arrow{std::string(kIdentityPrefix) + o, idx, idx});
  }
  for (const auto& a : raw.arrows) {
    if (a.id.empty()) throw Error("DuplicateId", "arrow ids must be non-empty");
    if (a.id.starts_with(kIdentityPrefix)) {
      throw Error("ReservedId", "arrow '" + a.id + "' uses the reserved identity prefix 'id:'");
    }
    if (!object_set.count(a.dom) || !object_set.count(a.cod)) {
      throw Error("DanglingEndpoint", "arrow '" + a.id + "' has endpoint '" +
                                          (object_set.count(a.dom) ? a.cod : a.dom) + "' which is not an object");
    }
    if (arrow_map.count(a.id)) throw Error("DuplicateId", "arrow '" + a.id + "' listed twice");
    auto dom = static_cast<int>(std::lower_bound(c.objects_.begin(), c.objects_.end(), a.dom) - c.objects_.begin());
    auto cod = static_cast<int>(std::lower_bound(c.objects_.begin(), c.objects_.end(), a.cod) - c.objects_.begin());
    arrow_map.emplace(a.id, FinCategory::Arrow{a.id, dom, cod});
  }
  if (arrow_map.size() > static_cast<std::size_t>(kMaxArrows)) {
    throw Error("TooLarge", "categories are limited to " + std::to_string(kMaxArrows) + " arrows including identities");
  }
  for (auto& [id, arrow] : arrow_map) c.arrows_.push_back(arrow);
  c.build_indices();

  const int n = c.arrow_count();
  c.table_.assign(static_cast<std::size_t>(n) * n, -1);
  auto slot = [&](int f, int g) -> int& { return c.table_[static_cast<std::size_t>(f) * n + g]; };

  for (const auto& comp : raw.composites) {
    auto f = c.find_arrow(comp.first);
    auto g = c.find_arrow(comp.then);
    auto h = c.find_arrow(comp.equals);
    for (const auto* id : {&comp.first, &comp.then, &comp.equals}) {
      if (!c.find_arrow(*id)) throw Error("UnknownArrow", "composite mentions unknown arrow '" + *id + "'");
    }
    if (c.cod(*f) != c.dom(*g)) {
      throw Error("NotComposable", "composite given for non-composable pair " + pair_text(comp.first, comp.then));
    }
    if (c.dom(*h) != c.dom(*f) || c.cod(*h) != c.cod(*g)) {
      throw Error("CompositeMismatch", "composite of " + pair_text(comp.first, comp.then) + " declared as '" +
                                           comp.equals + "' whose endpoints do not match");
    }
    if (c.is_identity(*f) && *h != *g) {
      throw Error("IdentityViolation", "id then '" + comp.then + "' declared as '" + comp.equals + "'");
    }
    if (c.is_identity(*g) && *h != *f) {
      throw Error("IdentityViolation", "'" + comp.first + "' then id declared as '" + comp.equals + "'");
    }
    int& cell = slot(*f, *g);
    if (cell >= 0 && cell != *h) {
      throw Error("ConflictingComposite", "pair " + pair_text(comp.first, comp.then) + " declared as both '" +
                                              c.arrow_name(cell) + "' and '" + comp.equals + "'");
    }
    cell = *h;
  }

  for (int f = 0; f < n; ++f) {
    for (int g : c.from_[c.cod(f)]) {
      if (c.is_identity(f)) {
        slot(f, g) = g;
      } else if (c.is_identity(g)) {
        slot(f, g) = f;
      } else if (slot(f, g) < 0) {
        throw Error("MissingComposite", "no composite declared for " + pair_text(c.arrow_name(f), c.arrow_name(g)));
      }
    }
  }

  // Identity laws (redundant with the fill-in above, but checked on the final table).
  for (int f = 0; f < n; ++f) {
    if (slot(c.identity(c.dom(f)), f) != f || slot(f, c.identity(c.cod(f))) != f) {
      throw Error("IdentityViolation", "identity law fails for '" + c.arrow_name(f) + "'");
    }
  }

  for (int f = 0; f < n; ++f) {
    for (int g : c.from_[c.cod(f)]) {
      int fg = slot(f, g);
      for (int h : c.from_[c.cod(g)]) {
        if (slot(fg, h) != slot(f, slot(g, h))) {
          throw Error("AssociativityViolation", "(" + c.arrow_name(f) + " then " + c.arrow_name(g) + ") then " +
                                                    c.arrow_name(h) + " differs from " + c.arrow_name(f) +
                                                    " then (" + c.arrow_name(g) + " then " + c.arrow_name(h) + ")");
        }
      }
    }
  }
  return c;
}

FinCategory opposite(const FinCategory& c) {
  FinCategory op;
  op.objects_ = c.objects_;
  op.arrows_ = c.arrows_;
  for (auto& a : op.arrows_) std::swap(a.dom, a.cod);
  const auto n = static_cast<std::size_t>(c.arrow_count());
  op.table_.assign(n * n, -1);
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) op.table_[f * n + g] = c.table_[g * n + f];
  }
  op.build_indices();
  return op;
}

std::string_view to_string(SiteProperty p) {
  switch (p) {
    case SiteProperty::RightOre: return "right-ore";
    case SiteProperty::Amalgamation: return "amalgamation";
    case SiteProperty::JointEmbedding: return "joint-embedding";
  }
  return "?";
}

std::optional<SiteProperty> parse_site_property(std::string_view s) {
  if (s == "right-ore") return SiteProperty::RightOre;
  if (s == "amalgamation") return SiteProperty::Amalgamation;
  if (s == "joint-embedding") return SiteProperty::JointEmbedding;
  return std::nullopt;
}

PropertyCheck check_site_property(const FinCategory& c, SiteProperty p) {
  PropertyCheck out{p, true, {}, std::nullopt};
  auto fail = [&](const std::string& a, const std::string& b) {
    out.holds = false;
    out.witnesses.clear();
    out.counterexample = {a, b};
  };

  switch (p) {
    case SiteProperty::RightOre:
      // Cospans f: a -> x <- b :g completed by h: d -> a, k: d -> b with f∘h = g∘k.
      for (int x = 0; x < c.object_count(); ++x) {
        for (int f : c.arrows_into(x)) {
          for (int g : c.arrows_into(x)) {
            std::optional<Completion> found;
            for (int h : c.arrows_into(c.dom(f))) {
              for (int k : c.arrows_into(c.dom(g))) {
                if (c.dom(h) == c.dom(k) && c.after(f, h) == c.after(g, k)) {
                  found = Completion{c.arrow_name(f), c.arrow_name(g), c.arrow_name(h), c.arrow_name(k)};
                  break;
                }
              }
              if (found) break;
            }
            if (!found) {
              fail(c.arrow_name(f), c.arrow_name(g));
              return out;
            }
            out.witnesses.push_back(*found);
          }
        }
      }
      break;
    case SiteProperty::Amalgamation:
      // Spans f: x -> b, g: x -> c completed by f': b -> d, g': c -> d with f'∘f = g'∘g.
      for (int x = 0; x < c.object_count(); ++x) {
        for (int f : c.arrows_from(x)) {
          for (int g : c.arrows_from(x)) {
            std::optional<Completion> found;
            for (int f2 : c.arrows_from(c.cod(f))) {
              for (int g2 : c.arrows_from(c.cod(g))) {
                if (c.cod(f2) == c.cod(g2) && c.after(f2, f) == c.after(g2, g)) {
                  found = Completion{c.arrow_name(f), c.arrow_name(g), c.arrow_name(f2), c.arrow_name(g2)};
                  break;
                }
              }
              if (found) break;
            }
            if (!found) {
              fail(c.arrow_name(f), c.arrow_name(g));
              return out;
            }
            out.witnesses.push_back(*found);
          }
        }
      }
      break;
    case SiteProperty::JointEmbedding:
      for (int a = 0; a < c.object_count(); ++a) {
        for (int b = 0; b < c.object_count(); ++b) {
          std::optional<Completion> found;
          for (int f : c.arrows_from(a)) {
            for (int g : c.arrows_from(b)) {
              if (c.cod(f) == c.cod(g)) {
                found = Completion{c.object_name(a), c.object_name(b), c.arrow_name(f), c.arrow_name(g)};
                break;
              }
            }
            if (found) break;
          }
          if (!found) {
            fail(c.object_name(a), c.object_name(b));
            return out;
          }
          out.witnesses.push_back(*found);
        }
      }
      break;
  }
  return out;
}

}  // namespace sitelab
