#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sitelab {

/// Set of arrows of a FinCategory, as a bitmask over arrow indices.
///
/// Categories are capped at 64 arrows (identities included), which is well
/// beyond anything the exhaustive procedures in this library can handle.
/// Ordering is lexicographic on the sorted member list, so that sets of
/// arrows compare exactly like their sorted id lists.
class ArrowSet {
 public:
  constexpr ArrowSet() = default;
  constexpr explicit ArrowSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ArrowSet single(int arrow) { return ArrowSet(std::uint64_t{1} << arrow); }

  constexpr bool contains(int arrow) const { return (bits_ >> arrow) & 1U; }
  constexpr void insert(int arrow) { bits_ |= std::uint64_t{1} << arrow; }
  constexpr void erase(int arrow) { bits_ &= ~(std::uint64_t{1} << arrow); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool subset_of(ArrowSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr ArrowSet operator|(ArrowSet o) const { return ArrowSet(bits_ | o.bits_); }
  constexpr ArrowSet operator&(ArrowSet o) const { return ArrowSet(bits_ & o.bits_); }

  std::vector<int> members() const;

  friend constexpr bool operator==(ArrowSet a, ArrowSet b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(ArrowSet a, ArrowSet b);

 private:
  std::uint64_t bits_ = 0;
};

struct RawArrow {
  std::string id;
  std::string dom;
  std::string cod;
};

// compose(first, then) = "first, then then", i.e. then ∘ first.
struct RawComposite {
  std::string first;
  std::string then;
  std::string equals;
};

// Unvalidated category description as found in a category file.
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;  // non-identity arrows
  std::vector<RawComposite> composites;
};

inline constexpr std::string_view kIdentityPrefix = "id:";
inline constexpr int kMaxArrows = 64;

/// A finite category with an explicit composition table.
///
/// Objects and arrows are indexed in lexicographic order of their ids, so
/// every derived listing is deterministic. Identities carry the reserved ids
/// "id:<object>". Instances are immutable and only produced by
/// validate_category() or opposite().
class FinCategory {
 public:
  int object_count() const { return static_cast<int>(objects_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }

  const std::string& object_name(int obj) const { return objects_[obj]; }
  const std::string& arrow_name(int f) const { return arrows_[f].id; }
  int dom(int f) const { return arrows_[f].dom; }
  int cod(int f) const { return arrows_[f].cod; }
  int identity(int obj) const { return identities_[obj]; }
  bool is_identity(int f) const { return identities_[arrows_[f].dom] == f; }

  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_arrow(std::string_view name) const;
  int object_index(std::string_view name) const;  // throws UnknownObject
  int arrow_index(std::string_view name) const;   // throws UnknownArrow

  // Composite "f then g" (g ∘ f); nullopt when cod(f) != dom(g).
  std::optional<int> compose(int f, int g) const {
    int r = table_[static_cast<std::size_t>(f) * arrows_.size() + g];
    if (r < 0) return std::nullopt;
    return r;
  }
  // g ∘ f for a pair known to be composable.
  int after(int g, int f) const { return table_[static_cast<std::size_t>(f) * arrows_.size() + g]; }

  const std::vector<int>& arrows_into(int obj) const { return into_[obj]; }
  const std::vector<int>& arrows_from(int obj) const { return from_[obj]; }
  std::vector<int> hom(int a, int b) const;

  ArrowSet maximal_sieve(int obj) const;
  ArrowSet arrows_named(const std::vector<std::string>& ids) const;
  std::vector<std::string> names_of(ArrowSet arrows) const;

  // Raw description that re-validates to this category.
  RawCategory to_raw() const;

  friend bool operator==(const FinCategory&, const FinCategory&);

 private:
  struct Arrow {
    std::string id;
    int dom;
    int cod;
    bool operator==(const Arrow&) const = default;
  };

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identities_;
  std::vector<int> table_;  // row = first, column = then
  std::vector<std::vector<int>> into_;
  std::vector<std::vector<int>> from_;

  void build_indices();

  friend FinCategory validate_category(const RawCategory& raw);
  friend FinCategory opposite(const FinCategory& c);
};

/// Validates a raw description: inserts identities, checks that the table is
/// closed, consistent and satisfies the identity and associativity laws.
/// Errors: DanglingEndpoint, DuplicateId, ReservedId, UnknownArrow,
/// NotComposable, CompositeMismatch, ConflictingComposite, IdentityViolation,
/// MissingComposite, AssociativityViolation, TooLarge.
FinCategory validate_category(const RawCategory& raw);

/// Dual category: same ids, dom/cod swapped, composition reversed.
FinCategory opposite(const FinCategory& c);

enum class SiteProperty { RightOre, Amalgamation, JointEmbedding };

std::string_view to_string(SiteProperty p);
std::optional<SiteProperty> parse_site_property(std::string_view s);

// One completed diagram. For RightOre the input is a cospan (f, g) and the
// completion (h, k) satisfies f∘h = g∘k; for Amalgamation the input is a span
// (f, g) and the completion (f', g') satisfies f'∘f = g'∘g; for
// JointEmbedding the input is a pair of objects and the completion a pair of
// arrows into a common object. All entries are ids.
struct Completion {
  std::string input_first;
  std::string input_second;
  std::string output_first;
  std::string output_second;
};

struct PropertyCheck {
  SiteProperty property;
  bool holds = false;
  std::vector<Completion> witnesses;  // one per input diagram when holds
  std::optional<std::pair<std::string, std::string>> counterexample;
};

PropertyCheck check_site_property(const FinCategory& c, SiteProperty p);

}  // namespace sitelab
