#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meanorder/rng.hpp"

namespace meanorder {

/// Subset of poset elements as a bitmask over element indices.
using ElementSet = std::uint64_t;

/// Finite partially ordered set over named elements. The relation is
/// given explicitly as a boolean matrix and validated at construction:
/// reflexivity, antisymmetry and transitivity must already hold, nothing
/// is repaired or closed silently.
class Poset {
 public:
  static constexpr std::size_t kMaxElements = 64;

  Poset(std::vector<std::string> elements, std::vector<std::uint8_t> leq_matrix);

  static Poset from_pairs(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& le_pairs);

  /// Fixture format: one `elements: a b c` line, then `le: x y` lines,
  /// one per related pair (reflexive pairs included). '#' starts a comment.
  static Poset parse(std::istream& in);
  static Poset parse_text(const std::string& text);

  static Poset chain(std::size_t n);
  /// {bottom, a, b, top} with a, b incomparable.
  static Poset diamond();
  /// Random poset, valid by construction: random topological order with
  /// edge probability `edge_prob`, transitively closed.
  static Poset random(std::size_t n, double edge_prob, Rng& rng);

  std::size_t size() const { return names_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return matrix_[a * size() + b] != 0; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  /// Throws DomainError for unknown names.
  std::size_t index_of(std::string_view name) const;

  ElementSet all() const;
  /// {y : y <= i} and {y : i <= y} as precomputed masks.
  ElementSet below(std::size_t i) const { return below_[i]; }
  ElementSet above(std::size_t i) const { return above_[i]; }

  /// Induced subposet on `members`; element names are preserved.
  Poset restrict(ElementSet members) const;

  std::string set_to_string(ElementSet s) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> matrix_;
  std::vector<ElementSet> below_;
  std::vector<ElementSet> above_;

  void validate() const;
  void build_masks();
};

/// A subset of a poset together with its ambient parent.
struct SubsetView {
  const Poset* parent;
  ElementSet members;

  SubsetView(const Poset& p, ElementSet m);
};

/// [lower, upper] within `space.members`; `lower` and `upper` are ambient
/// elements and need not belong to the subset. Empty when lower </= upper.
ElementSet bracket(const SubsetView& space, std::size_t lower, std::size_t upper);

/// Union of all brackets with endpoints in `inner.members`, taken over the
/// whole ambient poset: { x : exists l,u in members with l <= x <= u }.
ElementSet gi_set(const SubsetView& inner);

struct IntervalTypeVerdict {
  bool interval_type;
  /// An element of gi_set \ members when the verdict is negative.
  std::optional<std::size_t> witness;
};

/// True iff gi_set(inner) == inner.members.
IntervalTypeVerdict is_interval_type(const SubsetView& inner);

/// Largest down-set / up-set generated by `s`.
ElementSet down_set(const Poset& p, ElementSet s);
ElementSet up_set(const Poset& p, ElementSet s);

struct LawRecord {
  std::string law;
  std::uint64_t poset_seed = 0;
  std::uint64_t trial = 0;
  bool ok = true;
  /// Strict inclusion seen in the bracket-union law (informational).
  bool strict_inclusion = false;
  std::string witness;
};

struct ClosureReport {
  std::vector<LawRecord> records;
  std::size_t violations = 0;
  /// Count of bracket-union trials where the inclusion was strict.
  std::size_t strict_inclusions = 0;
};

/// Samples interval-type subsets of `ambient` and checks, per trial:
/// (a) intersections of interval-type sets are interval-type;
/// (b) unions of increasing chains (length <= 5) are interval-type;
/// (c) restriction: I interval-type in X implies I ∩ Y interval-type in
///     the induced order on a random Y ⊆ X;
/// (d) bracket(p,q) ∪ bracket(q,r) ⊆ bracket(p,r) whenever p <= q <= r.
/// A violated law is reported, never thrown.
ClosureReport check_closure_laws(const Poset& ambient, std::size_t trials,
                                 std::uint64_t seed, std::uint64_t poset_seed = 0);

}  // namespace meanorder
