#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace meanorder::verify {

/// Deliberate faults injected into the suite's predicates, used to check
/// that the proposition tests have teeth. The library itself is never
/// mutated; only the suite's view of the predicates is.
struct Mutations {
  /// Negates the exact comparability predicate.
  bool flip_gini_leq = false;
  /// Swaps open/closed strictness in ball membership.
  bool ball_strictness = false;
  /// Drops the swapped rectangle block from the bracket formula.
  bool drop_swapped_interval_block = false;

  bool any() const { return flip_gini_leq || ball_strictness || drop_swapped_interval_block; }

  /// "" or one of: ginicomp, ballstrict, intervalswap.
  static Mutations parse(std::string_view name);
};

struct PropositionRow {
  std::string id;
  std::size_t trials = 0;
  bool pass = true;
  std::string witness;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  /// Base trial count; rows scale it to keep the default run under ~10 s.
  std::size_t trials = 400;
  /// Truncation used by the hardy rows.
  std::int64_t hardy_terms = 20000;
  Mutations mutations;
};

/// Runs every proposition check in a fixed order and returns one row per
/// proposition. A failed row carries a concrete witness string.
std::vector<PropositionRow> run_suite(const SuiteConfig& config);

bool all_pass(const std::vector<PropositionRow>& rows);

}  // namespace meanorder::verify
