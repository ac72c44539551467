#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iratepl2c/literal.hpp"
#include "iratepl2c/model.hpp"

namespace iratepl2c {

enum class ViolationKind {
  complementary,        // F and ¬F both present
  xor_multiple,         // two or more members of an XOR group desired
  require_unsatisfied,  // requires A B broken by the configuration
  exclude_violated,     // excludes A B with both sides (to be) selected
  tree_broken,          // tree closure contradicts a negative literal or
                        // leaves a forced group without a selectable member
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::complementary;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidityReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// A fully decided configuration: every feature in `selected` is part of the
/// product, every other feature is not.
struct CompleteConfiguration {
  std::set<std::string> selected;

  bool operator==(const CompleteConfiguration&) const = default;
};

/// Checks a partial configuration (a literal set) against the model.
///
/// Collected violations: complementary pairs; XOR groups with two or more
/// desired members; require/exclude constraints broken at the literal level;
/// and tree-closure failures, where the completion of the positive literals
/// (ancestors plus mandatory descendants) hits a negated feature, forces
/// both sides of an exclusion, forces the antecedent of a require whose
/// consequent is negated, or forces a group whose members are all negated.
ValidityReport check_validity(const std::vector<Literal>& config,
                              const FeatureModel& model);

/// Tree completion of the positive literals: the literals themselves, all
/// their ancestors, and the mandatory-child closure of everything selected.
/// The root is always included. Throws CompletionError when a forced feature
/// is negated in `config`.
CompleteConfiguration complete(const std::vector<Literal>& config,
                               const FeatureModel& model);

/// All valid complete configurations of the model, as selection bitmasks
/// over document-order feature indices, in ascending mask order. Guarded to
/// models with at most 30 features.
std::vector<std::uint64_t> enumerate_valid_masks(const FeatureModel& model);

/// As enumerate_valid_masks, materialized into feature-name sets.
std::vector<CompleteConfiguration> enumerate_valid(const FeatureModel& model);

CompleteConfiguration configuration_from_mask(const FeatureModel& model,
                                              std::uint64_t mask);

/// True iff every positive literal of `config` is selected and every
/// negative literal is unselected.
bool is_subsumed(const std::vector<Literal>& config,
                 const CompleteConfiguration& complete);

/// Parses a literal-set document: literals separated by whitespace or
/// commas, `#` comments; `¬F` and `!F` both denote the negative literal.
std::vector<Literal> parse_literal_set(std::string_view text,
                                       const FeatureModel& model);

}  // namespace iratepl2c
