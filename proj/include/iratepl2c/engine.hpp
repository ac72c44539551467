#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iratepl2c/model.hpp"
#include "iratepl2c/stakeholder.hpp"
#include "iratepl2c/validity.hpp"

namespace iratepl2c {

enum class ComparisonResult { first, second, tie };

/// Ordered-importance comparison of two descending degree lists: the first
/// strict inequality in the paired scan decides; if one list is a strict
/// prefix of the other, the longer list wins; identical lists tie. Both
/// lists must be non-empty (an empty list is a ledger bug, reported as
/// EngineError).
ComparisonResult compare_importance(std::span<const int> a,
                                    std::span<const int> b);

enum class ConflictKind { explicit_pair, xor_pair };

enum class ResolvedBy { importance, manager_rule };

/// A detected conflict. Explicit conflicts pair F with ¬F; XOR conflicts
/// pair two desired members of one alternative group.
struct Conflict {
  ConflictKind kind = ConflictKind::explicit_pair;
  Literal first;
  Literal second;
  std::optional<ResolvedBy> resolved_by;
  std::optional<Literal> loser;

  bool same_pair(const Conflict& other) const {
    return kind == other.kind &&
           ((first == other.first && second == other.second) ||
            (first == other.second && second == other.first));
  }

  bool operator==(const Conflict&) const = default;
};

/// One constraint firing: `trigger` being desired (or an excluded partner
/// being desired) adds `added`, carrying the trigger's highest ledgered
/// degree at the time of the pass.
struct PropagationRecord {
  int constraint_id = 0;
  Literal trigger;
  Literal added;
  int degree = 0;

  bool operator==(const PropagationRecord&) const = default;
};

/// (constraint id, trigger literal) pairs that already fired; a pair fires
/// at most once per session, which makes propagation idempotent.
using PropagationHistory = std::set<std::pair<int, Literal>>;

struct ConflictResolution {
  std::vector<Conflict> conflicts;   // every examined pair, with outcome
  std::vector<Literal> to_remove;    // losers, in detection order
  std::vector<Conflict> remained() const;
};

/// Scans the configuration for complementary pairs, driven by the negative
/// literals, and decides each pair by importance comparison. Ties remove
/// nothing and are reported as remained conflicts.
ConflictResolution resolve_explicit_conflicts(const MergedConfiguration& config);

/// Walks every XOR group's unordered member pairs (both desired) and decides
/// each by importance comparison. A member already slated for removal is
/// skipped in later pairs of the same pass.
ConflictResolution resolve_xor_conflicts(const MergedConfiguration& config,
                                         const FeatureModel& model);

/// Walks the constraint list against the desired features of `config`:
/// `requires A B` with A desired adds B; `excludes A B` adds ¬B when A is
/// desired, or ¬A when only B is. Each record carries the trigger's MAX
/// ledger degree. Fired (constraint, trigger) pairs land in the returned
/// history and never fire again.
std::pair<std::vector<PropagationRecord>, PropagationHistory>
propagate_constraints(const MergedConfiguration& config,
                      const FeatureModel& model, PropagationHistory history);

/// Applies propagation records in order: absent literals are appended, and
/// every record's degree is merged into the ledger.
void apply_additions(MergedConfiguration& config,
                     const std::vector<PropagationRecord>& records);

/// Fallback policy for conflicts the degrees could not decide.
struct ManagerRule {
  enum class Kind { most_complete, simplest, priority };

  Kind kind = Kind::most_complete;
  std::string stakeholder;  // set for Kind::priority

  /// Accepts "most-complete", "simplest", or "priority:<id>".
  static ManagerRule parse(std::string_view text);
  std::string name() const;
};

/// Settles the given conflicts under the manager's rule and returns the
/// literals to remove. Conflicts are annotated with their resolution.
/// `most-complete` keeps the desired side of explicit conflicts and, for XOR
/// ties, the member with the longer ledger (then the lexicographically
/// smaller name); `simplest` keeps the undesired side and the smaller name;
/// `priority:<id>` keeps what that stakeholder explicitly chose and falls
/// back to most-complete when they chose neither.
std::vector<Literal> apply_manager_rule(
    const MergedConfiguration& config, std::vector<Conflict>& conflicts,
    const std::vector<StakeholderConfig>& stakeholders, const ManagerRule& rule);

/// Per-iteration observability of the resolution loop.
struct IterationTrace {
  int index = 0;
  std::vector<Conflict> explicit_conflicts;
  std::vector<Conflict> xor_conflicts;
  std::vector<PropagationRecord> propagations;
  std::vector<Literal> config_after;
};

struct ResolutionOutcome {
  std::vector<Literal> final_config;
  bool valid = false;
  std::vector<IterationTrace> trace;
  /// Conflicts the loop could not settle by importance. Empty when the loop
  /// reached validity on its own; annotated with the manager's decisions
  /// otherwise.
  std::vector<Conflict> remained;
  std::optional<std::string> manager_rule_applied;
  std::vector<Literal> manager_removals;
  std::vector<PropagationRecord> manager_propagations;
  ValidityReport final_validity;
};

struct SessionOptions {
  /// Overrides the default iteration cap of 2*|features|+2.
  std::optional<int> max_iterations;
};

/// The full resolution loop: merge once, then repeat explicit resolution,
/// XOR resolution, and constraint propagation until the configuration is
/// valid or stops changing. An invalid, unchanged configuration escalates
/// the surviving conflicts to the manager rule, followed by one more
/// propagation and validity check. Exceeding the iteration cap throws
/// EngineError.
ResolutionOutcome resolve_session(const FeatureModel& model,
                                  const std::vector<StakeholderConfig>& configs,
                                  const ManagerRule& rule,
                                  const SessionOptions& options = {});

}  // namespace iratepl2c
