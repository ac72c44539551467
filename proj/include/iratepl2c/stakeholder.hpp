#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iratepl2c/literal.hpp"
#include "iratepl2c/model.hpp"

namespace iratepl2c {

/// Importance degrees are ordinal, 1 (not at all important) to 5 (very
/// important).
inline constexpr int kMinDegree = 1;
inline constexpr int kMaxDegree = 5;

struct RatedChoice {
  Literal literal;
  int degree = kMinDegree;

  bool operator==(const RatedChoice&) const = default;
};

/// One stakeholder's explicit rated choices. A feature appears at most once
/// across the whole list, in either polarity.
struct StakeholderConfig {
  std::string stakeholder;
  std::vector<RatedChoice> choices;

  bool operator==(const StakeholderConfig&) const = default;
};

/// The merged configuration: literal set in first-seen order plus the degree
/// ledger mapping each literal to the descending list of importance degrees
/// stakeholders (and, later, propagation) attached to it. Removing a literal
/// keeps its ledger entry so a re-added literal accumulates degrees.
class MergedConfiguration {
 public:
  const std::vector<Literal>& literals() const { return literals_; }
  const std::map<Literal, std::vector<int>>& ledger() const { return ledger_; }

  bool contains(const Literal& lit) const { return present_.count(lit) != 0; }

  /// Degree list for `lit`, or nullptr when the ledger has no entry.
  const std::vector<int>* degrees(const Literal& lit) const;
  /// Degree list for a literal that must be ledgered; throws EngineError
  /// otherwise (a missing entry is a bookkeeping bug, not bad input).
  const std::vector<int>& degrees_or_throw(const Literal& lit) const;
  /// Highest ledgered degree of `lit` (the list head).
  int max_degree(const Literal& lit) const { return degrees_or_throw(lit).front(); }

  /// Inserts `degree` into the ledger entry of `lit`, keeping the list in
  /// descending order, and appends the literal itself when absent.
  void ledger_insert(const Literal& lit, int degree);

  /// Drops the listed literals from the configuration; ledger entries stay.
  void remove(const std::vector<Literal>& to_remove);

  bool operator==(const MergedConfiguration&) const = default;

 private:
  std::vector<Literal> literals_;
  std::set<Literal> present_;
  std::map<Literal, std::vector<int>> ledger_;
};

/// Parses a choice document:
///
///   stakeholder: <id>
///   <feature>:<+|->:<degree>
///
/// Records may also be separated by commas on one line; `#` starts a
/// comment. Every feature must exist in `model`, appear at most once, and
/// carry a degree in [1,5].
StakeholderConfig parse_stakeholder_config(std::string_view text,
                                           const FeatureModel& model);

/// Parses the JSON array form:
/// [{"stakeholder":"Stk1","choices":[{"feature":"DB","polarity":"+","degree":4}]}]
/// Produces exactly the values the text form would.
std::vector<StakeholderConfig> parse_stakeholder_configs_json(
    std::string_view json_text, const FeatureModel& model);

/// Loads configs from a directory of choice files (lexicographic filename
/// order) or from a single file (JSON array if it starts with '[', one text
/// choice document otherwise).
std::vector<StakeholderConfig> load_stakeholder_configs(
    const std::filesystem::path& path, const FeatureModel& model);

/// Merges the stakeholders' choices in list order: the literal set is the
/// redundancy-free union, and every choice's degree lands in the ledger.
MergedConfiguration merge_configs(const std::vector<StakeholderConfig>& configs);

}  // namespace iratepl2c
