#include "iratepl2c/engine.hpp"

#include <algorithm>

namespace iratepl2c {

ComparisonResult compare_importance(std::span<const int> a,
                                    std::span<const int> b) {
  if (a.empty() || b.empty()) {
    throw EngineError("compare_importance called with an empty degree list");
  }
  const std::size_t shared = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < shared; ++i) {
    if (a[i] != b[i]) {
      return a[i] > b[i] ? ComparisonResult::first : ComparisonResult::second;
    }
  }
  if (a.size() != b.size()) {
    return a.size() > b.size() ? ComparisonResult::first
                               : ComparisonResult::second;
  }
  return ComparisonResult::tie;
}

std::vector<Conflict> ConflictResolution::remained() const {
  std::vector<Conflict> out;
  for (const Conflict& c : conflicts) {
    if (!c.resolved_by.has_value()) out.push_back(c);
  }
  return out;
}

ConflictResolution resolve_explicit_conflicts(const MergedConfiguration& config) {
  ConflictResolution result;
  for (const Literal& nf : config.literals()) {
    if (nf.is_positive()) continue;
    const Literal f = nf.negated();
    if (!config.contains(f)) continue;

    Conflict conflict{ConflictKind::explicit_pair, f, nf, {}, {}};
    switch (compare_importance(config.degrees_or_throw(f),
                               config.degrees_or_throw(nf))) {
      case ComparisonResult::first:
        conflict.resolved_by = ResolvedBy::importance;
        conflict.loser = nf;
        result.to_remove.push_back(nf);
        break;
      case ComparisonResult::second:
        conflict.resolved_by = ResolvedBy::importance;
        conflict.loser = f;
        result.to_remove.push_back(f);
        break;
      case ComparisonResult::tie:
        break;
    }
    result.conflicts.push_back(std::move(conflict));
  }
  return result;
}

ConflictResolution resolve_xor_conflicts(const MergedConfiguration& config,
                                         const FeatureModel& model) {
  ConflictResolution result;
  std::set<Literal> slated;
  for (const Group& group : model.groups()) {
    if (group.kind != GroupKind::xor_group) continue;
    const auto& members = group.members;
    for (std::size_t j = 0; j + 1 < members.size(); ++j) {
      for (std::size_t m = j + 1; m < members.size(); ++m) {
        const Literal a = Literal::positive(members[j]);
        const Literal b = Literal::positive(members[m]);
        if (!config.contains(a) || !config.contains(b)) continue;
        if (slated.count(a) || slated.count(b)) continue;

        Conflict conflict{ConflictKind::xor_pair, a, b, {}, {}};
        switch (compare_importance(config.degrees_or_throw(a),
                                   config.degrees_or_throw(b))) {
          case ComparisonResult::first:
            conflict.resolved_by = ResolvedBy::importance;
            conflict.loser = b;
            result.to_remove.push_back(b);
            slated.insert(b);
            break;
          case ComparisonResult::second:
            conflict.resolved_by = ResolvedBy::importance;
            conflict.loser = a;
            result.to_remove.push_back(a);
            slated.insert(a);
            break;
          case ComparisonResult::tie:
            break;
        }
        result.conflicts.push_back(std::move(conflict));
      }
    }
  }
  return result;
}

std::pair<std::vector<PropagationRecord>, PropagationHistory>
propagate_constraints(const MergedConfiguration& config,
                      const FeatureModel& model, PropagationHistory history) {
  std::vector<PropagationRecord> records;
  auto fire = [&](const CrossTreeConstraint& c, const Literal& trigger,
                  Literal added) {
    if (!history.insert({c.id, trigger}).second) return;
    records.push_back(
        {c.id, trigger, std::move(added), config.max_degree(trigger)});
  };

  for (const CrossTreeConstraint& c : model.constraints()) {
    if (c.kind == ConstraintKind::requires_) {
      const Literal trigger = Literal::positive(c.lhs);
      if (config.contains(trigger)) {
        fire(c, trigger, Literal::positive(c.rhs));
      }
    } else {
      // Mutual exclusion: the written direction dominates when both sides
      // are desired, so the conflict the addition creates is charged to the
      // excluded side only.
      const Literal lhs = Literal::positive(c.lhs);
      const Literal rhs = Literal::positive(c.rhs);
      if (config.contains(lhs)) {
        fire(c, lhs, Literal::negative(c.rhs));
      } else if (config.contains(rhs)) {
        fire(c, rhs, Literal::negative(c.lhs));
      }
    }
  }
  return {std::move(records), std::move(history)};
}

void apply_additions(MergedConfiguration& config,
                     const std::vector<PropagationRecord>& records) {
  for (const PropagationRecord& record : records) {
    config.ledger_insert(record.added, record.degree);
  }
}

ManagerRule ManagerRule::parse(std::string_view text) {
  if (text == "most-complete") return {Kind::most_complete, ""};
  if (text == "simplest") return {Kind::simplest, ""};
  constexpr std::string_view kPriorityPrefix = "priority:";
  if (text.rfind(kPriorityPrefix, 0) == 0) {
    std::string id(text.substr(kPriorityPrefix.size()));
    if (id.empty()) throw ValidationError("priority rule needs a stakeholder id");
    return {Kind::priority, std::move(id)};
  }
  throw ValidationError("unknown manager rule: '" + std::string(text) +
                        "' (expected most-complete, simplest, or priority:<id>)");
}

std::string ManagerRule::name() const {
  switch (kind) {
    case Kind::most_complete: return "most-complete";
    case Kind::simplest: return "simplest";
    case Kind::priority: return "priority:" + stakeholder;
  }
  return "";
}

namespace {

/// Did this stakeholder explicitly make exactly this choice?
bool stakeholder_chose(const std::vector<StakeholderConfig>& stakeholders,
                       const std::string& id, const Literal& lit) {
  for (const StakeholderConfig& config : stakeholders) {
    if (config.stakeholder != id) continue;
    for (const RatedChoice& choice : config.choices) {
      if (choice.literal == lit) return true;
    }
  }
  return false;
}

Literal most_complete_loser(const MergedConfiguration& config,
                            const Conflict& conflict) {
  if (conflict.kind == ConflictKind::explicit_pair) {
    return conflict.first.is_positive() ? conflict.second : conflict.first;
  }
  const std::size_t len_first = config.degrees_or_throw(conflict.first).size();
  const std::size_t len_second = config.degrees_or_throw(conflict.second).size();
  if (len_first != len_second) {
    return len_first < len_second ? conflict.first : conflict.second;
  }
  return std::max(conflict.first, conflict.second);
}

}  // namespace

std::vector<Literal> apply_manager_rule(
    const MergedConfiguration& config, std::vector<Conflict>& conflicts,
    const std::vector<StakeholderConfig>& stakeholders,
    const ManagerRule& rule) {
  std::vector<Literal> removals;
  std::set<Literal> removed;
  for (Conflict& conflict : conflicts) {
    Literal loser;
    if (removed.count(conflict.first)) {
      loser = conflict.first;  // settled as a side effect of an earlier pick
    } else if (removed.count(conflict.second)) {
      loser = conflict.second;
    } else {
      switch (rule.kind) {
        case ManagerRule::Kind::most_complete:
          loser = most_complete_loser(config, conflict);
          break;
        case ManagerRule::Kind::simplest:
          if (conflict.kind == ConflictKind::explicit_pair) {
            loser = conflict.first.is_positive() ? conflict.first
                                                 : conflict.second;
          } else {
            loser = std::max(conflict.first, conflict.second);
          }
          break;
        case ManagerRule::Kind::priority: {
          const bool chose_first =
              stakeholder_chose(stakeholders, rule.stakeholder, conflict.first);
          const bool chose_second =
              stakeholder_chose(stakeholders, rule.stakeholder, conflict.second);
          if (chose_first && !chose_second) {
            loser = conflict.second;
          } else if (chose_second && !chose_first) {
            loser = conflict.first;
          } else {
            loser = most_complete_loser(config, conflict);
          }
          break;
        }
      }
    }
    conflict.resolved_by = ResolvedBy::manager_rule;
    conflict.loser = loser;
    if (removed.insert(loser).second) {
      removals.push_back(loser);
    }
  }
  return removals;
}

namespace {

/// Dedupes accumulated conflicts and keeps those whose literals are still
/// both present (Algorithm 1's final re-check before the manager steps in).
std::vector<Conflict> check_remained_conflicts(
    const MergedConfiguration& config, const std::vector<Conflict>& conflicts) {
  std::vector<Conflict> live;
  for (const Conflict& c : conflicts) {
    if (!config.contains(c.first) || !config.contains(c.second)) continue;
    bool duplicate = false;
    for (const Conflict& seen : live) {
      if (seen.same_pair(c)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      Conflict fresh = c;
      fresh.resolved_by.reset();
      fresh.loser.reset();
      live.push_back(std::move(fresh));
    }
  }
  return live;
}

std::set<Literal> literal_set(const std::vector<Literal>& literals) {
  return {literals.begin(), literals.end()};
}

}  // namespace

ResolutionOutcome resolve_session(const FeatureModel& model,
                                  const std::vector<StakeholderConfig>& configs,
                                  const ManagerRule& rule,
                                  const SessionOptions& options) {
  const int cap = options.max_iterations.value_or(
      2 * static_cast<int>(model.size()) + 2);

  MergedConfiguration config = merge_configs(configs);
  PropagationHistory history;
  std::vector<Conflict> accumulated;
  ResolutionOutcome outcome;

  bool valid = false;
  bool different = true;
  int iteration = 0;
  while (!valid && different) {
    if (iteration >= cap) {
      throw EngineError("resolution did not settle within " +
                        std::to_string(cap) + " iterations");
    }
    ++iteration;
    const std::set<Literal> before = literal_set(config.literals());

    IterationTrace trace;
    trace.index = iteration;

    ConflictResolution explicit_pass = resolve_explicit_conflicts(config);
    config.remove(explicit_pass.to_remove);
    auto explicit_remained = explicit_pass.remained();
    accumulated.insert(accumulated.end(), explicit_remained.begin(),
                       explicit_remained.end());
    trace.explicit_conflicts = std::move(explicit_pass.conflicts);

    ConflictResolution xor_pass = resolve_xor_conflicts(config, model);
    config.remove(xor_pass.to_remove);
    auto xor_remained = xor_pass.remained();
    accumulated.insert(accumulated.end(), xor_remained.begin(),
                       xor_remained.end());
    trace.xor_conflicts = std::move(xor_pass.conflicts);

    auto [records, updated_history] =
        propagate_constraints(config, model, std::move(history));
    history = std::move(updated_history);
    apply_additions(config, records);
    trace.propagations = std::move(records);

    trace.config_after = config.literals();
    outcome.trace.push_back(std::move(trace));

    different = literal_set(config.literals()) != before;
    outcome.final_validity = check_validity(config.literals(), model);
    valid = outcome.final_validity.valid;
  }

  if (!valid) {
    std::vector<Conflict> live = check_remained_conflicts(config, accumulated);
    outcome.manager_removals = apply_manager_rule(config, live, configs, rule);
    outcome.manager_rule_applied = rule.name();
    config.remove(outcome.manager_removals);

    auto [records, updated_history] =
        propagate_constraints(config, model, std::move(history));
    history = std::move(updated_history);
    apply_additions(config, records);
    outcome.manager_propagations = std::move(records);

    outcome.remained = std::move(live);
    outcome.final_validity = check_validity(config.literals(), model);
    valid = outcome.final_validity.valid;
  }

  outcome.final_config = config.literals();
  outcome.valid = valid;
  return outcome;
}

}  // namespace iratepl2c
