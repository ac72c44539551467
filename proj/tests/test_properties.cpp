#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "iratepl2c/engine.hpp"

#include "support/generators.hpp"

using namespace iratepl2c;

namespace {

std::vector<int> random_degree_list(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> length(1, 6);
  std::uniform_int_distribution<int> degree(kMinDegree, kMaxDegree);
  std::vector<int> list(static_cast<std::size_t>(length(rng)));
  for (int& d : list) d = degree(rng);
  std::sort(list.begin(), list.end(), std::greater<int>());
  return list;
}

std::set<Literal> as_set(const std::vector<Literal>& literals) {
  return {literals.begin(), literals.end()};
}

}  // namespace

TEST_CASE("compare_importance is antisymmetric with a reflexive tie") {
  std::mt19937_64 rng(11);
  int ties = 0;
  for (int round = 0; round < 10000; ++round) {
    const auto a = random_degree_list(rng);
    const auto b = random_degree_list(rng);
    const ComparisonResult ab = compare_importance(a, b);
    const ComparisonResult ba = compare_importance(b, a);
    switch (ab) {
      case ComparisonResult::first:
        CHECK(ba == ComparisonResult::second);
        break;
      case ComparisonResult::second:
        CHECK(ba == ComparisonResult::first);
        break;
      case ComparisonResult::tie:
        CHECK(ba == ComparisonResult::tie);
        CHECK(a == b);
        ++ties;
        break;
    }
    CHECK(compare_importance(a, a) == ComparisonResult::tie);
  }
  CHECK(ties > 0);
}

TEST_CASE("no decidable complementary pair survives the explicit pass") {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 500; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    const auto configs = testsupport::random_scenario(rng, model, 4, 6, 0.5);
    MergedConfiguration config = merge_configs(configs);
    config.remove(resolve_explicit_conflicts(config).to_remove);

    for (const Literal& lit : config.literals()) {
      if (lit.is_positive()) continue;
      const Literal positive = lit.negated();
      if (!config.contains(positive)) continue;
      CHECK(compare_importance(config.degrees_or_throw(positive),
                               config.degrees_or_throw(lit)) ==
            ComparisonResult::tie);
    }
  }
}

TEST_CASE("each pass only removes, propagation only adds") {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 500; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    const auto configs = testsupport::random_scenario(rng, model, 4, 6, 0.4);
    MergedConfiguration config = merge_configs(configs);

    const auto before_explicit = as_set(config.literals());
    config.remove(resolve_explicit_conflicts(config).to_remove);
    const auto after_explicit = as_set(config.literals());
    CHECK(std::includes(before_explicit.begin(), before_explicit.end(),
                        after_explicit.begin(), after_explicit.end()));

    config.remove(resolve_xor_conflicts(config, model).to_remove);
    const auto after_xor = as_set(config.literals());
    CHECK(std::includes(after_explicit.begin(), after_explicit.end(),
                        after_xor.begin(), after_xor.end()));

    auto [records, history] = propagate_constraints(config, model, {});
    apply_additions(config, records);
    const auto after_add = as_set(config.literals());
    CHECK(std::includes(after_add.begin(), after_add.end(), after_xor.begin(),
                        after_xor.end()));
  }
}

TEST_CASE("propagation replay adds nothing once a pass has fired") {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 1000; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    const auto configs = testsupport::random_scenario(rng, model, 4, 6);
    const MergedConfiguration config = merge_configs(configs);

    auto [first, history] = propagate_constraints(config, model, {});
    auto [second, history2] = propagate_constraints(config, model, history);
    CHECK(second.empty());
    CHECK(history2 == history);
  }
}

TEST_CASE("after a full iteration every xor group is settled or reported") {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 500; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    const auto configs = testsupport::random_scenario(rng, model, 4, 6);
    MergedConfiguration config = merge_configs(configs);

    config.remove(resolve_explicit_conflicts(config).to_remove);
    const ConflictResolution xor_pass = resolve_xor_conflicts(config, model);
    config.remove(xor_pass.to_remove);
    const auto remained = xor_pass.remained();

    for (const Group& group : model.groups()) {
      if (group.kind != GroupKind::xor_group) continue;
      std::vector<std::string> desired;
      for (const std::string& member : group.members) {
        if (config.contains(Literal::positive(member))) {
          desired.push_back(member);
        }
      }
      if (desired.size() < 2) continue;
      // Any surviving pair must be covered by a reported tie.
      for (std::size_t j = 0; j < desired.size(); ++j) {
        for (std::size_t m = j + 1; m < desired.size(); ++m) {
          const Conflict probe{ConflictKind::xor_pair,
                               Literal::positive(desired[j]),
                               Literal::positive(desired[m]),
                               {},
                               {}};
          bool reported = false;
          for (const Conflict& c : remained) {
            reported |= c.same_pair(probe);
          }
          CHECK(reported);
        }
      }
    }
  }
}

TEST_CASE("sessions terminate within the iteration cap") {
  std::mt19937_64 rng(66);
  const std::vector<ManagerRule> rules{ManagerRule::parse("most-complete"),
                                       ManagerRule::parse("simplest"),
                                       ManagerRule::parse("priority:Stk1")};
  for (int round = 0; round < 1000; ++round) {
    testsupport::ModelParams params;
    params.base_features = 6 + round % 10;
    params.constraints = 2 + round % 5;
    const FeatureModel model = testsupport::random_model(rng, params);
    const auto configs = testsupport::random_scenario(rng, model, 5, 6, 0.4);
    const ResolutionOutcome outcome =
        resolve_session(model, configs, rules[round % rules.size()]);
    CHECK(outcome.trace.size() <= 2 * model.size() + 2);
    if (outcome.valid) {
      CHECK(check_validity(outcome.final_config, model).valid);
    }
  }
}

TEST_CASE("identical inputs give identical traces; stakeholder order cannot change a tie-free outcome") {
  std::mt19937_64 rng(77);
  int compared = 0;
  for (int round = 0; round < 300; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    auto configs = testsupport::random_scenario(rng, model, 4, 5);
    const ManagerRule rule = ManagerRule::parse("most-complete");

    const ResolutionOutcome a = resolve_session(model, configs, rule);
    const ResolutionOutcome b = resolve_session(model, configs, rule);
    CHECK(a.final_config == b.final_config);
    CHECK(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].explicit_conflicts == b.trace[i].explicit_conflicts);
      CHECK(a.trace[i].xor_conflicts == b.trace[i].xor_conflicts);
      CHECK(a.trace[i].propagations == b.trace[i].propagations);
      CHECK(a.trace[i].config_after == b.trace[i].config_after);
    }

    bool any_tie = false;
    for (const IterationTrace& t : a.trace) {
      for (const Conflict& c : t.explicit_conflicts) {
        any_tie |= !c.resolved_by.has_value();
      }
      for (const Conflict& c : t.xor_conflicts) {
        any_tie |= !c.resolved_by.has_value();
      }
    }
    if (any_tie) continue;
    ++compared;
    std::shuffle(configs.begin(), configs.end(), rng);
    const ResolutionOutcome shuffled = resolve_session(model, configs, rule);
    CHECK(as_set(shuffled.final_config) == as_set(a.final_config));
    CHECK(shuffled.valid == a.valid);
  }
  CHECK(compared > 0);
}
