#include "iratepl2c/validity.hpp"

#include <algorithm>
#include <sstream>

namespace iratepl2c {

namespace {

constexpr std::size_t kEnumerationGuard = 30;

struct LiteralSets {
  std::set<std::string> positive;
  std::set<std::string> negative;
};

LiteralSets split_literals(const std::vector<Literal>& config,
                           const FeatureModel& model) {
  LiteralSets sets;
  for (const Literal& lit : config) {
    if (!model.has_feature(lit.feature)) {
      throw ValidationError("unknown feature in configuration: " + lit.feature);
    }
    (lit.is_positive() ? sets.positive : sets.negative).insert(lit.feature);
  }
  return sets;
}

/// Ancestors plus mandatory-descendant closure of the given features; the
/// root is always part of the result.
std::set<std::string> tree_closure(const std::set<std::string>& positives,
                                   const FeatureModel& model) {
  std::set<std::string> selected = positives;
  selected.insert(model.root());
  std::vector<std::string> frontier(selected.begin(), selected.end());
  while (!frontier.empty()) {
    std::string name = frontier.back();
    frontier.pop_back();
    const Feature& f = model.feature(name);
    if (!f.parent.empty() && selected.insert(f.parent).second) {
      frontier.push_back(f.parent);
    }
    for (const std::string& child : f.children) {
      if (model.feature(child).kind == FeatureKind::mandatory &&
          selected.insert(child).second) {
        frontier.push_back(child);
      }
    }
  }
  return selected;
}

/// Facts that hold in every complete configuration subsuming the literal
/// set: `forced` features are selected in all of them, `forbidden` features
/// in none. Derived by propagating tree rules, group cardinalities, and
/// cross-tree constraints to a fixpoint. Every rule is sound, so a feature
/// that ends up both forced and forbidden proves the configuration cannot
/// be extended to a product.
struct Deduction {
  std::set<std::string> forced;
  std::set<std::string> forbidden;
};

Deduction deduce(const LiteralSets& sets, const FeatureModel& model) {
  Deduction facts;
  facts.forced = sets.positive;
  facts.forced.insert(model.root());
  facts.forbidden = sets.negative;

  bool changed = true;
  auto force = [&](const std::string& f) {
    if (facts.forced.insert(f).second) changed = true;
  };
  auto forbid = [&](const std::string& f) {
    if (facts.forbidden.insert(f).second) changed = true;
  };

  while (changed) {
    changed = false;
    for (const std::string& name : model.feature_order()) {
      const Feature& f = model.feature(name);
      if (facts.forced.count(name)) {
        if (!f.parent.empty()) force(f.parent);
        for (const std::string& child : f.children) {
          if (model.feature(child).kind == FeatureKind::mandatory) force(child);
        }
      }
      if (facts.forbidden.count(name)) {
        for (const std::string& child : f.children) forbid(child);
        if (!f.parent.empty() && f.kind == FeatureKind::mandatory) {
          forbid(f.parent);
        }
      }
    }
    for (const CrossTreeConstraint& c : model.constraints()) {
      if (c.kind == ConstraintKind::requires_) {
        if (facts.forced.count(c.lhs)) force(c.rhs);
        if (facts.forbidden.count(c.rhs)) forbid(c.lhs);
      } else {
        if (facts.forced.count(c.lhs)) forbid(c.rhs);
        if (facts.forced.count(c.rhs)) forbid(c.lhs);
      }
    }
    for (const Group& g : model.groups()) {
      if (g.kind == GroupKind::xor_group) {
        for (const std::string& member : g.members) {
          if (!facts.forced.count(member)) continue;
          for (const std::string& other : g.members) {
            if (other != member) forbid(other);
          }
        }
      }
      if (facts.forced.count(g.parent)) {
        const std::string* only_open = nullptr;
        int open = 0;
        for (const std::string& member : g.members) {
          if (!facts.forbidden.count(member)) {
            ++open;
            only_open = &member;
          }
        }
        if (open == 1) force(*only_open);
      }
    }
  }
  return facts;
}

}  // namespace

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::complementary: return "complementary";
    case ViolationKind::xor_multiple: return "xor-multiple";
    case ViolationKind::require_unsatisfied: return "require-unsatisfied";
    case ViolationKind::exclude_violated: return "exclude-violated";
    case ViolationKind::tree_broken: return "tree-broken";
  }
  return "unknown";
}

ValidityReport check_validity(const std::vector<Literal>& config,
                              const FeatureModel& model) {
  LiteralSets sets = split_literals(config, model);
  std::vector<Violation> violations;
  auto add = [&](ViolationKind kind, std::string detail) {
    Violation v{kind, std::move(detail)};
    if (std::find(violations.begin(), violations.end(), v) == violations.end()) {
      violations.push_back(std::move(v));
    }
  };

  for (const std::string& f : sets.positive) {
    if (sets.negative.count(f)) {
      add(ViolationKind::complementary,
          f + " and " + Literal::negative(f).str() + " are both present");
    }
  }

  const Deduction facts = deduce(sets, model);

  for (const Group& g : model.groups()) {
    if (g.kind == GroupKind::xor_group) {
      std::vector<std::string> taken;
      for (const std::string& m : g.members) {
        if (facts.forced.count(m)) taken.push_back(m);
      }
      if (taken.size() >= 2) {
        std::string names = taken[0];
        for (std::size_t i = 1; i < taken.size(); ++i) names += ", " + taken[i];
        add(ViolationKind::xor_multiple,
            "alternative group under " + g.parent + " has " +
                std::to_string(taken.size()) + " selected members: " + names);
      }
    }
    if (facts.forced.count(g.parent)) {
      bool selectable = false;
      for (const std::string& m : g.members) {
        selectable |= facts.forbidden.count(m) == 0;
      }
      if (!selectable) {
        add(ViolationKind::tree_broken,
            "group under " + g.parent +
                " is forced but no member can be selected");
      }
    }
  }

  for (const CrossTreeConstraint& c : model.constraints()) {
    if (c.kind == ConstraintKind::requires_) {
      if (sets.positive.count(c.lhs) && !sets.positive.count(c.rhs)) {
        add(ViolationKind::require_unsatisfied,
            c.str() + ": " + c.lhs + " is desired but " + c.rhs + " is not");
      }
      if (facts.forced.count(c.lhs) && facts.forbidden.count(c.rhs)) {
        add(ViolationKind::require_unsatisfied,
            c.str() + ": " + c.lhs + " is selected while " + c.rhs +
                " is ruled out");
      }
    } else {
      if (facts.forced.count(c.lhs) && facts.forced.count(c.rhs)) {
        add(ViolationKind::exclude_violated,
            c.str() + ": both sides end up selected");
      }
    }
  }

  for (const std::string& f : facts.forced) {
    if (!facts.forbidden.count(f)) continue;
    if (sets.positive.count(f) && sets.negative.count(f)) continue;
    add(ViolationKind::tree_broken,
        f + " is required and ruled out at the same time");
  }

  ValidityReport report;
  report.violations = std::move(violations);
  report.valid = report.violations.empty();
  return report;
}

CompleteConfiguration complete(const std::vector<Literal>& config,
                               const FeatureModel& model) {
  LiteralSets sets = split_literals(config, model);
  std::set<std::string> selected = tree_closure(sets.positive, model);
  for (const std::string& f : selected) {
    if (sets.negative.count(f)) {
      throw CompletionError("completion contradiction: " + f +
                            " is required by the tree but undesired in the "
                            "configuration");
    }
  }
  return {std::move(selected)};
}

namespace {

/// Leaf predicate of the tree-walking enumerator: group cardinalities and
/// cross-tree constraints. Tree rules (parent links, mandatory children)
/// are enforced during the descent.
class GroupConstraintCheck {
 public:
  explicit GroupConstraintCheck(const FeatureModel& model) {
    for (const Group& g : model.groups()) {
      GroupBits gb;
      gb.is_xor = g.kind == GroupKind::xor_group;
      gb.parent = bit(model.index_of(g.parent));
      for (const std::string& m : g.members) gb.members |= bit(model.index_of(m));
      groups_.push_back(gb);
    }
    for (const CrossTreeConstraint& c : model.constraints()) {
      ConstraintBits cb;
      cb.is_requires = c.kind == ConstraintKind::requires_;
      cb.lhs = bit(model.index_of(c.lhs));
      cb.rhs = bit(model.index_of(c.rhs));
      constraints_.push_back(cb);
    }
  }

  bool ok(std::uint64_t mask) const {
    for (const GroupBits& g : groups_) {
      int count = __builtin_popcountll(mask & g.members);
      if (mask & g.parent) {
        if (g.is_xor ? count != 1 : count < 1) return false;
      } else if (count != 0) {
        return false;
      }
    }
    for (const ConstraintBits& c : constraints_) {
      if (c.is_requires) {
        if ((mask & c.lhs) && !(mask & c.rhs)) return false;
      } else {
        if ((mask & c.lhs) && (mask & c.rhs)) return false;
      }
    }
    return true;
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

  struct GroupBits {
    bool is_xor = true;
    std::uint64_t parent = 0;
    std::uint64_t members = 0;
  };
  struct ConstraintBits {
    bool is_requires = true;
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
  };
  std::vector<GroupBits> groups_;
  std::vector<ConstraintBits> constraints_;
};

}  // namespace

std::vector<std::uint64_t> enumerate_valid_masks(const FeatureModel& model) {
  const std::size_t n = model.size();
  if (n > kEnumerationGuard) {
    throw ValidationError(
        "model too large for exhaustive enumeration (" + std::to_string(n) +
        " features, guard is " + std::to_string(kEnumerationGuard) + ")");
  }

  // Document order lists parents before children, so each feature's parent
  // bit is already decided when its own position comes up.
  std::vector<int> parent_index(n, -1);
  std::vector<FeatureKind> kind(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Feature& f = model.feature(model.feature_order()[i]);
    kind[i] = f.kind;
    if (!f.parent.empty()) {
      parent_index[i] = static_cast<int>(model.index_of(f.parent));
    }
  }

  GroupConstraintCheck leaf_check(model);
  std::vector<std::uint64_t> results;
  std::vector<std::pair<std::size_t, std::uint64_t>> stack;
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    auto [i, mask] = stack.back();
    stack.pop_back();
    if (i == n) {
      if (leaf_check.ok(mask)) results.push_back(mask);
      continue;
    }
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (parent_index[i] < 0) {
      stack.emplace_back(i + 1, mask | bit);  // the root is always selected
      continue;
    }
    const bool parent_selected =
        (mask >> static_cast<unsigned>(parent_index[i])) & 1;
    if (!parent_selected) {
      stack.emplace_back(i + 1, mask);
    } else if (kind[i] == FeatureKind::mandatory) {
      stack.emplace_back(i + 1, mask | bit);
    } else {
      stack.emplace_back(i + 1, mask);
      stack.emplace_back(i + 1, mask | bit);
    }
  }
  std::sort(results.begin(), results.end());
  return results;
}

CompleteConfiguration configuration_from_mask(const FeatureModel& model,
                                              std::uint64_t mask) {
  CompleteConfiguration config;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if ((mask >> i) & 1) config.selected.insert(model.feature_order()[i]);
  }
  return config;
}

std::vector<CompleteConfiguration> enumerate_valid(const FeatureModel& model) {
  std::vector<CompleteConfiguration> out;
  for (std::uint64_t mask : enumerate_valid_masks(model)) {
    out.push_back(configuration_from_mask(model, mask));
  }
  return out;
}

bool is_subsumed(const std::vector<Literal>& config,
                 const CompleteConfiguration& complete) {
  for (const Literal& lit : config) {
    const bool selected = complete.selected.count(lit.feature) != 0;
    if (lit.is_positive() != selected) return false;
  }
  return true;
}

std::vector<Literal> parse_literal_set(std::string_view text,
                                       const FeatureModel& model) {
  std::vector<Literal> literals;
  int line_number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_number;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw = raw.substr(0, hash);
    }
    for (char& c : raw) {
      if (c == ',') c = ' ';
    }
    std::istringstream tokens(raw);
    std::string token;
    while (tokens >> token) {
      Literal lit = Literal::parse(token);
      if (!model.has_feature(lit.feature)) {
        throw ParseError("unknown feature '" + lit.feature + "'", line_number);
      }
      literals.push_back(std::move(lit));
    }
  }
  return literals;
}

}  // namespace iratepl2c
