#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iratepl2c/errors.hpp"

namespace iratepl2c {

enum class FeatureKind { mandatory, optional, group_member };

enum class GroupKind { xor_group, or_group };

enum class ConstraintKind { requires_, excludes };

struct Feature {
  std::string name;
  std::string parent;  // empty for the root
  FeatureKind kind = FeatureKind::optional;
  int group = -1;  // index into FeatureModel::groups(), -1 when not a member
  std::vector<std::string> children;  // declaration order

  bool operator==(const Feature&) const = default;
};

/// An alternative (XOR) or OR group: members are tree children of `parent`.
struct Group {
  GroupKind kind = GroupKind::xor_group;
  std::string parent;
  std::vector<std::string> members;

  bool operator==(const Group&) const = default;
};

/// `requires A B` means A => B; `excludes A B` means A and B are mutually
/// exclusive. `id` is the 0-based position in the source document.
struct CrossTreeConstraint {
  int id = 0;
  ConstraintKind kind = ConstraintKind::requires_;
  std::string lhs;
  std::string rhs;

  std::string str() const {
    return (kind == ConstraintKind::requires_ ? "requires " : "excludes ") +
           lhs + " " + rhs;
  }

  bool operator==(const CrossTreeConstraint&) const = default;
};

/// The product-line model: a feature tree plus group relations and the
/// cross-tree constraint list. Immutable after construction; safe to share
/// across threads read-only.
class FeatureModel {
 public:
  /// Validates every structural invariant (unique names, single rooted tree,
  /// group membership, constraint references) and throws ValidationError on
  /// the first violation.
  static FeatureModel from_parts(std::string root,
                                 std::vector<Feature> features_in_order,
                                 std::vector<Group> groups,
                                 std::vector<CrossTreeConstraint> constraints);

  const std::string& root() const { return root_; }
  const std::vector<std::string>& feature_order() const { return order_; }
  std::size_t size() const { return order_.size(); }

  bool has_feature(const std::string& name) const {
    return features_.count(name) != 0;
  }
  const Feature& feature(const std::string& name) const;
  /// Position of `name` in document order.
  std::size_t index_of(const std::string& name) const;

  const std::vector<Group>& groups() const { return groups_; }
  std::vector<const Group*> xor_groups() const;
  const std::vector<CrossTreeConstraint>& constraints() const {
    return constraints_;
  }

  bool operator==(const FeatureModel&) const = default;

 private:
  FeatureModel() = default;

  std::string root_;
  std::vector<std::string> order_;
  std::map<std::string, Feature> features_;
  std::vector<Group> groups_;
  std::vector<CrossTreeConstraint> constraints_;
};

/// Parses the line-oriented model DSL.
///
/// Tree section: one feature per line, depth = indentation / 2 (two spaces
/// per level). A trailing `!` marks a mandatory feature, `?` an optional
/// one. A line `<xor>` or `<or>` at child depth opens a group block whose
/// indented children are the members, written as bare names; members may
/// carry their own child blocks. The root may be written bare and is always
/// mandatory.
///
/// Constraint section: after a line `---`, one constraint per line:
/// `requires <A> <B>` (A implies B) or `excludes <A> <B>` (mutual
/// exclusion). `#` starts a comment; blank lines are ignored.
FeatureModel parse_model(std::string_view text);

/// Canonical DSL rendering; parse(serialize(m)) == m.
std::string serialize_model(const FeatureModel& model);

/// Transitive children of `feature`, excluding the feature itself.
std::set<std::string> descendants(const FeatureModel& model,
                                  const std::string& feature);

}  // namespace iratepl2c
