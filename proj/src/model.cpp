#include "iratepl2c/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace iratepl2c {

namespace {

constexpr std::string_view kXorTag = "<xor>";
constexpr std::string_view kOrTag = "<or>";
constexpr std::string_view kSectionSeparator = "---";

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    switch (c) {
      case ':':
      case ',':
      case '#':
      case '!':
      case '?':
      case '<':
      case '>':
        return false;
      default:
        break;
    }
  }
  return true;
}

struct RawLine {
  int number = 0;
  int depth = 0;
  std::string body;
};

std::vector<RawLine> significant_lines(std::string_view text) {
  std::vector<RawLine> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++number;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    if (indent < line.size() && line[indent] == '\t') {
      throw ParseError("tab indentation is not allowed", number,
                       static_cast<int>(indent + 1));
    }
    std::string_view body = line.substr(indent);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) {
      body.remove_suffix(1);
    }
    if (body.empty()) continue;
    if (indent % 2 != 0) {
      throw ParseError("indentation must be a multiple of two spaces", number,
                       static_cast<int>(indent + 1));
    }
    out.push_back({number, static_cast<int>(indent / 2), std::string(body)});
  }
  return out;
}

std::vector<std::string> split_tokens(const std::string& body) {
  std::vector<std::string> tokens;
  std::istringstream in(body);
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

}  // namespace

const Feature& FeatureModel::feature(const std::string& name) const {
  auto it = features_.find(name);
  if (it == features_.end()) {
    throw ValidationError("unknown feature: " + name);
  }
  return it->second;
}

std::size_t FeatureModel::index_of(const std::string& name) const {
  auto it = std::find(order_.begin(), order_.end(), name);
  if (it == order_.end()) throw ValidationError("unknown feature: " + name);
  return static_cast<std::size_t>(it - order_.begin());
}

std::vector<const Group*> FeatureModel::xor_groups() const {
  std::vector<const Group*> out;
  for (const Group& g : groups_) {
    if (g.kind == GroupKind::xor_group) out.push_back(&g);
  }
  return out;
}

FeatureModel FeatureModel::from_parts(
    std::string root, std::vector<Feature> features_in_order,
    std::vector<Group> groups, std::vector<CrossTreeConstraint> constraints) {
  FeatureModel m;
  m.root_ = std::move(root);
  m.groups_ = std::move(groups);
  m.constraints_ = std::move(constraints);

  for (Feature& f : features_in_order) {
    if (!valid_name(f.name)) {
      throw ValidationError("invalid feature name: '" + f.name + "'");
    }
    m.order_.push_back(f.name);
    if (!m.features_.emplace(f.name, std::move(f)).second) {
      throw ValidationError("duplicate feature name: " + m.order_.back());
    }
  }

  if (m.order_.empty() || !m.has_feature(m.root_)) {
    throw ValidationError("model has no root feature");
  }
  if (m.feature(m.root_).kind != FeatureKind::mandatory) {
    throw ValidationError("root feature must be mandatory");
  }

  // Parent references form a tree rooted at root_.
  std::size_t edges = 0;
  for (const auto& [name, f] : m.features_) {
    if (name == m.root_) {
      if (!f.parent.empty()) {
        throw ValidationError("root feature cannot have a parent");
      }
      continue;
    }
    if (!m.has_feature(f.parent)) {
      throw ValidationError("feature '" + name + "' has unknown parent '" +
                            f.parent + "'");
    }
    ++edges;
  }
  if (edges + 1 != m.order_.size()) {
    throw ValidationError("feature tree is disconnected");
  }
  // Reachability from the root rules out cycles among the parent links.
  std::set<std::string> seen{m.root_};
  std::vector<std::string> frontier{m.root_};
  while (!frontier.empty()) {
    std::string f = frontier.back();
    frontier.pop_back();
    for (const std::string& c : m.feature(f).children) {
      if (!m.has_feature(c)) {
        throw ValidationError("feature '" + f + "' lists unknown child '" + c + "'");
      }
      if (m.feature(c).parent != f) {
        throw ValidationError("feature '" + c + "' has inconsistent parent links");
      }
      if (!seen.insert(c).second) {
        throw ValidationError("feature '" + c + "' has multiple parents");
      }
      frontier.push_back(c);
    }
  }
  if (seen.size() != m.order_.size()) {
    throw ValidationError("feature tree contains a cycle or unreachable feature");
  }

  std::set<std::string> grouped;
  for (std::size_t gi = 0; gi < m.groups_.size(); ++gi) {
    const Group& g = m.groups_[gi];
    if (g.members.size() < 2) {
      throw ValidationError("group under '" + g.parent +
                            "' needs at least two members");
    }
    if (!m.has_feature(g.parent)) {
      throw ValidationError("group parent '" + g.parent + "' is unknown");
    }
    for (const std::string& member : g.members) {
      if (!m.has_feature(member)) {
        throw ValidationError("group member '" + member + "' is unknown");
      }
      const Feature& mf = m.feature(member);
      if (mf.parent != g.parent) {
        throw ValidationError("group member '" + member +
                              "' does not share the group parent '" + g.parent + "'");
      }
      if (mf.kind != FeatureKind::group_member ||
          mf.group != static_cast<int>(gi)) {
        throw ValidationError("feature '" + member +
                              "' has inconsistent group membership");
      }
      if (!grouped.insert(member).second) {
        throw ValidationError("feature '" + member + "' appears in two groups");
      }
    }
  }

  for (const CrossTreeConstraint& c : m.constraints_) {
    if (!m.has_feature(c.lhs) || !m.has_feature(c.rhs)) {
      throw ValidationError("constraint '" + c.str() +
                            "' references an unknown feature");
    }
    if (c.lhs == c.rhs) {
      throw ValidationError("constraint '" + c.str() +
                            "' relates a feature to itself");
    }
  }
  return m;
}

FeatureModel parse_model(std::string_view text) {
  std::vector<Feature> features;
  std::map<std::string, std::size_t> position;
  std::vector<Group> groups;
  std::vector<CrossTreeConstraint> constraints;
  std::string root;

  struct Frame {
    bool is_group = false;
    std::string feature;  // owner feature, or the group's parent
    int group_index = -1;
    int line = 0;
  };
  std::vector<Frame> stack;

  auto feature_at = [&](const std::string& name) -> Feature& {
    return features[position.at(name)];
  };
  auto close_frames_to = [&](std::size_t depth) {
    while (stack.size() > depth) {
      const Frame& top = stack.back();
      if (top.is_group &&
          groups[static_cast<std::size_t>(top.group_index)].members.size() < 2) {
        throw ParseError("group needs at least two members", top.line);
      }
      stack.pop_back();
    }
  };

  bool in_constraints = false;
  for (const RawLine& raw : significant_lines(text)) {
    if (!in_constraints && raw.body == kSectionSeparator) {
      if (raw.depth != 0) {
        throw ParseError("'---' must not be indented", raw.number);
      }
      close_frames_to(0);
      in_constraints = true;
      continue;
    }

    if (in_constraints) {
      auto tokens = split_tokens(raw.body);
      if (tokens.size() != 3 ||
          (tokens[0] != "requires" && tokens[0] != "excludes")) {
        throw ParseError("expected 'requires <A> <B>' or 'excludes <A> <B>'",
                         raw.number);
      }
      CrossTreeConstraint c;
      c.id = static_cast<int>(constraints.size());
      c.kind = tokens[0] == "requires" ? ConstraintKind::requires_
                                       : ConstraintKind::excludes;
      c.lhs = tokens[1];
      c.rhs = tokens[2];
      if (!position.count(c.lhs)) {
        throw ParseError("unknown feature '" + c.lhs + "' in constraint",
                         raw.number);
      }
      if (!position.count(c.rhs)) {
        throw ParseError("unknown feature '" + c.rhs + "' in constraint",
                         raw.number);
      }
      if (c.lhs == c.rhs) {
        throw ParseError("constraint relates '" + c.lhs + "' to itself",
                         raw.number);
      }
      constraints.push_back(std::move(c));
      continue;
    }

    if (static_cast<std::size_t>(raw.depth) > stack.size()) {
      throw ParseError("indentation jumps more than one level", raw.number);
    }
    close_frames_to(static_cast<std::size_t>(raw.depth));

    if (raw.body == kXorTag || raw.body == kOrTag) {
      if (stack.empty()) {
        throw ParseError("group block has no parent feature", raw.number);
      }
      if (stack.back().is_group) {
        throw ParseError("group block cannot sit directly inside a group",
                         raw.number);
      }
      Group g;
      g.kind = raw.body == kXorTag ? GroupKind::xor_group : GroupKind::or_group;
      g.parent = stack.back().feature;
      groups.push_back(std::move(g));
      stack.push_back(
          {true, stack.back().feature, static_cast<int>(groups.size() - 1),
           raw.number});
      continue;
    }

    // Feature line. Split off a trailing marker, if any.
    std::string name = raw.body;
    char marker = '\0';
    if (name.back() == '!' || name.back() == '?') {
      marker = name.back();
      name.pop_back();
    }
    if (!valid_name(name)) {
      throw ParseError("invalid feature name: '" + name + "'", raw.number);
    }
    if (position.count(name)) {
      throw ParseError("duplicate feature name: " + name, raw.number);
    }

    Feature f;
    f.name = name;
    if (stack.empty()) {
      if (!root.empty()) {
        throw ParseError("multiple root features ('" + root + "' and '" + name +
                             "')",
                         raw.number);
      }
      if (marker == '?') {
        throw ParseError("root feature must be mandatory", raw.number);
      }
      f.kind = FeatureKind::mandatory;
      root = name;
    } else if (stack.back().is_group) {
      if (marker != '\0') {
        throw ParseError("group members are written bare (no '!' or '?')",
                         raw.number);
      }
      f.kind = FeatureKind::group_member;
      f.group = stack.back().group_index;
      f.parent = stack.back().feature;
      groups[static_cast<std::size_t>(f.group)].members.push_back(name);
      feature_at(f.parent).children.push_back(name);
    } else {
      if (marker == '\0') {
        throw ParseError(
            "feature '" + name + "' needs a '!' or '?' marker outside a group",
            raw.number);
      }
      f.kind = marker == '!' ? FeatureKind::mandatory : FeatureKind::optional;
      f.parent = stack.back().feature;
      feature_at(f.parent).children.push_back(name);
    }
    position[name] = features.size();
    features.push_back(std::move(f));
    stack.push_back({false, name, -1, raw.number});
  }
  close_frames_to(0);

  if (root.empty()) {
    throw ParseError("document declares no features");
  }
  return FeatureModel::from_parts(std::move(root), std::move(features),
                                  std::move(groups), std::move(constraints));
}

std::string serialize_model(const FeatureModel& model) {
  std::ostringstream out;
  std::function<void(const std::string&, int)> emit = [&](const std::string& name,
                                                          int depth) {
    const Feature& f = model.feature(name);
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << f.name;
    if (f.kind == FeatureKind::mandatory) out << '!';
    if (f.kind == FeatureKind::optional) out << '?';
    out << '\n';

    int open_group = -1;
    for (const std::string& child : f.children) {
      const Feature& c = model.feature(child);
      if (c.group != open_group) {
        open_group = c.group;
        if (c.group >= 0) {
          const Group& g = model.groups()[static_cast<std::size_t>(c.group)];
          out << std::string(static_cast<std::size_t>(depth + 1) * 2, ' ')
              << (g.kind == GroupKind::xor_group ? kXorTag : kOrTag) << '\n';
        }
      }
      emit(child, depth + (c.group >= 0 ? 2 : 1));
    }
  };
  emit(model.root(), 0);

  if (!model.constraints().empty()) {
    out << kSectionSeparator << '\n';
    for (const CrossTreeConstraint& c : model.constraints()) {
      out << c.str() << '\n';
    }
  }
  return out.str();
}

std::set<std::string> descendants(const FeatureModel& model,
                                  const std::string& feature) {
  std::set<std::string> out;
  std::vector<std::string> frontier{model.feature(feature).name};
  while (!frontier.empty()) {
    std::string f = frontier.back();
    frontier.pop_back();
    for (const std::string& c : model.feature(f).children) {
      if (out.insert(c).second) frontier.push_back(c);
    }
  }
  return out;
}

}  // namespace iratepl2c
