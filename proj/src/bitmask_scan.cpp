#include "iratepl2c/bitmask_scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iratepl2c {

namespace {

constexpr std::size_t kScanGuard = 24;

/// Everything the per-mask predicate needs, flattened to index arrays so the
/// hot loop touches no strings or maps.
struct ScanTables {
  std::size_t n = 0;
  std::uint64_t root_bit = 1;
  std::vector<std::int32_t> parent;       // -1 for the root
  std::vector<std::uint8_t> mandatory;    // kind == mandatory
  std::vector<std::uint64_t> group_parent_bit;
  std::vector<std::uint64_t> group_member_bits;
  std::vector<std::uint8_t> group_is_xor;
  std::vector<std::uint64_t> requires_lhs, requires_rhs;
  std::vector<std::uint64_t> excludes_lhs, excludes_rhs;

  explicit ScanTables(const FeatureModel& model) : n(model.size()) {
    root_bit = std::uint64_t{1} << model.index_of(model.root());
    parent.resize(n, -1);
    mandatory.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Feature& f = model.feature(model.feature_order()[i]);
      mandatory[i] = f.kind == FeatureKind::mandatory ? 1 : 0;
      if (!f.parent.empty()) {
        parent[i] = static_cast<std::int32_t>(model.index_of(f.parent));
      }
    }
    for (const Group& g : model.groups()) {
      group_parent_bit.push_back(std::uint64_t{1} << model.index_of(g.parent));
      std::uint64_t members = 0;
      for (const std::string& m : g.members) {
        members |= std::uint64_t{1} << model.index_of(m);
      }
      group_member_bits.push_back(members);
      group_is_xor.push_back(g.kind == GroupKind::xor_group ? 1 : 0);
    }
    for (const CrossTreeConstraint& c : model.constraints()) {
      const std::uint64_t lhs = std::uint64_t{1} << model.index_of(c.lhs);
      const std::uint64_t rhs = std::uint64_t{1} << model.index_of(c.rhs);
      if (c.kind == ConstraintKind::requires_) {
        requires_lhs.push_back(lhs);
        requires_rhs.push_back(rhs);
      } else {
        excludes_lhs.push_back(lhs);
        excludes_rhs.push_back(rhs);
      }
    }
  }

  bool valid(std::uint64_t mask) const {
    if (!(mask & root_bit)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (parent[i] < 0) continue;  // the root has no tree rule of its own
      const bool selected = (mask >> i) & 1;
      const bool parent_selected =
          (mask >> static_cast<unsigned>(parent[i])) & 1;
      if (selected && !parent_selected) return false;
      if (!selected && mandatory[i] && parent_selected) return false;
    }
    for (std::size_t g = 0; g < group_parent_bit.size(); ++g) {
      const int count = __builtin_popcountll(mask & group_member_bits[g]);
      if (mask & group_parent_bit[g]) {
        if (group_is_xor[g] ? count != 1 : count < 1) return false;
      } else if (count != 0) {
        return false;
      }
    }
    for (std::size_t c = 0; c < requires_lhs.size(); ++c) {
      if ((mask & requires_lhs[c]) && !(mask & requires_rhs[c])) return false;
    }
    for (std::size_t c = 0; c < excludes_lhs.size(); ++c) {
      if ((mask & excludes_lhs[c]) && (mask & excludes_rhs[c])) return false;
    }
    return true;
  }
};

std::uint64_t scan_space(const FeatureModel& model) {
  if (model.size() > kScanGuard) {
    throw ValidationError("model too large for a full bitmask scan (" +
                          std::to_string(model.size()) + " features, guard is " +
                          std::to_string(kScanGuard) + ")");
  }
  return std::uint64_t{1} << model.size();
}

}  // namespace

std::vector<std::uint64_t> scan_valid_masks_serial(const FeatureModel& model) {
  const std::uint64_t space = scan_space(model);
  const ScanTables tables(model);
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < space; ++mask) {
    if (tables.valid(mask)) out.push_back(mask);
  }
  return out;
}

std::vector<std::uint64_t> scan_valid_masks_parallel(const FeatureModel& model) {
  const std::uint64_t space = scan_space(model);
  const ScanTables tables(model);

  // Flag pass in parallel, ordered collection serially: the result does not
  // depend on the schedule or thread count.
  std::vector<std::uint8_t> flags(space, 0);
  const std::int64_t limit = static_cast<std::int64_t>(space);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t mask = 0; mask < limit; ++mask) {
    flags[static_cast<std::uint64_t>(mask)] =
        tables.valid(static_cast<std::uint64_t>(mask)) ? 1 : 0;
  }

  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < space; ++mask) {
    if (flags[mask]) out.push_back(mask);
  }
  return out;
}

namespace {

std::vector<CompleteConfiguration> materialize(
    const FeatureModel& model, const std::vector<std::uint64_t>& masks) {
  std::vector<CompleteConfiguration> out;
  out.reserve(masks.size());
  for (std::uint64_t mask : masks) {
    out.push_back(configuration_from_mask(model, mask));
  }
  return out;
}

}  // namespace

std::vector<CompleteConfiguration> scan_valid_serial(const FeatureModel& model) {
  return materialize(model, scan_valid_masks_serial(model));
}

std::vector<CompleteConfiguration> scan_valid_parallel(const FeatureModel& model) {
  return materialize(model, scan_valid_masks_parallel(model));
}

}  // namespace iratepl2c
