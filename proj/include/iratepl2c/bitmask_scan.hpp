#pragma once

#include <cstdint>
#include <vector>

#include "iratepl2c/model.hpp"
#include "iratepl2c/validity.hpp"

namespace iratepl2c {

/// Brute-force enumeration of valid complete configurations by scanning all
/// 2^n selection masks against a flat predicate. This is the independent
/// cross-check for the tree-walking enumerator; it shares no code with it.
/// Guarded to models with at most 24 features (the scan allocates 2^n
/// flags).
///
/// Output is in ascending mask order regardless of thread count.
std::vector<std::uint64_t> scan_valid_masks_serial(const FeatureModel& model);

/// OpenMP-parallel variant of the scan; identical output.
std::vector<std::uint64_t> scan_valid_masks_parallel(const FeatureModel& model);

std::vector<CompleteConfiguration> scan_valid_serial(const FeatureModel& model);
std::vector<CompleteConfiguration> scan_valid_parallel(const FeatureModel& model);

}  // namespace iratepl2c
