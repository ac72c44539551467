#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "iratepl2c/engine.hpp"
#include "iratepl2c/stakeholder.hpp"

#include "json.hpp"

namespace iratepl2c {

/// Exact fraction; den == 0 marks an undefined rate (no choices to rate).
struct Rational {
  long long num = 0;
  long long den = 0;

  bool defined() const { return den != 0; }
  double value() const { return defined() ? static_cast<double>(num) / den : 0.0; }

  bool operator==(const Rational&) const = default;
};

/// d/r pair of Table-6 style cells: choices made vs choices retained.
struct RateCell {
  int chosen = 0;
  int retained = 0;

  Rational rate() const { return {retained, chosen}; }

  bool operator==(const RateCell&) const = default;
};

struct StakeholderSatisfaction {
  /// Keyed by degree, 5 down to 1; every degree has a cell.
  std::map<int, RateCell, std::greater<int>> per_degree;
  RateCell overall;
  /// Degree-weighted rate: sum of retained degrees over sum of all degrees.
  Rational weighted;

  bool operator==(const StakeholderSatisfaction&) const = default;
};

struct SatisfactionReport {
  /// Stakeholders in input order.
  std::vector<std::pair<std::string, StakeholderSatisfaction>> per_stakeholder;
  StakeholderSatisfaction global;
  Rational weighted_global;

  bool operator==(const SatisfactionReport&) const = default;
};

/// Scores every explicit choice against the final configuration: a choice is
/// retained iff its exact literal (feature and polarity) is part of it.
SatisfactionReport score(const std::vector<StakeholderConfig>& configs,
                         const std::vector<Literal>& final_config);

enum class RenderFormat { json, table };

RenderFormat parse_render_format(const std::string& name);

/// Full resolution report: final configuration, validity, iteration trace,
/// remained conflicts, and the satisfaction statistics.
std::string render(const SatisfactionReport& satisfaction,
                   const ResolutionOutcome& outcome, RenderFormat format);

std::string render_satisfaction(const SatisfactionReport& satisfaction,
                                RenderFormat format);
std::string render_validity(const ValidityReport& report, RenderFormat format);
std::string render_enumeration(const std::vector<CompleteConfiguration>& configs,
                               RenderFormat format);

/// One compact JSON object per iteration, for line-delimited trace output.
std::string trace_line(const IterationTrace& trace);

// JSON building blocks, exposed for round-trip tests.
nlohmann::ordered_json satisfaction_to_json(const SatisfactionReport& report);
SatisfactionReport satisfaction_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json report_to_json(const SatisfactionReport& satisfaction,
                                      const ResolutionOutcome& outcome);

}  // namespace iratepl2c
