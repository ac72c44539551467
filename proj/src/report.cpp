#include "iratepl2c/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace iratepl2c {

namespace {

using ordered_json = nlohmann::ordered_json;

void tally(StakeholderSatisfaction& s, int degree, bool retained) {
  RateCell& cell = s.per_degree[degree];
  ++cell.chosen;
  ++s.overall.chosen;
  s.weighted.den += degree;
  if (retained) {
    ++cell.retained;
    ++s.overall.retained;
    s.weighted.num += degree;
  }
}

void ensure_all_degrees(StakeholderSatisfaction& s) {
  for (int degree = kMinDegree; degree <= kMaxDegree; ++degree) {
    s.per_degree[degree];
  }
}

}  // namespace

SatisfactionReport score(const std::vector<StakeholderConfig>& configs,
                         const std::vector<Literal>& final_config) {
  const std::set<Literal> retained_set(final_config.begin(), final_config.end());

  SatisfactionReport report;
  ensure_all_degrees(report.global);
  for (const StakeholderConfig& config : configs) {
    StakeholderSatisfaction s;
    ensure_all_degrees(s);
    for (const RatedChoice& choice : config.choices) {
      const bool retained = retained_set.count(choice.literal) != 0;
      tally(s, choice.degree, retained);
      tally(report.global, choice.degree, retained);
    }
    report.per_stakeholder.emplace_back(config.stakeholder, std::move(s));
  }
  report.weighted_global = report.global.weighted;
  return report;
}

RenderFormat parse_render_format(const std::string& name) {
  if (name == "json") return RenderFormat::json;
  if (name == "table") return RenderFormat::table;
  throw ValidationError("unknown format: '" + name +
                        "' (expected json or table)");
}

namespace {

ordered_json rational_to_json(const Rational& r) {
  if (!r.defined()) return nullptr;
  return ordered_json{{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

Rational rational_from_json(const ordered_json& doc) {
  if (doc.is_null()) return {};
  return {doc.at("num").get<long long>(), doc.at("den").get<long long>()};
}

ordered_json cell_to_json(const RateCell& cell) {
  return ordered_json{{"chosen", cell.chosen},
                      {"retained", cell.retained},
                      {"rate", rational_to_json(cell.rate())}};
}

RateCell cell_from_json(const ordered_json& doc) {
  return {doc.at("chosen").get<int>(), doc.at("retained").get<int>()};
}

ordered_json stakeholder_satisfaction_to_json(const StakeholderSatisfaction& s) {
  ordered_json per_degree = ordered_json::object();
  for (const auto& [degree, cell] : s.per_degree) {
    per_degree[std::to_string(degree)] = cell_to_json(cell);
  }
  return ordered_json{{"per_degree", std::move(per_degree)},
                      {"overall", cell_to_json(s.overall)},
                      {"weighted", rational_to_json(s.weighted)}};
}

StakeholderSatisfaction stakeholder_satisfaction_from_json(
    const ordered_json& doc) {
  StakeholderSatisfaction s;
  for (const auto& [key, value] : doc.at("per_degree").items()) {
    s.per_degree[std::stoi(key)] = cell_from_json(value);
  }
  s.overall = cell_from_json(doc.at("overall"));
  s.weighted = rational_from_json(doc.at("weighted"));
  return s;
}

ordered_json literals_to_json(const std::vector<Literal>& literals) {
  ordered_json out = ordered_json::array();
  for (const Literal& lit : literals) out.push_back(lit.str());
  return out;
}

ordered_json conflict_to_json(const Conflict& c) {
  ordered_json out{
      {"kind", c.kind == ConflictKind::explicit_pair ? "explicit" : "xor"},
      {"between", ordered_json::array({c.first.str(), c.second.str()})}};
  if (c.resolved_by.has_value()) {
    out["resolution"] = *c.resolved_by == ResolvedBy::importance
                            ? "importance"
                            : "manager-rule";
  } else {
    out["resolution"] = nullptr;
  }
  out["removed"] = c.loser.has_value() ? ordered_json(c.loser->str())
                                       : ordered_json(nullptr);
  return out;
}

ordered_json conflicts_to_json(const std::vector<Conflict>& conflicts) {
  ordered_json out = ordered_json::array();
  for (const Conflict& c : conflicts) out.push_back(conflict_to_json(c));
  return out;
}

ordered_json propagation_to_json(const PropagationRecord& record) {
  return ordered_json{{"constraint_id", record.constraint_id},
                      {"trigger", record.trigger.str()},
                      {"added", record.added.str()},
                      {"degree", record.degree}};
}

ordered_json iteration_to_json(const IterationTrace& trace) {
  ordered_json propagations = ordered_json::array();
  for (const PropagationRecord& r : trace.propagations) {
    propagations.push_back(propagation_to_json(r));
  }
  return ordered_json{{"iteration", trace.index},
                      {"explicit", conflicts_to_json(trace.explicit_conflicts)},
                      {"xor", conflicts_to_json(trace.xor_conflicts)},
                      {"propagations", std::move(propagations)},
                      {"config", literals_to_json(trace.config_after)}};
}

ordered_json violations_to_json(const ValidityReport& report) {
  ordered_json out = ordered_json::array();
  for (const Violation& v : report.violations) {
    out.push_back(ordered_json{{"kind", std::string(violation_kind_name(v.kind))},
                               {"detail", v.detail}});
  }
  return out;
}

// Rendering helpers for the table format. Widths are measured in code
// points so the two-byte negation sign does not skew the columns.
std::size_t display_width(const std::string& s) {
  std::size_t width = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++width;
  }
  return width;
}

std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  const std::size_t current = display_width(s);
  if (current < width) out.append(width - current, ' ');
  return out;
}

std::string format_rate(const Rational& r) {
  if (!r.defined()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", r.value());
  return buf;
}

std::string format_cell(const RateCell& cell) {
  if (cell.chosen == 0) return "-";
  return std::to_string(cell.retained) + "/" + std::to_string(cell.chosen) +
         " (" + format_rate(cell.rate()) + ")";
}

std::string format_weighted(const Rational& r) {
  if (!r.defined()) return "-";
  return std::to_string(r.num) + "/" + std::to_string(r.den) + " (" +
         format_rate(r) + ")";
}

std::string join_literals(const std::vector<Literal>& literals) {
  std::string out;
  for (const Literal& lit : literals) {
    if (!out.empty()) out += ", ";
    out += lit.str();
  }
  return out;
}

std::string satisfaction_table(const SatisfactionReport& report) {
  std::vector<std::string> headers{"degree"};
  for (const auto& [name, s] : report.per_stakeholder) headers.push_back(name);
  headers.push_back("Final");

  std::vector<std::vector<std::string>> rows;
  for (int degree = kMaxDegree; degree >= kMinDegree; --degree) {
    std::vector<std::string> row{std::to_string(degree)};
    for (const auto& [name, s] : report.per_stakeholder) {
      row.push_back(format_cell(s.per_degree.at(degree)));
    }
    row.push_back(format_cell(report.global.per_degree.at(degree)));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> overall{"overall"};
  std::vector<std::string> weighted{"weighted"};
  for (const auto& [name, s] : report.per_stakeholder) {
    overall.push_back(format_cell(s.overall));
    weighted.push_back(format_weighted(s.weighted));
  }
  overall.push_back(format_cell(report.global.overall));
  weighted.push_back(format_weighted(report.weighted_global));
  rows.push_back(std::move(overall));
  rows.push_back(std::move(weighted));

  std::vector<std::size_t> widths(headers.size());
  for (std::size_t i = 0; i < headers.size(); ++i) {
    widths[i] = display_width(headers[i]);
    for (const auto& row : rows) {
      widths[i] = std::max(widths[i], display_width(row[i]));
    }
  }
  std::ostringstream out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << " | ";
      out << pad(row[i], widths[i]);
    }
    out << '\n';
  };
  emit_row(headers);
  std::size_t total = 0;
  for (std::size_t w : widths) total += w;
  out << std::string(total + 3 * (widths.size() - 1), '-') << '\n';
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

}  // namespace

nlohmann::ordered_json satisfaction_to_json(const SatisfactionReport& report) {
  ordered_json per_stakeholder = ordered_json::object();
  for (const auto& [name, s] : report.per_stakeholder) {
    per_stakeholder[name] = stakeholder_satisfaction_to_json(s);
  }
  return ordered_json{
      {"per_stakeholder", std::move(per_stakeholder)},
      {"global", stakeholder_satisfaction_to_json(report.global)},
      {"weighted_global", rational_to_json(report.weighted_global)}};
}

SatisfactionReport satisfaction_from_json(const nlohmann::ordered_json& doc) {
  SatisfactionReport report;
  for (const auto& [name, value] : doc.at("per_stakeholder").items()) {
    report.per_stakeholder.emplace_back(
        name, stakeholder_satisfaction_from_json(value));
  }
  report.global = stakeholder_satisfaction_from_json(doc.at("global"));
  report.weighted_global = rational_from_json(doc.at("weighted_global"));
  return report;
}

nlohmann::ordered_json report_to_json(const SatisfactionReport& satisfaction,
                                      const ResolutionOutcome& outcome) {
  ordered_json iterations = ordered_json::array();
  for (const IterationTrace& t : outcome.trace) {
    iterations.push_back(iteration_to_json(t));
  }
  ordered_json doc{{"final", literals_to_json(outcome.final_config)},
                   {"valid", outcome.valid},
                   {"iterations", std::move(iterations)},
                   {"remained_conflicts", conflicts_to_json(outcome.remained)}};
  doc["manager_rule"] = outcome.manager_rule_applied.has_value()
                            ? ordered_json(*outcome.manager_rule_applied)
                            : ordered_json(nullptr);
  if (!outcome.final_validity.valid) {
    doc["violations"] = violations_to_json(outcome.final_validity);
  }
  doc["satisfaction"] = satisfaction_to_json(satisfaction);
  return doc;
}

std::string trace_line(const IterationTrace& trace) {
  return iteration_to_json(trace).dump();
}

std::string render(const SatisfactionReport& satisfaction,
                   const ResolutionOutcome& outcome, RenderFormat format) {
  if (format == RenderFormat::json) {
    return report_to_json(satisfaction, outcome).dump(2) + "\n";
  }

  std::ostringstream out;
  out << "Final configuration (" << (outcome.valid ? "valid" : "NOT valid")
      << ", " << outcome.trace.size() << " iteration"
      << (outcome.trace.size() == 1 ? "" : "s") << "):\n  "
      << join_literals(outcome.final_config) << "\n";
  if (outcome.manager_rule_applied.has_value()) {
    out << "Manager rule applied: " << *outcome.manager_rule_applied << "\n";
    for (const Conflict& c : outcome.remained) {
      out << "  settled (" << c.first.str() << ", " << c.second.str()
          << "): removed " << (c.loser.has_value() ? c.loser->str() : "-")
          << "\n";
    }
  }
  if (!outcome.final_validity.valid) {
    out << "Violations:\n";
    for (const Violation& v : outcome.final_validity.violations) {
      out << "  [" << violation_kind_name(v.kind) << "] " << v.detail << "\n";
    }
  }
  out << "\nSatisfaction\n" << satisfaction_table(satisfaction);
  return out.str();
}

std::string render_satisfaction(const SatisfactionReport& satisfaction,
                                RenderFormat format) {
  if (format == RenderFormat::json) {
    return satisfaction_to_json(satisfaction).dump(2) + "\n";
  }
  return satisfaction_table(satisfaction);
}

std::string render_validity(const ValidityReport& report, RenderFormat format) {
  if (format == RenderFormat::json) {
    return ordered_json{{"valid", report.valid},
                        {"violations", violations_to_json(report)}}
               .dump(2) +
           "\n";
  }
  std::ostringstream out;
  out << (report.valid ? "valid" : "NOT valid") << "\n";
  for (const Violation& v : report.violations) {
    out << "  [" << violation_kind_name(v.kind) << "] " << v.detail << "\n";
  }
  return out.str();
}

std::string render_enumeration(const std::vector<CompleteConfiguration>& configs,
                               RenderFormat format) {
  if (format == RenderFormat::json) {
    ordered_json list = ordered_json::array();
    for (const CompleteConfiguration& c : configs) {
      ordered_json names = ordered_json::array();
      for (const std::string& f : c.selected) names.push_back(f);
      list.push_back(std::move(names));
    }
    return ordered_json{{"count", configs.size()},
                        {"configurations", std::move(list)}}
               .dump(2) +
           "\n";
  }
  std::ostringstream out;
  for (const CompleteConfiguration& c : configs) {
    bool first = true;
    for (const std::string& f : c.selected) {
      if (!first) out << ' ';
      out << f;
      first = false;
    }
    out << '\n';
  }
  out << "count: " << configs.size() << '\n';
  return out.str();
}

}  // namespace iratepl2c
