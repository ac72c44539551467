#include "iratepl2c/stakeholder.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace iratepl2c {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

void check_choice(const StakeholderConfig& config, const RatedChoice& choice,
                  const FeatureModel& model, std::set<std::string>& seen,
                  int line) {
  if (!model.has_feature(choice.literal.feature)) {
    throw ParseError("unknown feature '" + choice.literal.feature +
                         "' in choices of " + config.stakeholder,
                     line);
  }
  if (choice.degree < kMinDegree || choice.degree > kMaxDegree) {
    throw ParseError("degree " + std::to_string(choice.degree) + " for '" +
                         choice.literal.feature + "' is outside [1,5]",
                     line);
  }
  if (!seen.insert(choice.literal.feature).second) {
    throw ParseError("feature '" + choice.literal.feature +
                         "' chosen twice by " + config.stakeholder,
                     line);
  }
}

RatedChoice parse_record(const std::string& record, int line) {
  auto first = record.find(':');
  auto second = record.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos ||
      record.find(':', second + 1) != std::string::npos) {
    throw ParseError("expected '<feature>:<+|->:<degree>', got '" + record + "'",
                     line);
  }
  std::string feature = trim(std::string_view(record).substr(0, first));
  std::string sigil = trim(std::string_view(record).substr(first + 1, second - first - 1));
  std::string degree_text = trim(std::string_view(record).substr(second + 1));
  if (feature.empty()) throw ParseError("empty feature name", line);
  if (sigil != "+" && sigil != "-") {
    throw ParseError("polarity must be '+' or '-', got '" + sigil + "'", line);
  }
  int degree = 0;
  try {
    std::size_t used = 0;
    degree = std::stoi(degree_text, &used);
    if (used != degree_text.size()) throw std::invalid_argument(degree_text);
  } catch (const std::exception&) {
    throw ParseError("degree must be an integer, got '" + degree_text + "'",
                     line);
  }
  Polarity p = sigil == "+" ? Polarity::positive : Polarity::negative;
  return {Literal(feature, p), degree};
}

}  // namespace

const std::vector<int>* MergedConfiguration::degrees(const Literal& lit) const {
  auto it = ledger_.find(lit);
  return it == ledger_.end() ? nullptr : &it->second;
}

const std::vector<int>& MergedConfiguration::degrees_or_throw(
    const Literal& lit) const {
  const std::vector<int>* d = degrees(lit);
  if (d == nullptr || d->empty()) {
    throw EngineError("no ledgered degrees for literal " + lit.str());
  }
  return *d;
}

void MergedConfiguration::ledger_insert(const Literal& lit, int degree) {
  std::vector<int>& list = ledger_[lit];
  list.insert(std::upper_bound(list.begin(), list.end(), degree,
                               std::greater<int>()),
              degree);
  if (present_.insert(lit).second) {
    literals_.push_back(lit);
  }
}

void MergedConfiguration::remove(const std::vector<Literal>& to_remove) {
  for (const Literal& lit : to_remove) {
    if (present_.erase(lit) != 0) {
      literals_.erase(std::find(literals_.begin(), literals_.end(), lit));
    }
  }
}

StakeholderConfig parse_stakeholder_config(std::string_view text,
                                           const FeatureModel& model) {
  StakeholderConfig config;
  std::set<std::string> seen;
  bool have_header = false;

  int line_number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_number;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw = raw.substr(0, hash);
    }
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (!have_header) {
      constexpr std::string_view kHeader = "stakeholder:";
      if (line.rfind(kHeader, 0) != 0) {
        throw ParseError("choice file must start with 'stakeholder: <id>'",
                         line_number);
      }
      config.stakeholder = trim(std::string_view(line).substr(kHeader.size()));
      if (config.stakeholder.empty() ||
          config.stakeholder.find_first_of(" \t") != std::string::npos) {
        throw ParseError("invalid stakeholder id", line_number);
      }
      have_header = true;
      continue;
    }

    std::istringstream records(line);
    std::string record;
    while (std::getline(records, record, ',')) {
      record = trim(record);
      if (record.empty()) continue;
      RatedChoice choice = parse_record(record, line_number);
      check_choice(config, choice, model, seen, line_number);
      config.choices.push_back(std::move(choice));
    }
  }
  if (!have_header) {
    throw ParseError("choice file must start with 'stakeholder: <id>'");
  }
  return config;
}

std::vector<StakeholderConfig> parse_stakeholder_configs_json(
    std::string_view json_text, const FeatureModel& model) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError("expected a JSON array of stakeholder configurations");
  }

  std::vector<StakeholderConfig> configs;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("stakeholder") ||
        !entry.contains("choices")) {
      throw ParseError("each entry needs 'stakeholder' and 'choices' fields");
    }
    StakeholderConfig config;
    config.stakeholder = entry.at("stakeholder").get<std::string>();
    std::set<std::string> seen;
    for (const auto& c : entry.at("choices")) {
      std::string polarity = c.at("polarity").get<std::string>();
      if (polarity != "+" && polarity != "-") {
        throw ParseError("polarity must be '+' or '-', got '" + polarity + "'");
      }
      RatedChoice choice{
          Literal(c.at("feature").get<std::string>(),
                  polarity == "+" ? Polarity::positive : Polarity::negative),
          c.at("degree").get<int>()};
      check_choice(config, choice, model, seen, 0);
      config.choices.push_back(std::move(choice));
    }
    configs.push_back(std::move(config));
  }
  return configs;
}

std::vector<StakeholderConfig> load_stakeholder_configs(
    const std::filesystem::path& path, const FeatureModel& model) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) {
    throw ValidationError("no such file or directory: " + path.string());
  }

  auto read_file = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  std::vector<StakeholderConfig> configs;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() &&
          entry.path().filename().string().front() != '.') {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      try {
        configs.push_back(parse_stakeholder_config(read_file(file), model));
      } catch (const ParseError& e) {
        throw ParseError(file.string() + ": " + e.what());
      }
    }
  } else {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    try {
      if (first != std::string::npos && text[first] == '[') {
        configs = parse_stakeholder_configs_json(text, model);
      } else {
        configs.push_back(parse_stakeholder_config(text, model));
      }
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }

  std::set<std::string> ids;
  for (const StakeholderConfig& c : configs) {
    if (!ids.insert(c.stakeholder).second) {
      throw ValidationError("duplicate stakeholder id: " + c.stakeholder);
    }
  }
  return configs;
}

MergedConfiguration merge_configs(const std::vector<StakeholderConfig>& configs) {
  MergedConfiguration merged;
  for (const StakeholderConfig& config : configs) {
    for (const RatedChoice& choice : config.choices) {
      merged.ledger_insert(choice.literal, choice.degree);
    }
  }
  return merged;
}

}  // namespace iratepl2c
