#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "iratepl2c/model.hpp"
#include "iratepl2c/stakeholder.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read fixture " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline iratepl2c::FeatureModel web_portal_model() {
  return iratepl2c::parse_model(read_file(fixture_path("webportal.fm")));
}

inline std::vector<iratepl2c::StakeholderConfig> web_portal_scenario(
    const iratepl2c::FeatureModel& model) {
  return iratepl2c::load_stakeholder_configs(fixture_path("scenario"), model);
}

}  // namespace testsupport
