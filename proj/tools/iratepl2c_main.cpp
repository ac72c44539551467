#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "iratepl2c/engine.hpp"
#include "iratepl2c/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInvalidOutcome = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw iratepl2c::ValidationError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

iratepl2c::FeatureModel load_model(const std::string& path) {
  try {
    return iratepl2c::parse_model(read_file(path));
  } catch (const iratepl2c::ParseError& e) {
    throw iratepl2c::ParseError(path + ": " + e.what());
  }
}

std::vector<iratepl2c::Literal> load_literal_set(
    const std::string& path, const iratepl2c::FeatureModel& model) {
  try {
    return iratepl2c::parse_literal_set(read_file(path), model);
  } catch (const iratepl2c::ParseError& e) {
    throw iratepl2c::ParseError(path + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw iratepl2c::ValidationError("cannot write " + out_path);
  out << text;
}

std::optional<int> max_iterations_from_env() {
  const char* raw = std::getenv("IRATEPLC_MAX_ITERS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    return std::stoi(raw);
  } catch (const std::exception&) {
    throw iratepl2c::ValidationError(
        "IRATEPLC_MAX_ITERS must be an integer, got '" + std::string(raw) + "'");
  }
}

struct CommonFlags {
  std::string model_path;
  std::string format = "json";
  std::string out_path;
};

void add_format_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", flags.out_path, "Write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Collaborative product-line configuration: merges stakeholders' rated "
      "choices and resolves conflicts by ordered importance degrees"};
  app.require_subcommand(1);

  CommonFlags resolve_flags;
  std::string configs_path;
  std::string rule_name = "most-complete";
  bool trace = false;
  CLI::App* resolve = app.add_subcommand(
      "resolve", "Run the full resolution session and report the outcome");
  resolve->add_option("--model", resolve_flags.model_path, "Feature model file")
      ->required();
  resolve
      ->add_option("--configs", configs_path,
                   "Directory of choice files, or one JSON array file")
      ->required();
  resolve->add_option(
      "--rule", rule_name,
      "Manager fallback rule: most-complete, simplest, or priority:<id>");
  resolve->add_flag("--trace", trace,
                    "Emit one JSON object per iteration on stdout");
  add_format_flags(resolve, resolve_flags);

  CommonFlags validate_flags;
  std::string literals_path;
  CLI::App* validate = app.add_subcommand(
      "validate", "Check a literal-set file against the model");
  validate->add_option("--model", validate_flags.model_path, "Feature model file")
      ->required();
  validate->add_option("literals", literals_path, "Literal-set file")
      ->required();
  add_format_flags(validate, validate_flags);

  CommonFlags enumerate_flags;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "List every valid complete configuration of a small model");
  enumerate
      ->add_option("--model", enumerate_flags.model_path, "Feature model file")
      ->required();
  add_format_flags(enumerate, enumerate_flags);

  CommonFlags score_flags;
  std::string score_configs_path;
  std::string final_path;
  CLI::App* score_cmd = app.add_subcommand(
      "score", "Recompute satisfaction for a given final configuration");
  score_cmd->add_option("--model", score_flags.model_path, "Feature model file")
      ->required();
  score_cmd
      ->add_option("--configs", score_configs_path,
                   "Directory of choice files, or one JSON array file")
      ->required();
  score_cmd->add_option("final", final_path, "Final configuration literal file")
      ->required();
  add_format_flags(score_cmd, score_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (resolve->parsed()) {
      const auto model = load_model(resolve_flags.model_path);
      const auto configs =
          iratepl2c::load_stakeholder_configs(configs_path, model);
      const auto rule = iratepl2c::ManagerRule::parse(rule_name);
      iratepl2c::SessionOptions options;
      options.max_iterations = max_iterations_from_env();

      const auto outcome =
          iratepl2c::resolve_session(model, configs, rule, options);
      const auto satisfaction =
          iratepl2c::score(configs, outcome.final_config);

      if (trace) {
        for (const auto& iteration : outcome.trace) {
          std::cout << iratepl2c::trace_line(iteration) << '\n';
        }
      }
      write_output(
          iratepl2c::render(satisfaction, outcome,
                            iratepl2c::parse_render_format(resolve_flags.format)),
          resolve_flags.out_path);
      return outcome.valid ? kExitOk : kExitInvalidOutcome;
    }

    if (validate->parsed()) {
      const auto model = load_model(validate_flags.model_path);
      const auto literals = load_literal_set(literals_path, model);
      const auto report = iratepl2c::check_validity(literals, model);
      write_output(
          iratepl2c::render_validity(
              report, iratepl2c::parse_render_format(validate_flags.format)),
          validate_flags.out_path);
      return report.valid ? kExitOk : kExitInvalidOutcome;
    }

    if (enumerate->parsed()) {
      const auto model = load_model(enumerate_flags.model_path);
      const auto configs = iratepl2c::enumerate_valid(model);
      write_output(
          iratepl2c::render_enumeration(
              configs, iratepl2c::parse_render_format(enumerate_flags.format)),
          enumerate_flags.out_path);
      return kExitOk;
    }

    // score
    const auto model = load_model(score_flags.model_path);
    const auto configs =
        iratepl2c::load_stakeholder_configs(score_configs_path, model);
    const auto final_literals = load_literal_set(final_path, model);
    const auto satisfaction = iratepl2c::score(configs, final_literals);
    write_output(
        iratepl2c::render_satisfaction(
            satisfaction, iratepl2c::parse_render_format(score_flags.format)),
        score_flags.out_path);
    return kExitOk;
  } catch (const iratepl2c::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInputError;
  }
}
