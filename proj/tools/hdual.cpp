// hdual: run verification experiments from JSON configs.
//
//   hdual run <config> [--seed N] [--out PATH] [--format json|csv] [--timing]
//   hdual list-suites [--format text|json]
//
// Exit status: 0 all cases pass, 1 some case fails, 2 config/usage error,
// 3 runtime evaluation error.

#include <cstdint>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hdual/cli.hpp"

namespace {

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return hdual::cli::kRuntimeError;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hdual::cli;

  CLI::App app{"Boundary-integral identities for harmonic forms: experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run an experiment config and write a report");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_path, "Report path (default: config 'output' or stdout)");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_flag("--timing", timing, "Include wall times in the report");

  std::string list_format = "text";
  auto* list = app.add_subcommand("list-suites", "List the built-in verification suites");
  list->add_option("--format", list_format, "Listing format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (*list) {
    if (list_format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& s : suites()) j.push_back({{"name", s.name}, {"description", s.description}});
      std::cout << j.dump(2) << '\n';
    } else {
      for (const auto& s : suites()) std::cout << s.name << "\t" << s.description << '\n';
    }
    return kPass;
  }

  Experiment exp;
  std::string config_out;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    exp = parse_config(doc);
    if (doc.contains("output") && doc["output"].is_string()) config_out = doc["output"].get<std::string>();
  } catch (const hdual::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  RunOptions opts;
  if (*seed_opt) opts.seed = seed;
  opts.timing = timing;

  nlohmann::json report;
  try {
    report = run_experiment(exp, opts);
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }

  const std::string text = format == "csv" ? report_to_csv(report) : report.dump(2) + "\n";
  if (const int rc = emit(text, out_path.empty() ? config_out : out_path); rc != 0) return rc;
  return report_exit_code(report);
}
