#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sys/wait.h>
#include <unistd.h>

#include "hdual/cli.hpp"

using namespace hdual;
using namespace hdual::cli;
using nlohmann::json;

namespace {

json base(const std::string& mode, int n, int r) {
  return {{"schema_version", 1}, {"mode", mode}, {"n", n}, {"r", r},
          {"surface", {{"shape", "sphere"}, {"radius", 1.0}, {"order", 24}}}, {"cases", json::array()}};
}

json covector(std::initializer_list<std::pair<std::vector<int>, double>> terms) {
  json a = json::array();
  for (const auto& [idx, v] : terms) a.push_back({{"index", idx}, {"value", v}});
  return a;
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const auto tmp = std::filesystem::temp_directory_path() / ("hdual_cli_test_" + std::to_string(::getpid()));
  const std::string cmd = std::string("\"") + HDUAL_CLI + "\" " + args + " >" + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(tmp);
    *out = {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::filesystem::remove(tmp);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("reproduce config runs and reports") {
  json doc = base("reproduce", 3, 1);
  doc["cases"].push_back({{"label", "e1"},
                          {"field", {{"family", "constant"}, {"value", covector({{{1}, 1.0}})}}},
                          {"points", {{0.1, 0.2, 0.3}}}});
  doc["cases"].push_back({{"label", "grad k"},
                          {"side", "exterior"},
                          {"field", {{"family", "kernel"}, {"terms", {{{"center", {0, 0, 0}}, {"xi", covector({{{}, 1.0}})}, {"op", "d"}}}}}},
                          {"points", {{2.0, 0.5, 0.0}}}});
  const auto e = parse_config(doc);
  CHECK(e.cases.size() == 2);
  const json rep = run_experiment(e);
  CHECK(rep["summary"]["passed"] == 2);
  CHECK(report_exit_code(rep) == kPass);
  CHECK(rep["cases"][1]["rel_error"].get<double>() < 1e-6);
  CHECK(rep["cases"][0]["provenance"] == "direct_evaluation");
  CHECK_FALSE(rep["cases"][0].contains("wall_time_s"));
  CHECK(run_experiment(e, {std::nullopt, true})["cases"][0].contains("wall_time_s"));
  CHECK(run_experiment(e) == rep);

  const std::string csv = report_to_csv(rep);
  CHECK(csv.rfind("id,mode,label,value,reference,abs_error,rel_error,tolerance,pass,error\n", 0) == 0);
  CHECK(csv.find("\"grad k\"") != std::string::npos);
}

TEST_CASE("polynomial fields and pairs") {
  json doc = base("pair1", 3, 1);
  doc["cases"].push_back({{"u", {{"family", "polynomial"},
                                 {"components", {{{"index", {1}}, {"monomials", {{2.0, {1, 0, 0}}}}},
                                                 {{"index", {2}}, {"monomials", {{-2.0, {0, 1, 0}}}}}}}}},
                          {"pair", {{"family", "point_pair"}, {"center", {0.1, 0.0, 0.2}}, {"xi", covector({{{1}, 1.0}})}}},
                          {"reference", "point_measure"}});
  doc["cases"].push_back({{"u", {{"family", "zero"}}},
                          {"pair", {{"family", "point_pair"}, {"center", {3.0, 0.0, 0.0}}, {"xi", covector({{{2}, 1.0}})},
                                    {"gauge", {{"h1", {{"family", "polynomial"}, {"components", {{{"index", {2}}, {"monomials", {{1.0, {1, 0, 0}}}}}}}}}}}}},
                          {"reference", "zero"}});
  const json rep = run_experiment(parse_config(doc));
  CHECK(rep["cases"][0]["reference"].get<double>() == doctest::Approx(0.2));
  CHECK(rep["cases"][0]["pass"] == true);
  CHECK(rep["cases"][1]["pass"] == true);
}

TEST_CASE("per-case runtime errors are recorded") {
  json doc = base("reproduce", 3, 1);
  doc["cases"].push_back({{"field", {{"family", "constant"}, {"value", covector({{{1}, 1.0}})}}}, {"points", {{0.99, 0.0, 0.0}}}});
  doc["cases"].push_back({{"field", {{"family", "constant"}, {"value", covector({{{1}, 1.0}})}}}, {"points", {{0.0, 0.0, 0.0}}}});
  const json rep = run_experiment(parse_config(doc));
  CHECK(rep["summary"]["errors"] == 1);
  CHECK(rep["summary"]["passed"] == 1);
  CHECK(rep["cases"][0].contains("error"));
  CHECK(report_exit_code(rep) == kRuntimeError);
}

TEST_CASE("schema violations") {
  auto bad = [](const std::function<void(json&)>& edit) {
    json doc = base("reproduce", 3, 1);
    edit(doc);
    return doc;
  };
  CHECK_THROWS_AS(parse_config(bad([](json& d) { d["bogus"] = 1; })), ConfigError);
  CHECK_THROWS_AS(parse_config(bad([](json& d) { d["schema_version"] = 2; })), ConfigError);
  CHECK_THROWS_AS(parse_config(bad([](json& d) { d["mode"] = "fly"; })), ConfigError);
  CHECK_THROWS_AS(parse_config(bad([](json& d) { d["n"] = 2; })), UnsupportedDimension);
  CHECK_THROWS_AS(parse_config(bad([](json& d) { d["r"] = 7; })), ConfigError);
  CHECK_THROWS_AS(parse_config(bad([](json& d) { d["cases"] = {{{"points", {{0, 0, 0}}}}}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(bad([](json& d) {
                    d["cases"] = {{{"field", {{"family", "constant"}, {"value", covector({{{1}, 1.0}})}, {"extra", 0}}},
                                   {"points", {{0, 0, 0}}}}};
                  })),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(bad([](json& d) {
                    d["cases"] = {{{"field", {{"family", "constant"}, {"value", covector({{{1, 2}, 1.0}})}}}, {"points", {{0, 0, 0}}}}};
                  })),
                  Error);
  CHECK_NOTHROW(parse_config(base("reproduce", 3, 1)));
}

TEST_CASE("identities suites") {
  CHECK(suites().size() >= 6);
  for (const auto& s : suites()) {
    if (s.name == "contour" || s.name == "decomposition") continue;
    for (const auto& c : run_suite(s.name, 5, 4)) CHECK_MESSAGE(c.pass, s.name << "/" << c.name << " = " << c.value);
  }
  CHECK_THROWS_AS(run_suite("nope", 1), ConfigError);
}

TEST_CASE("command line") {
  std::string out;
  CHECK(run_cli("list-suites", &out) == 0);
  CHECK(out.find("lemma1") != std::string::npos);
  CHECK(run_cli("list-suites --format json", &out) == 0);
  CHECK(json::parse(out).size() == suites().size());
  CHECK(run_cli("list-suites --bogus") == 2);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run " + std::string(HDUAL_CONFIGS) + "/periods.json", &out) == 0);
  CHECK(json::parse(out)["summary"]["passed"] == 2);
  CHECK(run_cli("run /nonexistent.json") == 2);
  CHECK(run_cli("run " + std::string(HDUAL_CONFIGS) + "/decompose_monopole.json --format csv", &out) == 1);
  CHECK(out.find(",false,") != std::string::npos);
}
