#pragma once

// Batch harness: experiment configs in, JSON/CSV reports out.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdual/cauchy_green.hpp"
#include "hdual/duality.hpp"
#include "hdual/vector3.hpp"

namespace hdual::cli {

inline constexpr int kSchemaVersion = 1;

// Frozen convention constants of the point-measure pairing identities.
inline constexpr double kKappa = 1.0;
inline constexpr double kKappaPrime = 1.0;

enum ExitCode : int { kPass = 0, kFail = 1, kConfigError = 2, kRuntimeError = 3 };

// Malformed or schema-violating configuration (exit 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Mode { Reproduce, Pair1, Pair2, Decompose, Periods, Identities };

std::string mode_name(Mode m);

struct PointCharge {
  Point center;
  Covector xi;
};

struct CycleSpec {
  Point center;
  double radius = 1.0;
  Point axis;
  int order = 64;
};

struct ChainSpec {
  std::vector<Point> points;
  std::vector<double> charges;
};

struct Case {
  nlohmann::json input;  // echoed verbatim into the report
  double tolerance = 1e-6;
  SurfacePtr surface;
  FieldPtr field;                        // reproduce, pair1/2 (u), decompose
  std::optional<HolomorphicPair> pair;   // reproduce (pair form), pair1/2, periods
  std::optional<PointCharge> charge;     // set when the pair is a point pair
  Side side = Side::Interior;
  std::vector<Point> points;
  std::string reference = "none";        // pair1/2: point_measure | zero | none
  double kappa = 1.0;
  double decay_range = 100.0;
  std::optional<CycleSpec> cycle;
  std::optional<ChainSpec> chain;
  std::string suite;
  int samples = 0;
};

struct Experiment {
  std::string name;
  Mode mode = Mode::Reproduce;
  int n = 3;
  int r = 1;
  std::uint64_t seed = 0;
  std::vector<Case> cases;
};

Experiment parse_config(const nlohmann::json& doc);
Experiment load_config(const std::string& path);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  bool timing = false;                // include wall times (breaks byte-identity)
};

nlohmann::json run_experiment(const Experiment& e, const RunOptions& opts = {});
std::string report_to_csv(const nlohmann::json& report);
int report_exit_code(const nlohmann::json& report);

// Built-in randomized verification suites.
struct SuiteInfo {
  std::string name;
  std::string description;
};
const std::vector<SuiteInfo>& suites();

struct SuiteCheck {
  std::string name;
  double value = 0.0;      // measured residual
  double tolerance = 0.0;
  bool pass = false;
};
// Throws ConfigError for unknown suite names. `samples` <= 0 selects the default.
std::vector<SuiteCheck> run_suite(const std::string& name, std::uint64_t seed, int samples = 0);

}  // namespace hdual::cli
