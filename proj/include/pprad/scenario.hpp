#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pprad/greens.hpp"
#include "pprad/materials.hpp"
#include "pprad/transport.hpp"

namespace pprad::cli {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class Mode { HR, HT, Sweep, Convergence };
enum class Quantity { HR, HT };

struct SweepAxis {
  std::string parameter;  // sphere_radius | plate_distance | separation | temperature
  bool log = true;
  double min = 0.0, max = 0.0;
  int count = 0;
  double gap = 1e-7;  // sphere_radius only: particle distance to the surface

  std::vector<double> values() const;
};

struct Series {
  std::string name;
  greens::Environment environment;
  std::optional<greens::MultipolePolicy> multipole;
};

struct ScenarioConfig {
  Mode mode = Mode::HR;
  Quantity quantity = Quantity::HR;
  std::vector<materials::Particle> particles;
  std::vector<Series> series;  // at least one
  std::optional<SweepAxis> sweep;
  bool baseline = true;  // vacuum closed-form baseline columns
  transport::QuadratureConfig quadrature;
  greens::MultipolePolicy multipole;
  std::vector<int> l_grid;       // convergence mode
  bool isolated_sphere = false;  // convergence mode: add the isolated-sphere HR series
  std::string output;
};

/// Throws Error(Config) on schema violations.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig load_config(const std::string& path);
Json to_json(const ScenarioConfig& c);

/// FNV-1a of the canonical JSON form, as 16 hex digits.
std::string config_hash(const ScenarioConfig& c);

Json material_to_json(const materials::DielectricModel& m);
materials::DielectricModel material_from_json(const Json& j);

// ---------------------------------------------------------------------------

struct ReportEntry {
  std::string check;
  materials::Verdict verdict;
  std::string message;
};

struct ValidationReport {
  std::vector<ReportEntry> entries;
  bool ok() const;
  Json to_json() const;
};

/// Schema, geometry and dipole-limit checks of every sweep point.
ValidationReport validate(const ScenarioConfig& c);
/// Parse and validate; parse failures become a failed schema entry.
ValidationReport validate(const Json& j);

// ---------------------------------------------------------------------------

struct PresetInfo {
  std::string name;
  std::string description;
};
std::vector<PresetInfo> preset_list();
/// Throws Error(Config) for unknown names.
ScenarioConfig preset(const std::string& name);

// ---------------------------------------------------------------------------

struct RunOptions {
  int threads = 1;
  std::optional<double> tolerance;  // overrides quadrature.rel_tol
  bool reproducible = false;        // zero the wall-time column
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPhysics = 3;
inline constexpr int kExitAccuracy = 4;

/// Runs the scenario, writing CSV to `csv`. On failure writes one JSON
/// object to `err` and returns the exit code.
int run(const ScenarioConfig& c, const RunOptions& opts, std::ostream& csv, std::ostream& err);

/// Machine-readable error object.
Json error_json(const std::string& kind, const std::string& message, int exit_code);

}  // namespace pprad::cli
