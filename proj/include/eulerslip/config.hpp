#pragma once

// Run configuration for the command-line front end: one JSON document with
// blocks "chart", "field", "scan" and "output". Unknown keys are rejected;
// errors carry the dotted key path (or line/column for syntax errors).

#include <cstdint>
#include <string>

#include "json.hpp"

#include "eulerslip/construct.hpp"
#include "eulerslip/geometry.hpp"
#include "eulerslip/persistence.hpp"

namespace eulerslip {

struct ChartConfig {
  std::string kind = "sphere";
  double radius = 1.0;      // sphere, cylinder
  double equatorial = 1.0;  // spheroid
  double polar = 2.0;       // spheroid
  double major = 3.0;       // torus
  double minor = 1.0;       // torus
  double height = 2.0;      // cylinder
  double period = 6.283185307179586;  // slab
  double pole_band = kDefaultPoleBand;
  MeridianProfile profile;  // revolution
};

struct FieldConfig {
  std::string family = "ball";  // ball | beta | slab
  BallProfile ball;
  BetaSpec beta;
  double cutoff_width = 0.0;  // beta: <= 0 selects 0.2 x focal distance
  int mode = 1;               // slab
};

struct ScanConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  ScanTolerances tolerances;
  std::size_t certificate_samples = 2000;
  int grid1 = 33;  // geometry table
  int grid2 = 8;
};

struct OutputConfig {
  std::string dir = ".";
  bool json = true;
  bool csv = true;
  bool per_sample = false;
};

struct RunConfig {
  ChartConfig chart;
  FieldConfig field;
  ScanConfig scan;
  OutputConfig output;
};

/// Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every setting, defaults included, as embedded in reports.
nlohmann::json resolved_config(const RunConfig& cfg);

SurfaceChart build_chart(const ChartConfig& cfg);

/// Builds the field named in the config on `chart`. Family/chart mismatches
/// raise ConfigError; construction failures propagate their own errors.
AdmissibleField build_field(const RunConfig& cfg, const SurfaceChart& chart);

}  // namespace eulerslip
