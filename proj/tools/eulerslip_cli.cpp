// eulerslip: config-driven front end.
//
//   eulerslip geometry  --config run.json [--out dir] [--quiet]
//   eulerslip construct --config run.json
//   eulerslip verify    --config run.json
//   eulerslip scan      --config run.json
//
// Exit codes: 0 success, 1 verification failed, 2 config error,
// 3 precondition error (field not admissible or not constructible).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "eulerslip/config.hpp"
#include "eulerslip/errors.hpp"
#include "eulerslip/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eulerslip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;

struct Options {
  std::string config;
  std::string out;
  bool quiet = false;
};

struct Run {
  RunConfig cfg;
  fs::path dir;
  bool quiet = false;

  void say(const std::string& line) const {
    if (!quiet) {
      std::cout << line << '\n';
    }
  }
};

json envelope(const Run& run, const std::string& command) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool", tool_version()},
          {"command", command},
          {"config", resolved_config(run.cfg)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  os << text;
}

void write_json(const Run& run, const std::string& name, const json& j) {
  if (run.cfg.output.json) {
    write_text(run.dir / name, j.dump(2) + "\n");
  }
}

void write_csv(const Run& run, const std::string& name, const ScanReport& r) {
  if (run.cfg.output.csv) {
    std::ofstream os(run.dir / name, std::ios::binary);
    write_scan_csv(os, r);
  }
}

int cmd_geometry(const Run& run) {
  const SurfaceChart chart = build_chart(run.cfg.chart);
  const ScanConfig& s = run.cfg.scan;
  {
    std::ofstream os(run.dir / "geometry.csv", std::ios::binary);
    write_geometry_csv(os, chart, s.grid1, s.grid2, s.tolerances.sigma);
  }
  json j = envelope(run, "geometry");
  j["chart"] = chart.tag();
  j["diameter"] = chart.diameter();
  j["focal_distance"] = chart.focal_distance();
  j["grid"] = {s.grid1, s.grid2};
  write_json(run, "geometry.json", j);
  run.say("geometry: " + chart.tag() + " -> " + (run.dir / "geometry.csv").string());
  return kExitOk;
}

int cmd_construct(const Run& run) {
  const SurfaceChart chart = build_chart(run.cfg.chart);
  const AdmissibleField field = build_field(run.cfg, chart);
  json j = envelope(run, "construct");
  j["field"] = field.provenance;
  j["chart"] = chart.tag();
  j["certificate"] = to_json(field.certificate);
  write_json(run, "certificate.json", j);
  run.say(std::string("construct: ") + field.provenance + " " +
          (field.admissible() ? "admissible" : "NOT admissible") +
          " (max |curl a x n| = " + format_double(field.certificate.max_tangential_vorticity) + ")");
  return field.admissible() ? kExitOk : kExitFail;
}

ScanReport run_scan(const Run& run, bool criterion) {
  const SurfaceChart chart = build_chart(run.cfg.chart);
  const AdmissibleField field = build_field(run.cfg, chart);
  const ScanConfig& s = run.cfg.scan;
  return criterion ? criterion_scan(field, chart, s.samples, s.seed, s.tolerances)
                   : verify_identity(field, chart, s.samples, s.seed, s.tolerances);
}

int cmd_verify(const Run& run) {
  const ScanReport r = run_scan(run, false);
  json j = envelope(run, "verify");
  j["report"] = to_json(r, run.cfg.output.per_sample);
  write_json(run, "verify.json", j);
  write_csv(run, "verify.csv", r);
  run.say(std::string("verify: max deviation ") + format_double(r.max_deviation) + " (tol " +
          format_double(r.provenance.tolerances.identity) + ") " +
          (r.identity_passes() ? "pass" : "FAIL"));
  return r.identity_passes() ? kExitOk : kExitFail;
}

int cmd_scan(const Run& run) {
  const ScanReport r = run_scan(run, true);
  json j = envelope(run, "scan");
  j["report"] = to_json(r, run.cfg.output.per_sample);
  write_json(run, "scan.json", j);
  write_csv(run, "scan.csv", r);
  // The verdict line is the command's primary output and ignores --quiet.
  std::cout << "verdict: " << to_string(r.verdict) << " (flagged " << format_double(r.fraction_flagged)
            << ", max deviation " << format_double(r.max_deviation) << ")\n";
  return kExitOk;
}

int dispatch(const std::string& command, const Options& opt, int (*fn)(const Run&)) {
  Run run;
  try {
    run.cfg = load_config(opt.config);
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (!e.key_path().empty()) {
      std::cerr << " at '" << e.key_path() << "'";
    }
    std::cerr << ": " << e.what() << '\n';
    return kExitConfig;
  }
  if (!opt.out.empty()) {
    run.cfg.output.dir = opt.out;
  }
  run.quiet = opt.quiet;
  run.dir = run.cfg.output.dir;
  try {
    fs::create_directories(run.dir);
    return fn(run);
  } catch (const ConfigError& e) {
    std::cerr << command << ": config error at '" << e.key_path() << "': " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << command << ": precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary identity and persistence scans for admissible fields"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Options opt;
  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Run&);
  };
  const Entry entries[] = {
      {"geometry", "Curvature table over the chart grid (geometry.csv)", cmd_geometry},
      {"construct", "Build the configured field and write its certificate", cmd_construct},
      {"verify", "Check the boundary identity on stratified samples", cmd_verify},
      {"scan", "Criterion scan with persistence verdict", cmd_scan},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", opt.config, "Run configuration (JSON)")->required();
    sub->add_option("--out", opt.out, "Output directory (overrides output.dir)");
    sub->add_flag("--quiet", opt.quiet, "Suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (const Entry& e : entries) {
    if (app.got_subcommand(e.name)) {
      return dispatch(e.name, opt, e.fn);
    }
  }
  return kExitConfig;
}
