#include "eulerslip/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace eulerslip {

std::string tool_version() { return std::string("eulerslip ") + EULERSLIP_VERSION; }

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) {
      break;
    }
  }
  return buf;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["max_divergence"] = c.max_divergence;
  j["max_normal_velocity"] = c.max_normal_velocity;
  j["max_tangential_vorticity"] = c.max_tangential_vorticity;
  j["beta_fidelity"] = c.beta_fidelity;  // NaN serializes as null
  j["flux"] = c.flux;
  j["constraint_residual"] = c.constraint_residual;
  j["admissible"] = c.admissible;
  return j;
}

nlohmann::json to_json(const ScanTolerances& t) {
  return {{"identity", t.identity},
          {"criterion", t.criterion},
          {"sigma", t.sigma},
          {"lambda", t.lambda}};
}

nlohmann::json to_json(const ScanReport& r, bool per_sample) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = tool_version();
  j["provenance"] = {{"chart", r.provenance.chart},
                     {"field", r.provenance.field},
                     {"tolerances", to_json(r.provenance.tolerances)},
                     {"samples", r.provenance.samples},
                     {"seed", r.provenance.seed}};
  j["max_deviation"] = r.max_deviation;
  j["identity_passes"] = r.identity_passes();
  j["field_scale"] = r.field_scale;
  j["criterion_threshold"] = r.criterion_threshold;
  j["fraction_flagged"] = r.fraction_flagged;
  j["verdict"] = to_string(r.verdict);
  if (per_sample) {
    nlohmann::json rows = nlohmann::json::array();
    for (const IdentitySample& s : r.samples) {
      rows.push_back({{"xi1", s.frame.xi1},
                      {"xi2", s.frame.xi2},
                      {"kappa1", s.frame.kappa1},
                      {"kappa2", s.frame.kappa2},
                      {"a", {s.a_comp.v1, s.a_comp.v2, s.a_comp.v3}},
                      {"b", {s.b_comp.v1, s.b_comp.v2, s.b_comp.v3}},
                      {"lhs", {s.lhs[0], s.lhs[1], s.lhs[2]}},
                      {"rhs", {s.rhs[0], s.rhs[1], s.rhs[2]}},
                      {"deviation", s.deviation},
                      {"in_sigma", s.flags.in_sigma},
                      {"in_lambda", s.flags.in_lambda},
                      {"in_k", s.flags.in_k},
                      {"criterion_holds", s.flags.criterion_holds},
                      {"corollary", s.flags.corollary},
                      {"certified", s.flags.certified}});
    }
    j["samples"] = std::move(rows);
  }
  return j;
}

void write_scan_csv(std::ostream& os, const ScanReport& r) {
  os << kScanCsvHeader << '\n';
  for (const IdentitySample& s : r.samples) {
    const SampleFlags& f = s.flags;
    os << format_double(s.frame.xi1) << ',' << format_double(s.frame.xi2) << ','
       << format_double(s.frame.kappa1) << ',' << format_double(s.frame.kappa2) << ','
       << format_double(s.a_comp.v1) << ',' << format_double(s.a_comp.v2) << ','
       << format_double(s.b_comp.v3) << ',' << format_double(norm(s.lhs)) << ','
       << format_double(norm(s.rhs)) << ',' << format_double(s.deviation) << ','
       << f.in_sigma << ',' << f.in_lambda << ',' << f.in_k << ',' << f.criterion_holds << ','
       << f.corollary << ',' << f.certified << '\n';
  }
}

void write_geometry_csv(std::ostream& os, const SurfaceChart& chart, int n1, int n2,
                        double sigma_tol) {
  os << kGeometryCsvHeader << '\n';
  const ParamRange r1 = chart.range(1);
  const ParamRange r2 = chart.range(2);
  const double d2 = chart.diameter() * chart.diameter();
  for (int i = 0; i < n1; ++i) {
    // Periodic ranges are half-open; closed ranges include both ends.
    const double s1 = r1.periodic ? static_cast<double>(i) / n1
                                  : (n1 == 1 ? 0.5 : static_cast<double>(i) / (n1 - 1));
    const double xi1 = r1.lo + (r1.hi - r1.lo) * s1;
    for (int k = 0; k < n2; ++k) {
      const double s2 = r2.periodic ? static_cast<double>(k) / n2
                                    : (n2 == 1 ? 0.5 : static_cast<double>(k) / (n2 - 1));
      const double xi2 = r2.lo + (r2.hi - r2.lo) * s2;
      const BoundaryFrame f = surface_frame(chart, xi1, xi2);
      os << format_double(xi1) << ',' << format_double(xi2) << ',' << format_double(f.kappa1)
         << ',' << format_double(f.kappa2) << ',' << format_double(f.gaussian()) << ','
         << (std::abs(f.gaussian()) * d2 > sigma_tol) << '\n';
    }
  }
}

}  // namespace eulerslip
