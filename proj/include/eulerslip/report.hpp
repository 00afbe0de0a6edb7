#pragma once

// Serialized artifacts. CSV column order and JSON layout are versioned by
// kReportSchemaVersion; bump it whenever either changes.

#include <ostream>
#include <string>

#include "json.hpp"

#include "eulerslip/construct.hpp"
#include "eulerslip/geometry.hpp"
#include "eulerslip/persistence.hpp"

namespace eulerslip {

inline constexpr int kReportSchemaVersion = 1;

std::string tool_version();

/// Shortest round-trip decimal text, identical across runs.
std::string format_double(double x);

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const ScanTolerances& t);
nlohmann::json to_json(const ScanReport& r, bool per_sample);

inline constexpr const char* kScanCsvHeader =
    "xi1,xi2,kappa1,kappa2,a1,a2,b3,lhs_norm,rhs_norm,deviation,"
    "in_sigma,in_lambda,in_k,criterion_holds,corollary,certified";

void write_scan_csv(std::ostream& os, const ScanReport& r);

inline constexpr const char* kGeometryCsvHeader = "xi1,xi2,kappa1,kappa2,gaussian,in_sigma";

/// Curvature table over an n1 x n2 grid of the chart's sampling range.
void write_geometry_csv(std::ostream& os, const SurfaceChart& chart, int n1, int n2,
                        double sigma_tol);

}  // namespace eulerslip
