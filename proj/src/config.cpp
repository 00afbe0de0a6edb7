#include "eulerslip/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "eulerslip/errors.hpp"

namespace eulerslip {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError(path, "expected an object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.count(it.key()) == 0) {
      throw ConfigError(join(path, it.key()), "unknown key");
    }
  }
}

template <typename T>
void read(const json& obj, const std::string& path, const std::string& key, T& out) {
  if (!obj.contains(key)) {
    return;
  }
  const json& v = obj.at(key);
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) {
        throw ConfigError(join(path, key), "expected a number");
      }
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) {
        throw ConfigError(join(path, key), "expected true or false");
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) {
        throw ConfigError(join(path, key), "expected an integer");
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (v.get<long long>() < 0) {
          throw ConfigError(join(path, key), "expected a non-negative integer");
        }
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) {
        throw ConfigError(join(path, key), "expected a string");
      }
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) {
        throw ConfigError(join(path, key), "expected an array of numbers");
      }
      for (const auto& e : v) {
        if (!e.is_number()) {
          throw ConfigError(join(path, key), "expected an array of numbers");
        }
      }
    }
    out = v.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(join(path, key), e.what());
  }
}

void require_positive(double v, const std::string& path) {
  if (!(v > 0.0)) {
    throw ConfigError(path, "must be > 0");
  }
}

ProfileKind profile_kind(const std::string& s, const std::string& path) {
  if (s == "pole_fourier") return ProfileKind::pole_fourier;
  if (s == "loop") return ProfileKind::loop;
  if (s == "line") return ProfileKind::line;
  throw ConfigError(path, "unknown profile kind '" + s + "' (pole_fourier, loop, line)");
}

std::string profile_kind_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::pole_fourier:
      return "pole_fourier";
    case ProfileKind::loop:
      return "loop";
    case ProfileKind::line:
      return "line";
  }
  return "unknown";
}

BetaBasis beta_basis(const std::string& s, const std::string& path) {
  if (s == "legendre") return BetaBasis::legendre;
  if (s == "fourier") return BetaBasis::fourier;
  if (s == "bump") return BetaBasis::bump;
  if (s == "latitude_zero") return BetaBasis::latitude_zero;
  throw ConfigError(path, "unknown basis '" + s + "' (legendre, fourier, bump, latitude_zero)");
}

void parse_chart(const json& j, ChartConfig& c) {
  const std::string path = "chart";
  read(j, path, "kind", c.kind);
  if (c.kind == "sphere") {
    reject_unknown(j, path, {"kind", "radius", "pole_band"});
    read(j, path, "radius", c.radius);
    require_positive(c.radius, "chart.radius");
  } else if (c.kind == "spheroid") {
    reject_unknown(j, path, {"kind", "equatorial", "polar", "pole_band"});
    read(j, path, "equatorial", c.equatorial);
    read(j, path, "polar", c.polar);
    require_positive(c.equatorial, "chart.equatorial");
    require_positive(c.polar, "chart.polar");
  } else if (c.kind == "torus") {
    reject_unknown(j, path, {"kind", "major", "minor"});
    read(j, path, "major", c.major);
    read(j, path, "minor", c.minor);
    require_positive(c.minor, "chart.minor");
    if (!(c.major > c.minor)) {
      throw ConfigError("chart.major", "must exceed chart.minor");
    }
  } else if (c.kind == "cylinder") {
    reject_unknown(j, path, {"kind", "radius", "height"});
    read(j, path, "radius", c.radius);
    read(j, path, "height", c.height);
    require_positive(c.radius, "chart.radius");
    require_positive(c.height, "chart.height");
  } else if (c.kind == "slab") {
    reject_unknown(j, path, {"kind", "period"});
    read(j, path, "period", c.period);
    require_positive(c.period, "chart.period");
  } else if (c.kind == "revolution") {
    reject_unknown(j, path, {"kind", "profile", "r", "z", "t_min", "t_max", "pole_band"});
    std::string kind = "pole_fourier";
    read(j, path, "profile", kind);
    c.profile.kind = profile_kind(kind, "chart.profile");
    read(j, path, "r", c.profile.r_coef);
    read(j, path, "z", c.profile.z_coef);
    read(j, path, "t_min", c.profile.t_min);
    read(j, path, "t_max", c.profile.t_max);
  } else {
    throw ConfigError("chart.kind",
                      "unknown chart kind '" + c.kind +
                          "' (sphere, spheroid, torus, cylinder, revolution, slab)");
  }
  read(j, path, "pole_band", c.pole_band);
}

void parse_field(const json& j, FieldConfig& f) {
  const std::string path = "field";
  read(j, path, "family", f.family);
  if (f.family == "ball") {
    reject_unknown(j, path, {"family", "profile", "coefficients"});
    std::string profile = "polynomial";
    read(j, path, "profile", profile);
    if (profile == "polynomial") {
      f.ball.kind = BallProfile::Kind::polynomial;
    } else if (profile == "gaussian") {
      f.ball.kind = BallProfile::Kind::gaussian;
      f.ball.coefficients = {1.0, 1.0};
    } else if (profile == "rigid") {
      f.ball.kind = BallProfile::Kind::polynomial;
      f.ball.coefficients = {1.0};
    } else {
      throw ConfigError("field.profile", "unknown ball profile '" + profile +
                                             "' (polynomial, gaussian, rigid)");
    }
    read(j, path, "coefficients", f.ball.coefficients);
    if (f.ball.coefficients.empty() ||
        (f.ball.kind == BallProfile::Kind::gaussian && f.ball.coefficients.size() != 2)) {
      throw ConfigError("field.coefficients", "wrong number of coefficients");
    }
  } else if (f.family == "beta") {
    reject_unknown(j, path, {"family", "basis", "coefficients", "center", "width", "cutoff_width"});
    std::string basis = "legendre";
    read(j, path, "basis", basis);
    f.beta.basis = beta_basis(basis, "field.basis");
    read(j, path, "coefficients", f.beta.coefficients);
    read(j, path, "center", f.beta.center);
    read(j, path, "width", f.beta.width);
    read(j, path, "cutoff_width", f.cutoff_width);
  } else if (f.family == "slab") {
    reject_unknown(j, path, {"family", "mode"});
    read(j, path, "mode", f.mode);
    if (f.mode < 1) {
      throw ConfigError("field.mode", "must be >= 1");
    }
  } else {
    throw ConfigError("field.family", "unknown family '" + f.family + "' (ball, beta, slab)");
  }
}

void parse_scan(const json& j, ScanConfig& s) {
  const std::string path = "scan";
  reject_unknown(j, path,
                 {"samples", "seed", "identity_tol", "criterion_tol", "sigma_tol", "lambda_tol",
                  "certificate_samples", "grid"});
  read(j, path, "samples", s.samples);
  read(j, path, "seed", s.seed);
  read(j, path, "identity_tol", s.tolerances.identity);
  read(j, path, "criterion_tol", s.tolerances.criterion);
  read(j, path, "sigma_tol", s.tolerances.sigma);
  read(j, path, "lambda_tol", s.tolerances.lambda);
  read(j, path, "certificate_samples", s.certificate_samples);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer() ||
        g[0].get<int>() < 1 || g[1].get<int>() < 1) {
      throw ConfigError("scan.grid", "expected [n1, n2] with positive integers");
    }
    s.grid1 = g[0].get<int>();
    s.grid2 = g[1].get<int>();
  }
  if (s.samples < 1) {
    throw ConfigError("scan.samples", "must be >= 1");
  }
  if (s.certificate_samples < 1) {
    throw ConfigError("scan.certificate_samples", "must be >= 1");
  }
  require_positive(s.tolerances.identity, "scan.identity_tol");
  require_positive(s.tolerances.criterion, "scan.criterion_tol");
  require_positive(s.tolerances.sigma, "scan.sigma_tol");
  require_positive(s.tolerances.lambda, "scan.lambda_tol");
}

void parse_output(const json& j, OutputConfig& o) {
  const std::string path = "output";
  reject_unknown(j, path, {"dir", "json", "csv", "per_sample"});
  read(j, path, "dir", o.dir);
  read(j, path, "json", o.json);
  read(j, path, "csv", o.csv);
  read(j, path, "per_sample", o.per_sample);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("syntax error: ") + e.what());
  }
  reject_unknown(doc, "", {"chart", "field", "scan", "output"});
  RunConfig cfg;
  if (!doc.contains("chart")) {
    throw ConfigError("chart", "missing block");
  }
  if (!doc.contains("field")) {
    throw ConfigError("field", "missing block");
  }
  if (!doc.at("chart").is_object()) {
    throw ConfigError("chart", "expected an object");
  }
  if (!doc.at("field").is_object()) {
    throw ConfigError("field", "expected an object");
  }
  parse_chart(doc.at("chart"), cfg.chart);
  parse_field(doc.at("field"), cfg.field);
  if (doc.contains("scan")) {
    parse_scan(doc.at("scan"), cfg.scan);
  }
  if (doc.contains("output")) {
    parse_output(doc.at("output"), cfg.output);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("", "cannot read config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::json resolved_config(const RunConfig& cfg) {
  json chart{{"kind", cfg.chart.kind}};
  const ChartConfig& c = cfg.chart;
  if (c.kind == "sphere") {
    chart["radius"] = c.radius;
    chart["pole_band"] = c.pole_band;
  } else if (c.kind == "spheroid") {
    chart["equatorial"] = c.equatorial;
    chart["polar"] = c.polar;
    chart["pole_band"] = c.pole_band;
  } else if (c.kind == "torus") {
    chart["major"] = c.major;
    chart["minor"] = c.minor;
  } else if (c.kind == "cylinder") {
    chart["radius"] = c.radius;
    chart["height"] = c.height;
  } else if (c.kind == "slab") {
    chart["period"] = c.period;
  } else {
    chart["profile"] = profile_kind_name(c.profile.kind);
    chart["r"] = c.profile.r_coef;
    chart["z"] = c.profile.z_coef;
    chart["t_min"] = c.profile.t_min;
    chart["t_max"] = c.profile.t_max;
    chart["pole_band"] = c.pole_band;
  }

  const FieldConfig& f = cfg.field;
  json field{{"family", f.family}};
  if (f.family == "ball") {
    field["profile"] = f.ball.kind == BallProfile::Kind::gaussian ? "gaussian" : "polynomial";
    field["coefficients"] = f.ball.coefficients;
  } else if (f.family == "beta") {
    field["basis"] = to_string(f.beta.basis);
    field["coefficients"] = f.beta.coefficients;
    field["center"] = f.beta.center;
    field["width"] = f.beta.width;
    field["cutoff_width"] = f.cutoff_width;
  } else {
    field["mode"] = f.mode;
  }

  const ScanConfig& s = cfg.scan;
  json scan{{"samples", s.samples},
            {"seed", s.seed},
            {"identity_tol", s.tolerances.identity},
            {"criterion_tol", s.tolerances.criterion},
            {"sigma_tol", s.tolerances.sigma},
            {"lambda_tol", s.tolerances.lambda},
            {"certificate_samples", s.certificate_samples},
            {"grid", {s.grid1, s.grid2}}};
  json output{{"dir", cfg.output.dir},
              {"json", cfg.output.json},
              {"csv", cfg.output.csv},
              {"per_sample", cfg.output.per_sample}};
  return {{"chart", chart}, {"field", field}, {"scan", scan}, {"output", output}};
}

SurfaceChart build_chart(const ChartConfig& c) {
  try {
    if (c.kind == "sphere") return SurfaceChart::sphere(c.radius, c.pole_band);
    if (c.kind == "spheroid") return SurfaceChart::spheroid(c.equatorial, c.polar, c.pole_band);
    if (c.kind == "torus") return SurfaceChart::torus(c.major, c.minor);
    if (c.kind == "cylinder") return SurfaceChart::cylinder(c.radius, c.height);
    if (c.kind == "slab") return SurfaceChart::slab(c.period);
    return SurfaceChart::revolution(c.profile, c.pole_band);
  } catch (const DomainError& e) {
    throw ConfigError("chart", e.what());
  }
}

AdmissibleField build_field(const RunConfig& cfg, const SurfaceChart& chart) {
  const FieldConfig& f = cfg.field;
  const std::size_t n = cfg.scan.certificate_samples;
  if (f.family == "ball") {
    if (chart.kind() != ChartKind::sphere) {
      throw ConfigError("field.family", "the ball family lives on a sphere chart");
    }
    return named_ball_field(f.ball, chart.parameters().at(0), n);
  }
  if (f.family == "slab") {
    if (chart.kind() != ChartKind::slab) {
      throw ConfigError("field.family", "the slab family lives on a slab chart");
    }
    return slab_field(chart.parameters().at(0), f.mode, n);
  }
  if (!chart.closed()) {
    throw ConfigError("field.family", "the beta family needs a closed surface of revolution");
  }
  return admissible_from_beta(chart, make_beta(f.beta, chart), f.cutoff_width, n);
}

}  // namespace eulerslip
