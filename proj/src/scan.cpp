#include "wedgegreen/scan.hpp"

#include "wedgegreen/green_perp.hpp"
#include "wedgegreen/parallel.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace wedgegreen {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double free_norm() { return 2.0 * std::numbers::pi / (6.0 * std::numbers::pi); }

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(child(path, key), "unknown key");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) throw ConfigError(path, "must be > 0");
  return v;
}

int integer(const json& j, const std::string& path, int min_value) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min_value || v > std::numeric_limits<int>::max())
    throw ConfigError(path, "must be >= " + std::to_string(min_value));
  return static_cast<int>(v);
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

Vec3 vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(path, "expected an array of 3 numbers");
  return {number(j[0], path + "/0"), number(j[1], path + "/1"), number(j[2], path + "/2")};
}

Vec3 direction(const json& j, const std::string& path) {
  const Vec3 v = vec3(j, path);
  if (!(v.norm() > 0.0)) throw ConfigError(path, "must be a nonzero vector");
  return v.normalized();
}

std::pair<double, double> range(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [min, max]");
  const double a = number(j[0], path + "/0"), b = number(j[1], path + "/1");
  if (!(b > a)) throw ConfigError(path, "max must exceed min");
  return {a, b};
}

Truncation truncation(const json& j, const std::string& path) {
  Truncation t;
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError(path, "expected [m_max, p_max]");
    t.m_max = integer(j[0], path + "/0", 1);
    t.p_max = integer(j[1], path + "/1", 1);
    return t;
  }
  check_keys(j, path, {"m_max", "p_max"});
  if (j.contains("m_max")) t.m_max = integer(j["m_max"], child(path, "m_max"), 1);
  if (j.contains("p_max")) t.p_max = integer(j["p_max"], child(path, "p_max"), 1);
  return t;
}

void require_vacuum_config(const Vec3& p, const WedgeGeometry& wedge, const std::string& path) {
  if (!in_vacuum(PointCart::from(p), wedge).inside)
    throw ConfigError(path, "point is not strictly inside the vacuum region");
}

GridSpec grid(const json& j, const std::string& path) {
  check_keys(j, path, {"x", "y", "z", "nx", "ny"});
  GridSpec g;
  if (j.contains("x")) std::tie(g.x0, g.x1) = range(j["x"], child(path, "x"));
  if (j.contains("y")) std::tie(g.y0, g.y1) = range(j["y"], child(path, "y"));
  if (j.contains("z")) g.z = number(j["z"], child(path, "z"));
  if (j.contains("nx")) g.nx = integer(j["nx"], child(path, "nx"), 2);
  if (j.contains("ny")) g.ny = integer(j["ny"], child(path, "ny"), 2);
  return g;
}

GammaMapSpec gamma_map(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  GammaMapSpec g;
  const std::string policy = j.contains("policy") ? string(j["policy"], child(path, "policy")) : "corner";
  if (policy == "constant") {
    g.kind = GammaMapKind::Constant;
    check_keys(j, path, {"policy", "value"});
    if (j.contains("value")) {
      g.value = number(j["value"], child(path, "value"));
      if (g.value < 0.0) throw ConfigError(child(path, "value"), "must be >= 0");
    }
    return g;
  }
  if (policy != "corner") throw ConfigError(child(path, "policy"), "expected \"corner\" or \"constant\"");
  check_keys(j, path,
             {"policy", "interior_angle_deg", "mask_height", "x_range", "samples", "orientation"});
  auto& c = g.corner;
  if (j.contains("interior_angle_deg")) {
    c.interior_angle = number(j["interior_angle_deg"], child(path, "interior_angle_deg")) * kDeg;
    if (!(c.interior_angle > 0.0 && c.interior_angle < 2.0 * std::numbers::pi))
      throw ConfigError(child(path, "interior_angle_deg"), "must lie in (0, 360)");
  }
  if (j.contains("mask_height")) c.mask_height = positive(j["mask_height"], child(path, "mask_height"));
  if (j.contains("x_range")) std::tie(c.x_min, c.x_max) = range(j["x_range"], child(path, "x_range"));
  if (j.contains("samples")) c.samples = integer(j["samples"], child(path, "samples"), 2);
  if (j.contains("orientation")) c.orientation = direction(j["orientation"], child(path, "orientation"));
  return g;
}

std::vector<double> heights(const json& j, const std::string& path) {
  std::vector<double> out;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError(path, "must not be empty");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(positive(j[i], path + "/" + std::to_string(i)));
    return out;
  }
  check_keys(j, path, {"from", "to", "count"});
  for (const char* key : {"from", "to", "count"})
    if (!j.contains(key)) throw ConfigError(child(path, key), "missing");
  const double a = positive(j["from"], child(path, "from"));
  const double b = positive(j["to"], child(path, "to"));
  const int n = integer(j["count"], child(path, "count"), 2);
  if (!(b > a)) throw ConfigError(child(path, "to"), "must exceed from");
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

std::vector<MapRow> grid_rows(const GridSpec& g) {
  std::vector<MapRow> rows(static_cast<std::size_t>(g.nx) * g.ny);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      auto& row = rows[static_cast<std::size_t>(iy) * g.nx + ix];
      row.x = g.x0 + (g.x1 - g.x0) * ix / (g.nx - 1);
      row.y = g.y0 + (g.y1 - g.y0) * iy / (g.ny - 1);
      row.z = g.z;
    }
  return rows;
}

template <class Eval>
std::vector<MapRow> run_map(const ScanConfig& cfg, Eval&& eval) {
  const WedgeGeometry wedge = cfg.wedge();
  std::vector<MapRow> rows = grid_rows(cfg.grid);
  parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    auto& row = rows[i];
    const PointCart p{row.x, row.y, row.z};
    row.in_vacuum = in_vacuum(p, wedge).inside;
    if (!row.in_vacuum) {
      row.value = kNan;
      row.tail = kNan;
      return;
    }
    const RateResult r = eval(p, wedge);
    row.value = r.normalized_rate;
    row.tail = r.tail_estimate;
  });
  return rows;
}

bool exceeds(double tail, double value, double tol) {
  return std::isfinite(tail) && tail > tol * std::abs(value) && tail != 0.0;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

ordered_json table_json(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (double v : row) r.push_back(std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr));
    rows.push_back(std::move(r));
  }
  ordered_json out;
  out["columns"] = t.columns;
  out["rows"] = std::move(rows);
  return out;
}

Table map_table(const std::vector<MapRow>& rows) {
  Table t{{"x_lambda", "y_lambda", "z_lambda", "value", "tail", "in_vacuum"}, {}};
  t.rows.reserve(rows.size());
  for (const auto& r : rows) t.rows.push_back({r.x, r.y, r.z, r.value, r.tail, r.in_vacuum ? 1.0 : 0.0});
  return t;
}

ordered_json truncation_json(const Truncation& t) {
  ordered_json j;
  j["m_max"] = t.m_max;
  j["p_max"] = t.p_max;
  return j;
}

}  // namespace

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error("config error at " + path + ": " + message), path_(std::move(path)) {}

std::string_view mode_name(ScanMode mode) {
  switch (mode) {
    case ScanMode::DecayMap: return "decay-map";
    case ScanMode::CdrMap: return "cdr-map";
    case ScanMode::GreenPoint: return "green-point";
    case ScanMode::Convergence: return "convergence";
    case ScanMode::StedSpot: return "sted-spot";
  }
  return "";
}

std::optional<ScanMode> mode_from_name(std::string_view name) {
  for (ScanMode m : {ScanMode::DecayMap, ScanMode::CdrMap, ScanMode::GreenPoint,
                     ScanMode::Convergence, ScanMode::StedSpot})
    if (mode_name(m) == name) return m;
  return std::nullopt;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xf];
  return out;
}

ScanConfig parse_scan_config(std::string_view json_text, ScanMode mode) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  std::set<std::string> allowed{"mode", "truncation", "output", "format", "tail_tolerance", "threads"};
  switch (mode) {
    case ScanMode::DecayMap: allowed.insert({"wedge", "orientation", "grid"}); break;
    case ScanMode::CdrMap:
      allowed.insert({"wedge", "orientation", "grid", "donor", "symmetry", "normalization"});
      break;
    case ScanMode::GreenPoint: allowed.insert({"wedge", "point", "source"}); break;
    case ScanMode::Convergence: allowed.insert({"wedge", "heights", "truncations", "component"}); break;
    case ScanMode::StedSpot:
      allowed.insert({"radii", "n_sin_alpha", "tau0", "gamma_map", "profile_samples"});
      break;
  }
  check_keys(j, "", allowed);

  ScanConfig cfg;
  cfg.mode = mode;
  if (j.contains("mode") && string(j["mode"], "/mode") != mode_name(mode))
    throw ConfigError("/mode", "does not match the subcommand " + std::string(mode_name(mode)));
  if (mode == ScanMode::Convergence) cfg.interior_angle = std::numbers::pi;
  if (j.contains("wedge")) {
    const json& w = j["wedge"];
    check_keys(w, "/wedge", {"interior_angle_deg", "face_azimuth_deg"});
    if (w.contains("interior_angle_deg")) {
      cfg.interior_angle = number(w["interior_angle_deg"], "/wedge/interior_angle_deg") * kDeg;
      if (!(cfg.interior_angle > 0.0 && cfg.interior_angle < 2.0 * std::numbers::pi))
        throw ConfigError("/wedge/interior_angle_deg", "must lie in (0, 360)");
    }
    if (w.contains("face_azimuth_deg"))
      cfg.face_azimuth = number(w["face_azimuth_deg"], "/wedge/face_azimuth_deg") * kDeg;
  }
  if (j.contains("truncation")) cfg.truncation = truncation(j["truncation"], "/truncation");
  if (j.contains("output")) cfg.output = string(j["output"], "/output");
  if (j.contains("format")) {
    cfg.format = string(j["format"], "/format");
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("/format", "expected csv or json");
  }
  if (j.contains("tail_tolerance")) cfg.tail_tolerance = positive(j["tail_tolerance"], "/tail_tolerance");
  if (j.contains("threads")) cfg.threads = static_cast<unsigned>(integer(j["threads"], "/threads", 0));

  const WedgeGeometry wedge = cfg.wedge();
  if (j.contains("orientation")) cfg.orientation = direction(j["orientation"], "/orientation");
  if (j.contains("grid")) cfg.grid = grid(j["grid"], "/grid");
  if (mode == ScanMode::CdrMap) {
    if (!j.contains("donor")) throw ConfigError("/donor", "missing");
    cfg.donor = vec3(j["donor"], "/donor");
    require_vacuum_config(cfg.donor, wedge, "/donor");
    if (j.contains("symmetry")) {
      const std::string s = string(j["symmetry"], "/symmetry");
      if (s == "symmetric") cfg.symmetry = Symmetry::Symmetric;
      else if (s == "antisymmetric") cfg.symmetry = Symmetry::Antisymmetric;
      else throw ConfigError("/symmetry", "expected symmetric or antisymmetric");
    }
    if (j.contains("normalization")) {
      const std::string s = string(j["normalization"], "/normalization");
      if (s == "vacuum_single_atom") cfg.normalization = CdrNormalization::VacuumSingleAtom;
      else if (s == "vacuum_pair") cfg.normalization = CdrNormalization::VacuumPair;
      else throw ConfigError("/normalization", "expected vacuum_single_atom or vacuum_pair");
    }
  }
  if (mode == ScanMode::GreenPoint) {
    if (!j.contains("point")) throw ConfigError("/point", "missing");
    cfg.point = vec3(j["point"], "/point");
    require_vacuum_config(cfg.point, wedge, "/point");
    if (j.contains("source")) {
      cfg.source = vec3(j["source"], "/source");
      require_vacuum_config(*cfg.source, wedge, "/source");
    }
  }
  if (mode == ScanMode::Convergence) {
    if (std::abs(cfg.interior_angle - std::numbers::pi) > 1e-12)
      throw ConfigError("/wedge/interior_angle_deg", "convergence reports need a 180 degree wedge");
    if (j.contains("heights")) {
      cfg.heights = heights(j["heights"], "/heights");
    } else {
      for (int i = 0; i < 50; ++i) cfg.heights.push_back(0.05 + (10.0 - 0.05) * i / 49.0);
    }
    if (j.contains("truncations")) {
      const json& t = j["truncations"];
      if (!t.is_array() || t.empty()) throw ConfigError("/truncations", "expected a non-empty array");
      for (std::size_t i = 0; i < t.size(); ++i)
        cfg.truncations.push_back(truncation(t[i], "/truncations/" + std::to_string(i)));
    } else {
      cfg.truncations.push_back(cfg.truncation);
    }
    if (j.contains("component")) {
      const std::string s = string(j["component"], "/component");
      if (s == "parallel") cfg.component = ReportOrientation::Parallel;
      else if (s == "perpendicular") cfg.component = ReportOrientation::Perpendicular;
      else throw ConfigError("/component", "expected parallel or perpendicular");
    }
  }
  if (mode == ScanMode::StedSpot) {
    if (j.contains("radii")) {
      const json& r = j["radii"];
      if (!r.is_array() || r.empty()) throw ConfigError("/radii", "expected a non-empty array");
      cfg.radii.clear();
      for (std::size_t i = 0; i < r.size(); ++i)
        cfg.radii.push_back(positive(r[i], "/radii/" + std::to_string(i)));
    }
    if (j.contains("n_sin_alpha")) {
      cfg.n_sin_alpha = positive(j["n_sin_alpha"], "/n_sin_alpha");
      if (cfg.n_sin_alpha > 1.5) throw ConfigError("/n_sin_alpha", "must lie in (0, 1.5]");
    }
    if (j.contains("tau0")) cfg.tau0 = positive(j["tau0"], "/tau0");
    if (j.contains("gamma_map")) cfg.gamma_map = gamma_map(j["gamma_map"], "/gamma_map");
    if (j.contains("profile_samples")) cfg.profile_samples = integer(j["profile_samples"], "/profile_samples", 2);
    if (cfg.gamma_map.kind == GammaMapKind::Corner) {
      const double w = 1.0 / (2.0 * cfg.n_sin_alpha);
      for (double R : cfg.radii) {
        if (cfg.gamma_map.corner.x_min > -std::min(R, w) || cfg.gamma_map.corner.x_max < w)
          throw ConfigError("/gamma_map/x_range", "does not cover the main lobe of every radius");
      }
    }
  }
  return cfg;
}

std::vector<MapRow> decay_map(const ScanConfig& cfg) {
  const Vec3 dir = cfg.orientation;
  const Truncation trunc = cfg.truncation;
  return run_map(cfg, [&](const PointCart& p, const WedgeGeometry& wedge) {
    return decay_rate(Dipole::make(p, dir), wedge, trunc);
  });
}

std::vector<MapRow> cdr_map(const ScanConfig& cfg) {
  const Dipole donor = Dipole::make(PointCart::from(cfg.donor), cfg.orientation);
  return run_map(cfg, [&](const PointCart& p, const WedgeGeometry& wedge) {
    return cooperative_rate(donor, Dipole::make(p, cfg.orientation), cfg.symmetry, wedge,
                            cfg.truncation, cfg.normalization);
  });
}

ScanOutput run_scan(const ScanConfig& cfg, std::string_view config_text) {
  const auto start = std::chrono::steady_clock::now();
  const double tol = cfg.tail_tolerance.value_or(kDefaultTailTolerance);
  ScanOutput out;
  ordered_json manifest;
  manifest["tool"] = "wedgegreen";
  manifest["mode"] = std::string(mode_name(cfg.mode));
  manifest["config_hash"] = "fnv1a64:" + fnv1a_hex(config_text);
  manifest["truncation"] = truncation_json(cfg.truncation);
  manifest["format"] = cfg.format;
  ordered_json warnings = ordered_json::array();
  ordered_json extra;

  Table table;
  switch (cfg.mode) {
    case ScanMode::DecayMap:
    case ScanMode::CdrMap: {
      const auto rows = cfg.mode == ScanMode::DecayMap ? decay_map(cfg) : cdr_map(cfg);
      int masked = 0;
      for (const auto& r : rows) {
        if (!r.in_vacuum) ++masked;
        else if (exceeds(r.tail, r.value, tol)) ++out.unconverged;
      }
      manifest["rows"] = rows.size();
      manifest["masked_rows"] = masked;
      table = map_table(rows);
      break;
    }
    case ScanMode::GreenPoint: {
      const WedgeGeometry wedge = cfg.wedge();
      const PointCart r = PointCart::from(cfg.point);
      const PointCart rp = PointCart::from(cfg.source.value_or(cfg.point));
      const ImGreenTensor g = im_g_full(r, rp, wedge, 2.0 * std::numbers::pi, cfg.truncation);
      const double norm = free_norm();
      table.columns = {"i", "j", "value", "tail"};
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          const double v = g.matrix(i, k) / norm, t = g.last_ring(i, k) / norm;
          if (exceeds(t, v, tol) && std::abs(v) > 1e-12) ++out.unconverged;
          table.rows.push_back({double(i), double(k), v, t});
        }
      manifest["rows"] = 9;
      break;
    }
    case ScanMode::Convergence: {
      const auto rows =
          series_vs_oracle_report(cfg.wedge(), cfg.heights, cfg.truncations, cfg.component);
      table.columns = {"height_lambda", "m_max", "p_max", "series", "oracle", "rel_error", "tail"};
      for (const auto& r : rows) {
        if (exceeds(r.tail, r.series, tol)) ++out.unconverged;
        table.rows.push_back({r.height, double(r.truncation.m_max), double(r.truncation.p_max),
                              r.series, r.oracle, r.rel_error, r.tail});
      }
      manifest["rows"] = rows.size();
      break;
    }
    case ScanMode::StedSpot: {
      std::optional<TabulatedGamma> table_gamma;
      if (cfg.gamma_map.kind == GammaMapKind::Corner) {
        CornerGammaPolicy policy = cfg.gamma_map.corner;
        policy.truncation = cfg.truncation;
        policy.threads = cfg.threads;
        table_gamma = make_corner_gamma_map(policy);
      }
      table.columns = {"R_lambda", "r_lambda", "h", "eta", "P"};
      ordered_json spots = ordered_json::array();
      for (double R : cfg.radii) {
        StedParams params;
        params.hole_radius = R;
        params.n_sin_alpha = cfg.n_sin_alpha;
        params.tau0 = cfg.tau0;
        params.gamma_map = table_gamma ? table_gamma->shifted(R) : constant_gamma(cfg.gamma_map.value);
        const SpotResult s = spot_size(params);
        ordered_json sj;
        sj["R_lambda"] = R;
        sj["delta_r_half"] = s.delta_r_half;
        sj["r_peak"] = s.r_peak;
        sj["p_max"] = s.p_max;
        sj["root_left"] = s.root_left;
        sj["root_right"] = s.root_right;
        sj["left_clipped"] = s.left_clipped;
        if (s.left_clipped)
          warnings.push_back("R=" + format_double(R) + ": half maximum not reached at r=0, left root clipped");
        spots.push_back(std::move(sj));
        for (const auto& row : sted_profile(params, cfg.profile_samples))
          table.rows.push_back({R, row.r, row.h, row.eta, row.p});
      }
      extra["spots"] = spots;
      manifest["rows"] = table.rows.size();
      break;
    }
  }

  if (out.unconverged > 0)
    warnings.push_back(std::to_string(out.unconverged) + " rows with relative tail above " +
                       format_double(tol));
  out.tolerance_failed = cfg.tail_tolerance.has_value() && out.unconverged > 0;

  if (cfg.format == "csv") {
    out.data = table_csv(table);
  } else {
    ordered_json doc;
    doc["mode"] = std::string(mode_name(cfg.mode));
    doc["truncation"] = truncation_json(cfg.truncation);
    for (auto& [k, v] : extra.items()) doc[k] = v;
    const ordered_json t = table_json(table);
    doc["columns"] = t["columns"];
    doc["rows"] = t["rows"];
    out.data = doc.dump(1) + "\n";
  }

  for (auto& [k, v] : extra.items()) manifest[k] = v;
  manifest["tail_tolerance"] = tol;
  manifest["unconverged_rows"] = out.unconverged;
  manifest["warnings"] = std::move(warnings);
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.manifest = manifest.dump(2) + "\n";
  return out;
}

}  // namespace wedgegreen
