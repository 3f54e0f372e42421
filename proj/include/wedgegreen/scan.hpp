#pragma once

#include "wedgegreen/geometry.hpp"
#include "wedgegreen/oracles.hpp"
#include "wedgegreen/rates.hpp"
#include "wedgegreen/series.hpp"
#include "wedgegreen/sted.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wedgegreen {

enum class ScanMode { DecayMap, CdrMap, GreenPoint, Convergence, StedSpot };

/// Subcommand name ("decay-map", ...) for a mode and back.
std::string_view mode_name(ScanMode mode);
std::optional<ScanMode> mode_from_name(std::string_view name);

/// Invalid configuration; `path()` is a JSON pointer to the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GridSpec {
  double x0 = -2.0, x1 = 2.0;
  double y0 = -2.0, y1 = 2.0;
  double z = 0.0;
  int nx = 101, ny = 101;
};

enum class GammaMapKind { Corner, Constant };

struct GammaMapSpec {
  GammaMapKind kind = GammaMapKind::Corner;
  double value = 1.0;  // Constant only
  CornerGammaPolicy corner{};
};

/// Parsed scan configuration. Lengths are in wavelengths (lambda = 1).
struct ScanConfig {
  ScanMode mode = ScanMode::DecayMap;
  double interior_angle = 1.5707963267948966;
  double face_azimuth = 0.0;
  Truncation truncation{};
  std::string output;
  std::string format = "csv";
  std::optional<double> tail_tolerance;
  unsigned threads = 0;

  // decay-map, cdr-map
  Vec3 orientation = Vec3::UnitY();
  GridSpec grid{};
  // cdr-map
  Vec3 donor = Vec3::Zero();
  Symmetry symmetry = Symmetry::Symmetric;
  CdrNormalization normalization = CdrNormalization::VacuumSingleAtom;
  // green-point
  Vec3 point = Vec3::Zero();
  std::optional<Vec3> source;
  // convergence
  std::vector<double> heights;
  std::vector<Truncation> truncations;
  ReportOrientation component = ReportOrientation::Parallel;
  // sted-spot
  std::vector<double> radii{0.1, 0.2, 0.3, 0.4};
  double n_sin_alpha = 1.0;
  double tau0 = 1.0;
  GammaMapSpec gamma_map{};
  int profile_samples = 201;

  WedgeGeometry wedge() const { return make_wedge(interior_angle, face_azimuth); }
};

/// Parses a JSON document for `mode`. Unknown keys, wrong types and values
/// out of range raise ConfigError. A "mode" key, if present, must match.
ScanConfig parse_scan_config(std::string_view json_text, ScanMode mode);

struct MapRow {
  double x = 0.0, y = 0.0, z = 0.0;
  double value = 0.0;
  double tail = 0.0;
  bool in_vacuum = false;
};

struct ScanOutput {
  /// Dataset file contents (CSV or JSON), free of timing information.
  std::string data;
  /// Run manifest as a JSON document (pretty printed).
  std::string manifest;
  /// Rows whose relative tail exceeds the tolerance (or the default 1e-3 when none is set).
  int unconverged = 0;
  /// True when a tolerance was configured and at least one row exceeded it.
  bool tolerance_failed = false;
};

/// Runs a scan. `config_text` is the effective configuration document; its
/// FNV-1a hash goes into the manifest.
ScanOutput run_scan(const ScanConfig& config, std::string_view config_text);

/// Map scans on their own, for library use. Conductor points carry value NaN
/// and in_vacuum = false.
std::vector<MapRow> decay_map(const ScanConfig& config);
std::vector<MapRow> cdr_map(const ScanConfig& config);

/// Shortest decimal string that round-trips to the same double ("nan" for NaN).
std::string format_double(double v);

/// 64-bit FNV-1a hash as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace wedgegreen
