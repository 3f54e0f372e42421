#pragma once

#include "wedgegreen/geometry.hpp"
#include "wedgegreen/series.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace wedgegreen {

/// Normalised decay rate Gamma/Gamma0 as a function of the radial coordinate r.
using GammaMap = std::function<double(double r)>;

/// Ring-mask spot model. All lengths are in the unit of `wavelength`.
struct StedParams {
  double hole_radius = 0.1;
  double n_sin_alpha = 1.0;
  /// Lifetime window in units of 1/Gamma0.
  double tau0 = 1.0;
  double wavelength = 1.0;
  GammaMap gamma_map;

  /// Throws std::domain_error for R <= 0, n sin(alpha) outside (0, 1.5],
  /// tau0 <= 0, wavelength <= 0 or a missing gamma map.
  void validate() const;
  /// Half-width of the central lobe of the beam, lambda / (2 n sin(alpha)).
  double lobe_half_width() const;
};

/// h(r) = cos^2[(pi/lambda)(r - R) n sin(alpha)] exp(-(r - R)^2 / (2 R^2)), peak 1 at r = R.
double beam_profile(double r, const StedParams& params);

/// exp(-gamma_map(r) tau0). Throws std::domain_error if the map is undefined at r.
double survival(double r, const StedParams& params);

/// P(r) = h(r) exp(-gamma_map(r) tau0).
double detection_probability(double r, const StedParams& params);

struct SpotResult {
  /// Half the distance between the two half-maximum points.
  double delta_r_half = 0.0;
  double p_max = 0.0;
  double r_peak = 0.0;
  /// Left and right half-maximum radii.
  double root_left = 0.0;
  double root_right = 0.0;
  /// True when P(0) is still above half maximum, so the left root is pinned at r = 0.
  bool left_clipped = false;
};

/// Spot size of the main lobe r in [max(0, R - w), R + w], w = lobe_half_width().
/// A coarse scan asserts a single maximum, the peak is refined by golden
/// section and each flank root by bisection to |P - p_max/2| <= 1e-10 p_max.
/// Throws std::runtime_error listing the local maxima if P is not unimodal.
SpotResult spot_size(const StedParams& params);

struct StedProfileRow {
  double r = 0.0;
  double h = 0.0;
  double eta = 0.0;
  double p = 0.0;
};

/// Samples of h, exp(-Gamma tau0) and P across the main lobe.
std::vector<StedProfileRow> sted_profile(const StedParams& params, int samples);

/// Gamma/Gamma0 sampled on a uniform grid in x = r - R and linearly interpolated.
class TabulatedGamma {
 public:
  TabulatedGamma(double x_min, double x_max, std::vector<double> values);

  double operator()(double x) const;
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  const std::vector<double>& values() const { return values_; }

  /// Map in r for a hole of radius R, i.e. r -> table(r - R).
  GammaMap shifted(double hole_radius) const;

 private:
  double x_min_;
  double x_max_;
  std::vector<double> values_;
};

/// How the mask edge is turned into a radial decay-rate profile.
///
/// The mask plate is modelled as the conductor of a wedge whose edge is the
/// inner rim of the ring: the conductor occupies azimuths (0, interior_angle),
/// so its lower face lies on the +x axis (for pi/2 it fills x > 0, y > 0).
/// The sample line is y = -mask_height and the dipole points along the ring
/// axis (y).
/// The profile is sampled at `samples` points of x = r - R in [x_min, x_max].
struct CornerGammaPolicy {
  double interior_angle = 1.5707963267948966;
  double mask_height = 0.1;
  double x_min = -1.0;
  double x_max = 1.0;
  int samples = 201;
  Vec3 orientation = Vec3::UnitY();
  Truncation truncation{};
  unsigned threads = 0;
};

TabulatedGamma make_corner_gamma_map(const CornerGammaPolicy& policy = {});

/// gamma_map returning the same value everywhere.
GammaMap constant_gamma(double value);

}  // namespace wedgegreen
