#pragma once

#include "wedgegreen/geometry.hpp"
#include "wedgegreen/green_perp.hpp"
#include "wedgegreen/series.hpp"

#include <vector>

namespace wedgegreen {

/// Imaginary part of the homogeneous-space dyadic Green's tensor,
///   Im G0 = k/(4 pi) [ (j0(x) - j1(x)/x) I + j2(x) u u^T ],  x = k |r - r'|,
/// with u the unit separation. The coincidence value is k/(6 pi) I.
/// Throws std::domain_error unless k > 0.
ImGreenTensor im_g_free(const PointCart& r, const PointCart& r_prime, double k);

/// A flat perfect conductor filling the half-space (p - origin) . normal < 0.
struct HalfSpaceFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();

  /// Throws std::domain_error for a zero or non-finite normal.
  static HalfSpaceFrame make(const Vec3& origin, const Vec3& normal);

  /// Mirror reflection I - 2 n n^T (involution, determinant -1).
  Mat3 reflection() const;
  /// Signed height above the mirror.
  double height(const PointCart& p) const;
  PointCart mirror(const PointCart& p) const;
};

/// Image construction for a PEC mirror: the image of a dipole p at r' sits at
/// the mirrored point and carries -R p, so
///   Im G = Im G0(r, r') - Im G0(r, R r') R.
/// Both points must lie strictly above the mirror (std::domain_error otherwise).
ImGreenTensor im_g_halfspace(const PointCart& r, const PointCart& r_prime, double k,
                             const HalfSpaceFrame& frame);

/// The mirror y = 0 with vacuum at y > 0, which coincides with the wedge of
/// interior angle pi and first face at azimuth 0.
HalfSpaceFrame halfspace_frame_for(const WedgeGeometry& wedge);

enum class ReportOrientation { Parallel, Perpendicular };

struct ConvergenceRow {
  double height = 0.0;  // in wavelengths
  Truncation truncation;
  double series = 0.0;  // normalised rate from the wedge series
  double oracle = 0.0;  // normalised rate from the image construction
  double rel_error = 0.0;
  double tail = 0.0;  // last-ring magnitude, normalised like the rate
};

/// Normalised decay rate of a dipole at height h above the pi-wedge (point
/// (0, h, 0) in wavelengths, lambda = 1) from the series and from the image
/// oracle, for every (height, truncation) pair. Parallel means the dipole
/// points along the edge (z) and uses the cylindrical series; Perpendicular
/// points along x and uses the full tensor.
/// Throws std::domain_error unless the wedge has interior angle pi.
std::vector<ConvergenceRow> series_vs_oracle_report(const WedgeGeometry& wedge,
                                                    const std::vector<double>& heights,
                                                    const std::vector<Truncation>& truncations,
                                                    ReportOrientation orientation);

}  // namespace wedgegreen
