#pragma once

#include "wedgegreen/geometry.hpp"
#include "wedgegreen/green_perp.hpp"
#include "wedgegreen/series.hpp"

namespace wedgegreen {

/// Point emitter. Lengths share the unit of `wavelength`.
struct Dipole {
  PointCart position;
  Vec3 orientation = Vec3::UnitZ();
  double wavelength = 1.0;

  /// Throws std::domain_error unless |orientation| = 1 within 1e-12 and
  /// wavelength > 0.
  static Dipole make(const PointCart& position, const Vec3& orientation, double wavelength = 1.0);
  /// Normalises the orientation first.
  static Dipole along(const PointCart& position, const Vec3& direction, double wavelength = 1.0);

  double k() const;
  void validate() const;
};

struct RateComponents {
  double gamma_a_half = 0.0;
  double gamma_d_half = 0.0;
  double gamma_dd = 0.0;
};

struct RateResult {
  double normalized_rate = 0.0;
  double tail_estimate = 0.0;
  RateComponents components;
};

/// Gamma / Gamma0 = d.Im G(r, r).d / (k / 6 pi).
RateResult decay_rate(const Dipole& d, const WedgeGeometry& wedge, const Truncation& trunc = {});

enum class Symmetry { Symmetric, Antisymmetric };

/// Reference rate the cooperative rate is divided by.
enum class CdrNormalization {
  VacuumSingleAtom,  // Gamma0
  VacuumPair,        // Gamma0 + Gamma_dd of the same pair in free space
};

/// Gamma^C / Gamma^C_0 with Gamma^C = Gamma_A/2 + Gamma_D/2 +- Gamma_dd, every
/// piece measured in units of Gamma0. Components are always filled in.
/// Throws std::domain_error for differing wavelengths or orientations, and for
/// a VacuumPair reference that vanishes.
RateResult cooperative_rate(const Dipole& donor, const Dipole& acceptor, Symmetry sign,
                            const WedgeGeometry& wedge, const Truncation& trunc = {},
                            CdrNormalization norm = CdrNormalization::VacuumSingleAtom);

/// Im G(r, r') w, the imaginary field at r of a unit current along w at r'.
Vec3 field_of_unit_current(const Vec3& direction, const PointCart& r, const PointCart& r_prime,
                           const WedgeGeometry& wedge, double k, const Truncation& trunc = {});

}  // namespace wedgegreen
