#pragma once

#include <Eigen/Core>

namespace wedgegreen {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct PointCart {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static PointCart from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

struct PointCyl {
  double rho = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

struct PointSph {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// Exact conversions. Azimuths are returned in (-pi, pi]; the polar angle of the
// origin is taken as 0.
PointCyl to_cyl(const PointCart& p);
PointCyl to_cyl(const PointSph& p);
PointSph to_sph(const PointCart& p);
PointSph to_sph(const PointCyl& p);
PointCart to_cart(const PointCyl& p);
PointCart to_cart(const PointSph& p);

/// Perfectly conducting wedge with its edge on the z-axis.
///
/// The conductor fills an interior angle omega0; the vacuum sector is the
/// complementary opening theta_v = 2*pi - omega0, spanning azimuths
/// (face_azimuth, face_azimuth + theta_v). Series indices follow from the
/// vacuum opening: nu = theta_v / pi for the cylindrical expansion and
/// mu_m = m * pi / theta_v for the spherical one, so the Dirichlet zeros of
/// sin(mu_m * phi_local) sit exactly on the two faces.
class WedgeGeometry {
 public:
  /// Throws std::domain_error unless 0 < interior_angle < 2*pi.
  static WedgeGeometry make(double interior_angle, double face_azimuth = 0.0);

  double interior_angle() const { return interior_angle_; }
  double vacuum_angle() const { return vacuum_angle_; }
  double nu() const { return nu_; }
  double face_azimuth() const { return face_azimuth_; }
  double mu(int m) const;

  /// Azimuth measured from the first face, wrapped to [0, 2*pi).
  double local_azimuth(double phi) const;
  /// Rotation taking wedge-local Cartesian components to global ones.
  Mat3 local_to_global() const;

 private:
  WedgeGeometry(double interior, double face0);

  double interior_angle_;
  double vacuum_angle_;
  double nu_;
  double face_azimuth_;
};

inline WedgeGeometry make_wedge(double interior_angle, double face_azimuth = 0.0) {
  return WedgeGeometry::make(interior_angle, face_azimuth);
}

struct VacuumCheck {
  bool inside = false;
  /// Distance to the nearest conductor face, or to the edge when that is closer.
  double face_distance = 0.0;
};

/// Faces are closed: a point exactly on a face (or on the edge) is not in vacuum.
VacuumCheck in_vacuum(const PointCart& p, const WedgeGeometry& wedge);
VacuumCheck in_vacuum(const PointCyl& p, const WedgeGeometry& wedge);

/// Throws std::domain_error naming `what` if the point is not strictly in vacuum.
void require_vacuum(const PointCart& p, const WedgeGeometry& wedge, const char* what);

/// Columns are r-hat, theta-hat, phi-hat at (theta, phi) in Cartesian components.
Mat3 spherical_basis(double theta, double phi);

}  // namespace wedgegreen
