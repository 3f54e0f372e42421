#include "wedgegreen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wedgegreen {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance from a point at cylindrical radius rho to a face ray separated from
// it by `angle` (in [0, pi]).
double distance_to_ray(double rho, double angle) {
  return angle < std::numbers::pi / 2 ? rho * std::sin(angle) : rho;
}

double angular_separation(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > std::numbers::pi ? kTwoPi - d : d;
}
}  // namespace

PointCyl to_cyl(const PointCart& p) { return {std::hypot(p.x, p.y), std::atan2(p.y, p.x), p.z}; }

PointCyl to_cyl(const PointSph& p) {
  return {p.r * std::sin(p.theta), p.phi, p.r * std::cos(p.theta)};
}

PointSph to_sph(const PointCart& p) {
  const double rho = std::hypot(p.x, p.y);
  return {std::hypot(rho, p.z), std::atan2(rho, p.z), std::atan2(p.y, p.x)};
}

PointSph to_sph(const PointCyl& p) {
  return {std::hypot(p.rho, p.z), std::atan2(p.rho, p.z), p.phi};
}

PointCart to_cart(const PointCyl& p) {
  return {p.rho * std::cos(p.phi), p.rho * std::sin(p.phi), p.z};
}

PointCart to_cart(const PointSph& p) {
  const double rho = p.r * std::sin(p.theta);
  return {rho * std::cos(p.phi), rho * std::sin(p.phi), p.r * std::cos(p.theta)};
}

WedgeGeometry::WedgeGeometry(double interior, double face0)
    : interior_angle_(interior),
      vacuum_angle_(kTwoPi - interior),
      nu_((kTwoPi - interior) / std::numbers::pi),
      face_azimuth_(face0) {}

WedgeGeometry WedgeGeometry::make(double interior_angle, double face_azimuth) {
  if (!std::isfinite(interior_angle) || !(interior_angle > 0.0) || !(interior_angle < kTwoPi))
    throw std::domain_error("wedge interior angle must lie in (0, 2*pi), got " +
                            std::to_string(interior_angle));
  if (!std::isfinite(face_azimuth)) throw std::domain_error("wedge face azimuth must be finite");
  return WedgeGeometry(interior_angle, face_azimuth);
}

double WedgeGeometry::mu(int m) const { return m * std::numbers::pi / vacuum_angle_; }

double WedgeGeometry::local_azimuth(double phi) const {
  double a = std::fmod(phi - face_azimuth_, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

Mat3 WedgeGeometry::local_to_global() const {
  const double c = std::cos(face_azimuth_), s = std::sin(face_azimuth_);
  Mat3 rot;
  rot << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return rot;
}

VacuumCheck in_vacuum(const PointCyl& p, const WedgeGeometry& wedge) {
  VacuumCheck out;
  if (!(p.rho > 0.0)) return out;
  const double local = wedge.local_azimuth(p.phi);
  out.inside = local > 0.0 && local < wedge.vacuum_angle();
  const double to_first = angular_separation(local, 0.0);
  const double to_second = angular_separation(local, wedge.vacuum_angle());
  out.face_distance =
      std::min(distance_to_ray(p.rho, to_first), distance_to_ray(p.rho, to_second));
  return out;
}

VacuumCheck in_vacuum(const PointCart& p, const WedgeGeometry& wedge) {
  return in_vacuum(to_cyl(p), wedge);
}

void require_vacuum(const PointCart& p, const WedgeGeometry& wedge, const char* what) {
  if (!(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z)))
    throw std::domain_error(std::string(what) + ": point has non-finite coordinates");
  if (!in_vacuum(p, wedge).inside)
    throw std::domain_error(std::string(what) + ": point (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ", " + std::to_string(p.z) +
                            ") is not strictly inside the vacuum sector");
}

Mat3 spherical_basis(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  Mat3 b;
  b.col(0) = Vec3(st * cp, st * sp, ct);
  b.col(1) = Vec3(ct * cp, ct * sp, -st);
  b.col(2) = Vec3(-sp, cp, 0.0);
  return b;
}

}  // namespace wedgegreen
