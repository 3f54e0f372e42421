#include "wedgegreen/rates.hpp"

#include "wedgegreen/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wedgegreen {

namespace {

double free_norm(double k) { return k / (6.0 * std::numbers::pi); }

double quadratic(const Mat3& m, const Vec3& a, const Vec3& b) { return a.dot(m * b); }

double ring_weight(const Mat3& ring, const Vec3& a, const Vec3& b) {
  return a.cwiseAbs().dot(ring * b.cwiseAbs());
}

}  // namespace

Dipole Dipole::make(const PointCart& position, const Vec3& orientation, double wavelength) {
  Dipole d{position, orientation, wavelength};
  d.validate();
  return d;
}

Dipole Dipole::along(const PointCart& position, const Vec3& direction, double wavelength) {
  const double n = direction.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("Dipole: zero orientation");
  return make(position, direction / n, wavelength);
}

double Dipole::k() const { return 2.0 * std::numbers::pi / wavelength; }

void Dipole::validate() const {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    throw std::domain_error("Dipole: wavelength must be > 0");
  if (!orientation.allFinite() || std::abs(orientation.norm() - 1.0) > 1e-12)
    throw std::domain_error("Dipole: orientation must be a unit vector");
  if (!position.vec().allFinite()) throw std::domain_error("Dipole: position must be finite");
}

RateResult decay_rate(const Dipole& d, const WedgeGeometry& wedge, const Truncation& trunc) {
  d.validate();
  const double k = d.k();
  const ImGreenTensor g = im_g_full(d.position, d.position, wedge, k, trunc);
  const double norm = free_norm(k);
  RateResult out;
  out.normalized_rate = quadratic(g.matrix, d.orientation, d.orientation) / norm;
  out.tail_estimate = ring_weight(g.last_ring, d.orientation, d.orientation) / norm;
  out.components.gamma_a_half = 0.5 * out.normalized_rate;
  return out;
}

RateResult cooperative_rate(const Dipole& donor, const Dipole& acceptor, Symmetry sign,
                            const WedgeGeometry& wedge, const Truncation& trunc,
                            CdrNormalization norm_policy) {
  donor.validate();
  acceptor.validate();
  if (donor.wavelength != acceptor.wavelength)
    throw std::domain_error("cooperative_rate: donor and acceptor wavelengths differ");
  if ((donor.orientation - acceptor.orientation).norm() > 1e-12)
    throw std::domain_error("cooperative_rate: donor and acceptor orientations differ");

  const double k = donor.k();
  const double norm = free_norm(k);
  const Vec3& u = donor.orientation;
  const ImGreenTensor ga = im_g_full(acceptor.position, acceptor.position, wedge, k, trunc);
  const ImGreenTensor gd = im_g_full(donor.position, donor.position, wedge, k, trunc);
  const ImGreenTensor gad = im_g_full(acceptor.position, donor.position, wedge, k, trunc);

  RateResult out;
  out.components.gamma_a_half = 0.5 * quadratic(ga.matrix, u, u) / norm;
  out.components.gamma_d_half = 0.5 * quadratic(gd.matrix, u, u) / norm;
  out.components.gamma_dd = quadratic(gad.matrix, u, u) / norm;
  const double pm = sign == Symmetry::Symmetric ? 1.0 : -1.0;
  double reference = 1.0;
  if (norm_policy == CdrNormalization::VacuumPair) {
    const ImGreenTensor g0 = im_g_free(acceptor.position, donor.position, k);
    reference = 1.0 + pm * quadratic(g0.matrix, u, u) / norm;
    if (!(std::abs(reference) > 1e-12))
      throw std::domain_error("cooperative_rate: vacuum pair reference rate vanishes");
  }
  const double rate =
      out.components.gamma_a_half + out.components.gamma_d_half + pm * out.components.gamma_dd;
  out.normalized_rate = rate / reference;
  out.tail_estimate = (0.5 * ring_weight(ga.last_ring, u, u) + 0.5 * ring_weight(gd.last_ring, u, u) +
                       ring_weight(gad.last_ring, u, u)) /
                      norm / std::abs(reference);
  return out;
}

Vec3 field_of_unit_current(const Vec3& direction, const PointCart& r, const PointCart& r_prime,
                           const WedgeGeometry& wedge, double k, const Truncation& trunc) {
  if (!direction.allFinite() || std::abs(direction.norm() - 1.0) > 1e-12)
    throw std::domain_error("field_of_unit_current: direction must be a unit vector");
  return im_g_full(r, r_prime, wedge, k, trunc).matrix * direction;
}

}  // namespace wedgegreen
