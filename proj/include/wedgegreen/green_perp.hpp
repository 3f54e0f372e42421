#pragma once

#include "wedgegreen/geometry.hpp"
#include "wedgegreen/series.hpp"

namespace wedgegreen {

/// Imaginary dyadic Green's tensor in the global Cartesian basis, units of
/// 1/length (free-space coincidence value k/(6 pi) times identity).
struct ImGreenTensor {
  Mat3 matrix = Mat3::Zero();
  /// Contribution of the outermost ring of terms (m == m_max or n == n_max),
  /// same units as `matrix`.
  Mat3 last_ring = Mat3::Zero();
  PointCart r;
  PointCart r_prime;
  double k = 0.0;

  double tail_estimate() const { return last_ring.cwiseAbs().maxCoeff(); }
};

/// Normalisation of the wedge spherical harmonics,
///   Z = (1 + delta_m0) pi theta_v n! / (2 (2 mu + 2n + 1) Gamma(2 mu + n + 1)),
/// with theta_v the vacuum opening and mu = m pi / theta_v.
double z_norm(int m, int n, const WedgeGeometry& wedge);

/// Regular vector spherical waves of the wedge at one point, components in
/// the local spherical basis (r, theta, phi).
///
///   M = k j_v(kr) m_bar,  m_bar = -mu sin(mu phi) T / sin(theta) theta_hat - cos(mu phi) dT/dtheta phi_hat
///   N = j_v(kr)/r l_bar + (1/r) d/dr[r j_v(kr)] n_bar,
///   n_bar = sin(mu phi) dT/dtheta theta_hat + mu cos(mu phi) T / sin(theta) phi_hat,
///   l_bar = v (v+1) sin(mu phi) T r_hat,
///
/// with v = mu + n, T = P^{-mu}_{v}(cos theta) and phi measured from the first
/// face. M comes from the Neumann (cos) scalar family and N from the
/// Dirichlet (sin) family, so both have vanishing tangential components on
/// the faces.
struct VectorWaveTerm {
  int m = 0;
  int n = 0;
  double mu = 0.0;
  Vec3 M_vec = Vec3::Zero();
  Vec3 N_vec = Vec3::Zero();
};

/// Requires r > 0 and 0 < theta < pi (std::domain_error otherwise).
VectorWaveTerm vector_waves(int m, int n, const WedgeGeometry& wedge, double k,
                            const PointSph& point);

/// Two-point imaginary Green's tensor from the spherical vector-wave expansion,
///   Im G(r, r') = (pi / 2k) sum_{m,n} [M(r) (x) M(r') + N(r) (x) N(r')] / (v (v+1) Z_{mu n}),
/// where the spherical coordinates of both points share an origin on the edge.
/// The (m, n) = (0, 0) term vanishes identically and is skipped.
ImGreenTensor im_s_tensor(const PointSph& r, const PointSph& r_prime, const WedgeGeometry& wedge,
                          double k, const Truncation& trunc = {});

/// Same as above for Cartesian points; the expansion origin is placed on the
/// edge at the mean height of the two points.
ImGreenTensor im_s_tensor(const PointCart& r, const PointCart& r_prime, const WedgeGeometry& wedge,
                          double k, const Truncation& trunc = {});

/// Full imaginary Green's tensor: the zz entry from the cylindrical series
/// (im_p_zz), every other entry from the spherical expansion. At coincidence
/// the result is symmetrised exactly.
ImGreenTensor im_g_full(const PointCart& r, const PointCart& r_prime, const WedgeGeometry& wedge,
                        double k, const Truncation& trunc = {});

}  // namespace wedgegreen
