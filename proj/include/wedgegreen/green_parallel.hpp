#pragma once

#include "wedgegreen/geometry.hpp"
#include "wedgegreen/series.hpp"

namespace wedgegreen {

/// Imaginary part of the z-directed Hertz potential of an edge-parallel unit
/// source, normalised so that Im G_zz = (k^2 + d^2/dz^2) Im Pi_z. With this
/// normalisation Im Pi_z = Im g / k^2, g being the scalar Dirichlet Green's
/// function of the wedge ((nabla^2 + k^2) g = -delta). The eps, Z prefactors
/// of the engineering form drop out of every normalised rate.
///
///   Im g = 1/(2 pi nu) sqrt(2 pi k / R1)
///          * sum_m sin(m phi'/nu) sin(m phi/nu)
///            * sum_p J_{m/nu+2p+1/2}(k R1) / (p! Gamma(m/nu+p+1)) (k rho rho' / (2 R1))^{m/nu+2p}
///
/// with R1^2 = rho^2 + rho'^2 + (z - z')^2 and azimuths measured from the
/// first face. The series is symmetric in source and observer term by term.
///
/// The inner sum needs roughly p ~ k rho / 2 terms to converge, and loses
/// digits to cancellation once k rho is beyond ~40; check `tail`.
///
/// Both points must be strictly in vacuum (std::domain_error otherwise).
SeriesValue im_pi_z(const PointCyl& src, const PointCyl& obs, double k, const WedgeGeometry& wedge,
                    const Truncation& trunc = {});

/// Im P_zz = (k^2 + d^2/dz^2) Im Pi_z, i.e. the zz entry of Im G sourced by an
/// edge-parallel dipole. Units of 1/length; the free-space coincidence value
/// is k/(6 pi).
///
/// The z-derivative is taken analytically term by term: every term is
/// C R1^{-a} J_a(k R1), a = m/nu + 2p + 1/2, and
///   d/dR [R^{-a} J_a(kR)] = -k R^{-a} J_{a+1}(kR).
SeriesValue im_p_zz(const PointCyl& src, const PointCyl& obs, double k, const WedgeGeometry& wedge,
                    const Truncation& trunc = {});

}  // namespace wedgegreen
