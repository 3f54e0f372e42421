#pragma once

#include "wedgegreen/geometry.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kK = 2.0 * kPi;  // wavelength 1
inline constexpr double kFreeNorm = kK / (6.0 * kPi);

inline double rel_err(double a, double b) {
  const double s = std::abs(b);
  return s == 0.0 ? std::abs(a) : std::abs(a - b) / s;
}

/// Ascending power series for J_order(x) accumulated in binary128. The
/// leading factor (x/2)^order / Gamma(order+1) is formed in long double.
inline double bessel_series(double order, double x) {
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  const long double lead =
      std::exp(static_cast<long double>(order) * std::log(static_cast<long double>(x) / 2.0L) -
               std::lgamma(static_cast<long double>(order) + 1.0L));
  const __float128 q = static_cast<__float128>(x) * x / 4;
  __float128 term = 1, sum = 1;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (static_cast<__float128>(k) * (k + static_cast<__float128>(order)));
    sum += term;
    const __float128 a = term < 0 ? -term : term;
    const __float128 s = sum < 0 ? -sum : sum;
    if (k > x && a < s * static_cast<__float128>(1e-30)) break;
  }
  return static_cast<double>(static_cast<__float128>(lead) * sum);
}

/// Five-point central difference.
inline double d5(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Uniform random point strictly inside the vacuum sector, at distance
/// [rho_min, rho_max] from the edge and angular margin `margin` from both faces.
inline wedgegreen::PointCart random_vacuum_point(std::mt19937_64& rng, const wedgegreen::WedgeGeometry& w,
                                                 double rho_min, double rho_max, double margin,
                                                 double z_span = 0.3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = rho_min + (rho_max - rho_min) * u(rng);
  const double phi = w.face_azimuth() + margin + (w.vacuum_angle() - 2 * margin) * u(rng);
  const double z = z_span * (2 * u(rng) - 1);
  return wedgegreen::to_cart(wedgegreen::PointCyl{rho, phi, z});
}

}  // namespace testsupport
