#pragma once

#include <span>
#include <vector>

namespace wedgegreen::specfun {

/// Largest argument accepted by the Bessel routines. Every physical
/// configuration in this library stays well below it (kR of a few hundred at
/// most); anything beyond is treated as a caller error.
inline constexpr double kMaxBesselArgument = 1000.0;

double gamma(double x);
double log_gamma(double x);

/// Cylindrical Bessel function of the first kind, J_order(x), for real
/// order >= 0 and 0 <= x <= kMaxBesselArgument.
/// Throws std::domain_error for negative/non-finite input and
/// std::range_error for x beyond the supported range.
double bessel_j(double order, double x);

/// J_{order0 + j}(x) for j = 0 .. count-1 in one pass. The top two orders are
/// evaluated directly and the rest follow from downward recurrence, which is
/// the stable direction for J.
std::vector<double> bessel_j_ladder(double order0, int count, double x);

/// Spherical Bessel function j_order(x) = sqrt(pi/(2x)) J_{order+1/2}(x), x > 0.
double spherical_j(double order, double x);

/// j_{order0 + j}(x) for j = 0 .. count-1.
std::vector<double> spherical_j_ladder(double order0, int count, double x);

/// (1/r) d/dr [ r j_order(k r) ], evaluated analytically through
/// j'_v(x) = (v/x) j_v(x) - j_{v+1}(x). Requires k > 0 and r > 0.
double spherical_j_r_derivative_scaled(double order, double k, double r);

/// Associated Legendre function of degree mu+n and order -mu,
/// T(x) = P^{-mu}_{mu+n}(x), together with its derivative in theta where
/// x = cos(theta).
struct LegendreValue {
  double value = 0.0;
  double theta_derivative = 0.0;
  /// Polynomial factor F with T = sin(theta)^mu * F; regular at both poles.
  double reduced = 0.0;
};

/// Throws std::domain_error when |x| > 1 or mu < 0.
LegendreValue assoc_legendre(double mu, int n, double x);

/// All degrees mu+n for n = 0 .. n_max at fixed order -mu. Seeded by the
/// closed form at n = 0 and advanced with the three-term recurrence in degree.
/// Every returned quantity is multiplied by exp(log_scale), which keeps large
/// orders representable.
std::vector<LegendreValue> assoc_legendre_ladder(double mu, int n_max, double x,
                                                 double log_scale = 0.0);

/// log of 2^mu Gamma(mu + 1), the inverse of the leading Legendre coefficient.
double legendre_log_lead(double mu);

}  // namespace wedgegreen::specfun
