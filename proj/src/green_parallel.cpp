#include "wedgegreen/green_parallel.hpp"

#include "wedgegreen/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wedgegreen {

namespace {

struct ParallelSums {
  SeriesValue pi_z;  // Im g / k^2
  SeriesValue p_zz;  // (k^2 + d_z^2) Im g / k^2
};

ParallelSums parallel_sums(const PointCyl& src, const PointCyl& obs, double k,
                           const WedgeGeometry& wedge, const Truncation& trunc) {
  trunc.validate();
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("im_pi_z: k must be > 0");
  require_vacuum(to_cart(src), wedge, "im_pi_z source");
  require_vacuum(to_cart(obs), wedge, "im_pi_z observer");

  const double nu = wedge.nu();
  const double phi_s = wedge.local_azimuth(src.phi);
  const double phi_o = wedge.local_azimuth(obs.phi);
  const double s = obs.z - src.z;
  const double R = std::sqrt(src.rho * src.rho + obs.rho * obs.rho + s * s);
  const double kR = k * R;
  const double log_ratio = std::log(k * src.rho * obs.rho / (2.0 * R));
  const double pref = std::sqrt(2.0 * std::numbers::pi * k / R) / (2.0 * std::numbers::pi * nu);
  const double along = (s / R) * (s / R);
  const double across = (R * R - s * s) / (R * R * R);
  const double k2 = k * k;

  std::vector<double> log_fact(static_cast<std::size_t>(trunc.p_max) + 1);
  for (int p = 0; p <= trunc.p_max; ++p) log_fact[p] = specfun::log_gamma(p + 1.0);

  ParallelSums out;
  for (int m = 1; m <= trunc.m_max; ++m) {
    const double mu = m / nu;
    const double angular = std::sin(mu * phi_s) * std::sin(mu * phi_o);
    const auto J = specfun::bessel_j_ladder(mu + 0.5, 2 * trunc.p_max + 2, kR);
    for (int p = 0; p <= trunc.p_max; ++p) {
      const double b = mu + 2.0 * p;
      const double a = b + 0.5;
      const double w = pref * angular *
                       std::exp(b * log_ratio - log_fact[p] - specfun::log_gamma(mu + p + 1.0));
      const double ja = J[2 * p], ja1 = J[2 * p + 1];
      const double f = w * ja;
      const double df = -k * w * ja1;
      const double d2f = -k * w * (k * ja - (2.0 * a + 1.0) * ja1 / R);
      const double d2s = d2f * along + df * across;

      const double pi_term = f / k2;
      const double zz_term = (k2 * f + d2s) / k2;
      out.pi_z.value += pi_term;
      out.p_zz.value += zz_term;
      if (m == trunc.m_max || p == trunc.p_max) {
        out.pi_z.tail += std::abs(pi_term);
        out.p_zz.tail += std::abs(zz_term);
      }
    }
  }
  return out;
}

}  // namespace

SeriesValue im_pi_z(const PointCyl& src, const PointCyl& obs, double k, const WedgeGeometry& wedge,
                    const Truncation& trunc) {
  return parallel_sums(src, obs, k, wedge, trunc).pi_z;
}

SeriesValue im_p_zz(const PointCyl& src, const PointCyl& obs, double k, const WedgeGeometry& wedge,
                    const Truncation& trunc) {
  return parallel_sums(src, obs, k, wedge, trunc).p_zz;
}

}  // namespace wedgegreen
