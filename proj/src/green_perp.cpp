#include "wedgegreen/green_perp.hpp"

#include "wedgegreen/green_parallel.hpp"
#include "wedgegreen/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wedgegreen {

namespace {

// Everything about one point that is reused across the n-ladder at fixed m.
struct PointWaves {
  double k = 0.0;
  double r = 0.0;
  double x = 0.0;
  double sin_theta = 0.0;
  double sin_mu_phi = 0.0;
  double cos_mu_phi = 0.0;
  Mat3 basis;
  std::vector<specfun::LegendreValue> legendre;
  std::vector<double> j;  // j_{mu+n}(kr), n = 0 .. n_max+1
};

PointWaves prepare(const PointSph& p, const WedgeGeometry& wedge, double k, double mu, int n_max) {
  PointWaves w;
  w.k = k;
  w.r = p.r;
  w.x = k * p.r;
  w.sin_theta = std::sin(p.theta);
  const double phi_local = wedge.local_azimuth(p.phi);
  w.sin_mu_phi = std::sin(mu * phi_local);
  w.cos_mu_phi = std::cos(mu * phi_local);
  w.basis = spherical_basis(p.theta, p.phi);
  w.legendre = specfun::assoc_legendre_ladder(mu, n_max, std::cos(p.theta), specfun::legendre_log_lead(mu));
  w.j = specfun::spherical_j_ladder(mu, n_max + 2, w.x);
  return w;
}

// M and N in the spherical basis at the point, for degree index n. The
// Legendre factor carries an extra 2^mu Gamma(mu+1); log_weight removes it.
void waves_at(const PointWaves& w, double mu, int n, Vec3& M, Vec3& N) {
  const auto& lg = w.legendre[n];
  const double v = mu + n;
  const double T = lg.value;
  const double dT = lg.theta_derivative;
  const double mu_T_over_sin =
      mu == 0.0 ? 0.0 : mu * std::pow(w.sin_theta, mu - 1.0) * lg.reduced;
  const double jv = w.j[n];
  const double jv1 = w.j[n + 1];
  const double radial_scaled = w.k * ((v + 1.0) * jv / w.x - jv1);  // (1/r) d/dr [r j_v(kr)]

  M = Vec3(0.0, -w.k * jv * w.sin_mu_phi * mu_T_over_sin, -w.k * jv * w.cos_mu_phi * dT);
  N = Vec3(jv / w.r * v * (v + 1.0) * w.sin_mu_phi * T, radial_scaled * w.sin_mu_phi * dT,
           radial_scaled * w.cos_mu_phi * mu_T_over_sin);
}

void check_sph(const PointSph& p, const WedgeGeometry& wedge, const char* what) {
  if (!(p.r > 0.0) || !(p.theta > 0.0) || !(p.theta < std::numbers::pi))
    throw std::domain_error(std::string(what) + ": spherical point needs r > 0 and 0 < theta < pi");
  require_vacuum(to_cart(p), wedge, what);
}

double log_z_norm(int m, int n, const WedgeGeometry& wedge) {
  const double mu = wedge.mu(m);
  const double delta = m == 0 ? 2.0 : 1.0;
  return std::log(delta * std::numbers::pi * wedge.vacuum_angle() / (2.0 * (2.0 * mu + 2.0 * n + 1.0))) +
         specfun::log_gamma(n + 1.0) - specfun::log_gamma(2.0 * mu + n + 1.0);
}

}  // namespace

double z_norm(int m, int n, const WedgeGeometry& wedge) {
  if (m < 0 || n < 0) throw std::domain_error("z_norm: indices must be >= 0");
  return std::exp(log_z_norm(m, n, wedge));
}

VectorWaveTerm vector_waves(int m, int n, const WedgeGeometry& wedge, double k,
                            const PointSph& point) {
  if (m < 0 || n < 0) throw std::domain_error("vector_waves: indices must be >= 0");
  if (!(k > 0.0)) throw std::domain_error("vector_waves: k must be > 0");
  check_sph(point, wedge, "vector_waves");
  VectorWaveTerm term;
  term.m = m;
  term.n = n;
  term.mu = wedge.mu(m);
  const PointWaves w = prepare(point, wedge, k, term.mu, n);
  waves_at(w, term.mu, n, term.M_vec, term.N_vec);
  const double unscale = std::exp(-specfun::legendre_log_lead(term.mu));
  term.M_vec *= unscale;
  term.N_vec *= unscale;
  return term;
}

ImGreenTensor im_s_tensor(const PointSph& r, const PointSph& r_prime, const WedgeGeometry& wedge,
                          double k, const Truncation& trunc) {
  trunc.validate();
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("im_s_tensor: k must be > 0");
  check_sph(r, wedge, "im_s_tensor observer");
  check_sph(r_prime, wedge, "im_s_tensor source");

  ImGreenTensor out;
  out.r = to_cart(r);
  out.r_prime = to_cart(r_prime);
  out.k = k;
  const double log_pref = std::log(std::numbers::pi / (2.0 * k));

  for (int m = 0; m <= trunc.m_max; ++m) {
    const double mu = wedge.mu(m);
    const PointWaves a = prepare(r, wedge, k, mu, trunc.p_max);
    const PointWaves b = prepare(r_prime, wedge, k, mu, trunc.p_max);
    const double log_lead = 2.0 * specfun::legendre_log_lead(mu);
    for (int n = 0; n <= trunc.p_max; ++n) {
      if (m == 0 && n == 0) continue;
      const double v = mu + n;
      Vec3 Ma, Na, Mb, Nb;
      waves_at(a, mu, n, Ma, Na);
      waves_at(b, mu, n, Mb, Nb);
      const Vec3 ma = a.basis * Ma, na = a.basis * Na;
      const Vec3 mb = b.basis * Mb, nb = b.basis * Nb;
      const double weight =
          std::exp(log_pref - std::log(v * (v + 1.0)) - log_z_norm(m, n, wedge) - log_lead);
      const Mat3 term = weight * (ma * mb.transpose() + na * nb.transpose());
      out.matrix += term;
      if (m == trunc.m_max || n == trunc.p_max) out.last_ring += term.cwiseAbs();
    }
  }
  return out;
}

ImGreenTensor im_s_tensor(const PointCart& r, const PointCart& r_prime, const WedgeGeometry& wedge,
                          double k, const Truncation& trunc) {
  const double z0 = 0.5 * (r.z + r_prime.z);
  ImGreenTensor out = im_s_tensor(to_sph(PointCart{r.x, r.y, r.z - z0}),
                                  to_sph(PointCart{r_prime.x, r_prime.y, r_prime.z - z0}), wedge,
                                  k, trunc);
  out.r = r;
  out.r_prime = r_prime;
  return out;
}

ImGreenTensor im_g_full(const PointCart& r, const PointCart& r_prime, const WedgeGeometry& wedge,
                        double k, const Truncation& trunc) {
  ImGreenTensor out = im_s_tensor(r, r_prime, wedge, k, trunc);
  const SeriesValue zz = im_p_zz(to_cyl(r_prime), to_cyl(r), k, wedge, trunc);
  out.matrix(2, 2) = zz.value;
  out.last_ring(2, 2) = zz.tail;
  const bool coincident = r.x == r_prime.x && r.y == r_prime.y && r.z == r_prime.z;
  if (coincident) {
    const Mat3 sym = 0.5 * (out.matrix + out.matrix.transpose());
    out.matrix = sym;
  }
  return out;
}

}  // namespace wedgegreen
