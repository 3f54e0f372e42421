#include "wedgegreen/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wedgegreen::specfun {

namespace {

void check_order(double order, const char* who) {
  if (!std::isfinite(order) || order < 0.0)
    throw std::domain_error(std::string(who) + ": order must be finite and >= 0, got " +
                            std::to_string(order));
}

void check_argument(double x, const char* who) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error(std::string(who) + ": argument must be finite and >= 0, got " +
                            std::to_string(x));
  if (x > kMaxBesselArgument)
    throw std::range_error(std::string(who) + ": argument " + std::to_string(x) +
                           " exceeds supported range " + std::to_string(kMaxBesselArgument));
}

// Smallest seed magnitude for which downward recurrence is still trusted.
constexpr double kRecurrenceFloor = 1e-250;

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("gamma: argument must be positive and finite, got " + std::to_string(x));
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("log_gamma: argument must be positive and finite, got " +
                            std::to_string(x));
  return boost::math::lgamma(x);
}

double bessel_j(double order, double x) {
  check_order(order, "bessel_j");
  check_argument(x, "bessel_j");
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  return boost::math::cyl_bessel_j(order, x);
}

std::vector<double> bessel_j_ladder(double order0, int count, double x) {
  check_order(order0, "bessel_j_ladder");
  check_argument(x, "bessel_j_ladder");
  if (count <= 0) return {};
  std::vector<double> out(static_cast<std::size_t>(count));
  if (x == 0.0 || count <= 2) {
    for (int j = 0; j < count; ++j) out[j] = bessel_j(order0 + j, x);
    return out;
  }
  const int top = count - 1;
  out[top] = boost::math::cyl_bessel_j(order0 + top, x);
  out[top - 1] = boost::math::cyl_bessel_j(order0 + top - 1, x);
  if (std::abs(out[top]) < kRecurrenceFloor || std::abs(out[top - 1]) < kRecurrenceFloor) {
    for (int j = 0; j < count - 2; ++j) out[j] = boost::math::cyl_bessel_j(order0 + j, x);
    return out;
  }
  for (int j = top - 1; j >= 1; --j) {
    const double nu = order0 + j;
    out[j - 1] = (2.0 * nu / x) * out[j] - out[j + 1];
  }
  return out;
}

double spherical_j(double order, double x) {
  check_order(order, "spherical_j");
  if (!(x > 0.0))
    throw std::domain_error("spherical_j: argument must be > 0, got " + std::to_string(x));
  check_argument(x, "spherical_j");
  return std::sqrt(std::numbers::pi / (2.0 * x)) * boost::math::cyl_bessel_j(order + 0.5, x);
}

std::vector<double> spherical_j_ladder(double order0, int count, double x) {
  if (!(x > 0.0))
    throw std::domain_error("spherical_j_ladder: argument must be > 0, got " + std::to_string(x));
  auto out = bessel_j_ladder(order0 + 0.5, count, x);
  const double scale = std::sqrt(std::numbers::pi / (2.0 * x));
  for (double& v : out) v *= scale;
  return out;
}

double spherical_j_r_derivative_scaled(double order, double k, double r) {
  if (!(k > 0.0) || !(r > 0.0))
    throw std::domain_error("spherical_j_r_derivative_scaled: k and r must be > 0");
  const double x = k * r;
  const double j = spherical_j(order, x);
  const double j_next = spherical_j(order + 1.0, x);
  return k * ((order + 1.0) * j / x - j_next);
}

std::vector<LegendreValue> assoc_legendre_ladder(double mu, int n_max, double x, double log_scale) {
  check_order(mu, "assoc_legendre");
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("assoc_legendre: |x| must be <= 1, got " + std::to_string(x));
  if (n_max < 0) return {};

  // Work with G_n = F_n / F_0, where T_n = sin^mu(theta) * F_n and
  // F_0 = 1 / (2^mu Gamma(mu+1)). G obeys the same recurrence as T.
  const std::size_t count = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> g(count + 1), dg(count + 1);
  g[0] = 1.0;
  dg[0] = 0.0;
  for (std::size_t n = 0; n + 1 <= count; ++n) {
    const double nd = static_cast<double>(n);
    const double v = mu + nd;
    const double prev = n > 0 ? g[n - 1] : 0.0;
    const double dprev = n > 0 ? dg[n - 1] : 0.0;
    g[n + 1] = ((2.0 * v + 1.0) * x * g[n] - nd * prev) / (2.0 * mu + nd + 1.0);
    dg[n + 1] = ((2.0 * v + 1.0) * (g[n] + x * dg[n]) - nd * dprev) / (2.0 * mu + nd + 1.0);
  }

  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  const double log_f0 = -mu * std::numbers::ln2 - boost::math::lgamma(mu + 1.0) + log_scale;
  const double f0 = std::exp(log_f0);
  // sin^mu * F_0, sin^(mu-1) * F_0 and sin^(mu+1) * F_0 without forming sin^mu alone.
  double smu = 0.0, smu_m1 = 0.0, smu_p1 = 0.0;
  if (s > 0.0) {
    const double ls = std::log(s);
    smu = std::exp(mu * ls + log_f0);
    smu_m1 = std::exp((mu - 1.0) * ls + log_f0);
    smu_p1 = std::exp((mu + 1.0) * ls + log_f0);
  } else {
    smu = mu == 0.0 ? f0 : 0.0;
    if (mu == 1.0)
      smu_m1 = f0;
    else if (mu > 1.0 || mu == 0.0)
      smu_m1 = 0.0;
    else
      smu_m1 = std::numeric_limits<double>::infinity();
  }

  std::vector<LegendreValue> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    LegendreValue& lv = out[n];
    lv.reduced = f0 * g[n];
    lv.value = smu * g[n];
    double pole_term = 0.0;
    if (mu != 0.0) {
      const double c = x * g[n];
      pole_term = c == 0.0 ? 0.0 : mu * smu_m1 * c;
    }
    lv.theta_derivative = pole_term - smu_p1 * dg[n];
  }
  return out;
}

double legendre_log_lead(double mu) {
  check_order(mu, "legendre_log_lead");
  return mu * std::numbers::ln2 + boost::math::lgamma(mu + 1.0);
}

LegendreValue assoc_legendre(double mu, int n, double x) {
  if (n < 0) throw std::domain_error("assoc_legendre: n must be >= 0");
  return assoc_legendre_ladder(mu, n, x).back();
}

}  // namespace wedgegreen::specfun
