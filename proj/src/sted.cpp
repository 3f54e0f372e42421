#include "wedgegreen/sted.hpp"

#include "wedgegreen/parallel.hpp"
#include "wedgegreen/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wedgegreen {

namespace {

constexpr int kCoarseSamples = 4001;
constexpr double kRootTolerance = 1e-10;

double golden_max(const StedParams& p, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = detection_probability(c, p), fd = detection_probability(d, p);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = detection_probability(c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = detection_probability(d, p);
    }
  }
  return 0.5 * (a + b);
}

// Root of P - half between `inside` (P >= half) and `outside` (P < half).
double bisect_half(const StedParams& p, double inside, double outside, double half, double p_max) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inside + outside);
    const double v = detection_probability(mid, p);
    if (std::abs(v - half) <= kRootTolerance * p_max) return mid;
    if (v >= half)
      inside = mid;
    else
      outside = mid;
    if (inside == mid && outside == mid) break;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

void StedParams::validate() const {
  if (!(hole_radius > 0.0) || !std::isfinite(hole_radius))
    throw std::domain_error("StedParams: hole_radius must be > 0");
  if (!(n_sin_alpha > 0.0) || !(n_sin_alpha <= 1.5))
    throw std::domain_error("StedParams: n_sin_alpha must lie in (0, 1.5]");
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw std::domain_error("StedParams: tau0 must be > 0");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    throw std::domain_error("StedParams: wavelength must be > 0");
  if (!gamma_map) throw std::domain_error("StedParams: gamma_map is not set");
}

double StedParams::lobe_half_width() const { return wavelength / (2.0 * n_sin_alpha); }

double beam_profile(double r, const StedParams& params) {
  if (!(r >= 0.0)) throw std::domain_error("beam_profile: r must be >= 0");
  const double d = r - params.hole_radius;
  const double c = std::cos(std::numbers::pi / params.wavelength * d * params.n_sin_alpha);
  return c * c * std::exp(-d * d / (2.0 * params.hole_radius * params.hole_radius));
}

double survival(double r, const StedParams& params) {
  if (!params.gamma_map) throw std::domain_error("survival: gamma_map is not set");
  const double g = params.gamma_map(r);
  if (!std::isfinite(g)) throw std::domain_error("survival: gamma_map undefined at r");
  return std::exp(-g * params.tau0);
}

double detection_probability(double r, const StedParams& params) {
  return beam_profile(r, params) * survival(r, params);
}

SpotResult spot_size(const StedParams& params) {
  params.validate();
  const double R = params.hole_radius;
  const double w = params.lobe_half_width();
  const double lo = std::max(0.0, R - w);
  const double hi = R + w;

  std::vector<double> rs(kCoarseSamples), ps(kCoarseSamples);
  for (int i = 0; i < kCoarseSamples; ++i) {
    rs[i] = lo + (hi - lo) * i / (kCoarseSamples - 1);
    ps[i] = detection_probability(rs[i], params);
  }
  std::vector<int> maxima;
  for (int i = 0; i < kCoarseSamples; ++i) {
    const bool left_ok = i == 0 || ps[i] > ps[i - 1];
    const bool right_ok = i == kCoarseSamples - 1 || ps[i] >= ps[i + 1];
    if (left_ok && right_ok && ps[i] > 0.0) maxima.push_back(i);
  }
  if (maxima.size() != 1) {
    std::ostringstream msg;
    msg << "spot_size: detection probability is not unimodal; local maxima at r =";
    for (int i : maxima) msg << ' ' << rs[i];
    throw std::runtime_error(msg.str());
  }
  const int i0 = maxima.front();
  const double a = rs[std::max(0, i0 - 1)];
  const double b = rs[std::min(kCoarseSamples - 1, i0 + 1)];

  SpotResult out;
  out.r_peak = golden_max(params, a, b);
  out.p_max = detection_probability(out.r_peak, params);
  if (ps[i0] > out.p_max) {
    out.r_peak = rs[i0];
    out.p_max = ps[i0];
  }
  const double half = 0.5 * out.p_max;
  out.root_right = bisect_half(params, out.r_peak, hi, half, out.p_max);
  if (detection_probability(lo, params) >= half) {
    out.root_left = lo;
    out.left_clipped = true;
  } else {
    out.root_left = bisect_half(params, out.r_peak, lo, half, out.p_max);
  }
  out.delta_r_half = 0.5 * (out.root_right - out.root_left);
  return out;
}

std::vector<StedProfileRow> sted_profile(const StedParams& params, int samples) {
  params.validate();
  if (samples < 2) throw std::domain_error("sted_profile: need at least 2 samples");
  const double lo = std::max(0.0, params.hole_radius - params.lobe_half_width());
  const double hi = params.hole_radius + params.lobe_half_width();
  std::vector<StedProfileRow> rows(samples);
  for (int i = 0; i < samples; ++i) {
    auto& row = rows[i];
    row.r = lo + (hi - lo) * i / (samples - 1);
    row.h = beam_profile(row.r, params);
    row.eta = survival(row.r, params);
    row.p = row.h * row.eta;
  }
  return rows;
}

TabulatedGamma::TabulatedGamma(double x_min, double x_max, std::vector<double> values)
    : x_min_(x_min), x_max_(x_max), values_(std::move(values)) {
  if (!(x_max_ > x_min_) || values_.size() < 2)
    throw std::domain_error("TabulatedGamma: need x_max > x_min and at least 2 values");
}

double TabulatedGamma::operator()(double x) const {
  if (!(x >= x_min_ && x <= x_max_))
    throw std::domain_error("TabulatedGamma: x outside the tabulated range");
  const double step = (x_max_ - x_min_) / static_cast<double>(values_.size() - 1);
  const double t = (x - x_min_) / step;
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), values_.size() - 2);
  const double f = t - static_cast<double>(i);
  return values_[i] + f * (values_[i + 1] - values_[i]);
}

GammaMap TabulatedGamma::shifted(double hole_radius) const {
  auto table = std::make_shared<const TabulatedGamma>(*this);
  return [table, hole_radius](double r) { return (*table)(r - hole_radius); };
}

TabulatedGamma make_corner_gamma_map(const CornerGammaPolicy& policy) {
  if (!(policy.mask_height > 0.0)) throw std::domain_error("corner gamma map: mask_height must be > 0");
  if (policy.samples < 2 || !(policy.x_max > policy.x_min))
    throw std::domain_error("corner gamma map: need x_max > x_min and samples >= 2");
  const WedgeGeometry wedge = make_wedge(policy.interior_angle, policy.interior_angle);
  const Vec3 dir = policy.orientation.normalized();
  std::vector<double> values(policy.samples);
  parallel_for(values.size(), policy.threads, [&](std::size_t i) {
    const double x = policy.x_min + (policy.x_max - policy.x_min) * static_cast<double>(i) /
                                        (policy.samples - 1);
    const Dipole d = Dipole::make({x, -policy.mask_height, 0.0}, dir);
    values[i] = decay_rate(d, wedge, policy.truncation).normalized_rate;
  });
  return TabulatedGamma(policy.x_min, policy.x_max, std::move(values));
}

GammaMap constant_gamma(double value) {
  return [value](double) { return value; };
}

}  // namespace wedgegreen
