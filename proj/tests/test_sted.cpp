#include "support.hpp"
#include "wedgegreen/sted.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace wedgegreen;
using testsupport::kPi;

namespace {

StedParams params_with(double R, GammaMap g) {
  StedParams p;
  p.hole_radius = R;
  p.gamma_map = std::move(g);
  return p;
}

// Half-maximum width from a dense uniform grid with linear interpolation at the crossings.
std::pair<double, double> dense_fwhm(const StedParams& p, int n) {
  const double lo = std::max(0.0, p.hole_radius - p.lobe_half_width());
  const double hi = p.hole_radius + p.lobe_half_width();
  std::vector<double> r(n), v(n);
  int imax = 0;
  for (int i = 0; i < n; ++i) {
    r[i] = lo + (hi - lo) * i / (n - 1);
    v[i] = detection_probability(r[i], p);
    if (v[i] > v[imax]) imax = i;
  }
  const double half = v[imax] / 2;
  auto cross = [&](int a, int b) { return r[a] + (half - v[a]) * (r[b] - r[a]) / (v[b] - v[a]); };
  int j = imax;
  while (j < n - 1 && v[j + 1] >= half) ++j;
  const double right = cross(j, j + 1);
  int i = imax;
  while (i > 0 && v[i - 1] >= half) --i;
  const double left = i == 0 ? lo : cross(i - 1, i);
  return {left, right};
}

}  // namespace

TEST_CASE("beam_profile: peak, node and symmetry") {
  const auto p = params_with(0.2, constant_gamma(1.0));
  CHECK(beam_profile(0.2, p) == 1.0);
  CHECK(beam_profile(0.2 + 0.5, p) < 1e-30);
  for (double d : {0.01, 0.07, 0.15}) CHECK(beam_profile(0.2 + d, p) == doctest::Approx(beam_profile(0.2 - d, p)));
  CHECK_THROWS_AS(beam_profile(-0.1, p), std::domain_error);
}

TEST_CASE("detection_probability: couplings") {
  const auto unit = params_with(0.3, constant_gamma(1.0));
  CHECK(detection_probability(0.35, unit) == doctest::Approx(beam_profile(0.35, unit) * std::exp(-1.0)));
  const auto shadow = params_with(0.3, [](double r) { return r > 0.3 ? 2.0 : 1.0; });
  CHECK(detection_probability(0.4, shadow) / detection_probability(0.4, unit) == doctest::Approx(std::exp(-1.0)));
  const auto hot = params_with(0.3, constant_gamma(20.0));
  CHECK(detection_probability(0.3, hot) < 1e-6 * beam_profile(0.3, hot) * std::exp(-1.0));
  const auto bad = params_with(0.3, [](double) { return std::nan(""); });
  CHECK_THROWS_AS(detection_probability(0.3, bad), std::domain_error);
}

TEST_CASE("StedParams: validation") {
  auto p = params_with(0.1, constant_gamma(1.0));
  CHECK_NOTHROW(p.validate());
  p.n_sin_alpha = 1.6;
  CHECK_THROWS_AS(spot_size(p), std::domain_error);
  p = params_with(0.0, constant_gamma(1.0));
  CHECK_THROWS_AS(spot_size(p), std::domain_error);
  p = params_with(0.1, nullptr);
  CHECK_THROWS_AS(spot_size(p), std::domain_error);
}

TEST_CASE("spot_size: no-mask control matches a dense-grid FWHM") {
  for (double R : {0.1, 0.25, 0.4, 0.8}) {
    const auto p = params_with(R, constant_gamma(1.0));
    const auto s = spot_size(p);
    const auto [left, right] = dense_fwhm(p, 100001);
    INFO("R=" << R);
    CHECK(std::abs(s.root_right - right) < 1e-4);
    CHECK(std::abs(s.root_left - left) < 1e-4);
    CHECK(s.r_peak == doctest::Approx(R).epsilon(1e-6));
    CHECK(s.delta_r_half > 0.0);
    CHECK(detection_probability(s.root_right, p) == doctest::Approx(s.p_max / 2).epsilon(1e-9));
  }
}

TEST_CASE("spot_size: left root clipped at the axis") {
  const auto s = spot_size(params_with(0.05, constant_gamma(1.0)));
  CHECK(s.left_clipped);
  CHECK(s.root_left == 0.0);
}

TEST_CASE("spot_size: rejects a split peak") {
  const auto p = params_with(0.3, [](double r) { return 1.0 + 5.0 * std::exp(-std::pow((r - 0.3) / 0.02, 2)); });
  CHECK_THROWS_WITH_AS(spot_size(p), doctest::Contains("local maxima"), std::runtime_error);
}

TEST_CASE("spot_size: raising the rate outside R never widens the spot") {
  const double R = 0.3;
  double prev = spot_size(params_with(R, constant_gamma(1.0))).delta_r_half;
  for (double extra : {0.5, 1.0, 2.0, 4.0}) {
    const auto s = spot_size(params_with(R, [=](double r) { return r > R ? 1.0 + extra * (r - R) / 0.1 : 1.0; }));
    CHECK(s.delta_r_half <= prev + 1e-12);
    prev = s.delta_r_half;
  }
}

TEST_CASE("spot_size: invariant under a joint length rescaling") {
  const auto g = [](double r) { return 1.0 + 0.8 * std::tanh((r - 0.2) / 0.05); };
  const auto a = spot_size(params_with(0.2, g));
  const double s = 3.0;
  auto p = params_with(0.2 * s, [=](double r) { return g(r / s); });
  p.wavelength = s;
  const auto b = spot_size(p);
  CHECK(b.delta_r_half == doctest::Approx(s * a.delta_r_half).epsilon(1e-8));
}

TEST_CASE("TabulatedGamma: interpolation and range") {
  const TabulatedGamma t(-1.0, 1.0, {0.0, 2.0, 6.0});
  CHECK(t(-1.0) == 0.0);
  CHECK(t(-0.5) == doctest::Approx(1.0));
  CHECK(t(0.5) == doctest::Approx(4.0));
  CHECK(t(1.0) == doctest::Approx(6.0));
  CHECK_THROWS_AS(t(1.01), std::domain_error);
  CHECK(t.shifted(0.5)(1.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(TabulatedGamma(0.0, 1.0, {1.0}), std::domain_error);
}

TEST_CASE("corner gamma map: hole and plate regions") {
  CornerGammaPolicy policy;
  policy.samples = 21;
  const TabulatedGamma t = make_corner_gamma_map(policy);
  CHECK(t(-1.0) == doctest::Approx(1.0).epsilon(0.3));
  CHECK(t(1.0) > 1.5);
  CHECK(t(1.0) < 2.2);
  CornerGammaPolicy bad;
  bad.mask_height = 0.0;
  CHECK_THROWS_AS(make_corner_gamma_map(bad), std::domain_error);
}

TEST_CASE("sted_profile: columns are consistent") {
  const auto p = params_with(0.2, constant_gamma(1.0));
  const auto rows = sted_profile(p, 11);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) CHECK(r.p == doctest::Approx(r.h * r.eta));
  CHECK(rows.front().r == 0.0);
  CHECK(rows.back().r == doctest::Approx(0.7));
  CHECK_THROWS_AS(sted_profile(p, 1), std::domain_error);
}
