#include "support.hpp"
#include "wedgegreen/green_parallel.hpp"
#include "wedgegreen/oracles.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace wedgegreen;
using testsupport::kK;
using testsupport::kPi;
using testsupport::rel_err;

namespace {

// Dirichlet half-space scalar oracle: Im g = k/(4 pi) [j0(k R) - j0(k R_image)].
double image_pi_z(const PointCart& a, const PointCart& b, double k) {
  auto j0 = [](double x) { return x == 0 ? 1.0 : std::sin(x) / x; };
  const double d = (a.vec() - b.vec()).norm();
  const double di = (a.vec() - Vec3(b.x, -b.y, b.z)).norm();
  return k / (4 * kPi) * (j0(k * d) - j0(k * di)) / (k * k);
}

PointCyl above(double h) { return PointCyl{h, kPi / 2, 0.0}; }

}  // namespace

TEST_CASE("im_pi_z: half-space coincidence matches the image oracle") {
  const auto w = make_wedge(kPi);
  const auto v = im_pi_z(above(0.5), above(0.5), kK, w, {20, 20});
  CHECK(rel_err(v.value, image_pi_z({0, 0.5, 0}, {0, 0.5, 0}, kK)) < 1e-6);
  CHECK(v.converged());
}

TEST_CASE("im_pi_z: half-space two-point values match the image oracle") {
  const auto w = make_wedge(kPi);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const PointCart a = testsupport::random_vacuum_point(rng, w, 0.05, 0.8, 0.05);
    const PointCart b = testsupport::random_vacuum_point(rng, w, 0.05, 0.8, 0.05);
    const double ref = image_pi_z(a, b, kK);
    const double got = im_pi_z(to_cyl(b), to_cyl(a), kK, w, {20, 20}).value;
    CHECK(std::abs(got - ref) < 1e-8 * testsupport::kFreeNorm / (kK * kK));
  }
}

TEST_CASE("im_pi_z: exactly symmetric under source and observer exchange") {
  const auto w = make_wedge(kPi / 2, 0.4);
  const PointCyl a{0.3, 1.1, 0.2}, b{0.7, 3.9, -0.1};
  CHECK(im_pi_z(a, b, kK, w).value == im_pi_z(b, a, kK, w).value);
  CHECK(rel_err(im_p_zz(a, b, kK, w).value, im_p_zz(b, a, kK, w).value) < 1e-10);
}

TEST_CASE("im_pi_z: vanishes linearly at a face") {
  const auto w = make_wedge(kPi / 3);
  const PointCyl src{0.4, 1.0, 0.0};
  for (double face : {0.0, w.vacuum_angle()}) {
    const double sgn = face == 0.0 ? 1.0 : -1.0;
    const double v1 = im_pi_z(src, PointCyl{0.5, face + sgn * 1e-4, 0.0}, kK, w).value;
    const double v2 = im_pi_z(src, PointCyl{0.5, face + sgn * 2e-4, 0.0}, kK, w).value;
    CHECK(std::abs(v1) < 1e-3 * std::abs(im_pi_z(src, src, kK, w).value));
    CHECK(v2 / v1 == doctest::Approx(2.0).epsilon(1e-4));
  }
}

TEST_CASE("im_p_zz: analytic z-derivative agrees with a finite-difference oracle") {
  const auto w = make_wedge(kPi / 2);
  const PointCyl src{0.35, 2.0, 0.0};
  for (const PointCyl obs : {PointCyl{0.35, 2.0, 0.0}, PointCyl{0.6, 3.5, 0.15}, PointCyl{0.2, 0.8, -0.3}}) {
    auto pi_at = [&](double z) { return im_pi_z(src, PointCyl{obs.rho, obs.phi, z}, kK, w, {14, 14}).value; };
    // Five-point second difference with one Richardson step.
    auto d2 = [&](double h) {
      const double z = obs.z;
      return (-pi_at(z + 2 * h) + 16 * pi_at(z + h) - 30 * pi_at(z) + 16 * pi_at(z - h) - pi_at(z - 2 * h)) /
             (12 * h * h);
    };
    const double h = 1e-2;
    const double fd = (16 * d2(h / 2) - d2(h)) / 15;
    const double ref = kK * kK * pi_at(obs.z) + fd;
    const double got = im_p_zz(src, obs, kK, w, {14, 14}).value;
    INFO("rho=" << obs.rho << " z=" << obs.z);
    CHECK(std::abs(got - ref) < 1e-7 * testsupport::kFreeNorm);
  }
}

TEST_CASE("im_p_zz: half-space rates") {
  const auto w = make_wedge(kPi);
  const auto frame = halfspace_frame_for(w);
  auto oracle = [&](double h) {
    const PointCart p{0, h, 0};
    return im_g_halfspace(p, p, kK, frame).matrix(2, 2) / testsupport::kFreeNorm;
  };
  auto series = [&](double h, Truncation t) {
    return im_p_zz(above(h), above(h), kK, w, t).value / testsupport::kFreeNorm;
  };
  CHECK(std::abs(series(0.5, {10, 10}) - oracle(0.5)) < 1e-4);
  CHECK(series(1e-4, {10, 10}) < 1e-5);
  CHECK(std::abs(series(4.0, {30, 30}) - 1.0) < 0.05);
  CHECK(std::abs(series(4.0, {30, 30}) - oracle(4.0)) < 1e-4);
}

TEST_CASE("im_p_zz: truncation ladder is Cauchy") {
  const auto w = make_wedge(kPi / 2);
  const PointCyl p{1.0, 2.2, 0.0};
  double prev = 1e300;
  for (int m : {10, 15, 20, 25}) {
    const double a = im_p_zz(p, p, kK, w, {m, m}).value;
    const double b = im_p_zz(p, p, kK, w, {m + 5, m + 5}).value;
    const double d = std::abs(b - a);
    CHECK(d <= std::max(prev, 1e-14 * testsupport::kFreeNorm));
    prev = d;
  }
}

TEST_CASE("im_p_zz: tail reflects truncation quality") {
  const auto w = make_wedge(kPi);
  CHECK(im_p_zz(above(0.3), above(0.3), kK, w).converged());
  CHECK_FALSE(im_p_zz(above(3.0), above(3.0), kK, w).converged());
}

TEST_CASE("green-parallel: error paths") {
  const auto w = make_wedge(kPi / 2);
  const PointCyl ok{0.5, 1.0, 0.0};
  CHECK_THROWS_AS(im_pi_z(ok, PointCyl{0.5, 0.0, 0.0}, kK, w), std::domain_error);
  CHECK_THROWS_AS(im_pi_z(PointCyl{0.5, 1.6 * kPi, 0.0}, ok, kK, w), std::domain_error);
  CHECK_THROWS_AS(im_p_zz(ok, ok, 0.0, w), std::domain_error);
  CHECK_THROWS_AS(im_p_zz(ok, ok, kK, w, {0, 5}), std::domain_error);
  CHECK_THROWS_AS(im_p_zz(ok, PointCyl{0.0, 1.0, 0.0}, kK, w), std::domain_error);
}
