#include "support.hpp"
#include "wedgegreen/oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>
#include <stdexcept>

using namespace wedgegreen;
using testsupport::kFreeNorm;
using testsupport::kK;
using testsupport::kPi;
using testsupport::rel_err;

namespace {

// Im G0 as an angular average of transverse plane waves:
// Im G0(d) = k/(16 pi^2) * integral over the unit sphere of (I - s s^T) cos(k s.d).
Mat3 plane_wave_oracle(const Vec3& d, double k, int n_theta, int n_phi) {
  Mat3 acc = Mat3::Zero();
  for (int i = 0; i < n_theta; ++i) {
    // Gauss-free midpoint rule in cos(theta).
    const double ct = -1.0 + (2.0 * i + 1.0) / n_theta;
    const double st = std::sqrt(1 - ct * ct);
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2 * kPi * j / n_phi;
      const Vec3 s(st * std::cos(ph), st * std::sin(ph), ct);
      acc += (Mat3::Identity() - s * s.transpose()) * std::cos(k * s.dot(d));
    }
  }
  return acc * (2.0 / n_theta) * (2 * kPi / n_phi) * k / (16 * kPi * kPi);
}

}  // namespace

TEST_CASE("im_g_free: coincidence value and continuity") {
  const PointCart p{0.3, -1.2, 0.4};
  CHECK((im_g_free(p, p, kK).matrix - kFreeNorm * Mat3::Identity()).norm() < 1e-16);
  for (double d : {1e-2, 1e-4, 1e-6, 1e-9}) {
    const auto g = im_g_free(p, PointCart{p.x + d, p.y, p.z}, kK);
    CHECK((g.matrix - kFreeNorm * Mat3::Identity()).norm() < 2 * kFreeNorm * (kK * d) * (kK * d) + 1e-15);
  }
  // Both sides of the series switch agree.
  const double x0 = 1.0 / kK;
  const auto a = im_g_free(p, PointCart{p.x + x0 * (1 - 1e-13), p.y, p.z}, kK).matrix;
  const auto b = im_g_free(p, PointCart{p.x + x0 * (1 + 1e-13), p.y, p.z}, kK).matrix;
  CHECK((a - b).norm() < 1e-12 * kFreeNorm);
}

TEST_CASE("im_g_free: longitudinal value at k d = pi against plane-wave integral") {
  const double d = 0.5;
  const auto g = im_g_free(PointCart{0, 0, 0}, PointCart{d, 0, 0}, kK);
  const double x = kPi;
  // Longitudinal: k/(4 pi) (j0 - j1/x + j2) = k/(4 pi) * 2 j1 / x.
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  CHECK(rel_err(g.matrix(0, 0), kK / (4 * kPi) * 2 * j1 / x) < 1e-14);
  const Mat3 pw = plane_wave_oracle(Vec3(d, 0, 0), kK, 400, 400);
  CHECK((g.matrix - pw).cwiseAbs().maxCoeff() < 1e-4 * kFreeNorm);
}

TEST_CASE("im_g_free: plane-wave oracle for an oblique separation") {
  const Vec3 d(0.2, -0.35, 0.6);
  const auto g = im_g_free(PointCart::from(d), PointCart{0, 0, 0}, kK);
  CHECK((g.matrix - plane_wave_oracle(d, kK, 400, 400)).cwiseAbs().maxCoeff() < 1e-4 * kFreeNorm);
}

TEST_CASE("im_g_free: trace identity") {
  for (double x : {0.1, 1.0, 3.7, 20.0}) {
    const auto g = im_g_free(PointCart{0, 0, 0}, PointCart{0, 0, x / kK}, kK);
    const double s = std::sin(x), c = std::cos(x);
    const double j0 = s / x, j1 = s / (x * x) - c / x, j2 = (3 / (x * x) - 1) * s / x - 3 * c / (x * x);
    CHECK(rel_err(g.matrix.trace(), kK / (4 * kPi) * (3 * (j0 - j1 / x) + j2)) < 1e-13);
    // 3 j0 - 3 j1/x + j2 = 2 j0 by the recurrence j2 = 3 j1 / x - j0.
    CHECK(rel_err(g.matrix.trace(), kK / (4 * kPi) * 2 * j0) < 1e-12);
  }
  CHECK_THROWS_AS(im_g_free(PointCart{}, PointCart{}, 0.0), std::domain_error);
}

TEST_CASE("HalfSpaceFrame: reflection is an involution with determinant -1") {
  const auto f = HalfSpaceFrame::make(Vec3(1, 2, 3), Vec3(0.3, -1, 2));
  const Mat3 r = f.reflection();
  CHECK((r * r - Mat3::Identity()).norm() < 1e-15);
  CHECK(r.determinant() == doctest::Approx(-1.0));
  const PointCart p{0.4, 5, -2};
  CHECK(f.height(f.mirror(p)) == doctest::Approx(-f.height(p)));
  CHECK_THROWS_AS(HalfSpaceFrame::make(Vec3::Zero(), Vec3::Zero()), std::domain_error);
}

TEST_CASE("im_g_halfspace: boundary condition on the mirror") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto f = HalfSpaceFrame::make(Vec3(0.1, 0.2, -0.3), Vec3(1, 2, -0.5));
  const Vec3 n = f.normal;
  const Vec3 t1 = n.unitOrthogonal(), t2 = n.cross(t1);
  for (int i = 0; i < 100; ++i) {
    Vec3 src(u(rng), u(rng), u(rng));
    if (f.height(PointCart::from(src)) <= 0.05) src = f.mirror(PointCart::from(src)).vec() + 0.1 * n;
    Vec3 on(u(rng), u(rng), u(rng));
    on -= f.height(PointCart::from(on)) * n;
    // Evaluate the formula directly on the mirror; the public entry point rejects it.
    const Mat3 g = im_g_free(PointCart::from(on), PointCart::from(src), kK).matrix -
                   im_g_free(PointCart::from(on), f.mirror(PointCart::from(src)), kK).matrix * f.reflection();
    CHECK((t1.transpose() * g).norm() < 1e-12 * kFreeNorm);
    CHECK((t2.transpose() * g).norm() < 1e-12 * kFreeNorm);
  }
}

TEST_CASE("im_g_halfspace: limits") {
  const auto f = HalfSpaceFrame::make(Vec3::Zero(), Vec3::UnitY());
  const PointCart low{0, 1e-6, 0};
  const Mat3 g = im_g_halfspace(low, low, kK, f).matrix / kFreeNorm;
  CHECK(std::abs(g(0, 0)) < 1e-9);
  CHECK(std::abs(g(2, 2)) < 1e-9);
  CHECK(g(1, 1) == doctest::Approx(2.0).epsilon(1e-9));
  const PointCart far{0, 10, 0};
  const Mat3 gf = im_g_halfspace(far, far, kK, f).matrix / kFreeNorm;
  CHECK((gf - Mat3::Identity()).cwiseAbs().maxCoeff() < 0.05);
  CHECK_THROWS_AS(im_g_halfspace(PointCart{0, 0, 0}, far, kK, f), std::domain_error);
  CHECK_THROWS_AS(im_g_halfspace(far, PointCart{0, -1, 0}, kK, f), std::domain_error);
}

TEST_CASE("im_g_free: reciprocity and positive semidefinite coincidence") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const PointCart a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    CHECK((im_g_free(a, b, kK).matrix - im_g_free(b, a, kK).matrix.transpose()).norm() < 1e-15);
    // Two-point Gram form [[G(a,a), G(a,b)], [G(b,a), G(b,b)]] is PSD.
    Eigen::Matrix<double, 6, 6> gram;
    gram << im_g_free(a, a, kK).matrix, im_g_free(a, b, kK).matrix, im_g_free(b, a, kK).matrix,
        im_g_free(b, b, kK).matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(gram);
    CHECK(es.eigenvalues().minCoeff() > -1e-12 * kFreeNorm);
  }
}

TEST_CASE("series_vs_oracle_report: fixed examples") {
  const auto w = make_wedge(kPi);
  const auto rows = series_vs_oracle_report(w, {0.5}, {{10, 10}, {30, 30}}, ReportOrientation::Parallel);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rel_error <= 1e-2);
  CHECK(rows[1].rel_error <= 1e-5);
  CHECK(rows[1].rel_error <= rows[0].rel_error);
  CHECK(rows[0].oracle == rows[1].oracle);
  const auto perp = series_vs_oracle_report(w, {0.2, 0.9}, {{10, 10}}, ReportOrientation::Perpendicular);
  REQUIRE(perp.size() == 2);
  for (const auto& r : perp) CHECK(r.rel_error <= 1e-2);
  CHECK_THROWS_AS(series_vs_oracle_report(make_wedge(kPi / 2), {0.5}, {{10, 10}}, ReportOrientation::Parallel),
                  std::domain_error);
  CHECK_THROWS_AS(series_vs_oracle_report(w, {0.0}, {{10, 10}}, ReportOrientation::Parallel), std::domain_error);
}

TEST_CASE("series_vs_oracle_report: error decreases along a truncation ladder") {
  const auto w = make_wedge(kPi);
  for (double h : {0.8, 1.5}) {
    const auto rows =
        series_vs_oracle_report(w, {h}, {{10, 10}, {15, 15}, {20, 20}, {25, 25}}, ReportOrientation::Parallel);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].rel_error <= std::max(rows[i - 1].rel_error, 1e-13));
  }
}
