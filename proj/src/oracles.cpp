#include "wedgegreen/oracles.hpp"

#include "wedgegreen/green_parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wedgegreen {

namespace {

constexpr double kSeriesCutoff = 1.0;

double free_norm(double k) { return k / (6.0 * std::numbers::pi); }

}  // namespace

ImGreenTensor im_g_free(const PointCart& r, const PointCart& r_prime, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("im_g_free: k must be > 0");
  ImGreenTensor out;
  out.r = r;
  out.r_prime = r_prime;
  out.k = k;
  const Vec3 d = r.vec() - r_prime.vec();
  const double dist = d.norm();
  const double x = k * dist;
  double iso, proj;
  if (x < kSeriesCutoff) {
    // Power series of j0 - j1/x and j2 in t = -x^2/2.
    const double t = -0.5 * x * x;
    double c = 1.0, df1 = 1.0, df3 = 3.0, df5 = 15.0;
    iso = 0.0;
    proj = 0.0;
    for (int n = 0; n < 30; ++n) {
      const double iso_term = c * (1.0 / df1 - 1.0 / df3);
      iso += iso_term;
      proj += c / df5;
      if (std::abs(iso_term) < 1e-18) break;
      c *= t / (n + 1);
      df1 = df3;
      df3 = df5;
      df5 *= 2 * n + 7;
    }
    proj *= x * x;
  } else {
    const double s = std::sin(x), c = std::cos(x);
    const double j0 = s / x;
    const double j1 = s / (x * x) - c / x;
    const double j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
    iso = j0 - j1 / x;
    proj = j2;
  }
  const double pref = k / (4.0 * std::numbers::pi);
  out.matrix = pref * iso * Mat3::Identity();
  if (dist > 0.0) {
    const Vec3 u = d / dist;
    out.matrix += pref * proj * (u * u.transpose());
  }
  return out;
}

HalfSpaceFrame HalfSpaceFrame::make(const Vec3& origin, const Vec3& normal) {
  const double n = normal.norm();
  if (!(n > 0.0) || !std::isfinite(n) || !origin.allFinite())
    throw std::domain_error("HalfSpaceFrame: normal must be finite and nonzero");
  HalfSpaceFrame f;
  f.origin = origin;
  f.normal = normal / n;
  return f;
}

Mat3 HalfSpaceFrame::reflection() const {
  return Mat3::Identity() - 2.0 * normal * normal.transpose();
}

double HalfSpaceFrame::height(const PointCart& p) const { return (p.vec() - origin).dot(normal); }

PointCart HalfSpaceFrame::mirror(const PointCart& p) const {
  return PointCart::from(p.vec() - 2.0 * height(p) * normal);
}

ImGreenTensor im_g_halfspace(const PointCart& r, const PointCart& r_prime, double k,
                             const HalfSpaceFrame& frame) {
  if (!(frame.height(r) > 0.0) || !(frame.height(r_prime) > 0.0))
    throw std::domain_error("im_g_halfspace: both points must lie above the mirror");
  ImGreenTensor out = im_g_free(r, r_prime, k);
  const ImGreenTensor image = im_g_free(r, frame.mirror(r_prime), k);
  out.matrix -= image.matrix * frame.reflection();
  return out;
}

HalfSpaceFrame halfspace_frame_for(const WedgeGeometry& wedge) {
  const double f = wedge.face_azimuth();
  return HalfSpaceFrame::make(Vec3::Zero(), Vec3(-std::sin(f), std::cos(f), 0.0));
}

std::vector<ConvergenceRow> series_vs_oracle_report(const WedgeGeometry& wedge,
                                                    const std::vector<double>& heights,
                                                    const std::vector<Truncation>& truncations,
                                                    ReportOrientation orientation) {
  if (std::abs(wedge.interior_angle() - std::numbers::pi) > 1e-12)
    throw std::domain_error("series_vs_oracle_report: needs a wedge of interior angle pi");
  for (const auto& t : truncations) t.validate();
  const double k = 2.0 * std::numbers::pi;
  const double norm = free_norm(k);
  const HalfSpaceFrame frame = halfspace_frame_for(wedge);
  const Vec3 dir = orientation == ReportOrientation::Parallel ? Vec3::UnitZ() : Vec3::UnitX();

  std::vector<ConvergenceRow> rows;
  rows.reserve(heights.size() * truncations.size());
  for (double h : heights) {
    if (!(h > 0.0)) throw std::domain_error("series_vs_oracle_report: heights must be > 0");
    const PointCart p = PointCart::from(frame.origin + h * frame.normal);
    const double oracle = dir.dot(im_g_halfspace(p, p, k, frame).matrix * dir) / norm;
    for (const auto& t : truncations) {
      ConvergenceRow row;
      row.height = h;
      row.truncation = t;
      row.oracle = oracle;
      if (orientation == ReportOrientation::Parallel) {
        const PointCyl c = to_cyl(p);
        const SeriesValue v = im_p_zz(c, c, k, wedge, t);
        row.series = v.value / norm;
        row.tail = v.tail / norm;
      } else {
        const ImGreenTensor g = im_g_full(p, p, wedge, k, t);
        row.series = dir.dot(g.matrix * dir) / norm;
        row.tail = dir.cwiseAbs().dot(g.last_ring * dir.cwiseAbs()) / norm;
      }
      row.rel_error = std::abs(row.series - row.oracle) / std::abs(row.oracle);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace wedgegreen
