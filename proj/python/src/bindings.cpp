#include "wedgegreen/green_parallel.hpp"
#include "wedgegreen/green_perp.hpp"
#include "wedgegreen/oracles.hpp"
#include "wedgegreen/rates.hpp"
#include "wedgegreen/scan.hpp"
#include "wedgegreen/sted.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>

namespace py = pybind11;
using namespace wedgegreen;

namespace {

Truncation to_trunc(const std::pair<int, int>& t) { return Truncation{t.first, t.second}; }

PointCart to_point(const Vec3& v) { return PointCart::from(v); }

py::dict rate_dict(const RateResult& r) {
  py::dict d;
  d["normalized_rate"] = r.normalized_rate;
  d["tail_estimate"] = r.tail_estimate;
  d["gamma_a_half"] = r.components.gamma_a_half;
  d["gamma_d_half"] = r.components.gamma_d_half;
  d["gamma_dd"] = r.components.gamma_dd;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decay rates and Green's tensors near a perfectly conducting wedge";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<WedgeGeometry>(m, "Wedge")
      .def(py::init(&WedgeGeometry::make), py::arg("interior_angle"), py::arg("face_azimuth") = 0.0)
      .def_property_readonly("interior_angle", &WedgeGeometry::interior_angle)
      .def_property_readonly("vacuum_angle", &WedgeGeometry::vacuum_angle)
      .def_property_readonly("face_azimuth", &WedgeGeometry::face_azimuth)
      .def_property_readonly("nu", &WedgeGeometry::nu)
      .def("mu", &WedgeGeometry::mu, py::arg("m"))
      .def("in_vacuum", [](const WedgeGeometry& w, const Vec3& p) { return in_vacuum(to_point(p), w).inside; },
           py::arg("point"));

  m.def(
      "decay_rate",
      [](const Vec3& position, const Vec3& orientation, const WedgeGeometry& wedge, std::pair<int, int> trunc,
         double wavelength) {
        return rate_dict(decay_rate(Dipole::along(to_point(position), orientation, wavelength), wedge,
                                    to_trunc(trunc)));
      },
      py::arg("position"), py::arg("orientation"), py::arg("wedge"), py::arg("truncation") = std::pair{10, 10},
      py::arg("wavelength") = 1.0, "Gamma / Gamma0 of one dipole; the orientation is normalised.");

  m.def(
      "cooperative_rate",
      [](const Vec3& donor, const Vec3& acceptor, const Vec3& orientation, const WedgeGeometry& wedge,
         bool symmetric, std::pair<int, int> trunc, bool pair_normalization, double wavelength) {
        const auto d = Dipole::along(to_point(donor), orientation, wavelength);
        const auto a = Dipole::along(to_point(acceptor), orientation, wavelength);
        return rate_dict(cooperative_rate(d, a, symmetric ? Symmetry::Symmetric : Symmetry::Antisymmetric, wedge,
                                          to_trunc(trunc),
                                          pair_normalization ? CdrNormalization::VacuumPair
                                                             : CdrNormalization::VacuumSingleAtom));
      },
      py::arg("donor"), py::arg("acceptor"), py::arg("orientation"), py::arg("wedge"), py::arg("symmetric") = true,
      py::arg("truncation") = std::pair{10, 10}, py::arg("pair_normalization") = false,
      py::arg("wavelength") = 1.0);

  m.def(
      "im_g_full",
      [](const Vec3& r, const Vec3& r_prime, const WedgeGeometry& wedge, double k, std::pair<int, int> trunc) {
        const auto g = im_g_full(to_point(r), to_point(r_prime), wedge, k, to_trunc(trunc));
        return py::make_tuple(Mat3(g.matrix), g.tail_estimate());
      },
      py::arg("r"), py::arg("r_prime"), py::arg("wedge"), py::arg("k"), py::arg("truncation") = std::pair{10, 10},
      "(Im G as a 3x3 array, tail estimate).");

  m.def(
      "im_g_free",
      [](const Vec3& r, const Vec3& r_prime, double k) {
        return Mat3(im_g_free(to_point(r), to_point(r_prime), k).matrix);
      },
      py::arg("r"), py::arg("r_prime"), py::arg("k"));

  m.def(
      "im_p_zz",
      [](const Vec3& src, const Vec3& obs, const WedgeGeometry& wedge, double k, std::pair<int, int> trunc) {
        const auto v = im_p_zz(to_cyl(to_point(src)), to_cyl(to_point(obs)), k, wedge, to_trunc(trunc));
        return py::make_tuple(v.value, v.tail);
      },
      py::arg("source"), py::arg("observer"), py::arg("wedge"), py::arg("k"),
      py::arg("truncation") = std::pair{10, 10});

  py::class_<TabulatedGamma>(m, "TabulatedGamma")
      .def(py::init<double, double, std::vector<double>>(), py::arg("x_min"), py::arg("x_max"), py::arg("values"))
      .def("__call__", &TabulatedGamma::operator(), py::arg("x"))
      .def_property_readonly("x_min", &TabulatedGamma::x_min)
      .def_property_readonly("x_max", &TabulatedGamma::x_max)
      .def_property_readonly("values", &TabulatedGamma::values)
      .def("shifted", &TabulatedGamma::shifted, py::arg("hole_radius"));

  m.def(
      "corner_gamma_map",
      [](double interior_angle, double mask_height, double x_min, double x_max, int samples,
         std::pair<int, int> trunc, unsigned threads) {
        CornerGammaPolicy p;
        p.interior_angle = interior_angle;
        p.mask_height = mask_height;
        p.x_min = x_min;
        p.x_max = x_max;
        p.samples = samples;
        p.truncation = to_trunc(trunc);
        p.threads = threads;
        py::gil_scoped_release release;
        return make_corner_gamma_map(p);
      },
      py::arg("interior_angle") = CornerGammaPolicy{}.interior_angle, py::arg("mask_height") = 0.1,
      py::arg("x_min") = -1.0, py::arg("x_max") = 1.0, py::arg("samples") = 201,
      py::arg("truncation") = std::pair{10, 10}, py::arg("threads") = 0u);

  m.def(
      "spot_size",
      [](double hole_radius, GammaMap gamma_map, double n_sin_alpha, double tau0) {
        StedParams p;
        p.hole_radius = hole_radius;
        p.gamma_map = std::move(gamma_map);
        p.n_sin_alpha = n_sin_alpha;
        p.tau0 = tau0;
        const SpotResult s = spot_size(p);
        py::dict d;
        d["delta_r_half"] = s.delta_r_half;
        d["p_max"] = s.p_max;
        d["r_peak"] = s.r_peak;
        d["root_left"] = s.root_left;
        d["root_right"] = s.root_right;
        d["left_clipped"] = s.left_clipped;
        return d;
      },
      py::arg("hole_radius"), py::arg("gamma_map"), py::arg("n_sin_alpha") = 1.0, py::arg("tau0") = 1.0,
      "gamma_map is any callable r -> Gamma/Gamma0.");

  m.def(
      "run_scan",
      [](const std::string& mode, const std::string& config_json) {
        const auto parsed = mode_from_name(mode);
        if (!parsed) throw ConfigError("mode", "unknown mode '" + mode + "'");
        const ScanConfig cfg = parse_scan_config(config_json, *parsed);
        ScanOutput out;
        {
          py::gil_scoped_release release;
          out = run_scan(cfg, config_json);
        }
        py::dict d;
        d["data"] = out.data;
        d["manifest"] = out.manifest;
        d["unconverged"] = out.unconverged;
        d["tolerance_failed"] = out.tolerance_failed;
        return d;
      },
      py::arg("mode"), py::arg("config_json"),
      "Runs decay-map, cdr-map, green-point, convergence or sted-spot from a JSON configuration.");
}
