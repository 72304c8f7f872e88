#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "qnmcav/dos.hpp"
#include "qnmcav/errors.hpp"
#include "qnmcav/feynman.hpp"
#include "qnmcav/greens.hpp"
#include "qnmcav/quantization.hpp"
#include "qnmcav/special.hpp"
#include "qnmcav/thermal.hpp"
#include "qnmcav/universe.hpp"

namespace py = pybind11;
using namespace qnmcav;

namespace {

SeriesConfig series(int nterms, int matsubara) {
  SeriesConfig c;
  if (nterms > 0) c.qnm_terms = nterms;
  if (matsubara > 0) c.matsubara_terms = matsubara;
  return c;
}

py::tuple result_tuple(const SeriesResult& r) { return py::make_tuple(r.value, r.tail_estimate); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quasinormal modes of an open one-dimensional scalar cavity";

  static py::exception<Error> exc(m, "QnmError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      py::object inst = err(e.what());
      inst.attr("code") = to_string(e.code());
      inst.attr("input_error") = is_input_error(e.code());
      PyErr_SetObject(err.ptr(), inst.ptr());
    }
  });

  py::class_<Segment>(m, "Segment")
      .def(py::init<double, double>(), py::arg("x0"), py::arg("rho"))
      .def_readwrite("x0", &Segment::x0)
      .def_readwrite("rho", &Segment::rho);

  py::class_<CavityProfile>(m, "CavityProfile")
      .def(py::init([](std::vector<Segment> s, double a, double rho_out) { return make_profile(std::move(s), a, rho_out); }),
           py::arg("segments"), py::arg("a"), py::arg("rho_out") = 1.0)
      .def_readonly("segments", &CavityProfile::segments)
      .def_readonly("a", &CavityProfile::a)
      .def_readonly("rho_out", &CavityProfile::rho_out)
      .def_property_readonly("n0", &CavityProfile::n0)
      .def_property_readonly("optical_length", &CavityProfile::optical_length)
      .def("to_json", [](const CavityProfile& p) { return profile_to_json(p); });

  m.def("rod", &make_dielectric_rod, py::arg("n"), py::arg("n0") = 1.0, py::arg("a") = 1.0);
  m.def("profile_from_json", [](const std::string& s) {
    auto p = profile_from_json(s);
    require_valid(p);
    return p;
  });
  m.def("validate", [](const std::vector<Segment>& s, double a, double rho_out) {
    std::vector<std::string> out;
    for (auto v : validate(CavityProfile{s, a, rho_out})) out.emplace_back(to_string(v));
    return out;
  }, py::arg("segments"), py::arg("a"), py::arg("rho_out") = 1.0);

  py::class_<QnmMode>(m, "QnmMode")
      .def_readonly("j", &QnmMode::j)
      .def_readonly("omega", &QnmMode::omega)
      .def_readonly("f_a", &QnmMode::f_a)
      .def("__call__", &QnmMode::value, py::arg("x"))
      .def("derivative", &QnmMode::derivative, py::arg("x"))
      .def("__repr__", [](const QnmMode& q) {
        return "QnmMode(j=" + std::to_string(q.j) + ", omega=" + std::to_string(q.omega.real()) +
               (q.omega.imag() < 0 ? "" : "+") + std::to_string(q.omega.imag()) + "j)";
      });

  py::class_<Spectrum>(m, "Spectrum")
      .def("__len__", &Spectrum::size)
      .def("mode", &Spectrum::mode, py::arg("j"))
      .def_property_readonly("representatives", &Spectrum::representatives)
      .def("all_modes", &Spectrum::all_modes);

  m.def("qnm_spectrum", &qnm_spectrum, py::arg("profile"), py::arg("count"), py::arg("tol") = 1e-13);
  m.def("rod_qnm_frequency", [](double n, double n0, double a, int j) { return rod_qnm_frequency({n, n0, a}, j); },
        py::arg("n"), py::arg("n0"), py::arg("a"), py::arg("j"));

  m.def("retarded_green_exact", &retarded_green_exact, py::arg("profile"), py::arg("x"), py::arg("y"), py::arg("omega"));
  m.def("retarded_green_qnm",
        [](const Spectrum& s, double x, double y, cplx w, int n) {
          return result_tuple(retarded_green_qnm_freq(s, x, y, w, series(n, 0)));
        },
        py::arg("spectrum"), py::arg("x"), py::arg("y"), py::arg("omega"), py::arg("nterms") = 0);
  m.def("dissipation_residual", &verify_dissipation_identity, py::arg("profile"), py::arg("x"), py::arg("y"),
        py::arg("omega"));

  m.def("bose", [](double beta, cplx w) { return ThermalState(beta).bose(w); }, py::arg("beta"), py::arg("omega"));
  m.def("correlator",
        [](const std::string& form, const Spectrum& s, const CavityProfile& p, double x, double y, double w,
           double beta, int n, int mats) -> py::tuple {
          ThermalState th(beta);
          auto cfg = series(n, mats);
          if (form == "diagonal") return result_tuple(correlator_diagonal(s, x, y, w, th, cfg));
          if (form == "nondiagonal") return result_tuple(correlator_nondiagonal(s, x, y, w, th, cfg));
          if (form == "closed") {
            auto rod = as_rod(p);
            if (!rod) throw Error(ErrorCode::InvalidInput, "closed form needs a rod");
            return py::make_tuple(correlator_closed_rod(*rod, x, y, w, th), 0.0);
          }
          if (form == "subtracted") return result_tuple(subtracted_correlator(s, x, y, w, th, cfg));
          if (form == "realtime") return py::make_tuple(correlator_realtime(s, p, x, y, w, th, cfg), 0.0);
          throw Error(ErrorCode::InvalidInput, "unknown form " + form);
        },
        py::arg("form"), py::arg("spectrum"), py::arg("profile"), py::arg("x"), py::arg("y"), py::arg("omega_or_t"),
        py::arg("beta") = std::numeric_limits<double>::infinity(), py::arg("nterms") = 0, py::arg("matsubara") = 0);

  m.def("local_dos",
        [](const std::string& src, const Spectrum& s, const CavityProfile& p, double x, double w, int n) {
          DosSource d = src == "exact" ? DosSource::Exact
                        : src == "diagonal"  ? DosSource::Diagonal
                        : src == "nondiagonal" ? DosSource::Nondiagonal
                                                 : throw Error(ErrorCode::InvalidInput, "unknown source " + src);
          return local_dos(d, s, p, x, w, series(n, 0));
        },
        py::arg("source"), py::arg("spectrum"), py::arg("profile"), py::arg("x"), py::arg("omega"), py::arg("nterms") = 0);
  m.def("local_dos_exact", &local_dos_exact, py::arg("profile"), py::arg("x"), py::arg("omega"));
  m.def("unit_weight",
        [](const CavityProfile& p, const Spectrum& s, int j) {
          auto u = unit_weight_integral(p, s, j);
          py::dict d;
          d["j"] = u.j;
          d["weight"] = u.weight;
          d["window"] = py::make_tuple(u.window.center, u.window.halfwidth);
          d["error_budget"] = u.error_budget;
          return d;
        },
        py::arg("profile"), py::arg("spectrum"), py::arg("j"));
  m.def("surface_ratio", &surface_ratio, py::arg("mode"));

  m.def("feynman",
        [](const std::string& form, const Spectrum& s, const CavityProfile& p, double x, double y, double w, int n) {
          PropagatorForm f = form == "nondiagonal"    ? PropagatorForm::Nondiagonal
                             : form == "diagonal"     ? PropagatorForm::Diagonal
                             : form == "diagonal-alt" ? PropagatorForm::DiagonalAlt
                             : form == "closed"       ? PropagatorForm::ClosedRod
                             : form == "exact"        ? PropagatorForm::Exact
                                                      : throw Error(ErrorCode::InvalidInput, "unknown form " + form);
          return result_tuple(feynman(f, s, p, x, y, w, series(n, 0)));
        },
        py::arg("form"), py::arg("spectrum"), py::arg("profile"), py::arg("x"), py::arg("y"), py::arg("omega"),
        py::arg("nterms") = 0);

  m.def("commutator",
        [](const QnmMode& j, const QnmMode& k, const CavityProfile& p, bool creation) {
          return py::make_tuple(commutator_integral(j, k, p, creation), commutator_surface(j, k, creation));
        },
        py::arg("j"), py::arg("k"), py::arg("profile"), py::arg("creation") = false);
  m.def("energy_balance",
        [](const QnmMode& q, const CavityProfile& p) {
          auto e = energy_balance_check(q, p);
          return py::make_tuple(e.energy, e.flux, e.residual);
        },
        py::arg("mode"), py::arg("profile"));

  m.def("mu_compare",
        [](double n, double n0, double a, double Lambda, const std::string& what, double x, double w, double beta) {
          DielectricRod rod{n, n0, a};
          auto u = universe_modes_between(rod, Lambda, 0.0, 1.5 * w + 0.5);
          if (what == "correlator") {
            ThermalState th(beta);
            return py::make_tuple(correlator_closed_rod(rod, x, x, w, th), mu_correlator(u, x, x, w, th));
          }
          if (what == "dos")
            return py::make_tuple(cplx(local_dos_exact(make_dielectric_rod(n, n0, a), x, w)), cplx(mu_dos(u, x, w)));
          throw Error(ErrorCode::InvalidInput, "compare correlator or dos");
        },
        py::arg("n"), py::arg("n0"), py::arg("a"), py::arg("Lambda"), py::arg("compare"), py::arg("x"),
        py::arg("omega"), py::arg("beta") = 1.0);

  m.def("exp_integral_E1", &exp_integral_E1, py::arg("z"));
}
