#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "solvstate/errors.hpp"
#include "solvstate/json_io.hpp"
#include "solvstate/measures.hpp"
#include "solvstate/poschl_teller.hpp"
#include "solvstate/states.hpp"
#include "solvstate/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace solvstate;

namespace {

TruncationOptions truncation(double tail_tol, std::size_t max_dim) {
  TruncationOptions t;
  t.tail_tol = tail_tol;
  if (max_dim > 0) t.max_dim = max_dim;
  return t;
}

py::dict report_dict(const MomentReport& r) { return py::module_::import("json").attr("loads")(io::to_json(r).dump()); }

}  // namespace

PYBIND11_MODULE(_solvstate, m) {
  m.doc() = "Photon-added coherent states of exactly solvable Hamiltonians";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  py::class_<Spectrum>(m, "Spectrum")
      .def_static("poschl_teller", &Spectrum::poschl_teller, "kappa"_a, "kappa_prime"_a)
      .def_static("poschl_teller_lambda", &Spectrum::poschl_teller_lambda, "lam"_a)
      .def_static("harmonic", &Spectrum::harmonic)
      .def_static("from_table", &Spectrum::from_table, "energies"_a)
      .def_static("from_json", [](const std::string& s) { return io::spectrum_from_json(io::json::parse(s)); })
      .def("energy", &Spectrum::energy, "n"_a)
      .def_property_readonly("lam", &Spectrum::lambda)
      .def_property_readonly("name", &Spectrum::name)
      .def("to_json", [](const Spectrum& s) { return io::to_json(s).dump(); });

  py::class_<FockState>(m, "FockState")
      .def_readonly("offset", &FockState::offset)
      .def_readonly("alpha", &FockState::alpha)
      .def_readonly("coefficients", &FockState::coefficients)
      .def_readonly("tail_bound", &FockState::tail_bound)
      .def_readonly("converged", &FockState::converged)
      .def("norm_squared", &FockState::norm_squared)
      .def("amplitude", &FockState::amplitude, "level"_a)
      .def("__len__", &FockState::size)
      .def("to_json", [](const FockState& s) { return io::to_json(s).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::fock_state_from_json(io::json::parse(s)); });

  m.def("xi_from_z", &xi_from_z, "z"_a);

  m.def(
      "gk_state",
      [](const Spectrum& s, Complex z, double alpha, std::size_t k, double tail_tol, std::size_t max_dim) {
        return gk_state(s, GKLabel{z, alpha, k}, truncation(tail_tol, max_dim));
      },
      "spectrum"_a, "z"_a, "alpha"_a = 0.0, "k"_a = 0, "tail_tol"_a = 1e-30, "max_dim"_a = 0);
  m.def(
      "kp_state",
      [](double lam, Complex xi, double alpha, std::size_t k, bool paper_literal, double tail_tol, std::size_t max_dim) {
        return kp_state_pt(lam, KPLabel{xi, alpha, k}, truncation(tail_tol, max_dim),
                           paper_literal ? KpExponent::DoubledLambda : KpExponent::Corrected);
      },
      "lam"_a, "xi"_a, "alpha"_a = 0.0, "k"_a = 0, "paper_literal"_a = false, "tail_tol"_a = 1e-30, "max_dim"_a = 0);
  m.def(
      "kp_state_general",
      [](const Spectrum& s, Complex z, double alpha, std::size_t k, std::size_t jmax) {
        return kp_state_general(s, z, alpha, k, {}, jmax);
      },
      "spectrum"_a, "z"_a, "alpha"_a = 0.0, "k"_a = 0, "jmax"_a = 40);
  m.def(
      "displace_ground", [](const Spectrum& s, Complex z, double alpha) { return displace_ground(s, z, alpha); },
      "spectrum"_a, "z"_a, "alpha"_a = 0.0);

  m.def(
      "gk_overlap",
      [](const Spectrum& s, Complex z1, Complex z2, double a1, double a2, std::size_t k) {
        return gk_overlap(s, GKLabel{z1, a1, k}, GKLabel{z2, a2, k}).value;
      },
      "spectrum"_a, "z1"_a, "z2"_a, "alpha1"_a = 0.0, "alpha2"_a = 0.0, "k"_a = 0);
  m.def(
      "kp_overlap",
      [](double lam, Complex x1, Complex x2, double a1, double a2, std::size_t k) {
        return kp_overlap_pt(lam, KPLabel{x1, a1, k}, KPLabel{x2, a2, k}).value;
      },
      "lam"_a, "xi1"_a, "xi2"_a, "alpha1"_a = 0.0, "alpha2"_a = 0.0, "k"_a = 0);
  m.def(
      "gk_norm_constant", [](const Spectrum& s, double x, std::size_t k) { return gk_norm_constant(s, x, k).value.value(); },
      "spectrum"_a, "x"_a, "k"_a = 0);
  m.def(
      "kp_norm_constant", [](double lam, double x, std::size_t k) { return kp_norm_constant_pt(lam, x, k).value.value(); },
      "lam"_a, "x"_a, "k"_a = 0);
  m.def("eigen_residual", &eigen_residual, "spectrum"_a, "state"_a, "z"_a);
  m.def("evolve", &evolve, "state"_a, "spectrum"_a, "t"_a);
  m.def("inner_product", &inner_product, "bra"_a, "ket"_a);

  m.def(
      "mellin_check", [](double lam, std::size_t k, std::size_t n_max) { return report_dict(mellin_gamma_check_pt(lam, k, n_max)); },
      "lam"_a, "k"_a, "n_max"_a = 30);
  m.def(
      "errata_study",
      [](double lam, std::size_t k, std::size_t n_max) {
        py::list out;
        for (const auto& r : kp_errata_study(lam, k, n_max)) out.append(report_dict(r));
        return out;
      },
      "lam"_a, "k"_a, "n_max"_a = 10);

  auto ptm = m.def_submodule("pt", "Poschl-Teller well in position space");
  py::class_<pt::PTParams>(ptm, "Params")
      .def(py::init([](double kappa, double kappa_prime, double a) {
             pt::PTParams p{kappa, kappa_prime, a};
             p.validate();
             return p;
           }),
           "kappa"_a = 2.0, "kappa_prime"_a = 2.0, "a"_a = 1.0)
      .def_readonly("kappa", &pt::PTParams::kappa)
      .def_readonly("kappa_prime", &pt::PTParams::kappa_prime)
      .def_readonly("a", &pt::PTParams::a)
      .def_property_readonly("length", &pt::PTParams::length);
  ptm.def("potential", &pt::potential, "params"_a, "x"_a);
  ptm.def("superpotential", &pt::superpotential, "params"_a, "x"_a);
  ptm.def("eigenfunction", &pt::eigenfunction, "params"_a, "n"_a, "x"_a);
  ptm.def("partner_eigenfunction", &pt::partner_eigenfunction, "params"_a, "n"_a, "x"_a);
  ptm.def("level_energy", &pt::level_energy, "params"_a, "n"_a);
  ptm.def(
      "u_element",
      [](const pt::PTParams& p, std::size_t n, std::size_t mm) {
        const auto u = pt::u_matrix_element(p, n, mm);
        return py::make_tuple(u.value, u.flagged);
      },
      "params"_a, "n"_a, "m"_a);
  ptm.def("u_element_quadrature", &pt::u_matrix_element_quadrature, "params"_a, "n"_a, "m"_a);

  m.def(
      "verify",
      [](const std::string& suite, double lam, std::size_t k, double alpha) {
        verify::Config cfg{lam, k, alpha};
        const verify::Report r = verify::run(suite, cfg);
        py::list failures;
        for (const auto& c : r.failures()) failures.append(c.suite + ": " + c.name);
        return py::dict("passed"_a = r.passed(), "assertions"_a = r.assertion_count(), "failures"_a = failures,
                        "errata_tables"_a = r.errata.size());
      },
      "suite"_a = "all", "lam"_a = 4.0, "k"_a = 2, "alpha"_a = 0.3);
}
