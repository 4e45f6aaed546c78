#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qes/oracle.hpp"
#include "qes/physics.hpp"
#include "qes/recurrence.hpp"
#include "qes/variational.hpp"

namespace py = pybind11;
using namespace qes;

namespace {

Spin spin_from(int sigma) {
  if (sigma != 1 && sigma != -1) throw Error(ErrorKind::InvalidArgument, "sigma must be +1 or -1");
  return sigma > 0 ? Spin::Up : Spin::Down;
}

Branch branch_from(const std::string& name) {
  if (name == "particle") return Branch::Particle;
  if (name == "antiparticle") return Branch::Antiparticle;
  throw Error(ErrorKind::InvalidArgument, "branch must be 'particle' or 'antiparticle'");
}

SolveOptions solve_options(const std::string& provider, int basis_size) {
  SolveOptions opts;
  opts.ritz.basis_size = basis_size;
  if (provider == "fd") opts.provider = SpectrumProvider::FiniteDifference;
  else if (provider != "ritz") throw Error(ErrorKind::InvalidArgument, "provider must be 'ritz' or 'fd'");
  return opts;
}

py::dict level_dict(const EnergyLevel& lv) {
  py::dict d;
  d["E"] = lv.E;
  d["W"] = lv.W;
  d["level"] = lv.level;
  d["branch"] = to_string(lv.branch);
  d["defect"] = lv.defect;
  return d;
}

py::list scan_rows(const std::vector<ScanRow>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["omega"] = r.omega;
    d["ok"] = r.ok;
    d["E_particle"] = r.E_particle;
    d["E_antiparticle"] = r.E_antiparticle;
    d["W"] = r.W;
    d["defect"] = r.defect;
    d["error"] = r.error;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Singular oscillator spectra: truncation solutions, Ritz and finite-difference solvers";

  static py::exception<Error> qes_error(m, "QesError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = qes_error;
      py::object instance = err(std::string(e.what()));
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(qes_error.ptr(), instance.ptr());
    }
  });

  m.def("truncation_energy", &truncation_energy, py::arg("n"), py::arg("s"), py::arg("b"));
  m.def(
      "truncation_roots", [](int n, double s, double b) { return truncation_roots(n, s, b); }, py::arg("n"),
      py::arg("s") = 0.0, py::arg("b") = 0.0, "Ascending real roots a of c_{n+1}(a, b) = 0.");
  m.def(
      "truncation_polynomial", [](int n) { return build_truncation_polynomial_symbolic(n).to_string(); },
      py::arg("n"), "Canonical c_{n+1}(a, b, s) as an expanded string.");
  m.def(
      "closed_form_solution",
      [](int n, int i, double s, double b) {
        const TruncationSolution sol = assemble_polynomial_solution(n, i, s, b);
        py::dict d;
        d["n"] = sol.n;
        d["i"] = sol.i;
        d["a"] = sol.a_root;
        d["W"] = sol.W;
        d["coeffs"] = sol.coeffs;
        d["tail"] = sol.tail;
        d["residual"] = ode_residual(sol);
        d["norm"] = norm_check(sol);
        return d;
      },
      py::arg("n"), py::arg("i"), py::arg("s") = 0.0, py::arg("b") = 0.0);
  m.def(
      "curves",
      [](int n, double s, const std::vector<double>& b_values) {
        const CurveTable t = curve_sweep(n, s, b_values);
        Eigen::MatrixXd out(static_cast<Eigen::Index>(t.rows.size()), n + 1);
        for (std::size_t r = 0; r < t.rows.size(); ++r)
          for (int i = 0; i <= n; ++i) out(static_cast<Eigen::Index>(r), i) = t.rows[r].roots[i];
        return out;
      },
      py::arg("n"), py::arg("s"), py::arg("b_values"), "Branch table, one row per b and one column per root.");

  py::class_<RitzSolver>(m, "RitzSolver")
      .def(py::init([](double gamma_sq, int basis_size) {
             RitzOptions opts;
             opts.basis_size = basis_size;
             return RitzSolver(gamma_sq, opts);
           }),
           py::arg("gamma_sq"), py::arg("basis_size") = 30)
      .def_property_readonly("basis_size", [](const RitzSolver& s) { return s.reduced().size(); })
      .def_property_readonly("s", [](const RitzSolver& s) { return s.reduced().s(); })
      .def("eigenvalues", &RitzSolver::eigenvalues, py::arg("a"), py::arg("b"))
      .def("eigenvalue", &RitzSolver::eigenvalue, py::arg("a"), py::arg("b"), py::arg("level"))
      .def(
          "hellmann_feynman",
          [](const RitzSolver& s, double a, double b, int level) {
            const auto r = hellmann_feynman_check(s, a, b, level);
            py::dict d;
            d["dW_da"] = r.dW_da_fd;
            d["mean_inv_x"] = r.mean_inv_x;
            d["dW_db"] = r.dW_db_fd;
            d["mean_x"] = r.mean_x;
            d["defect_a"] = r.defect_a;
            d["defect_b"] = r.defect_b;
            return d;
          },
          py::arg("a"), py::arg("b"), py::arg("level") = 0);

  m.def(
      "fd_spectrum",
      [](double gamma_sq, double a, double b, int levels, double x_max, int points) {
        return fd_spectrum(make_parameters(gamma_sq, a, b), GridSpec{x_max, points}, levels);
      },
      py::arg("gamma_sq"), py::arg("a"), py::arg("b"), py::arg("levels") = 3, py::arg("x_max") = GridSpec{}.x_max,
      py::arg("points") = GridSpec{}.points);

  m.def(
      "scenario1_energy",
      [](double m_, double omega, int l, int sigma, double coupling, int level, const std::string& branch,
         const std::string& provider, int basis_size) {
        return level_dict(solve_scenario1_energy({m_, omega, l, spin_from(sigma), coupling}, level,
                                                 branch_from(branch), solve_options(provider, basis_size)));
      },
      py::arg("m"), py::arg("omega"), py::arg("l") = 0, py::arg("sigma") = 1, py::arg("coupling") = 0.0,
      py::arg("level") = 0, py::arg("branch") = "particle", py::arg("provider") = "ritz",
      py::arg("basis_size") = 30);
  m.def(
      "scenario2_energy",
      [](double m_, double omega, int l, int sigma, double coupling, int level, const std::string& branch,
         const std::string& provider, int basis_size) {
        return level_dict(solve_scenario2_energy({m_, omega, l, spin_from(sigma), coupling}, level,
                                                 branch_from(branch), solve_options(provider, basis_size)));
      },
      py::arg("m"), py::arg("omega"), py::arg("l") = 0, py::arg("sigma") = 1, py::arg("coupling") = 0.0,
      py::arg("level") = 0, py::arg("branch") = "particle", py::arg("provider") = "ritz",
      py::arg("basis_size") = 30);
  m.def(
      "frequency_scan",
      [](int scenario, const std::vector<double>& omegas, double m_, int l, int sigma, double coupling, int level,
         const std::string& provider, int basis_size) {
        const SolveOptions opts = solve_options(provider, basis_size);
        if (scenario == 1) {
          return scan_rows(frequency_scan(Scenario1Params{m_, 1.0, l, spin_from(sigma), coupling}, level, omegas, opts));
        }
        if (scenario == 2) {
          return scan_rows(frequency_scan(Scenario2Params{m_, 1.0, l, spin_from(sigma), coupling}, level, omegas, opts));
        }
        throw Error(ErrorKind::InvalidArgument, "scenario must be 1 or 2");
      },
      py::arg("scenario"), py::arg("omegas"), py::arg("m") = 1.0, py::arg("l") = 0, py::arg("sigma") = 1,
      py::arg("coupling") = 0.0, py::arg("level") = 0, py::arg("provider") = "ritz", py::arg("basis_size") = 30);
}
