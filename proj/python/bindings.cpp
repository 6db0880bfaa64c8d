#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helical/constructions.hpp"
#include "helical/continuum.hpp"
#include "helical/energy.hpp"
#include "helical/io.hpp"
#include "helical/lattice.hpp"
#include "helical/optimize.hpp"
#include "helical/sweep.hpp"
#include "helical/topology.hpp"

namespace py = pybind11;
using namespace helical;

namespace {

py::array_t<double> spins_array(const SpinField& u) {
  const int n = u.grid.n();
  py::array_t<double> out({n, n, 2});
  auto a = out.mutable_unchecked<3>();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 s = u.at(i, j);
      a(j, i, 0) = s.x;
      a(j, i, 1) = s.y;
    }
  }
  return out;
}

SpinField spins_from_array(const Grid& g, py::array_t<double, py::array::c_style> arr) {
  auto a = arr.unchecked<3>();
  const int n = g.n();
  if (a.shape(0) != n || a.shape(1) != n || a.shape(2) != 2) {
    throw std::invalid_argument("expected an (n, n, 2) spin array");
  }
  SpinField u(g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) u.at(i, j) = Vec2{a(j, i, 0), a(j, i, 1)};
  }
  return u;
}

py::dict breakdown_dict(const EnergyBreakdown& e) {
  py::dict d;
  d["e_hor"] = e.e_hor;
  d["e_ver"] = e.e_ver;
  d["total"] = e.total;
  d["well_hor"] = e.well_hor;
  d["well_ver"] = e.well_ver;
  d["interface_hor"] = e.interface_hor;
  d["interface_ver"] = e.interface_ver;
  d["n_vortices"] = e.n_vortices;
  d["reason"] = e.reason;
  return d;
}

ContinuumField named_field(const std::string& name, double sigma, double gamma) {
  if (name == "flat") return ContinuumField::flat(sigma, gamma);
  if (name == "shear") return ContinuumField::shear(sigma, gamma);
  throw std::invalid_argument("unknown test field: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice spin-system engine: frustrated-lattice energies, competitor "
            "constructions, vortex topology and scaling-law sweeps.";

  py::class_<Grid>(m, "Grid")
      .def(py::init<double>(), py::arg("eps"))
      .def_property_readonly("eps", &Grid::eps)
      .def_property_readonly("n", &Grid::n)
      .def("__repr__", [](const Grid& g) {
        return "Grid(eps=" + format17(g.eps()) + ", n=" + std::to_string(g.n()) + ")";
      });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double>(), py::arg("delta_hor"), py::arg("delta_ver"))
      .def_static("isotropic", &ModelParams::isotropic, py::arg("delta"))
      .def_property_readonly("delta_hor", &ModelParams::delta_hor)
      .def_property_readonly("delta_ver", &ModelParams::delta_ver)
      .def_property_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("theta_opt_hor", &ModelParams::theta_opt_hor)
      .def_property_readonly("theta_opt_ver", &ModelParams::theta_opt_ver);

  py::class_<SpinField>(m, "SpinField")
      .def_readonly("grid", &SpinField::grid)
      .def_property_readonly("spins", &spins_array)
      .def_static("from_array", &spins_from_array, py::arg("grid"), py::arg("spins"));

  m.def("q_fn", &q_fn, py::arg("theta1"), py::arg("theta2"));
  m.def("p_fn", &p_fn, py::arg("theta1"), py::arg("theta2"));

  m.def("ferromagnet", &ferromagnet, py::arg("grid"));
  m.def("helix", &helix, py::arg("grid"), py::arg("params"), py::arg("sign_hor") = 1,
        py::arg("sign_ver") = 1);
  m.def(
      "branching",
      [](const Grid& g, const ModelParams& p, int generations, double lambda, bool periodic) {
        BranchingSpec spec = BranchingSpec::defaults(g, p);
        if (generations > 0) spec.generations = generations;
        if (lambda > 0.0) spec.lambda = lambda;
        return periodic ? branching_periodic(g, p, spec) : branching(g, p, spec);
      },
      py::arg("grid"), py::arg("params"), py::arg("generations") = 0, py::arg("lambda") = 0.0,
      py::arg("periodic") = false);
  m.def(
      "vortex_competitor",
      [](const Grid& g, const ModelParams& p, bool periodic) {
        return periodic ? vortex_periodic(g, p) : vortex_competitor(g, p);
      },
      py::arg("grid"), py::arg("params"), py::arg("periodic") = false);
  m.def("designed_vortex_count", &designed_vortex_count, py::arg("grid"), py::arg("params"));

  m.def(
      "energy_direct",
      [](const SpinField& u, const ModelParams& p) { return breakdown_dict(energy_direct(u, p)); },
      py::arg("field"), py::arg("params"));
  m.def(
      "energy_reformulated",
      [](const SpinField& u, const ModelParams& p) {
        return breakdown_dict(energy_reformulated(u, p));
      },
      py::arg("field"), py::arg("params"));
  m.def(
      "renormalized_hn",
      [](const SpinField& u, const ModelParams& p) {
        const RenormalizedEnergy r = renormalized_Hn(u, p);
        return py::make_tuple(r.value, r.reason);
      },
      py::arg("field"), py::arg("params"));

  m.def(
      "vortex_count",
      [](const SpinField& u) {
        return static_cast<std::int64_t>(vortices(angles_from_spins(u)).count());
      },
      py::arg("field"));
  m.def(
      "vortex_list",
      [](const SpinField& u) {
        std::vector<std::tuple<int, int, int>> out;
        for (const Vortex& v : vortices(angles_from_spins(u)).list) {
          out.emplace_back(v.i, v.j, v.winding);
        }
        return out;
      },
      py::arg("field"));
  m.def(
      "discrete_curl",
      [](const SpinField& u) {
        const CurlField c = discrete_curl(angles_from_spins(u));
        const int mm = u.grid.n() - 1;
        py::array_t<double> out({mm, mm});
        auto a = out.mutable_unchecked<2>();
        for (int j = 0; j < mm; ++j) {
          for (int i = 0; i < mm; ++i) a(j, i) = c.at(i, j);
        }
        return out;
      },
      py::arg("field"));

  m.def(
      "minimize",
      [](const SpinField& init, const ModelParams& p, int max_iter, double tol,
         const std::string& method, std::uint64_t seed, double penalty) {
        OptimizeOptions opts;
        opts.max_iter = max_iter;
        opts.grad_tol = tol;
        opts.method = method == "anneal" ? OptimizeMethod::AnnealedRestarts
                                         : OptimizeMethod::GradientDescent;
        opts.seed = seed;
        opts.periodic_penalty = penalty;
        const MinimizeResult r = minimize(init, p, opts);
        py::list trace;
        for (const TracePoint& t : r.trace) {
          trace.append(py::make_tuple(t.iter, t.energy, t.grad_norm));
        }
        return py::make_tuple(r.field, r.final_energy, trace);
      },
      py::arg("init"), py::arg("params"), py::arg("max_iter") = 2000, py::arg("tol") = 1e-8,
      py::arg("method") = "gd", py::arg("seed") = 0, py::arg("penalty") = 0.0);

  m.def(
      "scaling_s",
      [](double eps, double delta) {
        const ScalingValue v = scaling_s(eps, delta);
        return py::make_tuple(v.value, std::string(regime_name(v.regime)));
      },
      py::arg("eps"), py::arg("delta"));

  m.def(
      "gamma_table",
      [](const std::string& field, double sigma, double gamma, int n_min, int n_max,
         int quad_res) {
        const ContinuumField f = named_field(field, sigma, gamma);
        const GammaSchedule sched = GammaSchedule::dyadic(n_min, n_max, sigma, gamma);
        std::vector<std::tuple<int, double, double, double, double, double>> rows;
        for (const GammaRow& r : gamma_experiment(f, sched, quad_res)) {
          rows.emplace_back(r.level, r.eps, r.delta_ver, r.h_n, r.h_continuum, r.gap);
        }
        return rows;
      },
      py::arg("field"), py::arg("sigma") = 1.0, py::arg("gamma") = 1.0, py::arg("n_min") = 4,
      py::arg("n_max") = 6, py::arg("quad_res") = 256);

  m.def("write_spinfield", &write_spinfield, py::arg("path"), py::arg("field"));
  m.def("read_spinfield", &read_spinfield, py::arg("path"));
}
