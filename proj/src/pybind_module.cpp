#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "axisym/diagnostics.hpp"
#include "axisym/runner.hpp"
#include "axisym/snapshot_io.hpp"

namespace py = pybind11;
using namespace axisym;

namespace {

ScalarFieldRZ field_from_callable(int n_rho, int n_beta, double cluster_rho, double cluster_beta,
                                  const std::string& symmetry,
                                  const std::function<double(double, double)>& f) {
    GridSpec gs;
    gs.n_rho = n_rho;
    gs.n_beta = n_beta;
    gs.cluster_rho = cluster_rho;
    gs.cluster_beta = cluster_beta;
    if (symmetry == "odd") gs.symmetry = Symmetry::OddInZ;
    else if (symmetry == "none") gs.symmetry = Symmetry::None;
    else throw ConfigError("symmetry must be 'odd' or 'none'");
    return ScalarFieldRZ(make_grid(gs), [&f](PointRZ p) { return f(p.r, p.z); });
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Axisymmetric Euler (no swirl) laboratory on the unit ball";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<SingularKernelError>(m, "SingularKernelError");
    py::register_exception<NumericalError>(m, "NumericalError");

    // special function F and derivatives
    m.def("f_oracle", [](double s) { return specfun::f_oracle(s); },
          "Certified quadrature evaluation of F(s)");
    m.def("f_fast", [](double s) { return specfun::f_fast(s); });
    m.def("f_prime", [](double s) { return specfun::f_prime(s); });
    m.def("f_second", [](double s) { return specfun::f_second(s); });

    // kernels
    m.def("image_point", [](double r, double z) {
        const PointRZ p = kernels::image_point({r, z});
        return std::make_pair(p.r, p.z);
    });
    m.def("greens_g", [](double rb, double zb, double r, double z) {
        return kernels::greens_g({rb, zb}, {r, z});
    });
    m.def("kernel_k", [](double rb, double zb, double r, double z) {
        return kernels::kernel_k({rb, zb}, {r, z});
    });
    m.def("kernel_j", [](double rb, double zb, double r, double z) {
        return kernels::kernel_j({rb, zb}, {r, z});
    });
    m.def("symmetrized_kernel", [](double rb, double zb, double r, double z) {
        const auto kp = kernels::symmetrized_kernel({rb, zb}, {r, z});
        return std::make_pair(kp.k, kp.j);
    });

    // fields
    py::class_<ScalarFieldRZ>(m, "ScalarFieldRZ")
        .def("interpolate",
             [](const ScalarFieldRZ& w, double r, double z) { return w.interpolate({r, z}, true); })
        .def("sup_norm", &ScalarFieldRZ::sup_norm)
        .def("sup0", &ScalarFieldRZ::sup0)
        .def("time", &ScalarFieldRZ::time)
        .def_property_readonly("shape", [](const ScalarFieldRZ& w) {
            return std::make_pair(w.grid().n_rho(), w.grid().n_beta());
        });
    m.def("make_field", &field_from_callable, py::arg("n_rho"), py::arg("n_beta"),
          py::arg("cluster_rho"), py::arg("cluster_beta"), py::arg("symmetry"), py::arg("f"),
          "Sample w(r, z) onto a polar grid of the half-disk");
    m.def("read_snapshot", &read_snapshot);
    m.def("write_snapshot", &write_snapshot);

    // Biot-Savart evaluation
    py::class_<BiotSavartOperator>(m, "BiotSavartOperator")
        .def(py::init([](const ScalarFieldRZ& w) { return BiotSavartOperator(w); }),
             py::keep_alive<1, 2>())
        .def("velocity",
             [](const BiotSavartOperator& op, double r, double z) {
                 const auto u = op.velocity({r, z});
                 return std::make_pair(u.ur, u.uz);
             })
        .def("stream_function",
             [](const BiotSavartOperator& op, double r, double z) {
                 return op.stream_function({r, z});
             })
        .def("gradient", [](const BiotSavartOperator& op, double r, double z) {
            const auto g = op.gradient({r, z});
            return std::make_tuple(g.dur_dr, g.dur_dz, g.duz_dr, g.duz_dz);
        });

    // scenario
    py::class_<scenario::ScenarioParams>(m, "ScenarioParams")
        .def(py::init<>())
        .def_readwrite("eps", &scenario::ScenarioParams::eps)
        .def_readwrite("delta", &scenario::ScenarioParams::delta)
        .def_readwrite("big_n", &scenario::ScenarioParams::big_n)
        .def_readwrite("gamma", &scenario::ScenarioParams::gamma)
        .def_readwrite("inner_exponent", &scenario::ScenarioParams::inner_exponent);
    m.def("ks_initial_data",
          [](const scenario::ScenarioParams& p, int n, double cr, double cb) {
              return scenario::ks_initial_data(p, make_grid({n, n, cr, cb, Symmetry::OddInZ}));
          },
          py::arg("params"), py::arg("n"), py::arg("cluster_rho") = 2.0,
          py::arg("cluster_beta") = 2.0);
    m.def("in_region",
          [](const std::string& tag, double r, double z, const scenario::ScenarioParams& p,
             double aux_r, double aux_z) {
              if (tag == "S_N") return scenario::in_S_N({r, z}, p);
              if (tag == "Q") return scenario::in_Q({r, z}, {aux_r, aux_z}, p);
              if (tag == "D1") return scenario::in_D1({r, z}, p);
              if (tag == "D2") return scenario::in_D2({r, z}, p);
              if (tag == "O") return scenario::in_O({r, z}, aux_r, aux_z);
              throw ConfigError("unknown region tag " + tag);
          },
          py::arg("tag"), py::arg("r"), py::arg("z"), py::arg("params"), py::arg("aux_r") = 1.0,
          py::arg("aux_z") = 0.0);

    // transport
    m.def("advect",
          [](const ScalarFieldRZ& w, double dt, int steps, double cfl_limit) {
              SimState s{w.time(), w, {}};
              TimeStepSpec ts;
              ts.dt = dt;
              ts.cfl_limit = cfl_limit;
              for (int k = 0; k < steps; ++k) s = advect_step(s, ts);
              return s.w;
          },
          py::arg("w"), py::arg("dt"), py::arg("steps") = 1, py::arg("cfl_limit") = 6.0);

    // diagnostics
    m.def("grad_w_sup", &diagnostics::grad_w_sup);
    m.def("key_integral_q",
          [](double rb, double zb, const std::function<double(double, double)>& w,
             const scenario::ScenarioParams& p) {
              return diagnostics::key_integral_q(
                  {rb, zb}, [&w](PointRZ y) { return w(y.r, y.z); }, p);
          });
    m.def("double_exp_fit",
          [](const std::vector<double>& t, const std::vector<double>& g, double sup0) {
              const auto fit = diagnostics::double_exp_fit(t, g, sup0);
              return std::make_tuple(fit.loglog.slope, fit.loglog.r2, fit.guarded.slope);
          });

    // full runs
    m.def("run_simulation_text", [](const std::string& config_text) {
        const RunRecord rec = run_simulation(parse_config_text(config_text));
        regenerate_reports(rec.dir);
        return std::make_tuple(rec.dir, rec.steps, rec.t_final, rec.under_resolved);
    });
}
