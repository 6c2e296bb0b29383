// Copyright 2026 The cvsteer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "cvsteer/analytic.hpp"
#include "cvsteer/criteria.hpp"
#include "cvsteer/errors.hpp"
#include "cvsteer/langevin.hpp"
#include "cvsteer/lyapunov.hpp"
#include "cvsteer/report.hpp"
#include "cvsteer/sweep.hpp"

namespace py = pybind11;
using namespace cvsteer;

namespace {

Mode to_mode(const std::string &s) {
    if (s.size() != 1) {
        throw ValidationError("mode", "expected one of a, b, c");
    }
    return parse_mode(s[0]);
}

std::string mode_str(Mode m) { return std::string(1, mode_char(m)); }

std::vector<std::string> mode_strs(const std::vector<Mode> &modes) {
    std::vector<std::string> out;
    for (Mode m : modes) {
        out.push_back(mode_str(m));
    }
    return out;
}

py::object json_to_py(const Json &doc) {
    return py::module_::import("json").attr("loads")(doc.dump());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian steady states, steering and entanglement criteria";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<StabilityError>(m, "StabilityError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("kappa", &SystemParams::kappa)
        .def_readwrite("gamma_m", &SystemParams::gamma_m)
        .def_readwrite("gamma_a", &SystemParams::gamma_a)
        .def_readwrite("g_m", &SystemParams::g_m)
        .def_readwrite("g_a", &SystemParams::g_a)
        .def_readwrite("n", &SystemParams::n)
        .def_readwrite("n0", &SystemParams::n0)
        .def_readwrite("omega_m", &SystemParams::omega_m)
        .def("validate", &SystemParams::validate)
        .def_property_readonly("C_a", &SystemParams::coop_a)
        .def_property_readonly("G", &SystemParams::big_g)
        .def_property_readonly("G_a", &SystemParams::big_g_a)
        .def("get", [](const SystemParams &p, const std::string &k) { return get_param(p, k); })
        .def("set", [](SystemParams &p, const std::string &k, double v) { set_param(p, k, v); })
        .def("__eq__", [](const SystemParams &a, const SystemParams &b) { return a == b; })
        .def("__repr__", [](const SystemParams &p) { return "SystemParams(" + to_json(p).dump() + ")"; });

    py::class_<LinearModel>(m, "LinearModel")
        .def_property_readonly("modes", [](const LinearModel &lm) { return mode_strs(lm.modes()); })
        .def_property_readonly("drift", &LinearModel::drift)
        .def_property_readonly("diffusion", &LinearModel::diffusion)
        .def_property_readonly("time_dependent", &LinearModel::time_dependent)
        .def("drift_at", &LinearModel::drift_at, py::arg("t"));

    m.def("build_model",
          [](const std::string &kind, const SystemParams &p) {
              return build_model(parse_model_kind(kind), p);
          },
          py::arg("kind"), py::arg("params"));
    m.def("adiabatic_regime_warning", [](const std::string &kind, const SystemParams &p) {
        return adiabatic_regime_warning(parse_model_kind(kind), p);
    });

    py::class_<StabilityInfo>(m, "StabilityInfo")
        .def_readonly("stable", &StabilityInfo::stable)
        .def_readonly("max_real_eigenvalue", &StabilityInfo::max_real_eigenvalue)
        .def_property_readonly("margin", &StabilityInfo::margin);
    m.def("stability", &stability, py::arg("model"));

    py::class_<CovarianceMatrix>(m, "CovarianceMatrix")
        .def(py::init([](const std::vector<std::string> &modes, const Matrix &values) {
                 std::vector<Mode> ms;
                 for (const auto &s : modes) {
                     ms.push_back(to_mode(s));
                 }
                 return CovarianceMatrix(std::move(ms), values);
             }),
             py::arg("modes"), py::arg("values"))
        .def_property_readonly("modes", [](const CovarianceMatrix &v) { return mode_strs(v.modes()); })
        .def_property_readonly("values", &CovarianceMatrix::values)
        .def("var_x", [](const CovarianceMatrix &v, const std::string &k) { return v.var_x(to_mode(k)); })
        .def("var_p", [](const CovarianceMatrix &v, const std::string &k) { return v.var_p(to_mode(k)); })
        .def("symplectic_eigenvalues", &CovarianceMatrix::symplectic_eigenvalues)
        .def("is_physical", &CovarianceMatrix::is_physical, py::arg("tol") = 1e-9);

    m.def("steady_state", &steady_state, py::arg("model"));
    m.def("residual", py::overload_cast<const LinearModel &, const CovarianceMatrix &>(&residual));
    m.def("symplectic_eigenvalues", py::overload_cast<const Matrix &>(&symplectic_eigenvalues));

    m.def(
        "reid_steering",
        [](const CovarianceMatrix &v, const std::string &i, const std::string &j) {
            const SteeringReport r = reid_steering(v, to_mode(i), to_mode(j));
            py::dict d;
            d["e_ij"] = r.e_ij;
            d["e_ji"] = r.e_ji;
            d["classification"] = std::string(to_string(r.classification));
            return d;
        },
        py::arg("v"), py::arg("i"), py::arg("j"));
    m.def(
        "entanglement",
        [](const CovarianceMatrix &v, const std::string &i, const std::string &j) {
            const EntanglementReport r = entanglement(v, to_mode(i), to_mode(j));
            py::dict d;
            d["duan_simon"] = r.duan_simon;
            d["h_opt"] = r.h_opt;
            d["combination"] = std::string(to_string(r.combination));
            d["lambda"] = r.lambda;
            d["log_negativity"] = r.log_negativity;
            return d;
        },
        py::arg("v"), py::arg("i"), py::arg("j"));

    auto an = m.def_submodule("analytic", "closed-form reduced-model results");
    an.def("steering_case1", [](const SystemParams &p) {
        const auto s = analytic::steering_case1(p);
        return py::make_tuple(s.e_ab, s.e_ba);
    });
    an.def("steering_case2", [](const SystemParams &p) {
        const auto s = analytic::steering_case2(p);
        return py::make_tuple(s.e_cb, s.e_bc);
    });

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SimulationConfig::dt)
        .def_readwrite("burn_in", &SimulationConfig::burn_in)
        .def_readwrite("sample_duration", &SimulationConfig::sample_duration)
        .def_readwrite("n_trajectories", &SimulationConfig::n_trajectories)
        .def_readwrite("seed", &SimulationConfig::seed)
        .def_readwrite("sample_stride", &SimulationConfig::sample_stride)
        .def_readwrite("threads", &SimulationConfig::threads);

    py::class_<EnsembleEstimate>(m, "EnsembleEstimate")
        .def_readonly("covariance", &EnsembleEstimate::covariance)
        .def_readonly("standard_errors", &EnsembleEstimate::standard_errors)
        .def_readonly("effective_samples", &EnsembleEstimate::effective_samples)
        .def_readonly("trajectories", &EnsembleEstimate::trajectories)
        .def_readonly("warnings", &EnsembleEstimate::warnings);
    m.def("simulate", &simulate, py::arg("model"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "steady_state_report",
        [](const std::string &kind, const SystemParams &p, double gamma_ref) {
            return json_to_py(steady_state_report(parse_model_kind(kind), p, gamma_ref));
        },
        py::arg("kind"), py::arg("params"), py::arg("gamma_ref") = 1.0);
    m.def(
        "validate_report",
        [](const std::string &kind, const SystemParams &p, const SimulationConfig &c) {
            return json_to_py(validate_report(parse_model_kind(kind), p, c));
        },
        py::arg("kind"), py::arg("params"), py::arg("config"));
    m.def(
        "sweep_csv",
        [](const std::string &kind, const std::string &parameter, double start, double stop,
           std::size_t count, const std::vector<std::string> &outputs, const SystemParams &fixed,
           bool log) {
            SweepSpec spec;
            spec.model = parse_model_kind(kind);
            spec.parameter = parameter;
            spec.range = {start, stop, count, log ? Spacing::log : Spacing::linear};
            spec.fixed = fixed;
            spec.outputs = outputs;
            return to_csv(run_sweep(spec));
        },
        py::arg("kind"), py::arg("parameter"), py::arg("start"), py::arg("stop"), py::arg("count"),
        py::arg("outputs"), py::arg("fixed") = SystemParams{}, py::arg("log") = false);
    m.def("figure_ids", &figure_ids);
    m.def("figure_csv", [](const std::string &id) {
        py::dict out;
        for (const auto &series : reproduce_figure(id)) {
            out[py::str(series.name)] = to_csv(series.table);
        }
        return out;
    });
}
