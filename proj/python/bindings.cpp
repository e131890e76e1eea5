#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "breather/compare.hpp"
#include "breather/run_output.hpp"
#include "breather/runs.hpp"
#include "breather/spectrum.hpp"

namespace py = pybind11;
using namespace breather;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict diagnostics_dict(const DiagnosticsRecord& d) {
    py::dict out;
    out["t"] = as_array(d.times);
    out["E"] = as_array(d.energy);
    out["delta_E"] = as_array(d.delta_E);
    out["M"] = as_array(d.mass);
    out["max_u"] = as_array(d.max_amplitude);
    out["max_diff"] = as_array(d.max_diff_to_peregrine);
    out["parity_err"] = as_array(d.parity_error);
    out["floor_names"] = d.floor_names;
    out["floors"] = d.coefficient_floor;
    out["warnings"] = d.warnings;
    return out;
}

py::dict run_dict(const RunResult& r) {
    py::dict out;
    out["id"] = r.scenario.id;
    out["ok"] = r.ok;
    out["failure"] = r.failure;
    out["x"] = as_array(r.x);
    out["t"] = as_array(r.times);
    py::array_t<std::complex<double>> u({r.times.size(), r.x.size()});
    auto w = u.mutable_unchecked<2>();
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        for (std::size_t j = 0; j < r.x.size(); ++j) w(i, j) = r.values[i][j];
    }
    out["u"] = u;
    out["diagnostics"] = diagnostics_dict(r.diagnostics);
    out["trace_t"] = as_array(r.trace_t);
    out["trace_max"] = as_array(r.trace_max);
    out["steps_taken"] = r.steps_taken;
    out["wall_seconds"] = r.wall_seconds;
    return out;
}

std::string config_text(const std::string& scenario, const std::map<std::string, std::string>& overrides) {
    std::string text = "scenario = " + scenario;
    for (const auto& [k, v] : overrides) text += "\n" + k + " = " + v;
    return text;
}

}  // namespace

PYBIND11_MODULE(_breather, m) {
    m.doc() = "Peregrine breather stability experiments";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<WindowError>(m, "WindowError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "peregrine",
        [](py::array_t<double> x, double t) {
            auto in = x.unchecked();
            py::array_t<std::complex<double>> out(x.request().shape);
            auto o = out.mutable_data();
            const double* xs = x.data();
            for (py::ssize_t j = 0; j < in.size(); ++j) o[j] = peregrine({xs[j], t});
            return out;
        },
        py::arg("x"), py::arg("t"));

    m.def("list_scenarios", [] {
        std::vector<py::dict> out;
        for (const auto& e : list_scenarios()) {
            py::dict d;
            d["id"] = e.id;
            d["solver"] = e.solver;
            d["figures"] = e.figures;
            d["initial_data"] = e.initial_data;
            out.push_back(d);
        }
        return out;
    });

    m.def(
        "run",
        [](const std::string& scenario, const std::map<std::string, std::string>& overrides,
           const std::optional<std::filesystem::path>& out) {
            const Scenario s = parse_config(config_text(scenario, overrides));
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run(s);
            }
            if (out) write_run_directory(r, *out);
            return run_dict(r);
        },
        py::arg("scenario"), py::arg("overrides") = std::map<std::string, std::string>{},
        py::arg("out") = std::nullopt, "Run a catalog scenario with key = value overrides.");

    m.def(
        "compare",
        [](const std::filesystem::path& a, const std::filesystem::path& b, std::pair<double, double> x,
           std::pair<double, double> t, int samples) {
            const CompareResult c = compare_runs(a, b, CompareWindow{x.first, x.second, t.first, t.second}, samples);
            py::dict out;
            out["max_deviation"] = c.max_deviation;
            out["x"] = c.at_x;
            out["t"] = c.at_t;
            out["times_compared"] = c.times_compared;
            return out;
        },
        py::arg("run_a"), py::arg("run_b"), py::arg("x") = std::make_pair(-20.0, 20.0),
        py::arg("t") = std::make_pair(0.0, 0.5), py::arg("samples") = 2001);

    m.def(
        "spectrum_scan",
        [](double re_min, double re_max, double im_min, double im_max, int resolution, double tol) {
            SpectrumScan s;
            s.re_min = re_min;
            s.re_max = re_max;
            s.im_min = im_min;
            s.im_max = im_max;
            s.resolution = resolution;
            s.tolerance = tol;
            const SpectrumScan r = absolute_spectrum_scan(s);
            return py::array_t<std::complex<double>>(r.hits.size(), r.hits.data());
        },
        py::arg("re_min") = -3.0, py::arg("re_max") = 3.0, py::arg("im_min") = -3.0, py::arg("im_max") = 3.0,
        py::arg("resolution") = 121, py::arg("tol") = 0.0);

    m.def("in_essential_spectrum", &in_essential_spectrum, py::arg("lam"), py::arg("tol"));
    m.def("in_absolute_spectrum", &in_absolute_spectrum, py::arg("lam"), py::arg("tol"));
    m.def("max_growth_rate", [] {
        const GrowthRate g = max_growth_rate();
        return std::make_pair(g.lambda_max, g.k_arg);
    });
}
