#include "breather/run_output.hpp"

#include "breather/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace breather {

namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double max_finite_abs(const std::vector<double>& v) {
    double m = std::nan("");
    for (double x : v) {
        if (std::isfinite(x)) m = std::isnan(m) ? std::abs(x) : std::max(m, std::abs(x));
    }
    return m;
}

}  // namespace

RunSummary summarize(const RunResult& r) {
    RunSummary s;
    const auto& d = r.diagnostics;
    s.max_abs_delta_E = max_finite_abs(d.delta_E);
    s.mass_drift = std::nan("");
    if (!d.mass.empty() && std::isfinite(d.mass.front()) && d.mass.front() != 0.0) {
        double drift = 0.0;
        for (double m : d.mass) drift = std::max(drift, std::abs(1.0 - m / d.mass.front()));
        s.mass_drift = drift;
    }
    for (std::size_t i = 0; i < r.trace_max.size(); ++i) {
        if (r.trace_max[i] > s.max_amplitude) {
            s.max_amplitude = r.trace_max[i];
            s.max_amplitude_time = r.trace_t[i];
        }
    }
    if (!r.trace_max.empty()) std::tie(s.first_peak_time, s.first_peak_value) = r.first_peak();
    s.final_max_diff = d.max_diff_to_peregrine.empty() ? std::nan("") : d.max_diff_to_peregrine.back();
    s.max_parity_error = max_finite_abs(d.parity_error);
    if (!d.coefficient_floor.empty()) s.final_floors = d.coefficient_floor.back();
    return s;
}

void write_snapshots_csv(std::ostream& os, const RunResult& r) {
    os << "t,x,re_u,im_u,abs_u\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const std::string t = fmt17(r.times[i]);
        const auto& vals = r.values[i];
        for (std::size_t j = 0; j < r.x.size(); ++j) {
            os << t << ',' << fmt17(r.x[j]) << ',' << fmt17(vals[j].real()) << ',' << fmt17(vals[j].imag()) << ','
               << fmt17(std::abs(vals[j])) << '\n';
        }
    }
}

void write_coefficients_csv(std::ostream& os, const RunResult& r) {
    os << "t,domain,index,magnitude\n";
    for (const auto& c : r.coefficients) {
        const std::string t = fmt17(c.t);
        for (std::size_t d = 0; d < c.mags.size(); ++d) {
            for (std::size_t k = 0; k < c.mags[d].size(); ++k) {
                os << t << ',' << c.names[d] << ',' << k << ',' << fmt17(c.mags[d][k]) << '\n';
            }
        }
    }
}

std::string manifest_text(const RunResult& r) {
    const Scenario& s = r.scenario;
    json m;
    m["tool"] = "breather";
    m["version"] = kToolVersion;
    m["scenario"] = {
        {"id", s.id},
        {"initial_data", s.description},
        {"figures", s.figures},
        {"solver", to_string(s.solver)},
        {"equation", to_string(s.equation)},
        {"initial", s.recipe == Recipe::gaussian ? "gaussian" : "peregrine"},
        {"amplitude", s.amplitude},
        {"sigma", s.sigma},
        {"epsilon", s.epsilon},
        {"kappa", s.resolved_kappa()},
        {"t0", s.t0},
        {"t_end", s.t_end},
        {"preset", to_string(s.preset)},
        {"snapshot_every", s.snapshot_every},
    };
    if (s.solver == SolverKind::fourier) {
        m["resolution"] = {{"half_length", s.half_length},
                           {"fourier_n", s.fourier_n},
                           {"time_steps", s.time_steps},
                           {"step", s.step()}};
    } else {
        m["resolution"] = {{"boundaries", s.layout.boundaries},
                           {"degrees", s.layout.degrees},
                           {"dt", s.dt},
                           {"time_steps", s.step_count()},
                           {"newton_tol", s.newton_tol},
                           {"newton_max_iter", s.newton_max_iter}};
    }
    m["status"] = r.ok ? "ok" : "failed";
    m["failure"] = r.ok ? json(nullptr) : json(r.failure);
    m["steps_taken"] = r.steps_taken;
    m["wall_seconds"] = r.wall_seconds;
    if (s.solver == SolverKind::chebyshev) {
        m["newton"] = {{"max_iterations", r.max_newton_iterations},
                       {"mean_iterations", r.steps_taken > 0 ? static_cast<double>(r.total_newton_iterations) /
                                                                   r.steps_taken
                                                             : 0.0}};
    }
    const RunSummary sum = summarize(r);
    json floors = json::array();
    for (double f : sum.final_floors) floors.push_back(number(f));
    m["summary"] = {
        {"snapshots", r.times.size()},
        {"final_time", r.times.empty() ? json(nullptr) : json(r.times.back())},
        {"max_abs_delta_E", number(sum.max_abs_delta_E)},
        {"initial_energy", r.diagnostics.energy.empty() ? json(nullptr) : number(r.diagnostics.energy.front())},
        {"mass_drift", number(sum.mass_drift)},
        {"max_amplitude", sum.max_amplitude},
        {"max_amplitude_time", sum.max_amplitude_time},
        {"first_peak_time", sum.first_peak_time},
        {"first_peak_value", sum.first_peak_value},
        {"final_max_diff", number(sum.final_max_diff)},
        {"max_parity_error", number(sum.max_parity_error)},
        {"final_coefficient_floors", floors},
        {"floor_domains", r.diagnostics.floor_names},
    };
    m["warnings"] = r.diagnostics.warnings;
    m["files"] = {"snapshots.csv", "diagnostics.csv", "coefficients.csv", "manifest.json"};
    return m.dump(2) + "\n";
}

void write_run_directory(const RunResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    auto write = [&](const char* name, auto&& body) {
        const auto path = dir / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open " + path.string() + " for writing");
        body(os);
        os.flush();
        if (!os) throw IoError("write to " + path.string() + " failed");
    };
    write("snapshots.csv", [&](std::ostream& os) { write_snapshots_csv(os, r); });
    write("diagnostics.csv", [&](std::ostream& os) { write_diagnostics_csv(os, r.diagnostics); });
    write("coefficients.csv", [&](std::ostream& os) { write_coefficients_csv(os, r); });
    write("manifest.json", [&](std::ostream& os) { os << manifest_text(r); });
}

}  // namespace breather
