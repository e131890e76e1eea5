#include "breather/runs.hpp"

#include "breather/irk.hpp"

#include <chrono>
#include <cmath>

namespace breather {

namespace {

std::vector<std::string> domain_names(const MultiDomainGrid& grid) {
    std::vector<std::string> names;
    for (const auto& d : grid.domains()) names.push_back(d.name);
    return names;
}

Eigen::VectorXcd peregrine_on(const MultiDomainGrid& grid, double t) {
    return sample(grid, [t](double x) { return peregrine({x, t}); });
}

Eigen::VectorXcd initial_state(const Scenario& s, const MultiDomainGrid& grid) {
    const double t0 = s.t0;
    auto gauss = [](double x) { return std::isfinite(x) ? std::exp(-x * x) : 0.0; };
    if (s.equation == Equation::linearized) {
        if (s.recipe == Recipe::gaussian) return sample(grid, [&](double x) { return cplx(s.amplitude * gauss(x)); });
        return sample(grid, [&](double x) { return s.amplitude * peregrine({x, t0}); });
    }
    if (s.recipe == Recipe::gaussian) {
        return sample(grid, [&](double x) { return s.sigma * peregrine({x, t0}) + s.amplitude * gauss(x); });
    }
    return sample(grid, [&](double x) { return s.sigma * peregrine({x, t0}); });
}

RunResult cheb_loop(const Scenario& s, const ProgressCallback& progress) {
    const auto start = std::chrono::steady_clock::now();
    RunResult r;
    r.scenario = s;
    const MultiDomainGrid grid(s.layout);
    r.diagnostics.floor_names = domain_names(grid);
    const auto rows = grid.output_rows();
    for (const auto& row : rows) r.x.push_back(row.x);

    const bool linear = s.equation == Equation::linearized;
    NlsModel nls;
    LinearizedModel lin(grid);
    const ReactionModel& model = linear ? static_cast<const ReactionModel&>(lin) : nls;
    Gauss2Stepper stepper(grid, model, IrkConfig{s.dt, s.newton_tol, s.newton_max_iter});
    const AsymptoticModulus kappa(s.resolved_kappa());
    const double nan = std::nan("");

    Eigen::VectorXcd u = initial_state(s, grid);
    bool energy_warned = false;

    auto coefficients = [&](double t) {
        r.coefficients.push_back({t, domain_names(grid), grid.coefficient_magnitudes(u)});
    };
    auto snapshot = [&](double t) {
        std::vector<cplx> vals;
        vals.reserve(rows.size());
        for (const auto& row : rows) vals.push_back(u[row.flat]);
        r.times.push_back(t);
        r.values.push_back(std::move(vals));

        auto& d = r.diagnostics;
        d.times.push_back(t);
        d.max_amplitude.push_back(u.cwiseAbs().maxCoeff());
        d.parity_error.push_back(grid.symmetric() ? parity_error(u, grid) : nan);
        const auto floors = coefficient_floor(grid.coefficient_magnitudes(u));
        d.coefficient_floor.push_back(floors);
        check_resolution(d, t, floors);
        if (linear) {
            d.energy.push_back(nan);
            d.delta_E.push_back(nan);
            d.mass.push_back(mass(u, peregrine_on(grid, t), grid));
            d.max_diff_to_peregrine.push_back(nan);
        } else {
            const double e = energy(u, grid, kappa);
            d.energy.push_back(e);
            double de = nan;
            try {
                de = delta_E(d, e);
            } catch (const std::domain_error&) {
            }
            if (std::isnan(de) && !energy_warned) {
                energy_warned = true;
                d.warnings.push_back(std::isnan(e) ? "energy undefined: |u| at infinity differs from sqrt(kappa)"
                                                   : "initial energy is zero: delta_E undefined, raw E recorded");
            }
            d.delta_E.push_back(de);
            d.mass.push_back(nan);
            d.max_diff_to_peregrine.push_back(max_diff_to_peregrine(
                std::span<const cplx>(u.data(), static_cast<std::size_t>(u.size())), grid.node_x(), t));
        }
    };

    const int steps = s.step_count();
    const double h = s.dt;
    r.trace_t.push_back(s.t0);
    r.trace_max.push_back(u.cwiseAbs().maxCoeff());
    snapshot(s.t0);
    coefficients(s.t0);
    double t_last = s.t0;
    for (int k = 1; k <= steps; ++k) {
        const double t = s.t0 + (k - 1) * h;
        try {
            const StepReport rep = stepper.step(u, t);
            r.max_newton_iterations = std::max(r.max_newton_iterations, rep.iterations);
            r.total_newton_iterations += rep.iterations;
        } catch (const NewtonFailure& e) {
            r.ok = false;
            r.failure = e.what();
            r.diagnostics.warnings.push_back(std::string("step rejected: ") + e.what() + " (last increment " +
                                             std::to_string(e.report().increment) + ")");
            if (r.times.back() != t_last) snapshot(t_last);
            break;
        }
        t_last = s.t0 + k * h;
        r.steps_taken = k;
        r.trace_t.push_back(t_last);
        r.trace_max.push_back(u.cwiseAbs().maxCoeff());
        if (k % s.snapshot_every == 0 || k == steps) snapshot(t_last);
        if (progress) progress(t_last, k, steps);
    }
    coefficients(t_last);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

RunResult run_full_nls(const Scenario& s, const ProgressCallback& progress) {
    s.validate();
    if (s.equation != Equation::full_nls) throw ConfigError("scenario is not a full NLS run");
    return cheb_loop(s, progress);
}

RunResult run_linearized_cheb(const Scenario& s, const ProgressCallback& progress) {
    s.validate();
    if (s.equation != Equation::linearized) throw ConfigError("scenario is not a linearized run");
    if (s.solver != SolverKind::chebyshev) throw ConfigError("scenario is not configured for chebyshev");
    return cheb_loop(s, progress);
}

}  // namespace breather
