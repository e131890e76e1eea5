#include "breather/runs.hpp"

#include "breather/etd.hpp"

#include <chrono>
#include <cmath>

namespace breather {

namespace {

double max_abs(std::span<const cplx> u) {
    double m = 0.0;
    for (const auto& z : u) m = std::max(m, std::abs(z));
    return m;
}

std::vector<cplx> peregrine_on(const FourierGrid& grid, double t) {
    std::vector<cplx> up(grid.size());
    for (std::size_t j = 0; j < up.size(); ++j) up[j] = peregrine({grid.nodes()[j], t});
    return up;
}

// Shared loop for the two periodic problems: u_t = i c u_xx + N(u, t).
template <class Record>
RunResult fourier_loop(const Scenario& s, double dispersion, std::vector<cplx> u, const Nonlinearity& nonlinear,
                       Record&& record, const ProgressCallback& progress) {
    const auto start = std::chrono::steady_clock::now();
    RunResult r;
    r.scenario = s;
    r.diagnostics.floor_names = {"fourier"};
    const FourierGrid grid = make_grid(s.half_length, s.fourier_n);
    r.x = grid.nodes();

    std::vector<cplx> symbol(grid.size());
    for (std::size_t j = 0; j < symbol.size(); ++j) {
        const double k = grid.wavenumbers()[j];
        symbol[j] = cplx(0.0, -dispersion * k * k);
    }
    const int steps = s.step_count();
    const double h = s.step();
    Etdrk4Stepper stepper(etd_coefficients(symbol, h));

    auto coefficients = [&](double t) {
        r.coefficients.push_back({t, {"fourier"}, {fourier_magnitudes_by_wavenumber(u)}});
    };
    auto snapshot = [&](double t) {
        r.times.push_back(t);
        r.values.push_back(u);
        r.diagnostics.times.push_back(t);
        r.diagnostics.max_amplitude.push_back(max_abs(u));
        r.diagnostics.parity_error.push_back(parity_error(u, grid));
        const std::vector<double> floors{coefficient_floor(fourier_magnitudes_by_wavenumber(u))};
        r.diagnostics.coefficient_floor.push_back(floors);
        check_resolution(r.diagnostics, t, floors);
        record(r.diagnostics, grid, u, t);
    };

    r.trace_t.push_back(s.t0);
    r.trace_max.push_back(max_abs(u));
    snapshot(s.t0);
    coefficients(s.t0);
    for (int k = 1; k <= steps; ++k) {
        const double t = s.t0 + (k - 1) * h;
        stepper.step(u, t, nonlinear);
        const double tn = s.t0 + k * h;
        r.steps_taken = k;
        r.trace_t.push_back(tn);
        r.trace_max.push_back(max_abs(u));
        if (!std::isfinite(r.trace_max.back())) {
            r.ok = false;
            r.failure = "solution became non-finite at t = " + std::to_string(tn);
            r.diagnostics.warnings.push_back(r.failure);
            break;
        }
        if (k % s.snapshot_every == 0 || k == steps) snapshot(tn);
        if (progress) progress(tn, k, steps);
    }
    coefficients(r.times.back());
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

RunResult run_linearized(const Scenario& s, const ProgressCallback& progress) {
    s.validate();
    if (s.equation != Equation::linearized) throw ConfigError("scenario is not a linearized run");
    if (s.solver == SolverKind::chebyshev) return run_linearized_cheb(s, progress);

    const FourierGrid grid = make_grid(s.half_length, s.fourier_n);
    std::vector<cplx> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = grid.nodes()[j];
        v[j] = s.amplitude * std::exp(-x * x);
    }

    // Stage times repeat (t + h/2 twice), so keep the last background.
    struct Cache {
        double t = std::nan("");
        std::vector<cplx> up;
    };
    auto cache = std::make_shared<Cache>();
    const auto background = [cache, &grid](double t) -> const std::vector<cplx>& {
        if (!(cache->t == t)) {
            cache->up = peregrine_on(grid, t);
            cache->t = t;
        }
        return cache->up;
    };
    const Nonlinearity nonlinear = [&background](std::span<const cplx> w, double t) {
        const auto& up = background(t);
        std::vector<cplx> out(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) {
            out[j] = cplx(0.0, 1.0) * (4.0 * std::norm(up[j]) * w[j] + 2.0 * up[j] * up[j] * std::conj(w[j]));
        }
        return out;
    };
    const double nan = std::nan("");
    auto record = [&](DiagnosticsRecord& d, const FourierGrid& g, const std::vector<cplx>& w, double t) {
        d.energy.push_back(nan);
        d.delta_E.push_back(nan);
        d.mass.push_back(mass(w, peregrine_on(g, t), g));
        d.max_diff_to_peregrine.push_back(nan);
    };
    return fourier_loop(s, 1.0, std::move(v), nonlinear, record, progress);
}

RunResult run_semiclassical(const Scenario& s, const ProgressCallback& progress) {
    s.validate();
    if (s.equation != Equation::semiclassical) throw ConfigError("scenario is not a semiclassical run");
    const FourierGrid grid = make_grid(s.half_length, s.fourier_n);
    std::vector<cplx> u(grid.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = grid.nodes()[j];
        u[j] = s.amplitude * std::exp(-x * x);
    }
    const double eps = s.epsilon;
    // i eps u_t + eps^2 u_xx + 2|u|^2 u = 0  =>  u_t = i eps u_xx + (2i/eps)|u|^2 u
    const Nonlinearity nonlinear = [eps](std::span<const cplx> w, double) {
        std::vector<cplx> out(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) out[j] = cplx(0.0, 2.0 / eps) * std::norm(w[j]) * w[j];
        return out;
    };
    const double nan = std::nan("");
    auto record = [&](DiagnosticsRecord& d, const FourierGrid&, const std::vector<cplx>&, double) {
        d.energy.push_back(nan);
        d.delta_E.push_back(nan);
        d.mass.push_back(nan);
        d.max_diff_to_peregrine.push_back(nan);
    };
    return fourier_loop(s, eps, std::move(u), nonlinear, record, progress);
}

}  // namespace breather
