#pragma once

// Time-stepping drivers for the catalog experiments.

#include <functional>
#include <string>
#include <vector>

#include "breather/diagnostics.hpp"
#include "breather/scenario.hpp"

namespace breather {

/// Chebyshev coefficient (or Fourier mode) magnitudes at one time.
struct CoefficientSnapshot {
    double t = 0.0;
    std::vector<std::string> names;         // one per domain
    std::vector<std::vector<double>> mags;  // [domain][index]
};

struct RunResult {
    Scenario scenario;
    bool ok = true;
    std::string failure;  // message of the rejected step, if any

    /// Snapshot rows: x in output order, one value vector per snapshot time.
    std::vector<double> x;
    std::vector<double> times;
    std::vector<std::vector<cplx>> values;

    DiagnosticsRecord diagnostics;
    std::vector<CoefficientSnapshot> coefficients;  // initial and last accepted

    /// max_x |u| after every accepted step (including the initial state).
    std::vector<double> trace_t;
    std::vector<double> trace_max;

    int steps_taken = 0;
    int max_newton_iterations = 0;
    long total_newton_iterations = 0;
    double wall_seconds = 0.0;

    /// Snapshot index with time closest to t.
    std::size_t snapshot_near(double t) const;
    /// First local maximum of trace_max (time, value); the global maximum
    /// when the trace is monotone.
    std::pair<double, double> first_peak() const;
};

using ProgressCallback = std::function<void(double t, int step, int steps)>;

RunResult run_linearized(const Scenario& s, const ProgressCallback& progress = {});
RunResult run_semiclassical(const Scenario& s, const ProgressCallback& progress = {});
RunResult run_full_nls(const Scenario& s, const ProgressCallback& progress = {});
RunResult run_linearized_cheb(const Scenario& s, const ProgressCallback& progress = {});

/// Dispatches on equation and solver.
RunResult run(const Scenario& s, const ProgressCallback& progress = {});

}  // namespace breather
