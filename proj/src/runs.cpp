#include "breather/runs.hpp"

#include <algorithm>
#include <cmath>

namespace breather {

std::size_t RunResult::snapshot_near(double t) const {
    if (times.empty()) throw std::out_of_range("run has no snapshots");
    std::size_t best = 0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs(times[i] - t) < std::abs(times[best] - t)) best = i;
    }
    return best;
}

std::pair<double, double> RunResult::first_peak() const {
    if (trace_max.empty()) throw std::out_of_range("run has no amplitude trace");
    for (std::size_t i = 1; i + 1 < trace_max.size(); ++i) {
        if (trace_max[i] > trace_max[i - 1] && trace_max[i] >= trace_max[i + 1]) {
            return {trace_t[i], trace_max[i]};
        }
    }
    const auto it = std::max_element(trace_max.begin(), trace_max.end());
    return {trace_t[static_cast<std::size_t>(it - trace_max.begin())], *it};
}

RunResult run(const Scenario& s, const ProgressCallback& progress) {
    s.validate();
    switch (s.equation) {
        case Equation::semiclassical: return run_semiclassical(s, progress);
        case Equation::full_nls: return run_full_nls(s, progress);
        case Equation::linearized:
            return s.solver == SolverKind::fourier ? run_linearized(s, progress) : run_linearized_cheb(s, progress);
    }
    throw ConfigError("unsupported equation");
}

}  // namespace breather
