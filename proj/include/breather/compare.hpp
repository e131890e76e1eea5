#pragma once

// Cross-run comparison on a common (x, t) window.

#include <filesystem>
#include <stdexcept>

#include "breather/runs.hpp"

namespace breather {

struct CompareWindow {
    double x_min = -20.0;
    double x_max = 20.0;
    double t_min = 0.0;
    double t_max = 0.5;
};

struct CompareResult {
    double max_deviation = 0.0;
    double at_x = 0.0;
    double at_t = 0.0;
    int times_compared = 0;
};

class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a run directory back (manifest for the grid, snapshots for values).
RunResult load_run(const std::filesystem::path& dir);

/// Max |u_a - u_b| over `samples` equispaced points of the x window at every
/// snapshot time the runs share inside the t window. Values between nodes
/// come from barycentric (Chebyshev) or trigonometric (Fourier)
/// interpolation. Throws WindowError when a run does not cover the window or
/// no common snapshot time exists.
CompareResult compare_runs(const RunResult& a, const RunResult& b, const CompareWindow& w, int samples = 2001);
CompareResult compare_runs(const std::filesystem::path& a, const std::filesystem::path& b, const CompareWindow& w,
                           int samples = 2001);

}  // namespace breather
