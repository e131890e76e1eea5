#pragma once

// Run directory layout: snapshots.csv, diagnostics.csv, coefficients.csv and
// manifest.json.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "breather/runs.hpp"

namespace breather {

inline constexpr const char* kToolVersion = "0.1.0";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Headline numbers written into the manifest.
struct RunSummary {
    double max_abs_delta_E = 0.0;  // NaN when undefined
    double mass_drift = 0.0;       // max |1 - M(t)/M(t0)|, NaN for nonlinear runs
    double max_amplitude = 0.0;
    double max_amplitude_time = 0.0;
    double first_peak_time = 0.0;
    double first_peak_value = 0.0;
    double final_max_diff = 0.0;
    double max_parity_error = 0.0;
    std::vector<double> final_floors;
};

RunSummary summarize(const RunResult& r);

void write_snapshots_csv(std::ostream& os, const RunResult& r);
void write_coefficients_csv(std::ostream& os, const RunResult& r);
std::string manifest_text(const RunResult& r);

/// Writes the four files into `dir` (created if missing). Throws IoError.
void write_run_directory(const RunResult& r, const std::filesystem::path& dir);

}  // namespace breather
