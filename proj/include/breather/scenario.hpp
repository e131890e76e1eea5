#pragma once

// Experiment catalog and the flat key = value configuration format.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "breather/multidomain.hpp"

namespace breather {

enum class SolverKind { fourier, chebyshev };
enum class Equation { linearized, full_nls, semiclassical };
enum class Preset { paper, desk, custom };

/// Initial data:
///   gaussian:  a e^{-x^2} (linear runs, semiclassical) or u_Per + a e^{-x^2}
///   peregrine: a u_Per (linear runs) or sigma u_Per (nonlinear runs)
enum class Recipe { gaussian, peregrine };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string id;
    std::string description;
    std::string figures;
    SolverKind solver = SolverKind::chebyshev;
    Equation equation = Equation::full_nls;
    Recipe recipe = Recipe::gaussian;

    double amplitude = 0.1;
    double sigma = 1.0;
    double epsilon = 0.1;
    std::optional<double> kappa;  // defaults to sigma^2 for nonlinear runs
    double t0 = 0.0;
    double t_end = 1.0;

    Preset preset = Preset::paper;
    // Fourier resolution
    double half_length = 50.0;
    std::size_t fourier_n = 1u << 14;
    int time_steps = 10000;
    // Chebyshev resolution
    GridLayout layout = GridLayout::paper();
    double dt = 1e-3;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;

    int snapshot_every = 10;
    std::string output = "";

    double resolved_kappa() const;
    /// Step size actually used by the configured solver.
    double step() const;
    int step_count() const;
    void validate() const;
};

struct CatalogEntry {
    std::string id;
    std::string solver;
    std::string figures;
    std::string initial_data;
};

std::vector<CatalogEntry> list_scenarios();
std::string catalog_text();

/// Catalog defaults for an id, resolved at the given preset.
Scenario scenario_from_id(const std::string& id, Preset preset = Preset::paper);

/// Parses key = value text (separators: newline, ',' or ';'; '#' starts a
/// comment). `scenario` must be present; other keys override catalog
/// defaults. Throws ConfigError.
Scenario parse_config(const std::string& text);

/// Applies one key = value override to an existing scenario.
void apply_setting(Scenario& s, const std::string& key, const std::string& value);

std::string to_string(SolverKind k);
std::string to_string(Equation e);
std::string to_string(Preset p);
Preset parse_preset(const std::string& text);

/// Resolution keys and their meaning, for help text.
std::string config_keys_help();

}  // namespace breather
