#include "breather/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace breather {

namespace {

struct CatalogRow {
    const char* id;
    SolverKind solver;
    Equation equation;
    Recipe recipe;
    double amplitude;
    double sigma;
    double t0;
    double t_end;
    const char* figures;
    const char* initial;
};

// The nonlinear t0 = -1 Gaussian run is shown up to t = 0 only; every other
// run ends at t = 1.
const CatalogRow kCatalog[] = {
    {"lin-gauss", SolverKind::fourier, Equation::linearized, Recipe::gaussian, 0.1, 1.0, 0.0, 1.0, "Fig. 1",
     "v(x,0)=0.1exp(-x^2)"},
    {"lin-prop", SolverKind::chebyshev, Equation::linearized, Recipe::peregrine, 0.1, 1.0, 0.0, 1.0, "Fig. 2",
     "v(x,0)=0.1u_Per(x,0)"},
    {"nl-gauss-t0", SolverKind::chebyshev, Equation::full_nls, Recipe::gaussian, 0.1, 1.0, 0.0, 1.0,
     "Figs. 3-5", "u(x,0)=u_Per(x,0)+0.1exp(-x^2)"},
    {"nl-gauss-tm1", SolverKind::chebyshev, Equation::full_nls, Recipe::gaussian, 0.1, 1.0, -1.0, 0.0,
     "Figs. 6-7", "u(x,-1)=u_Per(x,-1)+0.1exp(-x^2)"},
    {"nl-sigma11-t0", SolverKind::chebyshev, Equation::full_nls, Recipe::peregrine, 0.0, 1.1, 0.0, 1.0,
     "Figs. 8-10", "u(x,0)=1.1u_Per(x,0)"},
    {"nl-sigma09-t0", SolverKind::chebyshev, Equation::full_nls, Recipe::peregrine, 0.0, 0.9, 0.0, 1.0,
     "Figs. 11-13", "u(x,0)=0.9u_Per(x,0)"},
    {"nl-sigma11-tm1", SolverKind::chebyshev, Equation::full_nls, Recipe::peregrine, 0.0, 1.1, -1.0, 1.0,
     "Figs. 14-15", "u(x,-1)=1.1u_Per(x,-1)"},
    {"nl-sigma09-tm1", SolverKind::chebyshev, Equation::full_nls, Recipe::peregrine, 0.0, 0.9, -1.0, 1.0,
     "Figs. 16-17", "u(x,-1)=0.9u_Per(x,-1)"},
    {"semiclassical", SolverKind::fourier, Equation::semiclassical, Recipe::gaussian, 1.0, 1.0, 0.0, 1.0,
     "Fig. 18", "u(x,0)=exp(-x^2), epsilon=0.1"},
};

const CatalogRow& find_row(const std::string& id) {
    for (const auto& row : kCatalog) {
        if (id == row.id) return row;
    }
    throw ConfigError("unknown scenario id '" + id + "' (see `breather list`)");
}

void apply_resolution(Scenario& s, Preset p) {
    s.preset = p;
    if (p == Preset::custom) return;
    const bool paper = p == Preset::paper;
    s.fourier_n = paper ? (1u << 14) : (1u << 12);
    s.time_steps = paper ? 10000 : 2000;
    s.layout = paper ? GridLayout::paper() : GridLayout::desk();
    s.dt = paper ? 1e-3 : 2e-3;
    s.snapshot_every = s.solver == SolverKind::fourier ? std::max(1, s.time_steps / 100) : 10;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("value of '" + key + "' is not a number: '" + value + "'");
    }
    return out;
}

long parse_int(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    if (d != std::floor(d) || std::abs(d) > 1e15) {
        throw ConfigError("value of '" + key + "' must be an integer: '" + value + "'");
    }
    return static_cast<long>(d);
}

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

const std::vector<std::string>& resolution_keys() {
    static const std::vector<std::string> keys{"half_length", "fourier_n",      "time_steps",
                                               "dt",          "n_I",            "n_II",
                                               "n_III",       "n_IV",           "inner_boundary",
                                               "outer_boundary"};
    return keys;
}

}  // namespace

double Scenario::resolved_kappa() const {
    if (kappa) return *kappa;
    return sigma * sigma;
}

double Scenario::step() const {
    if (solver == SolverKind::fourier) return (t_end - t0) / time_steps;
    return dt;
}

int Scenario::step_count() const {
    if (solver == SolverKind::fourier) return time_steps;
    return static_cast<int>(std::lround((t_end - t0) / dt));
}

void Scenario::validate() const {
    if (!std::isfinite(t0) || !std::isfinite(t_end) || !(t_end > t0)) {
        throw ConfigError("t_end must be greater than t0");
    }
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw ConfigError("amplitude must be >= 0");
    if (sigma == 0.0 || !std::isfinite(sigma)) throw ConfigError("sigma must be nonzero");
    if (!(epsilon > 0.0) || epsilon > 1.0) throw ConfigError("epsilon must lie in (0, 1]");
    if (kappa && !(*kappa >= 0.0)) throw ConfigError("kappa must be >= 0");
    if (snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");

    if (equation == Equation::full_nls && solver != SolverKind::chebyshev) {
        throw ConfigError("the full NLS with nonvanishing background needs the chebyshev solver");
    }
    if (equation == Equation::semiclassical && solver != SolverKind::fourier) {
        throw ConfigError("the semiclassical scenario runs on the fourier solver only");
    }
    if (equation == Equation::linearized && recipe == Recipe::peregrine && solver == SolverKind::fourier) {
        throw ConfigError("nonlocalized initial data cannot be continued periodically; use solver = chebyshev");
    }

    if (solver == SolverKind::fourier) {
        if (!(half_length > 0.0) || !std::isfinite(half_length)) throw ConfigError("half_length must be > 0");
        if (!is_power_of_two(fourier_n) || fourier_n < 8) {
            throw ConfigError("fourier_n must be a power of two >= 8");
        }
        if (time_steps < 1) throw ConfigError("time_steps must be >= 1");
    } else {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
        const double steps = (t_end - t0) / dt;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
            throw ConfigError("dt must divide t_end - t0 into an integer number of steps");
        }
        if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be > 0");
        if (newton_max_iter < 1) throw ConfigError("newton_max_iter must be >= 1");
        const auto& b = layout.boundaries;
        if (b.size() != 4 || layout.degrees.size() != 4) throw ConfigError("layout must have four domains");
        if (!(b[2] > 0.0) || !(b[3] > b[2]) || b[0] != -b[3] || b[1] != -b[2]) {
            throw ConfigError("need 0 < inner_boundary < outer_boundary");
        }
        for (int n : layout.degrees) {
            if (n < 8) throw ConfigError("Chebyshev degrees must be >= 8");
        }
        if (layout.degrees[3] % 2 != 0) throw ConfigError("n_IV must be even (node at infinity)");
    }
}

std::vector<CatalogEntry> list_scenarios() {
    std::vector<CatalogEntry> out;
    for (const auto& row : kCatalog) out.push_back({row.id, to_string(row.solver), row.figures, row.initial});
    return out;
}

std::string catalog_text() {
    std::ostringstream os;
    for (const auto& e : list_scenarios()) {
        os << e.id << std::string(16 - std::min<std::size_t>(15, e.id.size()), ' ') << e.solver
           << std::string(11 - e.solver.size(), ' ') << e.figures << std::string(13 - e.figures.size(), ' ')
           << e.initial_data << '\n';
    }
    return os.str();
}

Scenario scenario_from_id(const std::string& id, Preset preset) {
    const auto& row = find_row(id);
    Scenario s;
    s.id = row.id;
    s.description = row.initial;
    s.figures = row.figures;
    s.solver = row.solver;
    s.equation = row.equation;
    s.recipe = row.recipe;
    s.amplitude = row.amplitude;
    s.sigma = row.sigma;
    s.t0 = row.t0;
    s.t_end = row.t_end;
    s.half_length = row.equation == Equation::semiclassical ? 15.0 : 50.0;
    apply_resolution(s, preset);
    return s;
}

void apply_setting(Scenario& s, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (std::find(resolution_keys().begin(), resolution_keys().end(), key) != resolution_keys().end()) {
        s.preset = Preset::custom;
    }
    if (key == "scenario") {
        if (value != s.id) throw ConfigError("scenario id cannot be changed by an override");
    } else if (key == "solver") {
        if (value == "fourier") {
            s.solver = SolverKind::fourier;
        } else if (value == "chebyshev") {
            s.solver = SolverKind::chebyshev;
        } else {
            throw ConfigError("solver must be fourier or chebyshev");
        }
        if (s.preset != Preset::custom) apply_resolution(s, s.preset);
    } else if (key == "preset") {
        apply_resolution(s, parse_preset(value));
    } else if (key == "initial") {
        if (value == "gaussian") {
            s.recipe = Recipe::gaussian;
        } else if (value == "peregrine") {
            s.recipe = Recipe::peregrine;
        } else {
            throw ConfigError("initial must be gaussian or peregrine");
        }
    } else if (key == "t0") {
        s.t0 = parse_double(key, value);
    } else if (key == "t_end") {
        s.t_end = parse_double(key, value);
    } else if (key == "amplitude") {
        s.amplitude = parse_double(key, value);
    } else if (key == "sigma") {
        s.sigma = parse_double(key, value);
    } else if (key == "epsilon") {
        s.epsilon = parse_double(key, value);
    } else if (key == "kappa") {
        s.kappa = parse_double(key, value);
    } else if (key == "half_length") {
        s.half_length = parse_double(key, value);
    } else if (key == "fourier_n") {
        const long n = parse_int(key, value);
        if (n < 8) throw ConfigError("fourier_n must be a power of two >= 8");
        s.fourier_n = static_cast<std::size_t>(n);
    } else if (key == "time_steps") {
        s.time_steps = static_cast<int>(parse_int(key, value));
    } else if (key == "dt") {
        s.dt = parse_double(key, value);
    } else if (key == "n_I" || key == "n_II" || key == "n_III" || key == "n_IV") {
        const int idx = key == "n_I" ? 0 : key == "n_II" ? 1 : key == "n_III" ? 2 : 3;
        s.layout.degrees.at(idx) = static_cast<int>(parse_int(key, value));
    } else if (key == "inner_boundary") {
        const double c = parse_double(key, value);
        s.layout.boundaries.at(1) = -c;
        s.layout.boundaries.at(2) = c;
    } else if (key == "outer_boundary") {
        const double c = parse_double(key, value);
        s.layout.boundaries.at(0) = -c;
        s.layout.boundaries.at(3) = c;
    } else if (key == "snapshot_every") {
        s.snapshot_every = static_cast<int>(parse_int(key, value));
    } else if (key == "newton_tol") {
        s.newton_tol = parse_double(key, value);
    } else if (key == "newton_max_iter") {
        s.newton_max_iter = static_cast<int>(parse_int(key, value));
    } else if (key == "output") {
        s.output = value;
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

Scenario parse_config(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string cleaned;
    {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            cleaned += line + '\n';
        }
    }
    std::string item;
    auto flush = [&]() {
        const std::string t = trim(item);
        item.clear();
        if (t.empty()) return;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ConfigError("missing key in '" + t + "'");
        pairs.emplace_back(key, trim(t.substr(eq + 1)));
    };
    for (char c : cleaned) {
        if (c == '\n' || c == ',' || c == ';') {
            flush();
        } else {
            item += c;
        }
    }
    flush();

    std::string id;
    Preset preset = Preset::paper;
    for (const auto& [k, v] : pairs) {
        if (k == "scenario") {
            if (!id.empty() && id != v) throw ConfigError("scenario given twice");
            id = v;
        } else if (k == "preset") {
            preset = parse_preset(v);
        }
    }
    if (id.empty()) throw ConfigError("configuration must name a scenario");
    Scenario s = scenario_from_id(id, preset);
    // Solver first so that the preset resolves for the right discretization;
    // everything else in the order given.
    for (const auto& [k, v] : pairs) {
        if (k == "solver") apply_setting(s, k, v);
    }
    for (const auto& [k, v] : pairs) {
        if (k != "scenario" && k != "preset" && k != "solver") apply_setting(s, k, v);
    }
    s.validate();
    return s;
}

std::string to_string(SolverKind k) { return k == SolverKind::fourier ? "fourier" : "chebyshev"; }

std::string to_string(Equation e) {
    switch (e) {
        case Equation::linearized: return "linearized";
        case Equation::full_nls: return "full_nls";
        case Equation::semiclassical: return "semiclassical";
    }
    return "?";
}

std::string to_string(Preset p) {
    switch (p) {
        case Preset::paper: return "paper";
        case Preset::desk: return "desk";
        case Preset::custom: return "custom";
    }
    return "?";
}

Preset parse_preset(const std::string& text) {
    const std::string v = trim(text);
    if (v == "paper") return Preset::paper;
    if (v == "desk") return Preset::desk;
    if (v == "custom") return Preset::custom;
    throw ConfigError("preset must be paper, desk or custom");
}

std::string config_keys_help() {
    return "scenario, solver, preset, initial, t0, t_end, amplitude, sigma, epsilon, kappa,\n"
           "half_length, fourier_n, time_steps, dt, n_I, n_II, n_III, n_IV, inner_boundary,\n"
           "outer_boundary, snapshot_every, newton_tol, newton_max_iter, output";
}

}  // namespace breather
