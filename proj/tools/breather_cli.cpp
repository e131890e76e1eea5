// breather: run the catalog experiments, compare runs, scan the spectrum.

#include <CLI11.hpp>

#include "breather/compare.hpp"
#include "breather/run_output.hpp"
#include "breather/runs.hpp"
#include "breather/scenario.hpp"
#include "breather/spectrum.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kConfig = 2, kSolver = 3, kIo = 4 };

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    std::istringstream is(text);
    double a = 0, b = 0;
    char comma = 0;
    if (!(is >> a >> comma >> b) || comma != ',') {
        throw breather::ConfigError(std::string(what) + " must be given as a,b");
    }
    return {a, b};
}

int cmd_run(const std::string& what, const std::string& preset, const std::string& out,
            const std::vector<std::string>& overrides, bool quiet) {
    using namespace breather;
    Scenario s;
    try {
        std::string text;
        if (std::filesystem::is_regular_file(what)) {
            std::ifstream in(what);
            std::stringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        } else {
            text = "scenario = " + what;
        }
        if (!preset.empty()) text += "\npreset = " + preset;
        for (const auto& o : overrides) {
            if (o.find('=') == std::string::npos) throw ConfigError("override must be key=value: " + o);
            text += "\n" + o;
        }
        s = parse_config(text);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    const std::filesystem::path dir = !out.empty() ? out : !s.output.empty() ? s.output : "runs/" + s.id;

    ProgressCallback progress;
    int last_pct = -1;
    if (!quiet) {
        progress = [&](double t, int k, int steps) {
            const int pct = static_cast<int>(100.0 * k / steps);
            if (pct / 10 != last_pct / 10) {
                last_pct = pct;
                std::cerr << s.id << ": t = " << t << " (" << pct << "%)\n";
            }
        };
    }
    RunResult r;
    try {
        r = run(s, progress);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    try {
        write_run_directory(r, dir);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    }
    const RunSummary sum = summarize(r);
    std::cout << "wrote " << dir.string() << " (" << r.times.size() << " snapshots, " << r.wall_seconds << " s)\n";
    std::cout << "max|u| = " << sum.max_amplitude << " at t = " << sum.max_amplitude_time << '\n';
    if (std::isfinite(sum.max_abs_delta_E)) std::cout << "max|delta_E| = " << sum.max_abs_delta_E << '\n';
    if (std::isfinite(sum.mass_drift)) std::cout << "mass drift = " << sum.mass_drift << '\n';
    for (const auto& w : r.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
    if (!r.ok) {
        std::cerr << "solver failure: " << r.failure << '\n';
        return kSolver;
    }
    return kOk;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& xr, const std::string& tr,
                int samples) {
    using namespace breather;
    try {
        CompareWindow w;
        std::tie(w.x_min, w.x_max) = parse_range(xr, "--x");
        std::tie(w.t_min, w.t_max) = parse_range(tr, "--t");
        const CompareResult c = compare_runs(std::filesystem::path(a), std::filesystem::path(b), w, samples);
        std::cout.precision(17);
        std::cout << "max_deviation " << c.max_deviation << " at x = " << c.at_x << ", t = " << c.at_t << " ("
                  << c.times_compared << " common times)\n";
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const WindowError& e) {
        std::cerr << "window error: " << e.what() << '\n';
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    }
}

int cmd_spectrum(const std::string& region, int resolution, double tol, const std::string& out) {
    using namespace breather;
    SpectrumScan scan;
    try {
        std::istringstream is(region);
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(is >> scan.re_min >> c1 >> scan.re_max >> c2 >> scan.im_min >> c3 >> scan.im_max) || c1 != ',' ||
            c2 != ',' || c3 != ',') {
            throw ConfigError("--region must be re_min,re_max,im_min,im_max");
        }
        scan.resolution = resolution;
        scan.tolerance = tol;
        scan = absolute_spectrum_scan(scan);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) {
        std::cerr << "i/o error: cannot write " << out << '\n';
        return kIo;
    }
    write_spectrum_csv(os, scan);
    if (!os) return kIo;
    const GrowthRate g = max_growth_rate();
    std::cout << scan.hits.size() << " grid points in the absolute spectrum; wrote " << out << '\n';
    std::cout << "max growth rate " << g.lambda_max << " at k = " << g.k_arg << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peregrine breather stability experiments"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the scenario catalog");

    auto* run = app.add_subcommand("run", "Run a scenario by id or configuration file");
    std::string what, preset, out;
    std::vector<std::string> overrides;
    bool quiet = false;
    run->add_option("scenario", what, "Scenario id or path to a key = value configuration file")->required();
    run->add_option("--preset", preset, "Resolution preset")->check(CLI::IsMember({"paper", "desk", "custom"}));
    run->add_option("--out", out, "Output directory (default runs/<id>)");
    run->add_option("--override", overrides, "key=value, applied after the configuration")->take_all();
    run->add_flag("-q,--quiet", quiet, "No progress output");

    auto* cmp = app.add_subcommand("compare", "Max deviation between two run directories");
    std::string dir_a, dir_b, xr = "-20,20", tr = "0,0.5";
    int samples = 2001;
    cmp->add_option("run_a", dir_a)->required();
    cmp->add_option("run_b", dir_b)->required();
    cmp->add_option("--x", xr, "x window a,b");
    cmp->add_option("--t", tr, "t window a,b");
    cmp->add_option("--samples", samples, "Comparison points across the x window");

    auto* spec = app.add_subcommand("spectrum", "Scan the absolute spectrum and write spectrum.csv");
    std::string region = "-3,3,-3,3", spec_out = "spectrum.csv";
    int resolution = 121;
    double tol = 0.0;
    spec->add_option("--region", region, "re_min,re_max,im_min,im_max");
    spec->add_option("--resolution", resolution, "Points per axis");
    spec->add_option("--tol", tol, "Tube width (default 1e-6 times the grid spacing)");
    spec->add_option("--out", spec_out, "Output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfig;
    }

    if (list->parsed()) {
        std::cout << breather::catalog_text();
        return kOk;
    }
    if (run->parsed()) return cmd_run(what, preset, out, overrides, quiet);
    if (cmp->parsed()) return cmd_compare(dir_a, dir_b, xr, tr, samples);
    if (spec->parsed()) return cmd_spectrum(region, resolution, tol, spec_out);
    return kConfig;
}
