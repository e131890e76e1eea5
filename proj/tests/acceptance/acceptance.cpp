// Acceptance checks 1-10. One PASS/FAIL line per criterion; exit status 1 if
// any fails. Paper-preset runs take a few minutes in total.

#include "breather/compare.hpp"
#include "breather/irk.hpp"
#include "breather/etd.hpp"
#include "breather/run_output.hpp"
#include "breather/runs.hpp"
#include "breather/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace breather;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << (ok ? "" : "[x] ") << what;
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

// Runs are shared between criteria.
std::map<std::string, RunResult> cache;

const RunResult& get(const std::string& key, const std::string& config) {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r = run(parse_config(config));
    std::cerr << "  ran " << key << " in "
              << num(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) << " s\n";
    return cache.emplace(key, std::move(r)).first->second;
}

const RunResult& paper(const std::string& id) { return get(id, "scenario = " + id); }

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (std::isfinite(x)) m = std::max(m, std::abs(x));
    }
    return m;
}

double sup_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// --- 1 -------------------------------------------------------------------
Check spectrum_identity() {
    Check c;
    SpectrumScan s;  // [-3, 3]^2 at 121
    const SpectrumScan r = absolute_spectrum_scan(s);
    std::set<std::pair<double, double>> got, want;
    for (const cplx& l : r.hits) got.insert({l.real(), l.imag()});
    for (const cplx& l : scan_points(s)) {
        if (l.real() == 0.0 || (l.imag() == 0.0 && std::abs(l.real()) <= 2.0)) want.insert({l.real(), l.imag()});
    }
    c.require(got == want, "scan hits " + std::to_string(got.size()) + " points, tube has " +
                               std::to_string(want.size()));
    const GrowthRate g = max_growth_rate();
    c.require(std::abs(g.lambda_max - 2.0) <= 1e-10, "max Re over essential spectrum " + num(g.lambda_max));

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int mismatches = 0;
    for (int k = 0; k < 10000; ++k) {
        cplx l(u(rng), u(rng));
        if (k % 4 == 1) l = {0.0, l.imag()};
        if (k % 4 == 2) l = {l.real() / 1.5, 0.0};
        if (in_absolute_spectrum(l, 1e-9) != in_essential_spectrum(l, 1e-9)) ++mismatches;
    }
    c.require(mismatches == 0, "absolute vs essential disagree at " + std::to_string(mismatches) + " of 10^4 points");
    return c;
}

// --- 2 -------------------------------------------------------------------
double breather_error(const RunResult& r) { return max_of(r.diagnostics.max_diff_to_peregrine); }

Check exact_propagation() {
    Check c;
    const std::string base = "scenario = nl-sigma11-tm1, sigma = 1, t0 = -1, t_end = 1";
    const RunResult& desk = get("peregrine-desk", base + ", preset = desk");
    const RunResult& fine = get("peregrine-paper", base);
    const double ed = breather_error(desk), ep = breather_error(fine);
    c.require(desk.ok && fine.ok, "runs completed");
    c.require(ed <= 1e-3, "desk error " + num(ed));
    c.require(ep <= 1e-4, "paper error " + num(ep));
    c.require(ed / ep >= 8.0, "refinement ratio " + num(ed / ep));
    return c;
}

// --- 3 -------------------------------------------------------------------
Check linear_mass() {
    Check c;
    const double d = summarize(get("lin-gauss-desk", "scenario = lin-gauss, preset = desk")).mass_drift;
    const double p = summarize(paper("lin-gauss")).mass_drift;
    c.require(d <= 1e-8, "desk drift " + num(d));
    c.require(p <= 1e-9, "paper drift " + num(p));
    return c;
}

// --- 4 -------------------------------------------------------------------
Check energy_drift() {
    Check c;
    const std::pair<const char*, double> limits[] = {{"nl-gauss-t0", 2.6e-2},
                                                     {"nl-sigma11-t0", 2.5e-3},
                                                     {"nl-sigma09-t0", 1.3e-4},
                                                     {"nl-sigma11-tm1", 7.5e-3},
                                                     {"nl-sigma09-tm1", 2.7e-3}};
    for (const auto& [id, lim] : limits) {
        const RunResult& r = paper(id);
        const double d = summarize(r).max_abs_delta_E;
        c.require(r.ok && d <= lim, std::string(id) + " " + num(d) + " (limit " + num(lim) + ")");
    }
    return c;
}

// --- 5 -------------------------------------------------------------------
// Frozen from reference runs at the paper preset.
constexpr double kLinGaussFinalSup = 1.9038304341476704;
constexpr double kGaussFinalDiff = 1.1891145459804906;
constexpr double kSigma11Peak = 3.5312530557404873;

Check instability() {
    Check c;
    const RunResult& lin = paper("lin-gauss");
    const double growth = sup_abs(lin.values.back()) / sup_abs(lin.values.front());
    c.require(growth >= 10.0 && close_rel(sup_abs(lin.values.back()), kLinGaussFinalSup, 1e-6),
              "(a) linear growth x" + num(growth));

    const RunResult& s09 = paper("nl-sigma09-t0");
    const double m09 = *std::max_element(s09.trace_max.begin(), s09.trace_max.end());
    c.require(m09 < 3.0, "(b) sigma 0.9 max " + num(m09));

    const double diff = summarize(paper("nl-gauss-t0")).final_max_diff;
    c.require(diff >= 0.2 && close_rel(diff, kGaussFinalDiff, 1e-6), "(c) final distance " + num(diff));

    const RunResult& s11 = paper("nl-sigma11-t0");
    const auto peak = std::max_element(s11.trace_max.begin(), s11.trace_max.end());
    const double initial = s11.trace_max.front();
    const bool decreasing = peak + 1 != s11.trace_max.end() && s11.trace_max.back() < *peak;
    c.require(std::abs(initial - 3.3) < 1e-12 && *peak > initial && decreasing &&
                  close_rel(*peak, kSigma11Peak, 1e-6),
              "(d) sigma 1.1 peak " + num(*peak) + " at t = " + num(s11.trace_t[peak - s11.trace_max.begin()]));
    return c;
}


// --- 6 -------------------------------------------------------------------
Check parity_resolution() {
    Check c;
    const char* ids[] = {"lin-gauss", "lin-prop", "nl-gauss-t0", "nl-gauss-tm1", "nl-sigma11-t0",
                         "nl-sigma09-t0", "nl-sigma11-tm1", "nl-sigma09-tm1", "semiclassical"};
    double worst = 0.0;
    std::string worst_id;
    double worst_mirror = 0.0;
    for (const char* id : ids) {
        const RunResult& r = paper(id);
        const auto& d = r.diagnostics;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double rel = d.parity_error[i] / d.max_amplitude[i];
            if (rel > worst) {
                worst = rel;
                worst_id = id;
            }
        }
        if (r.scenario.solver == SolverKind::chebyshev) {
            const auto& m = r.coefficients.back().mags;
            for (std::size_t k = 0; k < m[0].size(); ++k) worst_mirror = std::max(worst_mirror, std::abs(m[0][k] - m[2][k]));
        }
    }
    c.require(worst <= 1e-8, "parity error / max|u| " + num(worst) + " (" + worst_id + ")");
    c.require(worst_mirror <= 1e-12, "domains I and III coefficients differ by " + num(worst_mirror));
    const double floor_iv = paper("nl-gauss-t0").diagnostics.coefficient_floor.back().at(3);
    c.require(floor_iv >= 1e-5 && floor_iv <= 1e-3, "nl-gauss-t0 final floor IV " + num(floor_iv));
    return c;
}

// --- 7 -------------------------------------------------------------------
const RunResult& linear_cheb() {
    return get("lin-gauss-cheb", "scenario = lin-gauss, solver = chebyshev, t_end = 0.5");
}

Check cross_solver() {
    Check c;
    const CompareResult d = compare_runs(paper("lin-gauss"), linear_cheb(), CompareWindow{-20, 20, 0, 0.5});
    c.require(d.max_deviation <= 1e-6, "max deviation " + num(d.max_deviation) + " at x = " + num(d.at_x) +
                                           ", t = " + num(d.at_t) + " over " + std::to_string(d.times_compared) +
                                           " times");
    return c;
}

// --- 8 -------------------------------------------------------------------
double etd_scalar_error(cplx lambda, int steps) {
    const double h = 1.0 / steps;
    Etdrk4Stepper st(etd_coefficients(std::vector<cplx>{lambda}, h));
    std::vector<cplx> u{cplx(1.0)};
    const Nonlinearity f = [](std::span<const cplx>, double t) { return std::vector<cplx>{cplx(std::exp(t))}; };
    for (int k = 0; k < steps; ++k) st.step(u, k * h, f);
    const cplx a = 1.0 / (1.0 - lambda);
    return std::abs(u[0] - ((1.0 - a) * std::exp(lambda) + a * std::exp(1.0)));
}

double irk_forced_error(const MultiDomainGrid& g, int steps) {
    const ForcedNlsModel model(g);
    const double h = 1.0 / steps;
    Gauss2Stepper st(g, model, IrkConfig{h, 1e-13, 50});
    Eigen::VectorXcd u = sample(g, [](double x) { return ForcedNlsModel::exact(x, 0.0); });
    for (int k = 0; k < steps; ++k) st.step(u, k * h);
    return (u - sample(g, [](double x) { return ForcedNlsModel::exact(x, 1.0); })).cwiseAbs().maxCoeff();
}

Check integrator_orders() {
    Check c;
    const double etd = std::log2(etd_scalar_error({-0.5, 3.0}, 20) / etd_scalar_error({-0.5, 3.0}, 40));
    c.require(etd >= 3.7 && etd <= 4.3, "ETDRK4 order " + num(etd));
    const MultiDomainGrid g(GridLayout::desk());
    const double irk = std::log2(irk_forced_error(g, 10) / irk_forced_error(g, 20));
    c.require(irk >= 3.7 && irk <= 4.3, "Gauss-2 order " + num(irk));

    const MultiDomainGrid small(GridLayout{{-20, -5, 5, 20}, {16, 16, 16, 16}});
    const ConstantRateModel rot(3.0);
    Gauss2Stepper st(small, rot, IrkConfig{1e-2, 1e-14, 50});
    Eigen::VectorXcd z = Eigen::VectorXcd::Constant(small.total_nodes(), cplx(0.6, 0.8));
    double drift = 0.0;
    for (int k = 0; k < 1000; ++k) {
        st.step(z, k * 1e-2);
        drift = std::max(drift, (z.cwiseAbs().array() - 1.0).abs().maxCoeff());
    }
    c.require(drift <= 1e-12, "|z| drift " + num(drift));
    return c;
}

// --- 9 -------------------------------------------------------------------
Check linear_vs_nonlinear() {
    Check c;
    const RunResult& nl = paper("nl-gauss-t0");
    const RunResult& lin = linear_cheb();
    double worst = 0.0, at = 0.0;
    int compared = 0;
    for (std::size_t i = 0; i < nl.times.size(); ++i) {
        const double t = nl.times[i];
        if (t > 0.2 + 1e-9) break;
        const std::size_t j = lin.snapshot_near(t);
        if (std::abs(lin.times[j] - t) > 1e-9) continue;
        double dev = 0.0, sup_v = 0.0;
        for (std::size_t k = 0; k < nl.x.size(); ++k) {
            const cplx v = lin.values[j][k];
            const cplx du = nl.values[i][k] - peregrine({nl.x[k], t});
            dev = std::max(dev, std::abs(du - v));
            sup_v = std::max(sup_v, std::abs(v));
        }
        ++compared;
        if (dev / sup_v > worst) {
            worst = dev / sup_v;
            at = t;
        }
    }
    c.require(compared > 0 && worst <= 0.1,
              "max |(u - u_Per) - v| / sup|v| for t <= 0.2 is " + num(worst) + " at t = " + num(at));
    const double sup_lin = sup_abs(paper("lin-gauss").values.back());
    const double sup_nl = summarize(nl).final_max_diff;
    c.require(sup_lin > sup_nl, "at t = 1 linear " + num(sup_lin) + " vs nonlinear difference " + num(sup_nl));
    return c;
}

// --- 10 ------------------------------------------------------------------
constexpr double kSemiclassicalPeakTime = 0.2625;
constexpr double kSemiclassicalPeak = 3.3548;

Check semiclassical_focusing() {
    Check c;
    const auto [t1, p1] = paper("semiclassical").first_peak();
    c.require(p1 >= 2.0 && t1 > 0.0 && t1 < 1.0, "eps 0.1 peak " + num(p1) + " at t = " + num(t1));
    c.require(std::abs(t1 - kSemiclassicalPeakTime) <= 1e-3 && std::abs(p1 - kSemiclassicalPeak) <= 1e-3,
              "matches frozen reference");
    const double t15 = get("semiclassical-0.15", "scenario = semiclassical, epsilon = 0.15").first_peak().first;
    const double t20 = get("semiclassical-0.2", "scenario = semiclassical, epsilon = 0.2").first_peak().first;
    c.require(t20 > t15 && t15 > t1, "peak times " + num(t20) + " > " + num(t15) + " > " + num(t1));
    return c;
}

}  // namespace

int main() {
    const std::pair<const char*, Check (*)()> criteria[] = {
        {"spectrum identity", spectrum_identity},
        {"exact-solution propagation", exact_propagation},
        {"linear mass conservation", linear_mass},
        {"energy drift thresholds", energy_drift},
        {"instability signatures", instability},
        {"parity and resolution", parity_resolution},
        {"cross-solver agreement", cross_solver},
        {"integrator orders", integrator_orders},
        {"linear vs nonlinear early times", linear_vs_nonlinear},
        {"semiclassical focusing", semiclassical_focusing},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, fn] : criteria) {
        ++n;
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        if (!c.pass) ++failed;
        std::cout << "criterion " << n << " " << (c.pass ? "PASS" : "FAIL") << "  " << name << ": "
                  << c.detail.str() << std::endl;
    }
    std::cout << (n - failed) << "/" << n << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
