#include "breather/compare.hpp"

#include "breather/fourier.hpp"
#include "breather/run_output.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace breather {

namespace {

constexpr double kTimeMatch = 1e-9;

// Point evaluation of one snapshot of a run.
class SnapshotInterpolator {
public:
    explicit SnapshotInterpolator(const RunResult& r) : run_(r) {
        const Scenario& s = r.scenario;
        if (s.solver == SolverKind::fourier) {
            fourier_ = std::make_unique<FourierGrid>(s.half_length, s.fourier_n);
            if (r.x.size() != fourier_->size()) throw std::invalid_argument("snapshot rows do not match the grid");
        } else {
            cheb_ = std::make_unique<MultiDomainGrid>(s.layout);
            rows_ = cheb_->output_rows();
            if (r.x.size() != rows_.size()) throw std::invalid_argument("snapshot rows do not match the grid");
        }
    }

    bool covers(double x_min, double x_max) const {
        if (cheb_) return true;
        const double L = fourier_->half_length();
        return x_min >= -L && x_max <= L;
    }

    std::vector<cplx> evaluate(std::size_t snap, const std::vector<double>& xs) const {
        const auto& vals = run_.values.at(snap);
        std::vector<cplx> out(xs.size());
        if (fourier_) {
            const TrigInterpolant f(*fourier_, vals);
            for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
        } else {
            Eigen::VectorXcd u(cheb_->total_nodes());
            for (std::size_t j = 0; j < rows_.size(); ++j) u[rows_[j].flat] = vals[j];
            for (std::size_t i = 0; i < xs.size(); ++i) out[i] = cheb_->interpolate(u, xs[i]);
        }
        return out;
    }

private:
    const RunResult& run_;
    std::unique_ptr<FourierGrid> fourier_;
    std::unique_ptr<MultiDomainGrid> cheb_;
    std::vector<MultiDomainGrid::OutputRow> rows_;
};

bool covers_time(const RunResult& r, double t_min, double t_max) {
    return !r.times.empty() && r.times.front() <= t_min + kTimeMatch && r.times.back() >= t_max - kTimeMatch;
}

}  // namespace

RunResult load_run(const std::filesystem::path& dir) {
    using nlohmann::json;
    std::ifstream mf(dir / "manifest.json");
    if (!mf) throw IoError("cannot read " + (dir / "manifest.json").string());
    json m;
    try {
        m = json::parse(mf);
    } catch (const json::exception& e) {
        throw IoError("malformed manifest in " + dir.string() + ": " + e.what());
    }
    RunResult r;
    try {
        const auto& sc = m.at("scenario");
        Scenario s = scenario_from_id(sc.at("id").get<std::string>());
        s.solver = sc.at("solver").get<std::string>() == "fourier" ? SolverKind::fourier : SolverKind::chebyshev;
        s.t0 = sc.at("t0").get<double>();
        s.t_end = sc.at("t_end").get<double>();
        const auto& res = m.at("resolution");
        if (s.solver == SolverKind::fourier) {
            s.half_length = res.at("half_length").get<double>();
            s.fourier_n = res.at("fourier_n").get<std::size_t>();
            s.time_steps = res.at("time_steps").get<int>();
        } else {
            s.layout.boundaries = res.at("boundaries").get<std::vector<double>>();
            s.layout.degrees = res.at("degrees").get<std::vector<int>>();
            s.dt = res.at("dt").get<double>();
        }
        r.scenario = s;
    } catch (const json::exception& e) {
        throw IoError("manifest in " + dir.string() + " lacks grid information: " + e.what());
    }

    std::ifstream sf(dir / "snapshots.csv");
    if (!sf) throw IoError("cannot read " + (dir / "snapshots.csv").string());
    std::string line;
    std::getline(sf, line);
    if (line != "t,x,re_u,im_u,abs_u") throw IoError("unexpected snapshots.csv header");
    while (std::getline(sf, line)) {
        if (line.empty()) continue;
        double v[5];
        const char* p = line.c_str();
        for (int c = 0; c < 5; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p) throw IoError("malformed snapshots.csv row: " + line);
            p = *end == ',' ? end + 1 : end;
        }
        if (r.times.empty() || v[0] != r.times.back()) {
            r.times.push_back(v[0]);
            r.values.emplace_back();
        }
        if (r.times.size() == 1) r.x.push_back(v[1]);
        r.values.back().emplace_back(v[2], v[3]);
    }
    for (const auto& vals : r.values) {
        if (vals.size() != r.x.size()) throw IoError("snapshots.csv has ragged snapshots");
    }
    return r;
}

CompareResult compare_runs(const RunResult& a, const RunResult& b, const CompareWindow& w, int samples) {
    if (!(w.x_max > w.x_min) || !(w.t_max >= w.t_min)) throw WindowError("empty comparison window");
    if (samples < 2) throw std::invalid_argument("need at least two sample points");
    const SnapshotInterpolator ia(a), ib(b);
    if (!ia.covers(w.x_min, w.x_max) || !ib.covers(w.x_min, w.x_max)) {
        throw WindowError("x window is not covered by both runs");
    }
    if (!covers_time(a, w.t_min, w.t_max) || !covers_time(b, w.t_min, w.t_max)) {
        throw WindowError("t window is not covered by both runs");
    }
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) xs[i] = w.x_min + (w.x_max - w.x_min) * i / (samples - 1.0);

    CompareResult out;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double t = a.times[i];
        if (t < w.t_min - kTimeMatch || t > w.t_max + kTimeMatch) continue;
        std::size_t j = 0;
        while (j < b.times.size() && std::abs(b.times[j] - t) > kTimeMatch) ++j;
        if (j == b.times.size()) continue;
        const auto ua = ia.evaluate(i, xs);
        const auto ub = ib.evaluate(j, xs);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const double d = std::abs(ua[k] - ub[k]);
            if (d > out.max_deviation) {
                out.max_deviation = d;
                out.at_x = xs[k];
                out.at_t = t;
            }
        }
        ++out.times_compared;
    }
    if (out.times_compared == 0) throw WindowError("runs share no snapshot time inside the window");
    return out;
}

CompareResult compare_runs(const std::filesystem::path& a, const std::filesystem::path& b, const CompareWindow& w,
                           int samples) {
    const RunResult ra = load_run(a);
    const RunResult rb = load_run(b);
    return compare_runs(ra, rb, w, samples);
}

}  // namespace breather
