#include "breather/diagnostics.hpp"

#include "breather/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace breather {

double energy(const Eigen::VectorXcd& u, const MultiDomainGrid& grid, AsymptoticModulus kappa) {
    if (u.size() != grid.total_nodes()) throw std::invalid_argument("state does not match grid");
    const Eigen::VectorXcd ux = grid.apply_dx(u);
    const Eigen::ArrayXd m2 = u.array().abs2();
    const Eigen::VectorXd f = (0.5 * (ux.array().abs2() - m2 * (m2 - kappa.value()))).matrix();
    return grid.integrate(f);
}

double energy(std::span<const cplx> u, const FourierGrid& grid, AsymptoticModulus kappa) {
    if (u.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
    const auto ux = spectral_dx(grid, u);
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double m2 = std::norm(u[j]);
        sum += std::norm(ux[j]) - m2 * (m2 - kappa.value());
    }
    return 0.5 * grid.spacing() * sum;
}

double delta_E(const DiagnosticsRecord& record, double e_now) {
    if (record.energy.empty()) throw std::domain_error("no initial energy recorded");
    const double e0 = record.energy.front();
    if (!(std::abs(e0) >= kEnergyZero)) {
        throw std::domain_error("initial energy is zero; relative drift undefined");
    }
    return 1.0 - e_now / e0;
}

double mass(const Eigen::VectorXcd& v, const Eigen::VectorXcd& uper, const MultiDomainGrid& grid) {
    if (v.size() != grid.total_nodes() || uper.size() != v.size()) {
        throw std::invalid_argument("fields do not match grid");
    }
    const Eigen::VectorXd f = 2.0 * (uper.conjugate().array() * v.array()).real().matrix();
    return grid.integrate(f);
}

double mass(std::span<const cplx> v, std::span<const cplx> uper, const FourierGrid& grid) {
    if (v.size() != grid.size() || uper.size() != v.size()) {
        throw std::invalid_argument("fields do not match grid");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) sum += 2.0 * (std::conj(uper[j]) * v[j]).real();
    return grid.spacing() * sum;
}

double mass(const ComplexField1D& v, const ComplexField1D& uper, const FourierGrid& grid) {
    if (!v.same_grid(uper)) throw std::invalid_argument("fields are on different grids");
    if (v.time() != uper.time()) throw std::invalid_argument("fields have different time stamps");
    return mass(v.values(), uper.values(), grid);
}

std::vector<double> diff_to_peregrine(std::span<const cplx> u, std::span<const double> x, double t) {
    if (u.size() != x.size()) throw std::invalid_argument("values and coordinates differ in length");
    std::vector<double> out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = std::abs(u[j] - peregrine({x[j], t}));
    return out;
}

std::vector<double> diff_to_peregrine(const ComplexField1D& state) {
    return diff_to_peregrine(state.values(), state.coords(), state.time());
}

double max_diff_to_peregrine(std::span<const cplx> u, std::span<const double> x, double t) {
    const auto d = diff_to_peregrine(u, x, t);
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

double parity_error(const Eigen::VectorXcd& u, const MultiDomainGrid& grid) {
    if (!grid.symmetric()) throw std::invalid_argument("grid is not symmetric under x -> -x");
    if (u.size() != grid.total_nodes()) throw std::invalid_argument("state does not match grid");
    double err = 0.0;
    for (int j = 0; j < grid.total_nodes(); ++j) err = std::max(err, std::abs(u[j] - u[grid.mirror(j)]));
    return err;
}

double parity_error(std::span<const cplx> u, const FourierGrid& grid) {
    if (u.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
    double err = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) err = std::max(err, std::abs(u[j] - u[grid.mirror(j)]));
    return err;
}

double coefficient_floor(std::span<const double> magnitudes) {
    if (magnitudes.empty()) return 0.0;
    const double peak = *std::max_element(magnitudes.begin(), magnitudes.end());
    if (peak == 0.0) return 0.0;
    const std::size_t n = magnitudes.size();
    const std::size_t tail = std::max<std::size_t>(1, n / 10);
    std::vector<double> t(magnitudes.end() - static_cast<std::ptrdiff_t>(tail), magnitudes.end());
    // Coefficients killed by parity sit at rounding level and would drag the median down.
    std::vector<double> live;
    for (double m : t) {
        if (m > kRoundingLevel * peak) live.push_back(m);
    }
    if (!live.empty()) t.swap(live);
    std::sort(t.begin(), t.end());
    const std::size_t k = t.size();
    const double median = k % 2 ? t[k / 2] : 0.5 * (t[k / 2 - 1] + t[k / 2]);
    return median / peak;
}

std::vector<double> coefficient_floor(const std::vector<std::vector<double>>& per_domain) {
    std::vector<double> out;
    out.reserve(per_domain.size());
    for (const auto& c : per_domain) out.push_back(coefficient_floor(c));
    return out;
}

std::vector<double> fourier_magnitudes_by_wavenumber(std::span<const cplx> u) {
    const auto mags = fourier_coefficient_magnitudes(u);
    const std::size_t n = mags.size();
    std::vector<double> out(n / 2 + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = j <= n / 2 ? j : n - j;
        out[k] = std::max(out[k], mags[j]);
    }
    return out;
}

double fourier_high_mode_ratio(std::span<const cplx> u) {
    const auto m = fourier_magnitudes_by_wavenumber(u);
    const double peak = *std::max_element(m.begin(), m.end());
    if (peak == 0.0) return 0.0;
    const std::size_t start = m.size() - m.size() / 3;
    const double high = *std::max_element(m.begin() + static_cast<std::ptrdiff_t>(start), m.end());
    return high / peak;
}

void check_resolution(DiagnosticsRecord& record, double t, const std::vector<double>& floors) {
    for (std::size_t d = 0; d < floors.size(); ++d) {
        if (!(floors[d] > kResolutionAlarm)) continue;
        const std::string name = d < record.floor_names.size() ? record.floor_names[d] : std::to_string(d);
        const std::string tag = "resolution alarm in domain " + name;
        // Once per domain: the first crossing is what matters.
        const bool seen = std::any_of(record.warnings.begin(), record.warnings.end(),
                                      [&](const std::string& w) { return w.rfind(tag + ":", 0) == 0; });
        if (!seen) {
            record.warnings.push_back(tag + ": coefficient floor " + fmt17(floors[d]) + " at t = " + fmt17(t));
        }
    }
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticsRecord& r) {
    os << "t,E,delta_E,M,max_u,max_diff,parity_err";
    const std::vector<std::string> names{"I", "II", "III", "IV"};
    for (const auto& name : names) os << ",floor_" << name;
    os << '\n';
    const double nan = std::nan("");
    for (std::size_t i = 0; i < r.size(); ++i) {
        os << fmt17(r.times[i]) << ',' << fmt17(r.energy[i]) << ',' << fmt17(r.delta_E[i]) << ','
           << fmt17(r.mass[i]) << ',' << fmt17(r.max_amplitude[i]) << ',' << fmt17(r.max_diff_to_peregrine[i])
           << ',' << fmt17(r.parity_error[i]);
        const auto& floors = r.coefficient_floor[i];
        for (std::size_t d = 0; d < names.size(); ++d) os << ',' << fmt17(d < floors.size() ? floors[d] : nan);
        os << '\n';
    }
}

}  // namespace breather
