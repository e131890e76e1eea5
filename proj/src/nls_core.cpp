#include "breather/nls_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace breather {

namespace {

void require_increasing(std::span<const double> coords) {
    for (std::size_t j = 1; j < coords.size(); ++j) {
        if (!(coords[j] > coords[j - 1])) {
            throw std::invalid_argument("coordinates must be strictly increasing");
        }
    }
}

void require_same_grid(const ComplexField1D& a, const ComplexField1D& b) {
    if (!a.same_grid(b)) {
        throw std::invalid_argument("fields are sampled on different grids");
    }
}

}  // namespace

ComplexField1D::ComplexField1D(std::vector<double> coords, std::vector<cplx> values, double time)
    : coords_(std::move(coords)), values_(std::move(values)), time_(time) {
    if (coords_.size() != values_.size()) {
        throw std::invalid_argument("coords and values differ in length");
    }
    require_increasing(coords_);
}

bool ComplexField1D::same_grid(const ComplexField1D& other) const {
    return coords_ == other.coords_;
}

ScalingParam::ScalingParam(double sigma) : sigma_(sigma) {
    if (sigma == 0.0 || !std::isfinite(sigma)) {
        throw std::invalid_argument("scaling parameter sigma must be finite and nonzero");
    }
}

AsymptoticModulus::AsymptoticModulus(double kappa) : kappa_(kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("asymptotic modulus kappa must be finite and >= 0");
    }
}

cplx peregrine(SpaceTimePoint p) {
    const double denom = 1.0 + 4.0 * p.x * p.x + 16.0 * p.t * p.t;
    const cplx numer(4.0, 16.0 * p.t);
    // denom = inf at the point at infinity; numer / inf = 0.
    return (1.0 - numer / denom) * std::polar(1.0, 2.0 * p.t);
}

ComplexField1D peregrine_field(std::span<const double> coords, double t) {
    require_increasing(coords);
    std::vector<cplx> values(coords.size());
    std::transform(coords.begin(), coords.end(), values.begin(),
                   [t](double x) { return peregrine({x, t}); });
    return ComplexField1D(std::vector<double>(coords.begin(), coords.end()), std::move(values), t);
}

ComplexField1D scale_solution(const ComplexField1D& field, ScalingParam s) {
    const double sigma = s.value();
    const std::size_t n = field.size();
    std::vector<double> coords(n);
    std::vector<cplx> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        coords[j] = field.coords()[j] / sigma;
        values[j] = sigma * field.values()[j];
    }
    if (sigma < 0.0) {
        std::reverse(coords.begin(), coords.end());
        std::reverse(values.begin(), values.end());
    }
    return ComplexField1D(std::move(coords), std::move(values), field.time() / (sigma * sigma));
}

void nls_rhs_into(std::span<const cplx> u, std::span<const cplx> uxx, std::span<cplx> out) {
    if (u.size() != uxx.size() || u.size() != out.size()) {
        throw std::invalid_argument("nls_rhs: size mismatch");
    }
    const cplx i(0.0, 1.0);
    for (std::size_t j = 0; j < u.size(); ++j) {
        out[j] = i * (uxx[j] + 2.0 * std::norm(u[j]) * u[j]);
    }
}

void linearized_rhs_into(std::span<const cplx> v, std::span<const cplx> vxx,
                         std::span<const cplx> uper, std::span<cplx> out) {
    if (v.size() != vxx.size() || v.size() != uper.size() || v.size() != out.size()) {
        throw std::invalid_argument("linearized_rhs: size mismatch");
    }
    const cplx i(0.0, 1.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = i * (vxx[j] + 4.0 * std::norm(uper[j]) * v[j] +
                      2.0 * uper[j] * uper[j] * std::conj(v[j]));
    }
}

ComplexField1D nls_rhs(const ComplexField1D& u, const ComplexField1D& uxx) {
    require_same_grid(u, uxx);
    std::vector<cplx> out(u.size());
    nls_rhs_into(u.values(), uxx.values(), out);
    return ComplexField1D(u.coords(), std::move(out), u.time());
}

ComplexField1D linearized_rhs(const ComplexField1D& v, const ComplexField1D& vxx,
                              const ComplexField1D& uper) {
    require_same_grid(v, vxx);
    require_same_grid(v, uper);
    if (v.time() != uper.time() || v.time() != vxx.time()) {
        throw std::invalid_argument("linearized_rhs: time stamps differ");
    }
    std::vector<cplx> out(v.size());
    linearized_rhs_into(v.values(), vxx.values(), uper.values(), out);
    return ComplexField1D(v.coords(), std::move(out), v.time());
}

std::array<double, 4> RealLinearPointwise::real_block() const {
    // alpha w + beta conj(w) with w = a + ib:
    //   Re = (ar + br) a + (-ai + bi) b
    //   Im = (ai + bi) a + ( ar - br) b
    return {alpha.real() + beta.real(), -alpha.imag() + beta.imag(),
            alpha.imag() + beta.imag(), alpha.real() - beta.real()};
}

RealLinearPointwise nls_reaction_jacobian(cplx u) {
    const cplx i(0.0, 1.0);
    return {i * 4.0 * std::norm(u), i * 2.0 * u * u};
}

RealLinearPointwise linearized_reaction(cplx uper) {
    return nls_reaction_jacobian(uper);
}

double nls_residual(const ComplexField1D& before, const ComplexField1D& mid,
                    const ComplexField1D& after, const SecondDerivative& dxx) {
    require_same_grid(before, mid);
    require_same_grid(mid, after);
    const double h1 = mid.time() - before.time();
    const double h2 = after.time() - mid.time();
    if (!(h1 > 0.0) || !(h2 > 0.0)) {
        throw std::invalid_argument("nls_residual: snapshots must be ordered in time with h > 0");
    }
    if (std::abs(h1 - h2) > 1e-9 * std::max(h1, h2)) {
        throw std::invalid_argument("nls_residual: snapshots must be equally spaced in time");
    }
    const double h = 0.5 * (h1 + h2);
    const std::vector<cplx> uxx = dxx(mid.values());
    if (uxx.size() != mid.size()) {
        throw std::invalid_argument("nls_residual: derivative operator returned wrong length");
    }
    const cplx i(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < mid.size(); ++j) {
        const cplx u = mid.values()[j];
        const cplx ut = (after.values()[j] - before.values()[j]) / (2.0 * h);
        const cplx r = i * ut + uxx[j] + 2.0 * std::norm(u) * u;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace breather
