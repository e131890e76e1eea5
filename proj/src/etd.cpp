#include "breather/etd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace breather {

EtdCoefficients etd_coefficients(std::span<const cplx> linear_symbol, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("ETD step must be positive");
    const std::size_t n = linear_symbol.size();
    EtdCoefficients c;
    c.h = h;
    c.exp_full.resize(n);
    c.exp_half.resize(n);
    c.q.resize(n);
    c.f1.resize(n);
    c.f2.resize(n);
    c.f3.resize(n);

    std::array<cplx, kContourPoints> roots;
    for (int m = 0; m < kContourPoints; ++m) {
        const double theta = std::numbers::pi * (static_cast<double>(m) + 0.5) / (kContourPoints / 2.0);
        roots[m] = std::polar(1.0, theta);
    }

    for (std::size_t k = 0; k < n; ++k) {
        const cplx hl = h * linear_symbol[k];
        c.exp_full[k] = std::exp(hl);
        c.exp_half[k] = std::exp(0.5 * hl);
        cplx q = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
        for (const cplx& root : roots) {
            const cplx r = hl + root;
            const cplx er = std::exp(r);
            const cplx r3 = r * r * r;
            q += (std::exp(0.5 * r) - 1.0) / r;
            f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
            f2 += (2.0 + r + er * (-2.0 + r)) / r3;
            f3 += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
        }
        const double scale = h / kContourPoints;
        c.q[k] = q * scale;
        c.f1[k] = f1 * scale;
        c.f2[k] = f2 * scale;
        c.f3[k] = f3 * scale;
    }
    return c;
}

std::array<cplx, 4> etd_weights_direct(cplx r, double h) {
    const cplx er = std::exp(r);
    const cplx r3 = r * r * r;
    return {h * (std::exp(0.5 * r) - 1.0) / r, h * (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3,
            h * (2.0 + r + er * (-2.0 + r)) / r3, h * (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3};
}

Etdrk4Stepper::Etdrk4Stepper(EtdCoefficients coeffs)
    : coeffs_(std::move(coeffs)), fft_(coeffs_.size()) {
    const std::size_t n = coeffs_.size();
    for (auto* v : {&u_hat_, &a_hat_, &b_hat_, &c_hat_, &nu_, &na_, &nb_, &nc_, &phys_, &work_}) {
        v->assign(n, cplx(0.0));
    }
}

void Etdrk4Stepper::eval_hat(std::span<const cplx> u_phys, double t, const Nonlinearity& nonlinear,
                             std::vector<cplx>& out_hat) {
    const std::vector<cplx> nl = nonlinear(u_phys, t);
    if (nl.size() != out_hat.size()) {
        throw std::invalid_argument("nonlinearity returned a field of the wrong length");
    }
    fft_.forward(nl, out_hat);
}

void Etdrk4Stepper::step(std::span<cplx> state, double t, const Nonlinearity& nonlinear) {
    const std::size_t n = coeffs_.size();
    if (state.size() != n) throw std::invalid_argument("ETDRK4 state length mismatch");
    const double h = coeffs_.h;
    const auto& E = coeffs_.exp_full;
    const auto& E2 = coeffs_.exp_half;
    const auto& Q = coeffs_.q;

    fft_.forward(state, u_hat_);
    eval_hat(state, t, nonlinear, nu_);

    for (std::size_t k = 0; k < n; ++k) a_hat_[k] = E2[k] * u_hat_[k] + Q[k] * nu_[k];
    fft_.inverse(a_hat_, phys_);
    eval_hat(phys_, t + 0.5 * h, nonlinear, na_);

    for (std::size_t k = 0; k < n; ++k) b_hat_[k] = E2[k] * u_hat_[k] + Q[k] * na_[k];
    fft_.inverse(b_hat_, phys_);
    eval_hat(phys_, t + 0.5 * h, nonlinear, nb_);

    for (std::size_t k = 0; k < n; ++k) c_hat_[k] = E2[k] * a_hat_[k] + Q[k] * (2.0 * nb_[k] - nu_[k]);
    fft_.inverse(c_hat_, phys_);
    eval_hat(phys_, t + h, nonlinear, nc_);

    for (std::size_t k = 0; k < n; ++k) {
        u_hat_[k] = E[k] * u_hat_[k] + coeffs_.f1[k] * nu_[k] +
                    2.0 * coeffs_.f2[k] * (na_[k] + nb_[k]) + coeffs_.f3[k] * nc_[k];
    }
    fft_.inverse(u_hat_, state);
}

std::vector<cplx> etdrk4_step(std::span<const cplx> state, double t, const EtdCoefficients& coeffs,
                              const Nonlinearity& nonlinear) {
    Etdrk4Stepper stepper(coeffs);
    std::vector<cplx> out(state.begin(), state.end());
    stepper.step(out, t, nonlinear);
    return out;
}

}  // namespace breather
