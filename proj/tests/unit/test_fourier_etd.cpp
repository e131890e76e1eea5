#include <doctest.h>

#include "breather/etd.hpp"
#include "breather/fourier.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace breather;

namespace {

constexpr double pi = std::numbers::pi;

double max_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// Scalar u' = lambda u + e^t, u(0) = 1, integrated to t = 1.
double scalar_error(cplx lambda, int steps) {
    const double h = 1.0 / steps;
    Etdrk4Stepper st(etd_coefficients(std::vector<cplx>{lambda}, h));
    std::vector<cplx> u{cplx(1.0)};
    const Nonlinearity forcing = [](std::span<const cplx>, double t) { return std::vector<cplx>{cplx(std::exp(t))}; };
    for (int k = 0; k < steps; ++k) st.step(u, k * h, forcing);
    const cplx c = 1.0 / (1.0 - lambda);
    const cplx exact = (1.0 - c) * std::exp(lambda) + c * std::exp(1.0);
    return std::abs(u[0] - exact);
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("grid layout and wavenumbers") {
    const FourierGrid g(pi, 8);
    CHECK(g.nodes().front() == doctest::Approx(-pi));
    CHECK(g.spacing() == doctest::Approx(pi / 4));
    CHECK(g.wavenumbers()[3] == doctest::Approx(3.0));
    CHECK(g.wavenumbers()[4] == doctest::Approx(-4.0));
    CHECK(g.mirror(0) == 0);
    CHECK(g.mirror(1) == 7);
    CHECK_THROWS(FourierGrid(1.0, 6));
    CHECK_THROWS(FourierGrid(-1.0, 8));
}

TEST_CASE("fft round trip and derivatives") {
    const FourierGrid g(10.0, 256);
    std::vector<cplx> u(g.size()), ux(g.size()), uxx(g.size());
    const double k = 3.0 * pi / 10.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = g.nodes()[j];
        u[j] = cplx(std::sin(k * x), std::cos(2 * k * x));
        ux[j] = cplx(k * std::cos(k * x), -2 * k * std::sin(2 * k * x));
        uxx[j] = cplx(-k * k * std::sin(k * x), -4 * k * k * std::cos(2 * k * x));
    }
    Fft f(u.size());
    std::vector<cplx> hat(u.size()), back(u.size());
    f.forward(u, hat);
    f.inverse(hat, back);
    CHECK(max_err(u, back) < 1e-14);
    CHECK(max_err(spectral_dx(g, u), ux) < 1e-12);
    CHECK(max_err(spectral_dxx(g, u), uxx) < 1e-11);
}

TEST_CASE("coefficient magnitudes of a single mode") {
    const FourierGrid g(pi, 16);
    std::vector<cplx> u(16);
    for (std::size_t j = 0; j < 16; ++j) u[j] = 0.5 * std::exp(cplx(0.0, 2.0 * g.nodes()[j]));
    const auto m = fourier_coefficient_magnitudes(u);
    for (std::size_t j = 0; j < 16; ++j) CHECK(m[j] == doctest::Approx(j == 2 ? 0.5 : 0.0));
}

TEST_CASE("trigonometric interpolant") {
    const FourierGrid g(5.0, 64);
    std::vector<cplx> u(64);
    auto f = [](double x) { return cplx(std::cos(pi * x / 5.0 * 4.0), std::sin(pi * x / 5.0 * 7.0)); };
    for (std::size_t j = 0; j < 64; ++j) u[j] = f(g.nodes()[j]);
    const TrigInterpolant p(g, u);
    for (std::size_t j = 0; j < 64; j += 7) CHECK(std::abs(p(g.nodes()[j]) - u[j]) < 1e-13);
    for (double x : {-4.93, -1.1, 0.37, 2.5, 4.999}) CHECK(std::abs(p(x) - f(x)) < 1e-13);
}

}

TEST_SUITE("etd") {

TEST_CASE("contour weights match closed forms away from zero") {
    for (cplx z : {cplx(-2.0, 0.0), cplx(0.0, -5.0), cplx(-1.0, 30.0), cplx(-40.0, -3.0)}) {
        const double h = 0.01;
        const auto c = etd_coefficients(std::vector<cplx>{z / h}, h);
        const auto d = etd_weights_direct(z, h);
        CHECK(std::abs(c.q[0] - d[0]) < 1e-12 * std::abs(d[0]));
        CHECK(std::abs(c.f1[0] - d[1]) < 1e-11 * std::abs(d[1]));
        CHECK(std::abs(c.f2[0] - d[2]) < 1e-11 * std::abs(d[2]));
        CHECK(std::abs(c.f3[0] - d[3]) < 1e-11 * std::abs(d[3]));
    }
}

TEST_CASE("zero symbol reduces to classical RK4 weights") {
    const auto c = etd_coefficients(std::vector<cplx>{cplx(0.0)}, 0.1);
    CHECK(std::abs(c.f1[0] - 0.1 / 6.0) < 1e-16);
    CHECK(std::abs(c.f2[0] - 0.1 / 6.0) < 1e-16);
    CHECK(std::abs(c.f3[0] - 0.1 / 6.0) < 1e-16);
    CHECK(std::abs(c.q[0] - 0.05) < 1e-16);
}

TEST_CASE("fourth order on a forced scalar problem") {
    for (cplx lambda : {cplx(-2.0, 0.0), cplx(0.0, -8.0), cplx(-0.5, 3.0)}) {
        const double e1 = scalar_error(lambda, 20), e2 = scalar_error(lambda, 40);
        const double order = std::log2(e1 / e2);
        CHECK(order >= 3.7);
        CHECK(order <= 4.3);
    }
}

TEST_CASE("free Schrodinger Gaussian is exact") {
    // u_t = i u_xx, u(x, 0) = e^{-x^2}: u = e^{-x^2 / (1 + 4it)} / sqrt(1 + 4it).
    const FourierGrid g(40.0, 1024);
    std::vector<cplx> sym(g.size()), u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        sym[j] = cplx(0.0, -g.wavenumbers()[j] * g.wavenumbers()[j]);
        u[j] = std::exp(-g.nodes()[j] * g.nodes()[j]);
    }
    const Nonlinearity none = [](std::span<const cplx> w, double) { return std::vector<cplx>(w.size()); };
    Etdrk4Stepper st(etd_coefficients(sym, 0.05));
    for (int k = 0; k < 20; ++k) st.step(u, k * 0.05, none);
    const cplx a(1.0, 4.0);
    double err = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = g.nodes()[j];
        err = std::max(err, std::abs(u[j] - std::exp(-x * x / a) / std::sqrt(a)));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("NLS soliton keeps its shape") {
    // sech(x) e^{it} solves i u_t + u_xx + 2|u|^2 u = 0.
    const FourierGrid g(30.0, 512);
    std::vector<cplx> sym(g.size()), u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        sym[j] = cplx(0.0, -g.wavenumbers()[j] * g.wavenumbers()[j]);
        u[j] = 1.0 / std::cosh(g.nodes()[j]);
    }
    const Nonlinearity nl = [](std::span<const cplx> w, double) {
        std::vector<cplx> out(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) out[j] = cplx(0.0, 2.0) * std::norm(w[j]) * w[j];
        return out;
    };
    const double h = 1e-3;
    Etdrk4Stepper st(etd_coefficients(sym, h));
    for (int k = 0; k < 1000; ++k) st.step(u, k * h, nl);
    double err = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        err = std::max(err, std::abs(u[j] - std::exp(cplx(0.0, 1.0)) / std::cosh(g.nodes()[j])));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("wrapper agrees with the stepper") {
    const std::vector<cplx> sym{cplx(0.0, -1.0), cplx(0.0, -4.0)};
    const auto c = etd_coefficients(sym, 0.1);
    const Nonlinearity nl = [](std::span<const cplx> w, double t) {
        return std::vector<cplx>{w[0] * t, w[1] * w[1]};
    };
    const std::vector<cplx> u0{cplx(1.0, 0.5), cplx(-0.2, 0.1)};
    std::vector<cplx> u = u0;
    Etdrk4Stepper st(c);
    st.step(u, 0.3, nl);
    CHECK(max_err(etdrk4_step(u0, 0.3, c, nl), u) == 0.0);
}

}
