#include <doctest.h>

#include "breather/diagnostics.hpp"

#include <boost/math/quadrature/sinh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace breather;

namespace {

constexpr double pi = std::numbers::pi;

// Test-side closed forms, independent of the library.
cplx per(double x, double t) {
    const cplx i(0.0, 1.0);
    const double D = 1.0 + 4.0 * x * x + 16.0 * t * t;
    return (1.0 - 4.0 * (1.0 + 4.0 * i * t) / D) * std::exp(2.0 * i * t);
}
cplx per_x(double x, double t) {
    const cplx i(0.0, 1.0);
    const double D = 1.0 + 4.0 * x * x + 16.0 * t * t;
    return 32.0 * x * (1.0 + 4.0 * i * t) / (D * D) * std::exp(2.0 * i * t);
}

double quad(const std::function<double(double)>& f) {
    boost::math::quadrature::sinh_sinh<double> q(12);
    return q.integrate(f, 1e-15);
}

// |u_Per|^2 - 1 = (16 (1 + 16 t^2) - 8 D) / D^2, written out to avoid cancellation in the tails.
double excess(double x, double t) {
    const double D = 1.0 + 4.0 * x * x + 16.0 * t * t;
    return (16.0 * (1.0 + 16.0 * t * t) - 8.0 * D) / (D * D);
}

double energy_oracle(double sigma, double t) {
    const double s2 = sigma * sigma;
    return quad([=](double x) {
        const double m2 = s2 * (1.0 + excess(x, t));
        return 0.5 * (s2 * std::norm(per_x(x, t)) - m2 * s2 * excess(x, t));
    });
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("breather energy is zero") {
    const MultiDomainGrid g(GridLayout::paper());
    for (double t : {-1.0, 0.0, 0.5}) {
        const double oracle = energy_oracle(1.0, t);
        CHECK(std::abs(oracle) < 1e-10);
        const auto u = sample(g, [t](double x) { return peregrine({x, t}); });
        CHECK(std::abs(energy(u, g, AsymptoticModulus(1.0)) - oracle) < 1e-9);
    }
}

TEST_CASE("energy of scaled breathers against quadrature") {
    const MultiDomainGrid g(GridLayout::paper());
    for (double sigma : {0.9, 1.1}) {
        for (double t : {-1.0, 0.0}) {
            const auto u = sample(g, [=](double x) { return sigma * peregrine({x, t}); });
            const double e = energy(u, g, AsymptoticModulus(sigma * sigma));
            CHECK(e == doctest::Approx(energy_oracle(sigma, t)).epsilon(1e-9));
        }
    }
    // Without rescaling kappa the integrand does not decay.
    const auto u = sample(g, [](double x) { return 1.1 * peregrine({x, 0.0}); });
    CHECK(std::isnan(energy(u, g, AsymptoticModulus(1.0))));
}

TEST_CASE("energy is invariant under a global phase") {
    const MultiDomainGrid g(GridLayout::desk());
    const auto u = sample(g, [](double x) {
        return peregrine({x, 0.2}) + 0.1 * (std::isfinite(x) ? std::exp(-x * x) : 0.0);
    });
    const double e = energy(u, g, AsymptoticModulus());
    for (double th : {0.3, 1.7, -2.9}) {
        const Eigen::VectorXcd v = std::polar(1.0, th) * u;
        CHECK(std::abs(energy(v, g, AsymptoticModulus()) - e) < 1e-12);
    }
}

TEST_CASE("periodic energy of a Gaussian") {
    // u = e^{-x^2}, kappa = 0: E = (sqrt(pi/2) - sqrt(pi)/2) / 2.
    const FourierGrid g(20.0, 512);
    std::vector<cplx> u(g.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::exp(-g.nodes()[j] * g.nodes()[j]);
    const double want = 0.5 * (std::sqrt(pi / 2.0) - std::sqrt(pi) / 2.0);
    CHECK(energy(u, g, AsymptoticModulus(0.0)) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("initial linear mass against quadrature") {
    const double m0 = quad([](double x) { return 2.0 * (std::conj(per(x, 0.0)) * 0.1 * std::exp(-x * x)).real(); });
    const FourierGrid fg(50.0, 4096);
    std::vector<cplx> v(fg.size()), up(fg.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = fg.nodes()[j];
        v[j] = 0.1 * std::exp(-x * x);
        up[j] = peregrine({x, 0.0});
    }
    CHECK(mass(v, up, fg) == doctest::Approx(m0).epsilon(1e-12));
    const ComplexField1D fv(fg.nodes(), v, 0.0), fu(fg.nodes(), up, 0.0);
    CHECK(mass(fv, fu, fg) == mass(v, up, fg));

    const MultiDomainGrid g(GridLayout::paper());
    const auto cv = sample(g, [](double x) { return cplx(std::isfinite(x) ? 0.1 * std::exp(-x * x) : 0.0); });
    const auto cu = sample(g, [](double x) { return peregrine({x, 0.0}); });
    CHECK(mass(cv, cu, g) == doctest::Approx(m0).epsilon(1e-12));
}

TEST_CASE("mass is real-linear") {
    const MultiDomainGrid g(GridLayout::desk());
    const auto up = sample(g, [](double x) { return peregrine({x, 0.3}); });
    const auto a = sample(g, [](double x) { return cplx(std::isfinite(x) ? std::exp(-x * x) : 0.0, 0.0); });
    const auto b = sample(g, [](double x) { return cplx(0.0, std::isfinite(x) ? x * std::exp(-x * x / 2) : 0.0); });
    const double ma = mass(a, up, g), mb = mass(b, up, g);
    const Eigen::VectorXcd c = 2.5 * a - 0.75 * b;
    CHECK(mass(c, up, g) == doctest::Approx(2.5 * ma - 0.75 * mb).epsilon(1e-13));
}

TEST_CASE("delta_E") {
    DiagnosticsRecord r;
    CHECK_THROWS_AS(delta_E(r, 1.0), std::domain_error);
    r.times.push_back(0.0);
    r.energy.push_back(2.0);
    CHECK(delta_E(r, 2.0) == 0.0);
    CHECK(delta_E(r, 1.0) == 0.5);
    r.energy.front() = 1e-12;
    CHECK_THROWS_AS(delta_E(r, 1.0), std::domain_error);
}

TEST_CASE("difference to the breather vanishes on the breather") {
    const MultiDomainGrid g(GridLayout::desk());
    const auto u = sample(g, [](double x) { return peregrine({x, 0.7}); });
    CHECK(max_diff_to_peregrine(std::span<const cplx>(u.data(), u.size()), g.node_x(), 0.7) == 0.0);
    const auto f = peregrine_field(std::vector<double>{-1.0, 0.0, 2.0}, -0.4);
    for (double d : diff_to_peregrine(f)) CHECK(d == 0.0);
}

TEST_CASE("parity error") {
    const MultiDomainGrid g(GridLayout::desk());
    const auto even = sample(g, [](double x) { return peregrine({x, 0.4}); });
    CHECK(parity_error(even, g) == 0.0);
    const double eps = 1e-3;
    const FourierGrid fg(pi * 4, 256);
    std::vector<cplx> u(fg.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::cos(fg.nodes()[j]) + eps * std::sin(fg.nodes()[j]);
    CHECK(parity_error(u, fg) == doctest::Approx(2.0 * eps).epsilon(1e-12));
    CHECK_THROWS(parity_error(even, MultiDomainGrid(GridLayout{{-20, -4, 5, 20}, {20, 20, 20, 20}})));
}

TEST_CASE("coefficient floor") {
    std::vector<double> band(40, 0.0);
    band[0] = 1.0;
    band[3] = 0.2;
    CHECK(coefficient_floor(band) <= 1e-14);

    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.5, 1.0);
    std::vector<double> noise(100);
    for (auto& v : noise) v = u(rng);
    const double f = coefficient_floor(noise);
    CHECK(f > 0.3);
    DiagnosticsRecord r;
    check_resolution(r, 0.0, {1e-9, f});
    check_resolution(r, 0.1, {1e-9, f});
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("domain II") != std::string::npos);

    // Alternate entries killed by parity do not pull the floor to zero.
    std::vector<double> parity(101, 0.0);
    parity[0] = 2.0;
    for (std::size_t k = 2; k < parity.size(); k += 2) parity[k] = 4e-5;
    CHECK(coefficient_floor(parity) == doctest::Approx(2e-5));
    CHECK(coefficient_floor(std::vector<double>{}) == 0.0);
}

TEST_CASE("fourier magnitudes by wavenumber") {
    const FourierGrid g(pi, 16);
    std::vector<cplx> u(16);
    for (std::size_t j = 0; j < 16; ++j) u[j] = std::cos(3.0 * g.nodes()[j]);
    const auto m = fourier_magnitudes_by_wavenumber(u);
    REQUIRE(m.size() == 9);
    CHECK(m[3] == doctest::Approx(0.5));
    CHECK(m[0] < 1e-15);
    CHECK(fourier_high_mode_ratio(u) < 1e-14);
}

TEST_CASE("diagnostics csv layout") {
    DiagnosticsRecord r;
    r.times = {0.0};
    r.energy = {1.5};
    r.delta_E = {0.0};
    r.mass = {std::nan("")};
    r.max_amplitude = {3.0};
    r.max_diff_to_peregrine = {0.25};
    r.parity_error = {0.0};
    r.coefficient_floor = {{1e-10}};
    std::ostringstream os;
    write_diagnostics_csv(os, r);
    CHECK(os.str() == "t,E,delta_E,M,max_u,max_diff,parity_err,floor_I,floor_II,floor_III,floor_IV\n"
                      "0,1.5,0,nan,3,0.25,0,1e-10,nan,nan,nan\n");
}

}
