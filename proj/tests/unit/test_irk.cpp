#include <doctest.h>

#include "breather/irk.hpp"
#include "breather/nls_core.hpp"

#include <cmath>

using namespace breather;

namespace {

const GridLayout kSmall{{-20.0, -5.0, 5.0, 20.0}, {16, 16, 16, 16}};

double forced_error(const MultiDomainGrid& g, int steps) {
    const ForcedNlsModel model(g);
    const double h = 1.0 / steps;
    Gauss2Stepper st(g, model, IrkConfig{h, 1e-13, 50});
    Eigen::VectorXcd u = sample(g, [](double x) { return ForcedNlsModel::exact(x, 0.0); });
    for (int k = 0; k < steps; ++k) st.step(u, k * h);
    const auto e = sample(g, [](double x) { return ForcedNlsModel::exact(x, 1.0); });
    return (u - e).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("irk") {

TEST_CASE("config validation") {
    CHECK_THROWS(IrkConfig{0.0, 1e-12, 10}.validate());
    CHECK_THROWS(IrkConfig{1e-3, 0.0, 10}.validate());
    CHECK_THROWS(IrkConfig{1e-3, 1e-12, 0}.validate());
    CHECK_NOTHROW(IrkConfig{}.validate());
}

TEST_CASE("forced problem source is consistent with its exact solution") {
    const MultiDomainGrid g(GridLayout::desk());
    const ForcedNlsModel model(g);
    Gauss2Stepper st(g, model, IrkConfig{});
    const double t = 0.37, dt = 1e-4;
    const auto u = sample(g, [t](double x) { return ForcedNlsModel::exact(x, t); });
    const auto up = sample(g, [&](double x) { return ForcedNlsModel::exact(x, t + dt); });
    const auto um = sample(g, [&](double x) { return ForcedNlsModel::exact(x, t - dt); });
    const Eigen::VectorXcd ut = (up - um) / (2.0 * dt);
    CHECK((st.rhs(u, t) - ut).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Gauss-2 is fourth order") {
    const MultiDomainGrid g(GridLayout::desk());
    const double e1 = forced_error(g, 10), e2 = forced_error(g, 20);
    const double order = std::log2(e1 / e2);
    MESSAGE("observed order " << order << " (errors " << e1 << ", " << e2 << ")");
    CHECK(order >= 3.7);
    CHECK(order <= 4.3);
}

TEST_CASE("constant rate: modulus conserved over 1000 steps") {
    const MultiDomainGrid g(kSmall);
    const double omega = 3.0, h = 1e-2;
    const ConstantRateModel model(omega);
    Gauss2Stepper st(g, model, IrkConfig{h, 1e-14, 50});
    Eigen::VectorXcd u = Eigen::VectorXcd::Constant(g.total_nodes(), cplx(0.6, 0.8));
    double drift = 0.0;
    for (int k = 0; k < 1000; ++k) {
        st.step(u, k * h);
        drift = std::max(drift, (u.cwiseAbs().array() - 1.0).abs().maxCoeff());
    }
    CHECK(drift < 1e-12);
    const cplx exact = cplx(0.6, 0.8) * std::polar(1.0, omega * 10.0);
    CHECK(std::abs(u[0] - exact) < 1e-6);
}

TEST_CASE("breather propagation over a short interval") {
    const MultiDomainGrid g(GridLayout::desk());
    NlsModel model;
    const double h = 2e-3;
    Gauss2Stepper st(g, model, IrkConfig{h, 1e-12, 50});
    Eigen::VectorXcd u = sample(g, [](double x) { return peregrine({x, -1.0}); });
    int iters = 0;
    for (int k = 0; k < 50; ++k) iters = std::max(iters, st.step(u, -1.0 + k * h).iterations);
    const auto e = sample(g, [](double x) { return peregrine({x, -0.9}); });
    CHECK((u - e).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(iters <= 8);
    for (const auto& j : g.interface_jumps(u)) {
        CHECK(j.value <= 1e-11);
        CHECK(j.derivative <= 1e-11);
    }
}

TEST_CASE("one-shot step matches the stepper") {
    const MultiDomainGrid g(kSmall);
    const GlobalState s{sample(g, [](double x) { return peregrine({x, -0.5}); }), -0.5};
    const IrkConfig cfg{1e-2, 1e-12, 50};
    const GlobalState a = irk_gauss2_step(s, g, cfg, RhsVariant::full_nls);
    NlsModel model;
    Gauss2Stepper st(g, model, cfg);
    Eigen::VectorXcd u = s.values;
    st.step(u, s.time);
    CHECK((a.values - u).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.time == doctest::Approx(-0.49));
    const GlobalState b = irk_gauss2_step(s, g, cfg, RhsVariant::linearized);
    CHECK(b.values.size() == u.size());
}

TEST_CASE("Newton failure leaves the state untouched") {
    const MultiDomainGrid g(kSmall);
    NlsModel model;
    Gauss2Stepper st(g, model, IrkConfig{0.05, 1e-14, 1});
    Eigen::VectorXcd u = sample(g, [](double x) { return 1.3 * peregrine({x, 0.0}); });
    const Eigen::VectorXcd before = u;
    CHECK_THROWS_AS(st.step(u, 0.0), NewtonFailure);
    CHECK((u - before).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("linearized right-hand side at the nodes") {
    const MultiDomainGrid g(kSmall);
    const LinearizedModel model(g);
    Gauss2Stepper st(g, model, IrkConfig{1e-3, 1e-12, 50});
    const auto v = sample(g, [](double x) { return cplx(std::isfinite(x) ? std::exp(-x * x) : 0.0); });
    const auto r = st.rhs(v, 0.2);
    const auto vxx = g.apply_dxx(v);
    for (int j = 0; j < g.total_nodes(); ++j) {
        const cplx p = peregrine({g.node_x()[j], 0.2});
        const cplx want =
            cplx(0.0, 1.0) * (vxx[j] + 4.0 * std::norm(p) * v[j] + 2.0 * p * p * std::conj(v[j]));
        CHECK(std::abs(r[j] - want) < 1e-12 * (1.0 + std::abs(vxx[j])));
    }
}

}
