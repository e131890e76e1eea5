#include "breather/irk.hpp"

#include "breather/nls_core.hpp"

#include <cmath>

namespace breather {

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Butcher data for Gauss-Legendre, s = 2.
const double kC[2] = {0.5 - kSqrt3 / 6.0, 0.5 + kSqrt3 / 6.0};
// A^{-1} = [[3, -3 + 2 sqrt3], [-3 - 2 sqrt3, 3]]
const double kAinv[2][2] = {{3.0, -3.0 + 2.0 * kSqrt3}, {-3.0 - 2.0 * kSqrt3, 3.0}};
// u_{n+1} = u_n + sum_i d_i Z_i with d = b^T A^{-1}
const double kD[2] = {-kSqrt3, kSqrt3};

std::vector<double> node_coords(const MultiDomainGrid& grid) { return grid.node_x(); }

// When Newton increments stop contracting below this multiple of the
// tolerance the iteration has reached the rounding floor of the residual.
constexpr double kFloorFactor = 100.0;

}  // namespace

void IrkConfig::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("time step must be positive");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("Newton tolerance must be positive");
    if (max_newton < 1) throw std::invalid_argument("need at least one Newton iteration");
}

void NlsModel::reaction(double, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const {
    out = (cplx(0.0, 2.0) * u.array().abs2() * u.array()).matrix();
}

void NlsModel::jacobian_alpha(double, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const {
    alpha = (cplx(0.0, 4.0) * u.array().abs2()).matrix();
}

LinearizedModel::LinearizedModel(const MultiDomainGrid& grid) : x_(node_coords(grid)) {}

void LinearizedModel::reaction(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const {
    out.resize(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const cplx up = peregrine({x_[j], t});
        out[j] = cplx(0.0, 1.0) * (4.0 * std::norm(up) * v[j] + 2.0 * up * up * std::conj(v[j]));
    }
}

void LinearizedModel::jacobian_alpha(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& alpha) const {
    alpha.resize(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        alpha[j] = cplx(0.0, 4.0 * std::norm(peregrine({x_[j], t})));
    }
}

void ConstantRateModel::reaction(double, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const {
    out = cplx(0.0, omega_) * u;
}

void ConstantRateModel::jacobian_alpha(double, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const {
    alpha = Eigen::VectorXcd::Constant(u.size(), cplx(0.0, omega_));
}

ForcedNlsModel::ForcedNlsModel(const MultiDomainGrid& grid) : x_(node_coords(grid)) {}

cplx ForcedNlsModel::exact(double x, double t) {
    const double g = std::isfinite(x) ? std::exp(-x * x) : 0.0;
    return g * cplx(std::cos(3.0 * t), std::sin(2.0 * t)) + 0.5 * std::polar(1.0, t);
}

void ForcedNlsModel::reaction(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const {
    const cplx I(0.0, 1.0);
    const cplx a(std::cos(3.0 * t), std::sin(2.0 * t));
    const cplx da(-3.0 * std::sin(3.0 * t), 2.0 * std::cos(2.0 * t));
    const cplx e = std::polar(1.0, t);
    out.resize(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        const double x = x_[j];
        double g = 0.0, gxx = 0.0;
        if (std::isfinite(x)) {
            g = std::exp(-x * x);
            gxx = (4.0 * x * x - 2.0) * g;
        }
        const cplx ue = g * a + 0.5 * e;
        const cplx ut = g * da + 0.5 * I * e;
        const cplx uxx = gxx * a;
        const cplx source = ut - I * uxx - 2.0 * I * std::norm(ue) * ue;
        out[j] = 2.0 * I * std::norm(u[j]) * u[j] + source;
    }
}

void ForcedNlsModel::jacobian_alpha(double, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const {
    alpha = (cplx(0.0, 4.0) * u.array().abs2()).matrix();
}

// ---------------------------------------------------------------------------

namespace {

enum class RowKind { value, derivative };

// A collocation row replaced by an interface condition. The condition is
// linear: value rows read u_a - u_b, derivative rows (Dx u)_a - (Dx u)_b.
struct ReplacedRow {
    RowKind kind;
    int row;        // flat index of the replaced row
    int self_dom;   // domain owning the row
    int self_node;
    int other_dom;  // domain entering only through the coupling term
    int other_node;
};

}  // namespace

struct Gauss2Stepper::Impl {
    const MultiDomainGrid& grid;
    const ReactionModel& model;
    int n_total;
    std::vector<ReplacedRow> replaced;

    // Eigen-decomposition A^{-1} = S diag(lambda) S^{-1}.
    cplx lambda[2];
    cplx s[2][2];
    cplx sinv[2][2];

    struct System {
        std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu;  // per-domain self blocks
        Eigen::MatrixXcd y;                                      // B^{-1} E
        Eigen::PartialPivLU<Eigen::MatrixXcd> capacitance;       // I + F^T B^{-1} E
    } sys[2];

    Impl(const MultiDomainGrid& g, const ReactionModel& m) : grid(g), model(m) {
        n_total = grid.total_nodes();
        for (const auto& itf : grid.interfaces()) {
            replaced.push_back({RowKind::value, grid.flat(itf.dom_a, itf.node_a), itf.dom_a, itf.node_a,
                                itf.dom_b, itf.node_b});
            replaced.push_back({RowKind::derivative, grid.flat(itf.dom_b, itf.node_b), itf.dom_b,
                                itf.node_b, itf.dom_a, itf.node_a});
        }

        lambda[0] = cplx(3.0, kSqrt3);
        lambda[1] = cplx(3.0, -kSqrt3);
        for (int j = 0; j < 2; ++j) {
            // (A^{-1} - lambda) v = 0 with v = (a01, lambda - a00)
            s[0][j] = kAinv[0][1];
            s[1][j] = lambda[j] - kAinv[0][0];
        }
        const cplx det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        sinv[0][0] = s[1][1] / det;
        sinv[0][1] = -s[0][1] / det;
        sinv[1][0] = -s[1][0] / det;
        sinv[1][1] = s[0][0] / det;
    }

    // Self part of the condition row restricted to its own domain.
    void write_self_row(const ReplacedRow& r, Eigen::MatrixXcd& block) const {
        block.row(r.self_node).setZero();
        if (r.kind == RowKind::value) {
            block(r.self_node, r.self_node) = 1.0;
        } else {
            block.row(r.self_node) = -grid.domain(r.self_dom).dx.row(r.self_node).cast<cplx>();
        }
    }

    // Coupling part of the row applied to a full vector.
    cplx coupling_dot(const ReplacedRow& r, const Eigen::VectorXcd& z) const {
        const int off = grid.offset(r.other_dom);
        if (r.kind == RowKind::value) return -z[off + r.other_node];
        const auto& dx = grid.domain(r.other_dom).dx;
        const auto seg = z.segment(off, dx.cols());
        return cplx(dx.row(r.other_node).dot(seg.real()), dx.row(r.other_node).dot(seg.imag()));
    }

    cplx condition(const ReplacedRow& r, const Eigen::VectorXcd& u) const {
        const int off = grid.offset(r.self_dom);
        cplx self;
        if (r.kind == RowKind::value) {
            self = u[off + r.self_node];
        } else {
            const auto& dx = grid.domain(r.self_dom).dx;
            const auto seg = u.segment(off, dx.cols());
            self = -cplx(dx.row(r.self_node).dot(seg.real()), dx.row(r.self_node).dot(seg.imag()));
        }
        return self + coupling_dot(r, u);
    }

    void factor(const Eigen::VectorXcd& alpha, double h) {
        const cplx I(0.0, 1.0);
        const int nd = grid.domain_count();
        const int nr = static_cast<int>(replaced.size());
        for (int j = 0; j < 2; ++j) {
            auto& S = sys[j];
            S.lu.clear();
            for (int d = 0; d < nd; ++d) {
                const auto& dom = grid.domain(d);
                const int m = dom.nodes();
                Eigen::MatrixXcd block = (-I) * dom.dxx.cast<cplx>();
                block.diagonal().array() += lambda[j] / h;
                block.diagonal() -= alpha.segment(grid.offset(d), m);
                for (const auto& r : replaced) {
                    if (r.self_dom == d) write_self_row(r, block);
                }
                S.lu.emplace_back(block);
            }
            S.y = Eigen::MatrixXcd::Zero(n_total, nr);
            for (int c = 0; c < nr; ++c) {
                const auto& r = replaced[c];
                const int off = grid.offset(r.self_dom);
                const int m = grid.domain(r.self_dom).nodes();
                Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
                e[r.self_node] = 1.0;
                S.y.col(c).segment(off, m) = S.lu[r.self_dom].solve(e);
            }
            Eigen::MatrixXcd cap = Eigen::MatrixXcd::Identity(nr, nr);
            for (int rr = 0; rr < nr; ++rr) {
                for (int c = 0; c < nr; ++c) cap(rr, c) += coupling_dot(replaced[rr], S.y.col(c));
            }
            S.capacitance.compute(cap);
        }
    }

    Eigen::VectorXcd solve(int j, const Eigen::VectorXcd& rhs) const {
        const auto& S = sys[j];
        Eigen::VectorXcd z(n_total);
        for (int d = 0; d < grid.domain_count(); ++d) {
            const int off = grid.offset(d);
            const int m = grid.domain(d).nodes();
            z.segment(off, m) = S.lu[d].solve(rhs.segment(off, m));
        }
        const int nr = static_cast<int>(replaced.size());
        Eigen::VectorXcd w(nr);
        for (int rr = 0; rr < nr; ++rr) w[rr] = coupling_dot(replaced[rr], z);
        return z - S.y * S.capacitance.solve(w);
    }

    Eigen::VectorXcd rhs(const Eigen::VectorXcd& u, double t) const {
        Eigen::VectorXcd g;
        model.reaction(t, u, g);
        return cplx(0.0, 1.0) * grid.apply_dxx(u) + g;
    }

    // Stage residual G_i = (A^{-1} Z / h)_i - f(U_i) on collocation rows and
    // the interface condition of U_i on replaced rows.
    Eigen::VectorXcd residual(int i, const Eigen::VectorXcd& un, const Eigen::VectorXcd (&z)[2], double t,
                              double h) const {
        const Eigen::VectorXcd ui = un + z[i];
        Eigen::VectorXcd g = (kAinv[i][0] * z[0] + kAinv[i][1] * z[1]) / h - rhs(ui, t + kC[i] * h);
        for (const auto& r : replaced) g[r.row] = condition(r, ui);
        return g;
    }
};

Gauss2Stepper::Gauss2Stepper(const MultiDomainGrid& grid, const ReactionModel& model, IrkConfig config)
    : impl_(std::make_unique<Impl>(grid, model)), config_(config) {
    config_.validate();
}

Gauss2Stepper::~Gauss2Stepper() = default;

Eigen::VectorXcd Gauss2Stepper::rhs(const Eigen::VectorXcd& u, double t) const { return impl_->rhs(u, t); }

StepReport Gauss2Stepper::step(Eigen::VectorXcd& u, double t) {
    auto& im = *impl_;
    if (u.size() != im.n_total) throw std::invalid_argument("state does not match grid");
    const double h = config_.h;

    Eigen::VectorXcd alpha;
    im.model.jacobian_alpha(t + 0.5 * h, u, alpha);
    im.factor(alpha, h);

    const Eigen::VectorXcd f0 = im.rhs(u, t);
    Eigen::VectorXcd z[2];
    for (int i = 0; i < 2; ++i) {
        z[i] = (kC[i] * h) * f0;
        for (const auto& r : im.replaced) z[i][r.row] = 0.0;
    }

    const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    StepReport report;
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 1; it <= config_.max_newton; ++it) {
        const Eigen::VectorXcd g0 = im.residual(0, u, z, t, h);
        const Eigen::VectorXcd g1 = im.residual(1, u, z, t, h);
        Eigen::VectorXcd dz[2] = {Eigen::VectorXcd::Zero(im.n_total), Eigen::VectorXcd::Zero(im.n_total)};
        for (int j = 0; j < 2; ++j) {
            const Eigen::VectorXcd w = im.solve(j, -(im.sinv[j][0] * g0 + im.sinv[j][1] * g1));
            dz[0] += im.s[0][j] * w;
            dz[1] += im.s[1][j] * w;
        }
        z[0] += dz[0];
        z[1] += dz[1];
        const double inc = std::max(dz[0].cwiseAbs().maxCoeff(), dz[1].cwiseAbs().maxCoeff());
        report.iterations = it;
        report.increment = inc;
        if (!std::isfinite(inc)) break;
        if (inc <= config_.newton_tol * scale) {
            converged = true;
            break;
        }
        if (it >= 2 && inc >= 0.5 * prev && prev <= kFloorFactor * config_.newton_tol * scale) {
            converged = true;
            break;
        }
        prev = inc;
    }
    if (!converged) {
        throw NewtonFailure("Newton iteration did not converge at t = " + std::to_string(t), report);
    }
    u += kD[0] * z[0] + kD[1] * z[1];
    return report;
}

GlobalState irk_gauss2_step(const GlobalState& state, const MultiDomainGrid& grid, const IrkConfig& config,
                            RhsVariant variant) {
    NlsModel nls;
    LinearizedModel lin(grid);
    const ReactionModel& model =
        variant == RhsVariant::full_nls ? static_cast<const ReactionModel&>(nls) : lin;
    Gauss2Stepper stepper(grid, model, config);
    GlobalState out = state;
    stepper.step(out.values, state.time);
    out.time = state.time + config.h;
    return out;
}

}  // namespace breather
