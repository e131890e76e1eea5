#include "breather/multidomain.hpp"

#include "breather/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace breather {

namespace {

std::string roman(int k) {
    static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X",
                                  "XI", "XII"};
    if (k >= 1 && k <= 12) return names[k - 1];
    return "D" + std::to_string(k);
}

void validate_layout(const GridLayout& layout) {
    const auto& b = layout.boundaries;
    if (b.size() < 2) throw std::invalid_argument("layout needs at least one finite domain");
    for (std::size_t j = 1; j < b.size(); ++j) {
        if (!(b[j] > b[j - 1])) {
            throw std::invalid_argument("domain boundaries overlap or are out of order");
        }
    }
    if (!(b.back() > 0.0) || b.front() != -b.back()) {
        throw std::invalid_argument(
            "outer boundaries must be -c and c so the compactified domain closes the gap");
    }
    if (layout.degrees.size() != b.size()) {
        throw std::invalid_argument("need one degree per finite domain plus one for the compactified domain");
    }
    for (int n : layout.degrees) {
        if (n < 8) throw std::invalid_argument("each domain needs degree >= 8");
    }
    if (layout.degrees.back() % 2 != 0) {
        throw std::invalid_argument("compactified domain degree must be even (node at infinity)");
    }
}


}  // namespace

MultiDomainGrid::MultiDomainGrid(const GridLayout& layout) : layout_(layout) {
    validate_layout(layout);
    const auto& b = layout.boundaries;
    const int finite_count = static_cast<int>(b.size()) - 1;

    for (int d = 0; d < finite_count; ++d) {
        DomainSpec dom;
        dom.kind = DomainKind::finite;
        dom.name = roman(d + 1);
        dom.a = b[d];
        dom.b = b[d + 1];
        dom.n = layout.degrees[d];
        dom.xi = cheb::lobatto_nodes(dom.n);
        dom.d1 = cheb::diff_matrix(dom.n);
        dom.d2 = dom.d1 * dom.d1;
        dom.cc = cheb::clenshaw_curtis_weights(dom.n);
        const double mid = 0.5 * (dom.a + dom.b);
        const double half = 0.5 * (dom.b - dom.a);
        dom.x.resize(dom.nodes());
        for (int k = 0; k < dom.nodes(); ++k) dom.x[k] = mid + half * dom.xi[k];
        dom.x.front() = dom.a;
        dom.x.back() = dom.b;
        dom.dx = dom.d1 / half;
        dom.dxx = dom.d2 / (half * half);
        domains_.push_back(std::move(dom));
    }

    {
        DomainSpec dom;
        dom.kind = DomainKind::compactified;
        dom.name = roman(finite_count + 1);
        dom.cut = b.back();
        dom.n = layout.degrees.back();
        dom.xi = cheb::lobatto_nodes(dom.n);
        dom.d1 = cheb::diff_matrix(dom.n);
        dom.d2 = dom.d1 * dom.d1;
        dom.cc = cheb::clenshaw_curtis_weights(dom.n);
        const int m = dom.nodes();
        const double c = dom.cut;
        dom.s.resize(m);
        dom.x.resize(m);
        for (int k = 0; k < m; ++k) {
            dom.s[k] = dom.xi[k] / c;
            dom.x[k] = dom.s[k] == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / dom.s[k];
        }
        dom.s[dom.infinity_node()] = 0.0;
        dom.x[dom.infinity_node()] = std::numeric_limits<double>::infinity();
        dom.x.front() = -c;
        dom.x.back() = c;
        // d/ds = c d/dxi;  u_x = -s^2 u_s;  u_xx = s^4 u_ss + 2 s^3 u_s
        Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(dom.s.data(), m);
        Eigen::VectorXd s2 = s.array().square();
        Eigen::VectorXd s3 = s2.array() * s.array();
        Eigen::VectorXd s4 = s2.array().square();
        dom.dx = (-c * s2).asDiagonal() * dom.d1;
        dom.dxx = (c * c * s4).asDiagonal() * dom.d2 + (2.0 * c * s3).asDiagonal() * dom.d1;
        domains_.push_back(std::move(dom));
    }

    offsets_.assign(1, 0);
    for (const auto& dom : domains_) offsets_.push_back(offsets_.back() + dom.nodes());
    node_x_.reserve(total_nodes());
    for (const auto& dom : domains_) node_x_.insert(node_x_.end(), dom.x.begin(), dom.x.end());

    const int iv = compactified_index();
    const int n_iv = domains_[iv].n;
    interfaces_.push_back({iv, 0, 0, 0, b.front()});
    for (int d = 0; d + 1 < finite_count; ++d) {
        interfaces_.push_back({d, domains_[d].n, d + 1, 0, b[d + 1]});
    }
    interfaces_.push_back({finite_count - 1, domains_[finite_count - 1].n, iv, n_iv, b.back()});

    symmetric_ = true;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] != -b[b.size() - 1 - j]) symmetric_ = false;
    }
    for (int d = 0; d < finite_count; ++d) {
        if (layout.degrees[d] != layout.degrees[finite_count - 1 - d]) symmetric_ = false;
    }
    mirror_.assign(total_nodes(), -1);
    if (symmetric_) {
        for (int d = 0; d < domain_count(); ++d) {
            const int md = d == iv ? iv : finite_count - 1 - d;
            const int n = domains_[d].n;
            for (int k = 0; k <= n; ++k) mirror_[flat(d, k)] = flat(md, n - k);
        }
    }

    // Distinct points: interface nodes are taken from the finite domains.
    flat_to_unique_.assign(total_nodes(), -1);
    auto add_unique = [&](int d, int k) {
        flat_to_unique_[flat(d, k)] = static_cast<int>(unique_x_.size());
        unique_to_flat_.push_back(flat(d, k));
        unique_x_.push_back(domains_[d].x[k]);
    };
    const int mid = domains_[iv].infinity_node();
    for (int k = mid - 1; k >= 1; --k) add_unique(iv, k);
    for (int d = 0; d < finite_count; ++d) {
        for (int k = (d == 0 ? 0 : 1); k <= domains_[d].n; ++k) add_unique(d, k);
    }
    for (int k = n_iv - 1; k >= mid + 1; --k) add_unique(iv, k);
    add_unique(iv, mid);
    for (const auto& itf : interfaces_) {
        const int ua = flat_to_unique_[flat(itf.dom_a, itf.node_a)];
        const int ub = flat_to_unique_[flat(itf.dom_b, itf.node_b)];
        const int u = std::max(ua, ub);
        flat_to_unique_[flat(itf.dom_a, itf.node_a)] = u;
        flat_to_unique_[flat(itf.dom_b, itf.node_b)] = u;
    }
}

MultiDomainGrid build_grid(const GridLayout& layout) { return MultiDomainGrid(layout); }

int MultiDomainGrid::infinity_index() const {
    const int iv = compactified_index();
    return flat(iv, domains_[iv].infinity_node());
}

Eigen::VectorXcd MultiDomainGrid::apply_dx(const Eigen::VectorXcd& u) const {
    if (u.size() != total_nodes()) throw std::invalid_argument("state does not match grid");
    Eigen::VectorXcd out(u.size());
    for (int d = 0; d < domain_count(); ++d) {
        const auto& dom = domains_[d];
        const auto seg = u.segment(offset(d), dom.nodes());
        out.segment(offset(d), dom.nodes()).real() = dom.dx * seg.real();
        out.segment(offset(d), dom.nodes()).imag() = dom.dx * seg.imag();
    }
    return out;
}

Eigen::VectorXcd MultiDomainGrid::apply_dxx(const Eigen::VectorXcd& u) const {
    if (u.size() != total_nodes()) throw std::invalid_argument("state does not match grid");
    Eigen::VectorXcd out(u.size());
    for (int d = 0; d < domain_count(); ++d) {
        const auto& dom = domains_[d];
        const auto seg = u.segment(offset(d), dom.nodes());
        out.segment(offset(d), dom.nodes()).real() = dom.dxx * seg.real();
        out.segment(offset(d), dom.nodes()).imag() = dom.dxx * seg.imag();
    }
    return out;
}

double MultiDomainGrid::integrate(const Eigen::VectorXd& f) const {
    if (f.size() != total_nodes()) throw std::invalid_argument("integrand does not match grid");
    double total = 0.0;
    for (int d = 0; d < domain_count(); ++d) {
        const auto& dom = domains_[d];
        const auto seg = f.segment(offset(d), dom.nodes());
        if (dom.kind == DomainKind::finite) {
            const double half = 0.5 * (dom.b - dom.a);
            double sum = 0.0;
            for (int k = 0; k < dom.nodes(); ++k) sum += dom.cc[k] * seg[k];
            total += half * sum;
            continue;
        }
        const int mid = dom.infinity_node();
        const double scale = std::max(1.0, seg.cwiseAbs().maxCoeff());
        if (std::abs(seg[mid]) > 1e-8 * scale) return std::numeric_limits<double>::quiet_NaN();
        // dx = -ds / s^2 with orientation absorbed; ds = dxi / cut.
        const double c = dom.cut;
        double sum = 0.0;
        for (int k = 0; k < dom.nodes(); ++k) {
            double g;
            if (k == mid) {
                const double fss = c * c * dom.d2.row(k).dot(seg);
                g = 0.5 * fss;
            } else {
                g = seg[k] / (dom.s[k] * dom.s[k]);
            }
            sum += dom.cc[k] * g;
        }
        total += sum / c;
    }
    return total;
}

std::vector<MultiDomainGrid::Jump> MultiDomainGrid::interface_jumps(const Eigen::VectorXcd& u) const {
    if (u.size() != total_nodes()) throw std::invalid_argument("state does not match grid");
    std::vector<Jump> jumps;
    for (const auto& itf : interfaces_) {
        const auto& da = domains_[itf.dom_a];
        const auto& db = domains_[itf.dom_b];
        const auto ua = u.segment(offset(itf.dom_a), da.nodes());
        const auto ub = u.segment(offset(itf.dom_b), db.nodes());
        const cplx dva(da.dx.row(itf.node_a).dot(ua.real()), da.dx.row(itf.node_a).dot(ua.imag()));
        const cplx dvb(db.dx.row(itf.node_b).dot(ub.real()), db.dx.row(itf.node_b).dot(ub.imag()));
        jumps.push_back({std::abs(ua[itf.node_a] - ub[itf.node_b]), std::abs(dva - dvb)});
    }
    return jumps;
}

int MultiDomainGrid::mirror(int flat_index) const {
    if (!symmetric_) throw std::logic_error("grid is not symmetric under x -> -x");
    return mirror_.at(flat_index);
}

Eigen::VectorXcd MultiDomainGrid::to_unique(const Eigen::VectorXcd& u) const {
    if (u.size() != total_nodes()) throw std::invalid_argument("state does not match grid");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(unique_to_flat_.size()));
    for (std::size_t j = 0; j < unique_to_flat_.size(); ++j) v[j] = u[unique_to_flat_[j]];
    return v;
}

Eigen::VectorXcd MultiDomainGrid::from_unique(const Eigen::VectorXcd& v) const {
    if (v.size() != static_cast<Eigen::Index>(unique_to_flat_.size())) {
        throw std::invalid_argument("vector does not match the distinct nodes of the grid");
    }
    Eigen::VectorXcd u(total_nodes());
    for (int j = 0; j < total_nodes(); ++j) u[j] = v[flat_to_unique_[j]];
    return u;
}

std::pair<int, double> MultiDomainGrid::locate(double x) const {
    const auto& b = layout_.boundaries;
    if (std::isfinite(x) && x >= b.front() && x <= b.back()) {
        for (int d = 0; d < compactified_index(); ++d) {
            const auto& dom = domains_[d];
            if (x >= dom.a && x <= dom.b) {
                const double xi = (x - 0.5 * (dom.a + dom.b)) / (0.5 * (dom.b - dom.a));
                return {d, std::clamp(xi, -1.0, 1.0)};
            }
        }
    }
    const int iv = compactified_index();
    const double s = std::isfinite(x) ? 1.0 / x : 0.0;
    return {iv, std::clamp(s * domains_[iv].cut, -1.0, 1.0)};
}

cplx MultiDomainGrid::interpolate(const Eigen::VectorXcd& u, double x) const {
    const auto [d, xi] = locate(x);
    const auto& dom = domains_[d];
    std::vector<cplx> vals(u.data() + offset(d), u.data() + offset(d) + dom.nodes());
    return cheb::BarycentricInterpolant(vals)(xi);
}

std::vector<std::vector<double>> MultiDomainGrid::coefficient_magnitudes(const Eigen::VectorXcd& u) const {
    if (u.size() != total_nodes()) throw std::invalid_argument("state does not match grid");
    std::vector<std::vector<double>> out;
    for (int d = 0; d < domain_count(); ++d) {
        const auto& dom = domains_[d];
        std::span<const cplx> vals(u.data() + offset(d), static_cast<std::size_t>(dom.nodes()));
        const auto c = cheb::coefficients(vals);
        std::vector<double> mags(c.size());
        std::transform(c.begin(), c.end(), mags.begin(), [](cplx z) { return std::abs(z); });
        out.push_back(std::move(mags));
    }
    return out;
}

std::vector<MultiDomainGrid::OutputRow> MultiDomainGrid::output_rows() const {
    const int iv = compactified_index();
    const auto& div = domains_[iv];
    const int mid = div.infinity_node();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<OutputRow> rows;
    rows.push_back({flat(iv, mid), -inf});
    for (int k = mid - 1; k >= 0; --k) rows.push_back({flat(iv, k), div.x[k]});
    for (int d = 0; d < iv; ++d) {
        for (int k = 0; k < domains_[d].nodes(); ++k) rows.push_back({flat(d, k), domains_[d].x[k]});
    }
    for (int k = div.n; k > mid; --k) rows.push_back({flat(iv, k), div.x[k]});
    rows.push_back({flat(iv, mid), inf});
    return rows;
}

Eigen::VectorXcd apply_dxx(const GlobalState& state, const MultiDomainGrid& grid) {
    return grid.apply_dxx(state.values);
}

std::vector<std::vector<double>> chebyshev_coefficients(const GlobalState& state,
                                                        const MultiDomainGrid& grid) {
    return grid.coefficient_magnitudes(state.values);
}

}  // namespace breather
