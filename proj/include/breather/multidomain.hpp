#pragma once

// Whole-line Chebyshev collocation on consecutive finite intervals plus one
// compactified domain carrying both tails through s = 1/x.
//
// Default layout: I = [-20, -5], II = [-5, 5], III = [5, 20] and
// IV = {|x| >= 20} u {infinity}, with IV parametrized by s = 1/x in
// [-1/20, 1/20] and affinely mapped to [-1, 1]. Node k of IV sits at
// s = xi_k / 20; the middle node (s = 0) is the point at infinity.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace breather {

using cplx = std::complex<double>;

enum class DomainKind { finite, compactified };

struct DomainSpec {
    DomainKind kind = DomainKind::finite;
    std::string name;
    double a = 0.0;    // finite: left end
    double b = 0.0;    // finite: right end
    double cut = 0.0;  // compactified: covers |x| >= cut
    int n = 0;         // polynomial degree; n + 1 collocation nodes

    std::vector<double> xi;  // local nodes, ascending
    std::vector<double> s;   // compactified only: s = 1/x at each node
    std::vector<double> x;   // physical coordinate (+inf at s = 0)
    Eigen::MatrixXd d1;      // local d/dxi
    Eigen::MatrixXd d2;      // local d^2/dxi^2
    Eigen::MatrixXd dx;      // physical d/dx
    Eigen::MatrixXd dxx;     // physical d^2/dx^2
    std::vector<double> cc;  // Clenshaw-Curtis weights in xi

    int nodes() const { return n + 1; }
    /// Index of the s = 0 node (compactified domains only).
    int infinity_node() const { return n / 2; }
};

/// Matching of node `node_a` in domain `dom_a` with node `node_b` in `dom_b`.
/// Value continuity replaces the collocation row of (dom_a, node_a);
/// continuity of d/dx replaces the row of (dom_b, node_b).
struct Interface {
    int dom_a;
    int node_a;
    int dom_b;
    int node_b;
    double x;
};

struct GridLayout {
    /// Ends of the finite domains, strictly increasing; the outer two must be
    /// symmetric (-c, c) so the compactified domain closes the line.
    std::vector<double> boundaries{-20.0, -5.0, 5.0, 20.0};
    /// Degrees of the finite domains (left to right) followed by the
    /// compactified one.
    std::vector<int> degrees{200, 300, 200, 100};

    static GridLayout paper() { return {}; }
    static GridLayout desk() { return {{-20.0, -5.0, 5.0, 20.0}, {100, 150, 100, 60}}; }
};

struct GlobalState {
    Eigen::VectorXcd values;
    double time = 0.0;
};

class MultiDomainGrid {
public:
    explicit MultiDomainGrid(const GridLayout& layout);

    const GridLayout& layout() const { return layout_; }
    const std::vector<DomainSpec>& domains() const { return domains_; }
    const DomainSpec& domain(int d) const { return domains_[d]; }
    int domain_count() const { return static_cast<int>(domains_.size()); }
    int compactified_index() const { return domain_count() - 1; }
    const std::vector<Interface>& interfaces() const { return interfaces_; }

    int offset(int d) const { return offsets_[d]; }
    int total_nodes() const { return offsets_.back(); }
    int flat(int d, int k) const { return offsets_[d] + k; }

    /// Physical x of every node, domain by domain.
    const std::vector<double>& node_x() const { return node_x_; }

    /// Flat index of the s = 0 node.
    int infinity_index() const;

    /// Per-domain physical first / second derivative.
    Eigen::VectorXcd apply_dx(const Eigen::VectorXcd& u) const;
    Eigen::VectorXcd apply_dxx(const Eigen::VectorXcd& u) const;

    /// Integral over the real line of nodal values f (physical measure dx).
    /// On the compactified domain the integrand is f / s^2; at s = 0 the limit
    /// f''(0)/2 is used, which requires f(infinity) = 0. Returns NaN when the
    /// integrand does not vanish at infinity.
    double integrate(const Eigen::VectorXd& f) const;

    /// Jump of value and of d/dx across each interface.
    struct Jump {
        double value;
        double derivative;
    };
    std::vector<Jump> interface_jumps(const Eigen::VectorXcd& u) const;

    /// Whether the layout is symmetric under x -> -x.
    bool symmetric() const { return symmetric_; }
    /// Flat index of the node mirrored through x = 0.
    int mirror(int flat_index) const;

    /// Strictly increasing coordinates of distinct physical points
    /// (interface nodes once, infinity last as +inf).
    const std::vector<double>& unique_coords() const { return unique_x_; }
    Eigen::VectorXcd to_unique(const Eigen::VectorXcd& u) const;
    Eigen::VectorXcd from_unique(const Eigen::VectorXcd& v) const;

    /// Domain containing x and the local coordinate there.
    std::pair<int, double> locate(double x) const;

    /// Value of the piecewise polynomial interpolant at physical x.
    cplx interpolate(const Eigen::VectorXcd& u, double x) const;

    /// Chebyshev coefficient magnitudes per domain.
    std::vector<std::vector<double>> coefficient_magnitudes(const Eigen::VectorXcd& u) const;

    /// Rows (domain, node) in the order snapshots are written: the x < 0 tail
    /// of IV from infinity inwards, finite domains, then the x > 0 tail out to
    /// infinity. The infinity node appears twice (first as -inf, last as +inf);
    /// interface nodes appear once per domain.
    struct OutputRow {
        int flat;
        double x;
    };
    std::vector<OutputRow> output_rows() const;

private:
    GridLayout layout_;
    std::vector<DomainSpec> domains_;
    std::vector<Interface> interfaces_;
    std::vector<int> offsets_;
    std::vector<double> node_x_;
    std::vector<double> unique_x_;
    std::vector<int> unique_to_flat_;
    std::vector<int> flat_to_unique_;
    std::vector<int> mirror_;
    bool symmetric_ = false;
};

MultiDomainGrid build_grid(const GridLayout& layout);

/// Second derivative in physical x on the multidomain grid.
Eigen::VectorXcd apply_dxx(const GlobalState& state, const MultiDomainGrid& grid);

/// Chebyshev coefficient magnitudes per domain of a state.
std::vector<std::vector<double>> chebyshev_coefficients(const GlobalState& state,
                                                        const MultiDomainGrid& grid);

/// Nodal samples of a function of x on every node of the grid.
template <class F>
Eigen::VectorXcd sample(const MultiDomainGrid& grid, F&& f) {
    Eigen::VectorXcd out(grid.total_nodes());
    const auto& xs = grid.node_x();
    for (int j = 0; j < grid.total_nodes(); ++j) out[j] = f(xs[j]);
    return out;
}

}  // namespace breather
