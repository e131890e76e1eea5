#pragma once

// Chebyshev-Gauss-Lobatto primitives on [-1, 1]. Nodes are ordered ascending,
// xi_k = -cos(pi k / n), k = 0..n, so the mirror of node k is node n - k.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace breather::cheb {

using cplx = std::complex<double>;

std::vector<double> lobatto_nodes(int n);

/// First-derivative collocation matrix, (n+1) x (n+1). Diagonal from the
/// negative-sum identity so that rows annihilate constants.
Eigen::MatrixXd diff_matrix(int n);

/// Clenshaw-Curtis weights for the Lobatto nodes (sum to 2).
std::vector<double> clenshaw_curtis_weights(int n);

/// Coefficients c_j of sum_j c_j T_j(xi) interpolating nodal values.
std::vector<cplx> coefficients(std::span<const cplx> values);

/// Nodal values from coefficients (inverse of `coefficients`).
std::vector<cplx> values_from_coefficients(std::span<const cplx> coeffs);

/// Barycentric interpolation through the n + 1 Lobatto nodes.
class BarycentricInterpolant {
public:
    explicit BarycentricInterpolant(std::span<const cplx> values);
    cplx operator()(double xi) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<cplx> values_;
};

}  // namespace breather::cheb
