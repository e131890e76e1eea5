#include "breather/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace breather::cheb {

namespace {

void require_degree(int n) {
    if (n < 1) throw std::invalid_argument("Chebyshev degree must be >= 1");
}

// cos(pi m / n) for any integer m, reduced so that symmetric indices give
// bitwise-identical magnitudes.
double cos_pi_ratio(long m, long n) {
    long r = m % (2 * n);
    if (r < 0) r += 2 * n;
    if (r > n) r = 2 * n - r;  // cos(pi (2n - r)/n) = cos(pi r / n)
    if (2 * r > n) return -std::sin(std::numbers::pi * (static_cast<double>(2 * r - n)) / (2.0 * n));
    return std::sin(std::numbers::pi * (static_cast<double>(n - 2 * r)) / (2.0 * n));
}

}  // namespace

std::vector<double> lobatto_nodes(int n) {
    require_degree(n);
    std::vector<double> xi(n + 1);
    for (int k = 0; k <= n; ++k) {
        // -cos(pi k / n) written as a sine so that xi_{n-k} == -xi_k exactly.
        xi[k] = std::sin(std::numbers::pi * static_cast<double>(2 * k - n) / (2.0 * n));
    }
    return xi;
}

Eigen::MatrixXd diff_matrix(int n) {
    require_degree(n);
    const int m = n + 1;
    std::vector<double> w(m);
    for (int k = 0; k < m; ++k) {
        w[k] = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
    const double half = std::numbers::pi / (2.0 * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            // xi_i - xi_j = 2 sin(pi (i + j) / 2n) sin(pi (i - j) / 2n)
            const double diff = 2.0 * std::sin(half * (i + j)) * std::sin(half * (i - j));
            d(i, j) = (w[j] / w[i]) / diff;
        }
    }
    for (int i = 0; i < m; ++i) {
        // Sum off-diagonals smallest-first to tighten the negative-sum identity.
        double s = 0.0;
        if (i < m / 2) {
            for (int j = m - 1; j >= 0; --j) if (j != i) s += d(i, j);
        } else {
            for (int j = 0; j < m; ++j) if (j != i) s += d(i, j);
        }
        d(i, i) = -s;
    }
    return d;
}

std::vector<double> clenshaw_curtis_weights(int n) {
    require_degree(n);
    std::vector<double> w(n + 1, 0.0);
    const double nn = static_cast<double>(n);
    if (n % 2 == 0) {
        w[0] = w[n] = 1.0 / (nn * nn - 1.0);
    } else {
        w[0] = w[n] = 1.0 / (nn * nn);
    }
    for (int k = 1; k < n; ++k) {
        double v = 1.0;
        const int half = n / 2;
        if (n % 2 == 0) {
            for (int j = 1; j < half; ++j) {
                v -= 2.0 * cos_pi_ratio(2L * j * k, n) / (4.0 * j * j - 1.0);
            }
            v -= cos_pi_ratio(static_cast<long>(n) * k, n) / (nn * nn - 1.0);
        } else {
            for (int j = 1; j <= (n - 1) / 2; ++j) {
                v -= 2.0 * cos_pi_ratio(2L * j * k, n) / (4.0 * j * j - 1.0);
            }
        }
        w[k] = 2.0 * v / nn;
    }
    return w;
}

std::vector<cplx> coefficients(std::span<const cplx> values) {
    const int n = static_cast<int>(values.size()) - 1;
    require_degree(n);
    std::vector<cplx> c(n + 1);
    for (int j = 0; j <= n; ++j) {
        cplx s = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double weight = (k == 0 || k == n) ? 0.5 : 1.0;
            // T_j(-cos theta_k) = (-1)^j cos(j theta_k)
            s += weight * values[k] * cos_pi_ratio(static_cast<long>(j) * k, n);
        }
        const double sign = (j % 2) ? -1.0 : 1.0;
        const double norm = (j == 0 || j == n) ? 1.0 / n : 2.0 / n;
        c[j] = sign * norm * s;
    }
    return c;
}

std::vector<cplx> values_from_coefficients(std::span<const cplx> coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    require_degree(n);
    std::vector<cplx> v(n + 1);
    for (int k = 0; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double sign = (j % 2) ? -1.0 : 1.0;
            s += sign * coeffs[j] * cos_pi_ratio(static_cast<long>(j) * k, n);
        }
        v[k] = s;
    }
    return v;
}

BarycentricInterpolant::BarycentricInterpolant(std::span<const cplx> values)
    : values_(values.begin(), values.end()) {
    const int n = static_cast<int>(values.size()) - 1;
    require_degree(n);
    nodes_ = lobatto_nodes(n);
    weights_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        weights_[k] = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);
    }
}

cplx BarycentricInterpolant::operator()(double xi) const {
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const double diff = xi - nodes_[k];
        if (diff == 0.0) return values_[k];
        const double w = weights_[k] / diff;
        num += w * values_[k];
        den += w;
    }
    return num / den;
}

}  // namespace breather::cheb
