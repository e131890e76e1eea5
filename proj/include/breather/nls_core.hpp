#pragma once

// Exact Peregrine solution, focusing-NLS right-hand sides and the scaling
// symmetry. Everything here is dimensionless:
//
//   i u_t + u_xx + 2|u|^2 u = 0
//
// and the linearization about the breather
//
//   i v_t + v_xx + 4|u_Per|^2 v + 2 u_Per^2 conj(v) = 0.

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace breather {

using cplx = std::complex<double>;

struct SpaceTimePoint {
    double x = 0.0;
    double t = 0.0;
};

/// Complex samples of a field on a strictly increasing set of coordinates.
/// Coordinates may include +-infinity (the compactified point at infinity).
class ComplexField1D {
public:
    ComplexField1D() = default;
    ComplexField1D(std::vector<double> coords, std::vector<cplx> values, double time);

    const std::vector<double>& coords() const { return coords_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    double time() const { return time_; }
    std::size_t size() const { return values_.size(); }

    /// Same coordinates, bitwise.
    bool same_grid(const ComplexField1D& other) const;

private:
    std::vector<double> coords_;
    std::vector<cplx> values_;
    double time_ = 0.0;
};

class ScalingParam {
public:
    explicit ScalingParam(double sigma);
    double value() const { return sigma_; }

private:
    double sigma_;
};

class AsymptoticModulus {
public:
    explicit AsymptoticModulus(double kappa = 1.0);
    double value() const { return kappa_; }

private:
    double kappa_;
};

cplx peregrine(SpaceTimePoint p);

ComplexField1D peregrine_field(std::span<const double> coords, double t);

/// u^sigma(x, t) = sigma u(sigma x, sigma^2 t): values * sigma, coords / sigma,
/// time / sigma^2.
ComplexField1D scale_solution(const ComplexField1D& field, ScalingParam s);

/// u_t = i (u_xx + 2|u|^2 u)
ComplexField1D nls_rhs(const ComplexField1D& u, const ComplexField1D& uxx);

/// v_t = i (v_xx + 4|u_Per|^2 v + 2 u_Per^2 conj(v))
ComplexField1D linearized_rhs(const ComplexField1D& v, const ComplexField1D& vxx,
                              const ComplexField1D& uper);

// Span kernels shared by the solvers (no validation beyond sizes).
void nls_rhs_into(std::span<const cplx> u, std::span<const cplx> uxx, std::span<cplx> out);
void linearized_rhs_into(std::span<const cplx> v, std::span<const cplx> vxx,
                         std::span<const cplx> uper, std::span<cplx> out);

/// A real-linear pointwise map w -> alpha w + beta conj(w).
///
/// Both the NLS Jacobian and the linearized equation have this form; the
/// conjugate part makes them R-linear only, so `real_block` exposes the
/// equivalent 2x2 real matrix acting on (Re w, Im w).
struct RealLinearPointwise {
    cplx alpha;
    cplx beta;

    cplx apply(cplx w) const { return alpha * w + beta * std::conj(w); }
    /// Row-major [[a00, a01], [a10, a11]].
    std::array<double, 4> real_block() const;
};

/// Pointwise part of d/du [i 2|u|^2 u] at u.
RealLinearPointwise nls_reaction_jacobian(cplx u);
/// Pointwise part of the linearized operator: i(4|u_Per|^2 w + 2 u_Per^2 conj(w)).
RealLinearPointwise linearized_reaction(cplx uper);

using SecondDerivative = std::function<std::vector<cplx>(std::span<const cplx>)>;

/// Max-norm residual of i u_t + u_xx + 2|u|^2 u with a centred difference in
/// time at the middle snapshot and `dxx` in space. Snapshots at t-h, t, t+h.
double nls_residual(const ComplexField1D& before, const ComplexField1D& mid,
                    const ComplexField1D& after, const SecondDerivative& dxx);

}  // namespace breather
