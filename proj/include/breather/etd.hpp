#pragma once

// Fourth-order exponential time differencing Runge-Kutta (Cox-Matthews) for
// u_t = L u + N(u, t) with L diagonal in Fourier space.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "breather/fourier.hpp"

namespace breather {

/// Per-mode ETDRK4 tables for step h and linear symbol lambda_k.
///
/// The phi-type weights are evaluated as means over 32 points on the unit
/// circle centred at h lambda_k, which stays accurate where the closed forms
/// cancel catastrophically (|h lambda_k| -> 0).
struct EtdCoefficients {
    double h = 0.0;
    std::vector<cplx> exp_full;  // e^{h lambda}
    std::vector<cplx> exp_half;  // e^{h lambda / 2}
    std::vector<cplx> q;         // h phi_1(h lambda / 2) / 2 == (e^{h lambda/2} - 1) / lambda
    std::vector<cplx> f1;        // weight of N(u_n)
    std::vector<cplx> f2;        // weight of N(a) and N(b), used as 2 f2
    std::vector<cplx> f3;        // weight of N(c)

    std::size_t size() const { return exp_full.size(); }
};

inline constexpr int kContourPoints = 32;

EtdCoefficients etd_coefficients(std::span<const cplx> linear_symbol, double h);

/// Closed-form weights, accurate only away from h lambda = 0. Returned in the
/// order {q, f1, f2, f3}; used to cross-check the contour evaluation.
std::array<cplx, 4> etd_weights_direct(cplx h_lambda, double h);

/// Physical-space nonlinearity N(u, t).
using Nonlinearity = std::function<std::vector<cplx>(std::span<const cplx> u, double t)>;

/// One-step ETDRK4 driver. Owns the FFT plans and work arrays.
class Etdrk4Stepper {
public:
    Etdrk4Stepper(EtdCoefficients coeffs);

    const EtdCoefficients& coefficients() const { return coeffs_; }

    /// Advances `state` (physical space) from t to t + h in place.
    void step(std::span<cplx> state, double t, const Nonlinearity& nonlinear);

private:
    void eval_hat(std::span<const cplx> u_phys, double t, const Nonlinearity& nonlinear,
                  std::vector<cplx>& out_hat);

    EtdCoefficients coeffs_;
    Fft fft_;
    std::vector<cplx> u_hat_, a_hat_, b_hat_, c_hat_;
    std::vector<cplx> nu_, na_, nb_, nc_;
    std::vector<cplx> phys_, work_;
};

/// Convenience wrapper: advance `state` by one step.
std::vector<cplx> etdrk4_step(std::span<const cplx> state, double t, const EtdCoefficients& coeffs,
                              const Nonlinearity& nonlinear);

}  // namespace breather
