#pragma once

// Two-stage Gauss-Legendre implicit Runge-Kutta on the multidomain grid for
//
//   u_t = i u_xx + g(u, x, t)
//
// with C^1 interface matching imposed by replacing collocation rows in each
// stage system.

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <string>

#include "breather/multidomain.hpp"

namespace breather {

struct IrkConfig {
    double h = 1e-3;
    double newton_tol = 1e-12;
    int max_newton = 50;

    void validate() const;
};

/// Pointwise reaction term g and the complex-linear part of its derivative.
class ReactionModel {
public:
    virtual ~ReactionModel() = default;
    virtual void reaction(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const = 0;
    /// alpha in dg = alpha du + beta conj(du). Only alpha enters the Newton
    /// matrix; the conjugate part is carried by the residual.
    virtual void jacobian_alpha(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const = 0;
};

/// g = 2i|u|^2 u
class NlsModel : public ReactionModel {
public:
    void reaction(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const override;
    void jacobian_alpha(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const override;
};

/// g = i(4|u_Per|^2 v + 2 u_Per^2 conj(v)), u_Per evaluated at the node x.
class LinearizedModel : public ReactionModel {
public:
    explicit LinearizedModel(const MultiDomainGrid& grid);
    void reaction(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const override;
    void jacobian_alpha(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& alpha) const override;

private:
    std::vector<double> x_;
};

/// g = i omega u
class ConstantRateModel : public ReactionModel {
public:
    explicit ConstantRateModel(double omega) : omega_(omega) {}
    void reaction(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const override;
    void jacobian_alpha(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const override;

private:
    double omega_;
};

/// NLS with a source chosen so that
///   u_e(x, t) = e^{-x^2} (cos 3t + i sin 2t) + e^{it} / 2
/// is the exact solution.
class ForcedNlsModel : public ReactionModel {
public:
    explicit ForcedNlsModel(const MultiDomainGrid& grid);
    static cplx exact(double x, double t);
    void reaction(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& out) const override;
    void jacobian_alpha(double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& alpha) const override;

private:
    std::vector<double> x_;
};

struct StepReport {
    int iterations = 0;
    double increment = 0.0;  // last Newton increment, max norm
};

class NewtonFailure : public std::runtime_error {
public:
    NewtonFailure(const std::string& what, StepReport report)
        : std::runtime_error(what), report_(report) {}
    const StepReport& report() const { return report_; }

private:
    StepReport report_;
};

/// Gauss-2 stepper bound to one grid and reaction model. The Newton matrix is
/// rebuilt once per step (frozen at the step start; for explicitly
/// time-dependent models at the step midpoint) and shared by all iterations.
class Gauss2Stepper {
public:
    Gauss2Stepper(const MultiDomainGrid& grid, const ReactionModel& model, IrkConfig config);
    ~Gauss2Stepper();
    Gauss2Stepper(const Gauss2Stepper&) = delete;
    Gauss2Stepper& operator=(const Gauss2Stepper&) = delete;

    const IrkConfig& config() const { return config_; }

    /// Advances u from t to t + h. On failure u is left unchanged and
    /// NewtonFailure is thrown.
    StepReport step(Eigen::VectorXcd& u, double t);

    /// i u_xx + g(u, t) on every node (no interface rows).
    Eigen::VectorXcd rhs(const Eigen::VectorXcd& u, double t) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    IrkConfig config_;
};

enum class RhsVariant { full_nls, linearized };

/// One step of the given equation. Builds a stepper for the call; loops should
/// hold a Gauss2Stepper instead.
GlobalState irk_gauss2_step(const GlobalState& state, const MultiDomainGrid& grid,
                            const IrkConfig& config, RhsVariant variant);

}  // namespace breather
