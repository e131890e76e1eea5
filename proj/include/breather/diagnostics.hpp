#pragma once

// Conserved quantities and solution-quality monitors for both solvers.

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "breather/fourier.hpp"
#include "breather/multidomain.hpp"
#include "breather/nls_core.hpp"

namespace breather {

/// Floors above this trigger a resolution warning on the run record.
inline constexpr double kResolutionAlarm = 1e-3;
/// |E(t0)| below this makes delta_E undefined.
inline constexpr double kEnergyZero = 1e-8;
/// Tail coefficients below this fraction of the peak are rounding noise.
inline constexpr double kRoundingLevel = 1e-13;

/// One value per snapshot time. Quantities that do not apply to a run
/// (M for nonlinear runs, E for linear ones) are stored as NaN.
struct DiagnosticsRecord {
    std::vector<std::string> floor_names{"I", "II", "III", "IV"};
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> delta_E;
    std::vector<double> mass;
    std::vector<double> max_amplitude;
    std::vector<double> max_diff_to_peregrine;
    std::vector<double> parity_error;
    std::vector<std::vector<double>> coefficient_floor;  // [row][domain]
    std::vector<std::string> warnings;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
};

double energy(const Eigen::VectorXcd& u, const MultiDomainGrid& grid, AsymptoticModulus kappa);
double energy(std::span<const cplx> u, const FourierGrid& grid, AsymptoticModulus kappa);

/// 1 - E_now / E(t0), with E(t0) the first entry of the record. Throws
/// std::domain_error when the record is empty or |E(t0)| < kEnergyZero.
double delta_E(const DiagnosticsRecord& record, double e_now);

/// M = integral of 2 Re(conj(u_Per) v)
double mass(const Eigen::VectorXcd& v, const Eigen::VectorXcd& uper, const MultiDomainGrid& grid);
double mass(std::span<const cplx> v, std::span<const cplx> uper, const FourierGrid& grid);
double mass(const ComplexField1D& v, const ComplexField1D& uper, const FourierGrid& grid);

/// |u(x) - u_Per(x, t)| at every coordinate.
std::vector<double> diff_to_peregrine(std::span<const cplx> u, std::span<const double> x, double t);
std::vector<double> diff_to_peregrine(const ComplexField1D& state);
double max_diff_to_peregrine(std::span<const cplx> u, std::span<const double> x, double t);

/// max |u(x) - u(-x)| over mirrored node pairs.
double parity_error(const Eigen::VectorXcd& u, const MultiDomainGrid& grid);
double parity_error(std::span<const cplx> u, const FourierGrid& grid);

/// Median of the trailing 10% of the magnitudes divided by the largest one.
/// Rounding-level entries are skipped unless the whole tail is at rounding level.
double coefficient_floor(std::span<const double> magnitudes);
std::vector<double> coefficient_floor(const std::vector<std::vector<double>>& per_domain);

/// Fourier magnitudes reordered by |k| ascending (the +-k pair merged by max).
std::vector<double> fourier_magnitudes_by_wavenumber(std::span<const cplx> u);

/// Largest magnitude among the top third of |k| relative to the peak.
double fourier_high_mode_ratio(std::span<const cplx> u);

/// Warns (once per domain) when a floor exceeds kResolutionAlarm.
void check_resolution(DiagnosticsRecord& record, double t, const std::vector<double>& floors);

/// Fixed column order: t,E,delta_E,M,max_u,max_diff,parity_err,floor_I..floor_IV.
void write_diagnostics_csv(std::ostream& os, const DiagnosticsRecord& record);

}  // namespace breather
