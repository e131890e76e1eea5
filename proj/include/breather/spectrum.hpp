#pragma once

// Spectra of the constant-coefficient linearization about the asymptotic
// state e^{2it}: dispersion relation D(lambda, nu) = lambda^2 + nu^2 (nu^2 + 4),
// essential spectrum iR u [-2, 2] and the absolute spectrum obtained from the
// ordering of the spatial roots nu.

#include <array>
#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

namespace breather {

using cplx = std::complex<double>;

struct DispersionPoint {
    cplx lambda;
    cplx nu;
};

/// The four roots of D(lambda, .) = 0, sorted by (real part, imaginary part).
struct RootQuadruple {
    cplx lambda;
    std::array<cplx, 4> roots;
};

/// Rectangle in the lambda-plane sampled on a resolution x resolution grid.
/// A rectangle that is degenerate in one direction is scanned as a segment.
struct SpectrumScan {
    double re_min = -3.0;
    double re_max = 3.0;
    double im_min = -3.0;
    double im_max = 3.0;
    int resolution = 121;
    /// <= 0 selects the default: 1e-6 times the finest nonzero grid spacing.
    double tolerance = 0.0;
    std::vector<cplx> hits;
};

/// Roots with |Re nu| below this are split between the two half-planes by the
/// sign of Im nu.
inline constexpr double kRootTieThreshold = 1e-12;

cplx dispersion(DispersionPoint p);
RootQuadruple dispersion_roots(cplx lambda);

/// lambda = +-sqrt(k^2 (4 - k^2)), principal branch first.
std::pair<cplx, cplx> essential_spectrum_curve(double k);

bool in_essential_spectrum(cplx lambda, double tol);
bool in_absolute_spectrum(cplx lambda, double tol);

/// |Re nu_2^+ - Re nu_2^-|: zero exactly on the absolute spectrum.
double absolute_spectrum_gap(cplx lambda);

SpectrumScan absolute_spectrum_scan(SpectrumScan scan);

/// Tolerance actually used by a scan (resolves the default).
double scan_tolerance(const SpectrumScan& scan);
/// Grid values of the scan in row-major order (imaginary part outer).
std::vector<cplx> scan_points(const SpectrumScan& scan);

struct GrowthRate {
    double lambda_max;
    double k_arg;
};

/// Supremum of Re lambda over the essential spectrum and the wavenumber
/// attaining it.
GrowthRate max_growth_rate();

/// CSV with columns re_lambda,im_lambda,in_essential,in_absolute, one row per
/// grid point.
void write_spectrum_csv(std::ostream& os, const SpectrumScan& scan);

}  // namespace breather
