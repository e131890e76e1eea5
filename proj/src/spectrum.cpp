#include "breather/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace breather {

cplx dispersion(DispersionPoint p) {
    const cplx nu2 = p.nu * p.nu;
    return p.lambda * p.lambda + nu2 * (nu2 + 4.0);
}

namespace {

cplx newton_polish(cplx lambda, cplx nu) {
    const cplx l2 = lambda * lambda;
    const cplx nu2 = nu * nu;
    const cplx deriv = 4.0 * nu * (nu2 + 2.0);
    if (std::abs(deriv) < 1e-8 * std::max(1.0, std::abs(nu2 * nu))) {
        // Multiple root: Newton would lose accuracy or divide by ~0.
        return nu;
    }
    const cplx step = (nu2 * nu2 + 4.0 * nu2 + l2) / deriv;
    const cplx polished = nu - step;
    const double before = std::abs(nu2 * nu2 + 4.0 * nu2 + l2);
    const cplx p2 = polished * polished;
    const double after = std::abs(p2 * p2 + 4.0 * p2 + l2);
    return after <= before ? polished : nu;
}

bool root_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// +1 for the right-hand group, -1 for the left-hand group.
int side_of(cplx nu) {
    if (std::abs(nu.real()) <= kRootTieThreshold) {
        return nu.imag() > 0.0 ? 1 : (nu.imag() < 0.0 ? -1 : 0);
    }
    return nu.real() > 0.0 ? 1 : -1;
}

}  // namespace

RootQuadruple dispersion_roots(cplx lambda) {
    // nu^4 + 4 nu^2 + lambda^2 = 0  =>  nu^2 = -2 +- sqrt(4 - lambda^2)
    const cplx disc = std::sqrt(4.0 - lambda * lambda);
    const std::array<cplx, 2> squares{-2.0 + disc, -2.0 - disc};
    RootQuadruple out{lambda, {}};
    for (int j = 0; j < 2; ++j) {
        const cplx r = std::sqrt(squares[j]);
        out.roots[2 * j] = newton_polish(lambda, r);
        out.roots[2 * j + 1] = newton_polish(lambda, -r);
    }
    std::sort(out.roots.begin(), out.roots.end(), root_less);
    return out;
}

std::pair<cplx, cplx> essential_spectrum_curve(double k) {
    const cplx l = std::sqrt(cplx(k * k * (4.0 - k * k), 0.0));
    return {l, -l};
}

bool in_essential_spectrum(cplx lambda, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double to_axis = std::abs(lambda.real());
    const double clamped = std::clamp(lambda.real(), -2.0, 2.0);
    const double to_segment = std::hypot(lambda.real() - clamped, lambda.imag());
    return std::min(to_axis, to_segment) <= tol;
}

double absolute_spectrum_gap(cplx lambda) {
    const RootQuadruple q = dispersion_roots(lambda);
    // Left-hand group: the two roots with side -1; ties (side 0, nu = 0) fill
    // whichever group is short so the split is always 2 + 2.
    std::vector<cplx> plus, minus, zero;
    for (const cplx& r : q.roots) {
        const int s = side_of(r);
        (s > 0 ? plus : (s < 0 ? minus : zero)).push_back(r);
    }
    for (const cplx& r : zero) {
        (plus.size() < minus.size() ? plus : minus).push_back(r);
    }
    while (plus.size() > 2) {
        auto it = std::min_element(plus.begin(), plus.end(), root_less);
        minus.push_back(*it);
        plus.erase(it);
    }
    while (minus.size() > 2) {
        auto it = std::max_element(minus.begin(), minus.end(), root_less);
        plus.push_back(*it);
        minus.erase(it);
    }
    const double nu2_plus = std::min(plus[0].real(), plus[1].real());
    const double nu2_minus = std::max(minus[0].real(), minus[1].real());
    return std::abs(nu2_plus - nu2_minus);
}

bool in_absolute_spectrum(cplx lambda, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    return absolute_spectrum_gap(lambda) <= tol;
}

namespace {

void validate_scan(const SpectrumScan& scan) {
    if (scan.resolution < 2) throw std::invalid_argument("scan resolution must be >= 2");
    if (!(scan.re_max >= scan.re_min) || !(scan.im_max >= scan.im_min)) {
        throw std::invalid_argument("scan region has negative extent");
    }
    if (scan.re_max == scan.re_min && scan.im_max == scan.im_min) {
        throw std::invalid_argument("scan region is a single point");
    }
}

double axis_value(double lo, double hi, int j, int n) {
    return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
}

}  // namespace

double scan_tolerance(const SpectrumScan& scan) {
    if (scan.tolerance > 0.0) return scan.tolerance;
    validate_scan(scan);
    const double d = static_cast<double>(scan.resolution - 1);
    const double dre = (scan.re_max - scan.re_min) / d;
    const double dim = (scan.im_max - scan.im_min) / d;
    double spacing = 0.0;
    if (dre > 0.0 && dim > 0.0) spacing = std::min(dre, dim);
    else spacing = std::max(dre, dim);
    return 1e-6 * spacing;
}

std::vector<cplx> scan_points(const SpectrumScan& scan) {
    validate_scan(scan);
    const int n = scan.resolution;
    const bool re_line = scan.re_max == scan.re_min;
    const bool im_line = scan.im_max == scan.im_min;
    std::vector<cplx> pts;
    if (re_line || im_line) {
        pts.reserve(n);
        for (int j = 0; j < n; ++j) {
            pts.emplace_back(re_line ? scan.re_min : axis_value(scan.re_min, scan.re_max, j, n),
                             im_line ? scan.im_min : axis_value(scan.im_min, scan.im_max, j, n));
        }
        return pts;
    }
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        const double im = axis_value(scan.im_min, scan.im_max, a, n);
        for (int b = 0; b < n; ++b) {
            pts.emplace_back(axis_value(scan.re_min, scan.re_max, b, n), im);
        }
    }
    return pts;
}

SpectrumScan absolute_spectrum_scan(SpectrumScan scan) {
    const double tol = scan_tolerance(scan);
    scan.tolerance = tol;
    scan.hits.clear();
    for (const cplx& l : scan_points(scan)) {
        if (in_absolute_spectrum(l, tol)) scan.hits.push_back(l);
    }
    return scan;
}

GrowthRate max_growth_rate() {
    // Golden-section search of Re lambda(k) on k in [0, 2]; Re lambda vanishes
    // for k >= 2, so the supremum lies inside.
    auto re = [](double k) { return essential_spectrum_curve(k).first.real(); };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = re(c), fd = re(d);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = re(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = re(d);
        }
    }
    const double k = 0.5 * (a + b);
    return {re(k), k};
}

void write_spectrum_csv(std::ostream& os, const SpectrumScan& scan) {
    const double tol = scan_tolerance(scan);
    os << "re_lambda,im_lambda,in_essential,in_absolute\n";
    os << std::setprecision(17);
    for (const cplx& l : scan_points(scan)) {
        os << l.real() << ',' << l.imag() << ',' << (in_essential_spectrum(l, tol) ? 1 : 0) << ','
           << (in_absolute_spectrum(l, tol) ? 1 : 0) << '\n';
    }
}

}  // namespace breather
