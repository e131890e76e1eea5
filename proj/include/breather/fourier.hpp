#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace breather {

using cplx = std::complex<double>;

/// Periodic grid on [-L, L) with n equispaced nodes.
///
/// Wavenumbers follow the FFT ordering: index j holds (pi/L) j for
/// j <= n/2 - 1 and (pi/L)(j - n) for j >= n/2.
class FourierGrid {
public:
    FourierGrid(double half_length, std::size_t n);

    double half_length() const { return half_length_; }
    std::size_t size() const { return nodes_.size(); }
    double spacing() const { return 2.0 * half_length_ / static_cast<double>(size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& wavenumbers() const { return wavenumbers_; }

    /// Index of the node mirrored through x = 0 (x_j -> -x_j); node 0 (x = -L)
    /// maps to itself by periodicity.
    std::size_t mirror(std::size_t j) const { return j == 0 ? 0 : size() - j; }

private:
    double half_length_;
    std::vector<double> nodes_;
    std::vector<double> wavenumbers_;
};

FourierGrid make_grid(double half_length, std::size_t n);

/// Unnormalized forward / normalized inverse complex FFT of a fixed length.
/// Plans use FFTW_ESTIMATE so results are bitwise reproducible.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    Fft(Fft&&) noexcept;
    Fft& operator=(Fft&&) noexcept;

    std::size_t size() const { return n_; }
    void forward(std::span<const cplx> in, std::span<cplx> out);
    /// Includes the 1/n factor.
    void inverse(std::span<const cplx> in, std::span<cplx> out);

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

/// Inverse transform of -k^2 times the transform.
std::vector<cplx> spectral_dxx(const FourierGrid& grid, std::span<const cplx> values);
/// Inverse transform of ik times the transform (Nyquist mode zeroed).
std::vector<cplx> spectral_dx(const FourierGrid& grid, std::span<const cplx> values);

/// Fourier coefficient magnitudes |FFT(u)|/n in FFT ordering.
std::vector<double> fourier_coefficient_magnitudes(std::span<const cplx> values);

/// Trigonometric interpolant of nodal values evaluated at arbitrary x.
class TrigInterpolant {
public:
    TrigInterpolant(const FourierGrid& grid, std::span<const cplx> values);
    cplx operator()(double x) const;

private:
    double half_length_;
    std::vector<cplx> coeffs_;  // FFT ordering, normalized
};

}  // namespace breather
