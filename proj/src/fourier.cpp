#include "breather/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace breather {

FourierGrid::FourierGrid(double half_length, std::size_t n) : half_length_(half_length) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw std::invalid_argument("Fourier grid half length must be positive");
    }
    if (n < 8 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("Fourier grid size must be a power of two >= 8");
    }
    nodes_.resize(n);
    wavenumbers_.resize(n);
    const double dk = std::numbers::pi / half_length;
    const auto sn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t j = 0; j < sn; ++j) {
        nodes_[j] = -half_length + 2.0 * half_length * static_cast<double>(j) / static_cast<double>(n);
        wavenumbers_[j] = dk * static_cast<double>(j < sn / 2 ? j : j - sn);
    }
}

FourierGrid make_grid(double half_length, std::size_t n) { return FourierGrid(half_length, n); }

struct Fft::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(std::size_t n) {
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        const int ni = static_cast<int>(n);
        fwd = fftw_plan_dft_1d(ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("FFTW planning failed");
    }
    ~Impl() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(in);
        fftw_free(out);
    }
};

Fft::Fft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>(n)) {}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FFT length mismatch");
    std::memcpy(impl_->in, in.data(), n_ * sizeof(cplx));
    fftw_execute(impl_->fwd);
    std::memcpy(static_cast<void*>(out.data()), impl_->out, n_ * sizeof(cplx));
}

void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FFT length mismatch");
    std::memcpy(impl_->in, in.data(), n_ * sizeof(cplx));
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / static_cast<double>(n_);
    const auto* src = reinterpret_cast<const cplx*>(impl_->out);
    for (std::size_t j = 0; j < n_; ++j) out[j] = src[j] * scale;
}

namespace {

std::vector<cplx> apply_symbol(const FourierGrid& grid, std::span<const cplx> values,
                               auto&& symbol) {
    if (values.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
    Fft fft(grid.size());
    std::vector<cplx> hat(grid.size()), out(grid.size());
    fft.forward(values, hat);
    for (std::size_t j = 0; j < grid.size(); ++j) hat[j] *= symbol(j);
    fft.inverse(hat, out);
    return out;
}

}  // namespace

std::vector<cplx> spectral_dxx(const FourierGrid& grid, std::span<const cplx> values) {
    const auto& k = grid.wavenumbers();
    return apply_symbol(grid, values, [&](std::size_t j) { return cplx(-k[j] * k[j], 0.0); });
}

std::vector<cplx> spectral_dx(const FourierGrid& grid, std::span<const cplx> values) {
    const auto& k = grid.wavenumbers();
    const std::size_t nyquist = grid.size() / 2;
    return apply_symbol(grid, values, [&](std::size_t j) {
        return j == nyquist ? cplx(0.0) : cplx(0.0, k[j]);
    });
}

std::vector<double> fourier_coefficient_magnitudes(std::span<const cplx> values) {
    Fft fft(values.size());
    std::vector<cplx> hat(values.size());
    fft.forward(values, hat);
    std::vector<double> mags(values.size());
    const double scale = 1.0 / static_cast<double>(values.size());
    std::transform(hat.begin(), hat.end(), mags.begin(), [scale](cplx c) { return std::abs(c) * scale; });
    return mags;
}

TrigInterpolant::TrigInterpolant(const FourierGrid& grid, std::span<const cplx> values)
    : half_length_(grid.half_length()), coeffs_(grid.size()) {
    if (values.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
    Fft fft(grid.size());
    fft.forward(values, coeffs_);
    const std::size_t n = grid.size();
    for (auto& c : coeffs_) c /= static_cast<double>(n);
    // Split the Nyquist mode symmetrically so the interpolant of real data is real.
    coeffs_[n / 2] *= 0.5;
}

cplx TrigInterpolant::operator()(double x) const {
    const std::size_t n = coeffs_.size();
    const double theta = std::numbers::pi * (x + half_length_) / half_length_;
    const cplx w = std::polar(1.0, theta);
    const cplx winv = std::conj(w);
    // Positive modes 0..n/2 and negative modes -1..-n/2 by recurrence.
    cplx sum = coeffs_[0];
    cplx wp = w;
    cplx wm = winv;
    for (std::size_t j = 1; j <= n / 2; ++j) {
        sum += coeffs_[j] * wp;
        if (j < n / 2) sum += coeffs_[n - j] * wm;
        else sum += coeffs_[n / 2] * wm;
        wp *= w;
        wm *= winv;
        if ((j & 63) == 0) {
            // Re-anchor the recurrence to keep rounding drift bounded.
            wp = std::polar(1.0, theta * static_cast<double>(j + 1));
            wm = std::conj(wp);
        }
    }
    return sum;
}

}  // namespace breather
