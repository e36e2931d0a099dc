#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "modspace/grid.hpp"

namespace modspace {
namespace detail {

// In-place power-of-two FFT computing X_k = sum_m a_m e^{sign*2*pi*i*m*k/N}.
// Twiddles come from one trig table per call; no shared mutable state.
inline void fft_pow2(cplx* a, int n, int sign) {
    if (n <= 1) return;
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<cplx> tw(n / 2);
    const double base = sign * 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n / 2; ++j) tw[j] = std::polar(1.0, base * j);
    for (int len = 2; len <= n; len <<= 1) {
        const int step = n / len;
        for (int i = 0; i < n; i += len) {
            for (int j = 0; j < len / 2; ++j) {
                const cplx w = tw[static_cast<std::size_t>(j) * step];
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

inline void fft_grid(std::vector<cplx>& data, const GridSpec& grid, int sign) {
    const int n = grid.samples;
    if (grid.dim == 1) {
        fft_pow2(data.data(), n, sign);
        return;
    }
    for (int r = 0; r < n; ++r) fft_pow2(data.data() + static_cast<std::size_t>(r) * n, n, sign);
    std::vector<cplx> col(n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) col[r] = data[static_cast<std::size_t>(r) * n + c];
        fft_pow2(col.data(), n, sign);
        for (int r = 0; r < n; ++r) data[static_cast<std::size_t>(r) * n + c] = col[r];
    }
}

// Rotate every axis by N/2: moves the centered origin to index 0 and back.
// N is even, so the rotation is its own inverse.
inline std::vector<cplx> half_rotate(const std::vector<cplx>& in, const GridSpec& grid) {
    const int n = grid.samples;
    const int h = n / 2;
    std::vector<cplx> out(in.size());
    if (grid.dim == 1) {
        for (int i = 0; i < n; ++i) out[i] = in[(i + h) % n];
        return out;
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            out[static_cast<std::size_t>(r) * n + c] =
                in[static_cast<std::size_t>((r + h) % n) * n + (c + h) % n];
        }
    }
    return out;
}

}  // namespace detail

// Forward transform with the +i kernel:
//   F f(xi_j) = (2*pi)^{-n/2} dx^n sum_m f(x_m) e^{+i x_m . xi_j},
// exact for trigonometric polynomials resolvable on the grid. Together with
// inverse_ft below the pair is unitary on the grid (discrete Plancherel).
inline SpectralFunction forward_ft(const SampledFunction& f) {
    detail::check_size(f.grid, f.values.size());
    std::vector<cplx> work = detail::half_rotate(f.values, f.grid);
    detail::fft_grid(work, f.grid, +1);
    work = detail::half_rotate(work, f.grid);
    const double scale =
        std::pow(2.0 * std::numbers::pi, -0.5 * f.grid.dim) * std::pow(f.grid.dx(), f.grid.dim);
    for (cplx& v : work) v *= scale;
    return SpectralFunction(f.grid, std::move(work));
}

// Inverse transform, -i kernel:
//   f(x_m) = (2*pi)^{-n/2} dxi^n sum_j F(xi_j) e^{-i x_m . xi_j}.
inline SampledFunction inverse_ft(const SpectralFunction& F) {
    detail::check_size(F.grid, F.values.size());
    std::vector<cplx> work = detail::half_rotate(F.values, F.grid);
    detail::fft_grid(work, F.grid, -1);
    work = detail::half_rotate(work, F.grid);
    const double scale =
        std::pow(2.0 * std::numbers::pi, -0.5 * F.grid.dim) * std::pow(F.grid.dxi(), F.grid.dim);
    for (cplx& v : work) v *= scale;
    return SampledFunction(F.grid, std::move(work));
}

}  // namespace modspace
