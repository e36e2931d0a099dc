#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "modspace/compensated.hpp"
#include "modspace/rational.hpp"

namespace modspace {

using cplx = std::complex<double>;

// Uniform periodic grid on the torus of period L = 2*pi*M per axis.
//   spatial step    dx = L/N,
//   frequency step  dxi = 1/M,
//   frequency range [-N/(2M), N/(2M)) per axis.
// Integer M makes every integer frequency an exact grid node, so lattice
// modulations e^{ikx} are exact grid modes.
struct GridSpec {
    int dim;         // 1 or 2
    int period_mul;  // M
    int samples;     // N per axis, even power of two

    GridSpec(int n, int M, int N) : dim(n), period_mul(M), samples(N) {
        if (n != 1 && n != 2) throw std::invalid_argument("grid: dimension must be 1 or 2");
        if (M < 1) throw std::invalid_argument("grid: period multiplier must be positive");
        if (N < 4 || (N & (N - 1)) != 0) throw std::invalid_argument("grid: N must be a power of two >= 4");
    }

    double period() const { return 2.0 * std::numbers::pi * period_mul; }
    double dx() const { return period() / samples; }
    double dxi() const { return 1.0 / period_mul; }
    double xi_max() const { return samples / (2.0 * period_mul); }  // one past the last node

    std::size_t total() const {
        std::size_t t = samples;
        for (int a = 1; a < dim; ++a) t *= samples;
        return t;
    }

    // Centered coordinates: per-axis index i in [0,N) maps to offset i - N/2.
    double x_coord(int i) const { return (i - samples / 2) * dx(); }
    double xi_coord(int i) const { return (i - samples / 2) * dxi(); }
    int center() const { return samples / 2; }

    // Index of the frequency node at integer offset j from zero frequency,
    // i.e. xi = j * dxi.  Valid while |j| <= N/2.
    int freq_index(long long j) const { return static_cast<int>(j + samples / 2); }

    // Anti-aliasing guard: every lattice index up to k_used must sit at least
    // two units inside the representable frequency box.
    bool admits_lattice(double k_used) const { return k_used + 2.0 < xi_max(); }

    std::array<int, 2> unflatten(std::size_t idx) const {
        if (dim == 1) return {static_cast<int>(idx), 0};
        return {static_cast<int>(idx / samples), static_cast<int>(idx % samples)};
    }
    std::size_t flatten(int i0, int i1 = 0) const {
        if (dim == 1) return static_cast<std::size_t>(i0);
        return static_cast<std::size_t>(i0) * samples + i1;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.dim == b.dim && a.period_mul == b.period_mul && a.samples == b.samples;
    }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }
};

namespace detail {
inline void check_size(const GridSpec& grid, std::size_t n) {
    if (n != grid.total()) throw std::invalid_argument("sample count does not match grid");
}
}  // namespace detail

// Complex samples over the spatial grid, row-major, axis index 0 slowest.
struct SampledFunction {
    GridSpec grid;
    std::vector<cplx> values;

    explicit SampledFunction(const GridSpec& g) : grid(g), values(g.total(), cplx{0.0, 0.0}) {}
    SampledFunction(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        detail::check_size(grid, values.size());
    }

    cplx& at(int i0, int i1 = 0) { return values[grid.flatten(i0, i1)]; }
    const cplx& at(int i0, int i1 = 0) const { return values[grid.flatten(i0, i1)]; }
};

// Complex samples over the frequency grid, centered: per-axis index 0 holds
// the most negative frequency -N/(2M).
struct SpectralFunction {
    GridSpec grid;
    std::vector<cplx> values;

    explicit SpectralFunction(const GridSpec& g) : grid(g), values(g.total(), cplx{0.0, 0.0}) {}
    SpectralFunction(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        detail::check_size(grid, values.size());
    }

    cplx& at(int i0, int i1 = 0) { return values[grid.flatten(i0, i1)]; }
    const cplx& at(int i0, int i1 = 0) const { return values[grid.flatten(i0, i1)]; }
};

// Riemann quadrature L_p norm, (dx^n * sum |f|^p)^(1/p); grid max for p = inf.
// Trapezoid and midpoint coincide with this on a periodic grid. Terms are
// accumulated in index order through the compensated sum.
inline double lp_norm(const SampledFunction& f, const ExtendedExponent& p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (const cplx& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    const double pd = p.to_double();
    if (pd < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
    const double cell = std::pow(f.grid.dx(), f.grid.dim);
    CompensatedSum acc;
    if (pd == 1.0) {
        for (const cplx& v : f.values) acc.add(std::abs(v));
    } else if (pd == 2.0) {
        for (const cplx& v : f.values) acc.add(std::norm(v));
    } else {
        for (const cplx& v : f.values) acc.add(std::pow(std::abs(v), pd));
    }
    return std::pow(cell * acc.result(), 1.0 / pd);
}

inline SampledFunction pointwise_product(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid != g.grid) throw std::invalid_argument("pointwise_product: grid mismatch");
    SampledFunction out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] * g.values[i];
    return out;
}

inline SampledFunction scale(const SampledFunction& f, cplx a) {
    SampledFunction out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a * f.values[i];
    return out;
}

inline SampledFunction add(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid != g.grid) throw std::invalid_argument("add: grid mismatch");
    SampledFunction out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] + g.values[i];
    return out;
}

inline SampledFunction subtract(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid != g.grid) throw std::invalid_argument("subtract: grid mismatch");
    SampledFunction out(f.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[i] - g.values[i];
    return out;
}

inline double max_abs(const SampledFunction& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace modspace
