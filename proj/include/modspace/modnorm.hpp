#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modspace/decomposition.hpp"
#include "modspace/fft.hpp"
#include "modspace/grid.hpp"
#include "modspace/space_params.hpp"

namespace modspace {

// Raised when the outermost shell of a truncated norm reduction carries more
// than the allowed share of the value. Truncation never happens silently.
struct TruncationError : std::runtime_error {
    double tail;
    explicit TruncationError(double t)
        : std::runtime_error("truncation guard: outer-shell share " + std::to_string(t)), tail(t) {}
};

// <k>^s = (1 + |k|^2)^{s/2}, |k|^2 from the exact integer lattice point.
inline double bracket_weight(const LatticePoint& k, int dim, double s) {
    double kk = static_cast<double>(k[0]) * k[0];
    if (dim == 2) kk += static_cast<double>(k[1]) * k[1];
    return std::pow(1.0 + kk, 0.5 * s);
}

struct NormReport {
    double value = 0.0;
    SpaceParams params;
    std::string method;    // "decomposition" | "stft" | "sobolev"
    std::string settings;  // bank / window / grid identifier
    double tail = 0.0;     // outer-shell share of the value
    // Weighted per-piece values: <k>^s ||box_k f||_p keyed by lattice point
    // (decomposition), or the weighted x-slice norm keyed by the frequency
    // node offset (stft). Populated when requested.
    std::vector<std::pair<LatticePoint, double>> contributions;
    double reduction_cell = 1.0;  // 1 for lq over k; dxi^n for the xi integral

    // Re-runs the declared lq reduction over the stored contributions.
    double recompute() const {
        if (params.q.is_infinite()) {
            double m = 0.0;
            for (const auto& [k, c] : contributions) m = std::max(m, c);
            return m;
        }
        const double qd = params.q.to_double();
        CompensatedSum acc;
        for (const auto& [k, c] : contributions) acc.add(std::pow(c, qd));
        return std::pow(reduction_cell * acc.result(), 1.0 / qd);
    }
};

namespace detail {

// lq reduction over weighted contributions with an outer-shell diagnostic.
// For q < inf the tail is the lq mass of the outermost shell relative to the
// value. For q = inf the sup of a convergent contribution sequence is
// attained inside, so the tail is the amount by which the outer shell
// exceeds the interior sup: zero for flat or decaying tails, positive
// exactly when the truncation edge is still driving the sup upward.
struct LqReducer {
    const ExtendedExponent& q;
    double cell;
    CompensatedSum sum;
    CompensatedSum shell_sum;
    double sup = 0.0;
    double shell_sup = 0.0;
    double inner_sup = 0.0;

    LqReducer(const ExtendedExponent& q_, double cell_) : q(q_), cell(cell_) {}

    void add(double c, bool outer_shell) {
        if (q.is_infinite()) {
            sup = std::max(sup, c);
            if (outer_shell) {
                shell_sup = std::max(shell_sup, c);
            } else {
                inner_sup = std::max(inner_sup, c);
            }
            return;
        }
        const double term = std::pow(c, q.to_double());
        sum.add(term);
        if (outer_shell) shell_sum.add(term);
    }

    double value() const {
        if (q.is_infinite()) return sup;
        return std::pow(cell * sum.result(), 1.0 / q.to_double());
    }

    double tail() const {
        const double v = value();
        if (v <= 0.0) return 0.0;
        if (q.is_infinite()) return std::max(0.0, shell_sup - inner_sup) / v;
        return std::pow(cell * shell_sum.result(), 1.0 / q.to_double()) / v;
    }
};

}  // namespace detail

struct NormOptions {
    double tail_tolerance = 1e-4;
    bool keep_contributions = false;
};

// Decomposition realization of the modulation norm:
//   ( sum_k <k>^{sq} ||box_k f||_{L_p}^q )^{1/q},  sup over k for q = inf.
// Throws TruncationError when the bank is too small for the declared
// tolerance.  Lattice points are visited in a fixed lexicographic order and
// reduced through the compensated sum, so the result is schedule-independent.
inline NormReport mod_norm_decomp(const SampledFunction& f, const SpaceParams& params,
                                  const DecompositionBank& bank, const NormOptions& opts = {}) {
    if (f.grid != bank.grid) throw std::invalid_argument("mod_norm_decomp: grid mismatch");
    if (params.dim != f.grid.dim) throw std::invalid_argument("mod_norm_decomp: dimension mismatch");
    const SpectralFunction F = forward_ft(f);
    const double s = params.s.to_double();
    const int K = bank.k_max;

    NormReport report;
    report.params = params;
    report.method = "decomposition";
    report.settings = "bank(k_max=" + std::to_string(K) + ",M=" + std::to_string(f.grid.period_mul) +
                      ",N=" + std::to_string(f.grid.samples) + ")";
    detail::LqReducer reducer(params.q, 1.0);

    const int k1_lo = f.grid.dim == 2 ? -K : 0;
    const int k1_hi = f.grid.dim == 2 ? K : 0;
    for (int k0 = -K; k0 <= K; ++k0) {
        for (int k1 = k1_lo; k1 <= k1_hi; ++k1) {
            const LatticePoint k{k0, k1};
            double piece = 0.0;
            if (!masked_spectrum_vanishes(bank, k, F)) {
                piece = lp_norm(inverse_ft(masked_spectrum(bank, k, F)), params.p);
            }
            const double weighted = bracket_weight(k, f.grid.dim, s) * piece;
            const bool outer = std::max(std::abs(k0), std::abs(k1)) == K;
            reducer.add(weighted, outer);
            if (opts.keep_contributions) report.contributions.emplace_back(k, weighted);
        }
    }
    report.value = reducer.value();
    report.tail = reducer.tail();
    if (report.tail > opts.tail_tolerance) throw TruncationError(report.tail);
    return report;
}

// Short-time Fourier transform sampled on the (x, xi) product grid:
//   V(x, xi) = (2*pi)^{-n/2} dx^n sum_m f(x_m) conj(w(x_m - x)) e^{-i x_m xi},
// window translations wrap around the torus. Cost O(N^{2n} log N).
struct StftField {
    GridSpec grid;
    std::vector<cplx> values;  // x-major: values[x_flat * total + xi_flat]

    cplx at(std::size_t x_flat, std::size_t xi_flat) const {
        return values[x_flat * grid.total() + xi_flat];
    }
};

namespace detail {

// One windowed slice f(.) * conj(w(. - x)) transformed with the -i kernel.
inline void stft_slice(const SampledFunction& f, const SampledFunction& window, int x0, int x1,
                       std::vector<cplx>& slice) {
    const GridSpec& g = f.grid;
    const int n = g.samples;
    slice.resize(g.total());
    if (g.dim == 1) {
        for (int m = 0; m < n; ++m) {
            slice[m] = f.values[m] * std::conj(window.values[((m - x0) % n + n) % n]);
        }
    } else {
        for (int m0 = 0; m0 < n; ++m0) {
            const int w0 = ((m0 - x0) % n + n) % n;
            for (int m1 = 0; m1 < n; ++m1) {
                const int w1 = ((m1 - x1) % n + n) % n;
                slice[g.flatten(m0, m1)] =
                    f.values[g.flatten(m0, m1)] * std::conj(window.values[g.flatten(w0, w1)]);
            }
        }
    }
    slice = half_rotate(slice, g);
    fft_grid(slice, g, -1);
    slice = half_rotate(slice, g);
    const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * g.dim) * std::pow(g.dx(), g.dim);
    for (cplx& v : slice) v *= scale;
}

}  // namespace detail

inline StftField stft(const SampledFunction& f, const SampledFunction& window) {
    if (f.grid != window.grid) throw std::invalid_argument("stft: grid mismatch");
    if (max_abs(window) == 0.0) throw std::invalid_argument("stft: window is identically zero");
    const GridSpec& g = f.grid;
    StftField field{g, std::vector<cplx>(g.total() * g.total())};
    std::vector<cplx> slice;
    for (std::size_t xf = 0; xf < g.total(); ++xf) {
        const auto xc = g.unflatten(xf);
        detail::stft_slice(f, window, xc[0], xc[1], slice);
        std::copy(slice.begin(), slice.end(), field.values.begin() + xf * g.total());
    }
    return field;
}

// STFT realization of the modulation norm: inner L_p over x of |V(x, xi)|,
// weight <xi>^s, outer L_q over xi truncated at the grid edge. The tail
// diagnostic covers the outermost unit frequency band.
inline NormReport mod_norm_stft(const SampledFunction& f, const SpaceParams& params,
                                const SampledFunction& window, const NormOptions& opts = {}) {
    if (f.grid != window.grid) throw std::invalid_argument("mod_norm_stft: grid mismatch");
    if (params.dim != f.grid.dim) throw std::invalid_argument("mod_norm_stft: dimension mismatch");
    if (max_abs(window) == 0.0) throw std::invalid_argument("mod_norm_stft: window is identically zero");
    const GridSpec& g = f.grid;
    const std::size_t total = g.total();
    const bool p_inf = params.p.is_infinite();
    const double pd = p_inf ? 0.0 : params.p.to_double();

    // Inner L_p over x, accumulated per xi node while streaming x slices.
    std::vector<CompensatedSum> sums(p_inf ? 0 : total);
    std::vector<double> sups(p_inf ? total : 0, 0.0);
    std::vector<cplx> slice;
    for (std::size_t xf = 0; xf < total; ++xf) {
        const auto xc = g.unflatten(xf);
        detail::stft_slice(f, window, xc[0], xc[1], slice);
        if (p_inf) {
            for (std::size_t j = 0; j < total; ++j) sups[j] = std::max(sups[j], std::abs(slice[j]));
        } else {
            for (std::size_t j = 0; j < total; ++j) sums[j].add(std::pow(std::abs(slice[j]), pd));
        }
    }
    const double cell_x = std::pow(g.dx(), g.dim);

    NormReport report;
    report.params = params;
    report.method = "stft";
    report.settings = "window(N=" + std::to_string(g.samples) + ",M=" +
                      std::to_string(g.period_mul) + ")";
    report.reduction_cell = std::pow(g.dxi(), g.dim);
    const double s = params.s.to_double();
    detail::LqReducer reducer(params.q, report.reduction_cell);
    const double edge = g.xi_max() - 1.0;
    for (std::size_t j = 0; j < total; ++j) {
        const auto c = g.unflatten(j);
        const double inner = p_inf ? sups[j] : std::pow(cell_x * sums[j].result(), 1.0 / pd);
        double m = std::abs(g.xi_coord(c[0]));
        double xi2 = g.xi_coord(c[0]) * g.xi_coord(c[0]);
        if (g.dim == 2) {
            m = std::max(m, std::abs(g.xi_coord(c[1])));
            xi2 += g.xi_coord(c[1]) * g.xi_coord(c[1]);
        }
        const double weighted = std::pow(1.0 + xi2, 0.5 * s) * inner;
        reducer.add(weighted, m >= edge);
        if (opts.keep_contributions) {
            report.contributions.emplace_back(
                LatticePoint{c[0] - g.center(), g.dim == 2 ? c[1] - g.center() : 0}, weighted);
        }
    }
    report.value = reducer.value();
    report.tail = reducer.tail();
    if (report.tail > opts.tail_tolerance) throw TruncationError(report.tail);
    return report;
}

// H^s norm: ( dxi^n sum <xi>^{2s} |F f(xi)|^2 )^{1/2}.
inline double sobolev_norm(const SampledFunction& f, double s) {
    const SpectralFunction F = forward_ft(f);
    const GridSpec& g = f.grid;
    CompensatedSum acc;
    for (std::size_t j = 0; j < F.values.size(); ++j) {
        const auto c = g.unflatten(j);
        double xi2 = g.xi_coord(c[0]) * g.xi_coord(c[0]);
        if (g.dim == 2) xi2 += g.xi_coord(c[1]) * g.xi_coord(c[1]);
        acc.add(std::pow(1.0 + xi2, s) * std::norm(F.values[j]));
    }
    return std::sqrt(std::pow(g.dxi(), g.dim) * acc.result());
}

}  // namespace modspace
