#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "modspace/decomposition.hpp"
#include "modspace/fft.hpp"
#include "modspace/grid.hpp"
#include "modspace/modnorm.hpp"

namespace modspace {

// Finite lattice coefficient sequence a_k with its generating family tag.
struct LatticeCoefficients {
    int dim = 1;
    std::string family;
    // Entries sorted lexicographically by lattice point; values finite.
    std::vector<std::pair<LatticePoint, cplx>> entries;

    long long max_norm() const {
        long long m = 0;
        for (const auto& [k, a] : entries) {
            m = std::max({m, std::abs(static_cast<long long>(k[0])),
                          std::abs(static_cast<long long>(k[1]))});
        }
        return m;
    }
};

struct OracleNorm {
    double value = 0.0;
    std::string formula;
};

namespace detail {

inline void sort_entries(LatticeCoefficients& c) {
    std::sort(c.entries.begin(), c.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

// Exact unit table for lattice modes: e^{-i k x_m} per axis reduces to
// e^{-2 pi i r / N} with r = k*M*(m - N/2) mod N, an integer phase.
inline std::vector<cplx> unit_roots(int n) {
    std::vector<cplx> table(n);
    for (int r = 0; r < n; ++r) table[r] = std::polar(1.0, -2.0 * std::numbers::pi * r / n);
    return table;
}

inline int mode_phase_index(long long k, int M, int m_offset, int n) {
    long long r = ((k * M) % n) * m_offset % n;
    return static_cast<int>(((r % n) + n) % n);
}

}  // namespace detail

// The grid mode with spectrum on the single frequency node k: under the +i
// forward kernel this is the sampled e^{-i k . x}.
inline SampledFunction lattice_mode(const GridSpec& grid, const LatticePoint& k) {
    if (!grid.admits_lattice(std::max(std::abs(k[0]), std::abs(k[1])))) {
        throw std::invalid_argument("lattice_mode: mode outside anti-aliasing guard");
    }
    SampledFunction out(grid);
    const int n = grid.samples;
    const auto roots = detail::unit_roots(n);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        const auto c = grid.unflatten(idx);
        int r = detail::mode_phase_index(k[0], grid.period_mul, c[0] - grid.center(), n);
        cplx v = roots[r];
        if (grid.dim == 2) {
            v *= roots[detail::mode_phase_index(k[1], grid.period_mul, c[1] - grid.center(), n)];
        }
        out.values[idx] = v;
    }
    return out;
}

inline SampledFunction modulate(const SampledFunction& f, const LatticePoint& k) {
    return pointwise_product(f, lattice_mode(f.grid, k));
}

// Largest |psi| on the outer eighth of the cell relative to the center value;
// a proxy for the mass the periodization folded back in.
inline double periodization_leakage(const SampledFunction& f) {
    const GridSpec& g = f.grid;
    const double edge = 0.875 * (g.period() / 2.0);
    double outer = 0.0;
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        const auto c = g.unflatten(idx);
        bool is_outer = std::abs(g.x_coord(c[0])) >= edge;
        if (g.dim == 2) is_outer = is_outer || std::abs(g.x_coord(c[1])) >= edge;
        if (is_outer) outer = std::max(outer, std::abs(f.values[idx]));
    }
    return outer / std::max(1e-300, max_abs(f));
}

// Real, even, band-limited bump with spectrum inside (-eps, eps)^n and
// psi(0) = 1. The spectral profile is the exponential smoothstep with a wide
// transition (plateau eps/4). The sampled bump is an exact trigonometric
// polynomial, so every grid-side identity that uses it is exact; the
// time-side tails at the cell boundary (periodization_leakage) decay only
// Gevrey-fast in the cell size and are reported rather than enforced.
inline SampledFunction make_band_limited_psi(const GridSpec& grid, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("psi: need 0 < eps < 1/2");
    const int inside = 2 * static_cast<int>(std::ceil(eps * grid.period_mul) - 1) + 1;
    if (inside < 8) throw std::invalid_argument("psi: eps unresolvable, needs >= 8 nodes inside (-eps, eps)");
    SpectralFunction F(grid);
    for (std::size_t idx = 0; idx < F.values.size(); ++idx) {
        const auto c = grid.unflatten(idx);
        double v = detail::bump_profile(grid.xi_coord(c[0]), 0.25 * eps, eps);
        if (grid.dim == 2) v *= detail::bump_profile(grid.xi_coord(c[1]), 0.25 * eps, eps);
        F.values[idx] = v;
    }
    SampledFunction psi = inverse_ft(F);
    for (cplx& v : psi.values) v = cplx{v.real(), 0.0};  // even real spectrum
    const double center = psi.at(grid.center(), grid.dim == 2 ? grid.center() : 0).real();
    if (center <= 0.0) throw std::logic_error("psi: degenerate center value");
    for (cplx& v : psi.values) v /= center;
    return psi;
}

// f = psi(x) * sum_k a_k e_k(x) with exact grid modes.
inline SampledFunction make_lattice_modulated(const SampledFunction& psi,
                                              const LatticeCoefficients& coeffs) {
    const GridSpec& g = psi.grid;
    if (coeffs.dim != g.dim) throw std::invalid_argument("lattice family: dimension mismatch");
    if (!g.admits_lattice(static_cast<double>(coeffs.max_norm()))) {
        throw std::invalid_argument("lattice family: support exceeds anti-aliasing guard");
    }
    const int n = g.samples;
    const auto roots = detail::unit_roots(n);
    SampledFunction out(g);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        const auto c = g.unflatten(idx);
        const int m0 = c[0] - g.center();
        const int m1 = c[1] - g.center();
        CompensatedComplexSum acc;
        for (const auto& [k, a] : coeffs.entries) {
            cplx mode = roots[detail::mode_phase_index(k[0], g.period_mul, m0, n)];
            if (g.dim == 2) mode *= roots[detail::mode_phase_index(k[1], g.period_mul, m1, n)];
            acc.add(a * mode);
        }
        out.values[idx] = psi.values[idx] * acc.result();
    }
    return out;
}

// --- coefficient families -------------------------------------------------

inline LatticeCoefficients family_single_mode(const LatticePoint& l, int dim = 1) {
    LatticeCoefficients c{dim, "single-mode", {{l, cplx{1.0, 0.0}}}};
    return c;
}

// a_k = k^{-1/q} on the 1-D ray k = 1..N; requires q > 1.
inline LatticeCoefficients family_power(double q, long long cutoff) {
    if (!(q > 1.0)) throw std::invalid_argument("power family: needs q > 1");
    if (cutoff < 1) throw std::invalid_argument("power family: cutoff must be >= 1");
    LatticeCoefficients c{1, "power", {}};
    for (long long k = 1; k <= cutoff; ++k) {
        c.entries.push_back({{static_cast<int>(k), 0}, std::pow(static_cast<double>(k), -1.0 / q)});
    }
    return c;
}

// a_k = <k>^{-n} (log <k>)^{-(1+delta)/q} for 0 < ||k||_inf <= N.
inline LatticeCoefficients family_log_power(double q, double delta, long long cutoff, int dim = 1) {
    if (!(q > 1.0)) throw std::invalid_argument("log-power family: needs q > 1");
    LatticeCoefficients c{dim, "log-power", {}};
    const int lim = static_cast<int>(cutoff);
    const int lo1 = dim == 2 ? -lim : 0;
    const int hi1 = dim == 2 ? lim : 0;
    for (int k0 = -lim; k0 <= lim; ++k0) {
        for (int k1 = lo1; k1 <= hi1; ++k1) {
            if (k0 == 0 && k1 == 0) continue;
            const double kk = static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1;
            const double br = std::sqrt(1.0 + kk);
            c.entries.push_back(
                {{k0, k1}, std::pow(br, -dim) * std::pow(std::log(br), -(1.0 + delta) / q)});
        }
    }
    detail::sort_entries(c);
    return c;
}

// a_k = 1 for ||k||_inf <= N.
inline LatticeCoefficients family_constant(long long cutoff, int dim = 1) {
    if (cutoff < 0) throw std::invalid_argument("constant family: cutoff must be >= 0");
    LatticeCoefficients c{dim, "constant", {}};
    const int lim = static_cast<int>(cutoff);
    const int lo1 = dim == 2 ? -lim : 0;
    const int hi1 = dim == 2 ? lim : 0;
    for (int k0 = -lim; k0 <= lim; ++k0) {
        for (int k1 = lo1; k1 <= hi1; ++k1) c.entries.push_back({{k0, k1}, cplx{1.0, 0.0}});
    }
    detail::sort_entries(c);
    return c;
}

// a_k = <k>^{theta} for ||k||_inf <= N (the negative-weight blow-up family).
inline LatticeCoefficients family_bracket_power(double theta, long long cutoff, int dim = 1) {
    LatticeCoefficients c{dim, "bracket-power", {}};
    const int lim = static_cast<int>(cutoff);
    const int lo1 = dim == 2 ? -lim : 0;
    const int hi1 = dim == 2 ? lim : 0;
    for (int k0 = -lim; k0 <= lim; ++k0) {
        for (int k1 = lo1; k1 <= hi1; ++k1) {
            const double kk = static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1;
            c.entries.push_back({{k0, k1}, std::pow(1.0 + kk, 0.5 * theta)});
        }
    }
    detail::sort_entries(c);
    return c;
}

// a_k = (k log(2+k))^{-1} on the 1-D ray; summable in no l_1 sense as N grows.
inline LatticeCoefficients family_harmonic_log(long long cutoff) {
    if (cutoff < 1) throw std::invalid_argument("harmonic-log family: cutoff must be >= 1");
    LatticeCoefficients c{1, "harmonic-log", {}};
    for (long long k = 1; k <= cutoff; ++k) {
        const double kd = static_cast<double>(k);
        c.entries.push_back({{static_cast<int>(k), 0}, 1.0 / (kd * std::log(2.0 + kd))});
    }
    return c;
}

// Name-addressable dispatcher used by the CLI.
inline LatticeCoefficients coefficient_family(const std::string& tag, double q, double delta,
                                              long long cutoff, int dim) {
    if (tag == "single-mode") return family_single_mode({static_cast<int>(cutoff), 0}, dim);
    if (tag == "power") return family_power(q, cutoff);
    if (tag == "log-power") return family_log_power(q, delta, cutoff, dim);
    if (tag == "constant") return family_constant(cutoff, dim);
    if (tag == "bracket-power") return family_bracket_power(delta, cutoff, dim);
    if (tag == "harmonic-log") return family_harmonic_log(cutoff);
    throw std::invalid_argument("unknown coefficient family: " + tag);
}

// --- closed-form oracles ----------------------------------------------------

// || f ||* = psi_Lp * ( sum_k |a_k <k>^s|^q )^{1/q}, sup for q = inf.
inline OracleNorm oracle_lattice_norm(const LatticeCoefficients& coeffs, double psi_lp,
                                      const SpaceParams& params) {
    const double s = params.s.to_double();
    double value = 0.0;
    if (params.q.is_infinite()) {
        for (const auto& [k, a] : coeffs.entries) {
            value = std::max(value, std::abs(a) * bracket_weight(k, params.dim, s));
        }
    } else {
        const double q = params.q.to_double();
        CompensatedSum acc;
        for (const auto& [k, a] : coeffs.entries) {
            acc.add(std::pow(std::abs(a) * bracket_weight(k, params.dim, s), q));
        }
        value = std::pow(acc.result(), 1.0 / q);
    }
    return {psi_lp * value, "psi_lp * weighted-lq(coefficients)"};
}

inline std::vector<std::pair<LatticePoint, cplx>> convolve_coefficients(
    const LatticeCoefficients& c1, const LatticeCoefficients& c2) {
    std::map<LatticePoint, cplx> conv;
    for (const auto& [k, a] : c1.entries) {
        for (const auto& [l, b] : c2.entries) {
            conv[{k[0] + l[0], k[1] + l[1]}] += a * b;
        }
    }
    return {conv.begin(), conv.end()};
}

// || f g ||* = psi2_Lp * ( sum_m | sum_k a_k b_{m-k} |^q <m>^{sq} )^{1/q}.
// Valid when supp FT(psi) sits inside (-eps, eps)^n with eps < 1/4.
inline OracleNorm oracle_product_norm(const LatticeCoefficients& c1, const LatticeCoefficients& c2,
                                      double psi2_lp, const SpaceParams& params, double eps) {
    if (!(eps < 0.25)) throw std::invalid_argument("product oracle: needs eps < 1/4");
    if (c1.dim != c2.dim) throw std::invalid_argument("product oracle: dimension mismatch");
    const auto conv = convolve_coefficients(c1, c2);
    const double s = params.s.to_double();
    double value = 0.0;
    if (params.q.is_infinite()) {
        for (const auto& [m, c] : conv) {
            value = std::max(value, std::abs(c) * bracket_weight(m, params.dim, s));
        }
    } else {
        const double q = params.q.to_double();
        CompensatedSum acc;
        for (const auto& [m, c] : conv) {
            acc.add(std::pow(std::abs(c) * bracket_weight(m, params.dim, s), q));
        }
        value = std::pow(acc.result(), 1.0 / q);
    }
    return {psi2_lp * value, "psi2_lp * weighted-lq(coefficient convolution)"};
}

// --- simple generators ------------------------------------------------------

inline SampledFunction make_gaussian(const GridSpec& grid, double width = 1.0) {
    if (width <= 0.0) throw std::invalid_argument("gaussian: width must be positive");
    SampledFunction f(grid);
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        const auto c = grid.unflatten(idx);
        double r2 = grid.x_coord(c[0]) * grid.x_coord(c[0]);
        if (grid.dim == 2) r2 += grid.x_coord(c[1]) * grid.x_coord(c[1]);
        f.values[idx] = std::exp(-r2 / (2.0 * width * width));
    }
    return f;
}

inline SampledFunction make_gaussian_window(const GridSpec& grid, double width = 1.0) {
    SampledFunction w = make_gaussian(grid, width);
    const double n2 = lp_norm(w, ExtendedExponent(2));
    for (cplx& v : w.values) v /= n2;
    return w;
}

// Discrete unit-mass impulse: 1/dx^n at the origin node.
inline SampledFunction make_impulse(const GridSpec& grid) {
    SampledFunction f(grid);
    f.at(grid.center(), grid.dim == 2 ? grid.center() : 0) = std::pow(grid.dx(), -grid.dim);
    return f;
}

}  // namespace modspace
