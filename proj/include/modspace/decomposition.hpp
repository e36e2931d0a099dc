#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "modspace/fft.hpp"
#include "modspace/grid.hpp"

namespace modspace {

// Lattice point in Z^n, second coordinate unused when n = 1.
using LatticePoint = std::array<int, 2>;

namespace detail {

inline double exp_step(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

// C^infinity even bump: 1 on [-plateau, plateau], 0 outside (-support, support),
// exponential smoothstep in between.
inline double bump_profile(double t, double plateau, double support) {
    t = std::abs(t);
    if (t <= plateau) return 1.0;
    if (t >= support) return 0.0;
    const double w = support - plateau;
    const double up = exp_step((support - t) / w);
    const double down = exp_step((t - plateau) / w);
    return up / (up + down);
}

}  // namespace detail

// Precomputed partition-of-unity symbols sigma_k on the frequency grid for
// lattice points k in [-k_max, k_max]^n.
//
// The generating bump rho is a tensor product of one 1-D profile with
// plateau [-1/2, 1/2] and support [-0.6, 0.6]. Keeping the support well
// inside [-1, 1] makes sigma_k identically 1 across any spectral bump of
// half-width < 0.4 centered at k, which is what turns the lattice test
// families into exact eigenfunctions of the decomposition operators.
// sigma_k(xi) = rho(xi - k) / sum_j rho(xi - j); the sum telescopes per axis,
// so the whole bank reduces to a single 1-D table indexed by the integer
// node offset from the lattice point. sigma_k(xi) = sigma_0(xi - k) holds
// exactly by construction.
struct DecompositionBank {
    GridSpec grid;
    int k_max;
    double plateau;
    double support;
    std::vector<double> axis_table;  // sigma^(1d) at node offsets [-win, win]
    int win;                         // last node offset with a stored value

    double axis_value(long long node_offset) const {
        if (node_offset < -win || node_offset > win) return 0.0;
        return axis_table[static_cast<std::size_t>(node_offset + win)];
    }

    // sigma_k at the frequency node with per-axis indices (i0, i1).
    double symbol(const LatticePoint& k, int i0, int i1 = 0) const {
        const int half = grid.samples / 2;
        const long long M = grid.period_mul;
        double v = axis_value(static_cast<long long>(i0 - half) - k[0] * M);
        if (grid.dim == 2 && v != 0.0) v *= axis_value(static_cast<long long>(i1 - half) - k[1] * M);
        return v;
    }

    bool contains(const LatticePoint& k) const {
        for (int a = 0; a < grid.dim; ++a) {
            if (k[a] < -k_max || k[a] > k_max) return false;
        }
        return true;
    }

    // Per-axis frequency-index window [lo, hi] of supp sigma_k.
    std::pair<int, int> axis_window(int k_axis) const {
        const int half = grid.samples / 2;
        const int c = k_axis * grid.period_mul + half;
        return {std::max(0, c - win), std::min(grid.samples - 1, c + win)};
    }
};

inline DecompositionBank build_bank(const GridSpec& grid, int k_max, double plateau = 0.5,
                                    double support = 0.6) {
    if (k_max < 1) throw std::invalid_argument("bank: k_max must be positive");
    if (!(0.0 < plateau && plateau < support && support <= 1.0)) {
        throw std::invalid_argument("bank: need 0 < plateau < support <= 1");
    }
    if (!(plateau >= 0.5)) throw std::invalid_argument("bank: plateau must cover [-1/2, 1/2]");
    if (!grid.admits_lattice(k_max)) {
        throw std::invalid_argument("bank: anti-aliasing guard violated, need k_max + 2 < N/(2M)");
    }
    DecompositionBank bank{grid, k_max, plateau, support, {}, 0};
    const int M = grid.period_mul;
    bank.win = static_cast<int>(std::ceil(support * M));
    bank.axis_table.assign(2 * bank.win + 1, 0.0);
    for (int dj = -bank.win; dj <= bank.win; ++dj) {
        const double t = static_cast<double>(dj) / M;
        const double num = detail::bump_profile(t, plateau, support);
        if (num == 0.0) continue;
        const double denom = detail::bump_profile(t - 1.0, plateau, support) + num +
                             detail::bump_profile(t + 1.0, plateau, support);
        bank.axis_table[static_cast<std::size_t>(dj + bank.win)] = num / denom;
    }
    return bank;
}

// Spectrum localized to supp sigma_k: values sigma_k(xi) * F(xi).
inline SpectralFunction masked_spectrum(const DecompositionBank& bank, const LatticePoint& k,
                                        const SpectralFunction& F) {
    if (F.grid != bank.grid) throw std::invalid_argument("masked_spectrum: grid mismatch");
    if (!bank.contains(k)) throw std::invalid_argument("masked_spectrum: k outside bank");
    SpectralFunction out(F.grid);
    const auto [lo0, hi0] = bank.axis_window(k[0]);
    if (bank.grid.dim == 1) {
        for (int i = lo0; i <= hi0; ++i) out.values[i] = bank.symbol(k, i) * F.values[i];
        return out;
    }
    const auto [lo1, hi1] = bank.axis_window(k[1]);
    for (int i0 = lo0; i0 <= hi0; ++i0) {
        for (int i1 = lo1; i1 <= hi1; ++i1) {
            const std::size_t idx = bank.grid.flatten(i0, i1);
            out.values[idx] = bank.symbol(k, i0, i1) * F.values[idx];
        }
    }
    return out;
}

// True when sigma_k * F is identically zero; lets norm loops skip the FFT.
inline bool masked_spectrum_vanishes(const DecompositionBank& bank, const LatticePoint& k,
                                     const SpectralFunction& F) {
    const auto [lo0, hi0] = bank.axis_window(k[0]);
    if (bank.grid.dim == 1) {
        for (int i = lo0; i <= hi0; ++i) {
            if (F.values[i] != cplx{0.0, 0.0} && bank.symbol(k, i) != 0.0) return false;
        }
        return true;
    }
    const auto [lo1, hi1] = bank.axis_window(k[1]);
    for (int i0 = lo0; i0 <= hi0; ++i0) {
        for (int i1 = lo1; i1 <= hi1; ++i1) {
            if (F.values[bank.grid.flatten(i0, i1)] != cplx{0.0, 0.0} &&
                bank.symbol(k, i0, i1) != 0.0) {
                return false;
            }
        }
    }
    return true;
}

// Frequency-uniform decomposition operator: box_k f = invFT[sigma_k * FT f].
inline SampledFunction box_op(const DecompositionBank& bank, const LatticePoint& k,
                              const SampledFunction& f) {
    return inverse_ft(masked_spectrum(bank, k, forward_ft(f)));
}

// Dyadic low-pass: spectrum multiplied by psi(2^{-j} xi) where psi is the
// radial profile with plateau [-1, 1] and support [-3/2, 3/2].
inline SampledFunction dyadic_lowpass(const SampledFunction& f, int level) {
    if (level < 0) throw std::invalid_argument("dyadic_lowpass: level must be >= 0");
    SpectralFunction F = forward_ft(f);
    const GridSpec& g = F.grid;
    const double scale = std::ldexp(1.0, -level);  // 2^{-level}
    for (std::size_t idx = 0; idx < F.values.size(); ++idx) {
        const auto c = g.unflatten(idx);
        double r2 = g.xi_coord(c[0]) * g.xi_coord(c[0]);
        if (g.dim == 2) r2 += g.xi_coord(c[1]) * g.xi_coord(c[1]);
        F.values[idx] *= detail::bump_profile(std::sqrt(r2) * scale, 1.0, 1.5);
    }
    return inverse_ft(F);
}

// Grid L1 norm of the dyadic low-pass kernel times (2*pi)^{-n/2}; the
// smoothing S^j contracts every modulation norm by at most this factor.
inline double dyadic_kernel_l1(const GridSpec& grid, int level) {
    SpectralFunction F(grid);
    const double scale = std::ldexp(1.0, -level);
    for (std::size_t idx = 0; idx < F.values.size(); ++idx) {
        const auto c = grid.unflatten(idx);
        double r2 = grid.xi_coord(c[0]) * grid.xi_coord(c[0]);
        if (grid.dim == 2) r2 += grid.xi_coord(c[1]) * grid.xi_coord(c[1]);
        F.values[idx] = detail::bump_profile(std::sqrt(r2) * scale, 1.0, 1.5);
    }
    return std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim) *
           lp_norm(inverse_ft(F), ExtendedExponent(1));
}

// Phase-space cutoffs. P_R is the closed central cube {|xi_j| <= R}; the 2^n
// open sectors P_R(eps) carry the rest, sector eps taking sign (-1)^{eps_j}
// per axis. Nodes with xi_j = 0 count as positive sign, so the central cube
// and the sectors partition the frequency grid exactly.
struct SectorMask {
    enum class Kind { central, sector };
    GridSpec grid;
    Kind kind;
    double radius;
    std::array<int, 2> eps{0, 0};
    std::vector<std::uint8_t> values;

    bool member(std::size_t idx) const { return values[idx] != 0; }
};

inline SectorMask make_central_mask(const GridSpec& grid, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("mask: radius must be positive");
    SectorMask m{grid, SectorMask::Kind::central, radius, {0, 0}, {}};
    m.values.assign(grid.total(), 0);
    for (std::size_t idx = 0; idx < m.values.size(); ++idx) {
        const auto c = grid.unflatten(idx);
        bool inside = std::abs(grid.xi_coord(c[0])) <= radius;
        if (grid.dim == 2) inside = inside && std::abs(grid.xi_coord(c[1])) <= radius;
        m.values[idx] = inside ? 1 : 0;
    }
    return m;
}

inline SectorMask make_sector_mask(const GridSpec& grid, double radius, std::array<int, 2> eps) {
    if (radius <= 0.0) throw std::invalid_argument("mask: radius must be positive");
    for (int a = 0; a < grid.dim; ++a) {
        if (eps[a] != 0 && eps[a] != 1) throw std::invalid_argument("mask: eps entries must be 0/1");
    }
    SectorMask m{grid, SectorMask::Kind::sector, radius, eps, {}};
    m.values.assign(grid.total(), 0);
    for (std::size_t idx = 0; idx < m.values.size(); ++idx) {
        const auto c = grid.unflatten(idx);
        bool in_cube = true;
        bool sign_ok = true;
        for (int a = 0; a < grid.dim; ++a) {
            const double xi = grid.xi_coord(c[a]);
            if (std::abs(xi) > radius) in_cube = false;
            const bool negative = xi < 0.0;
            if (negative != (eps[a] == 1)) sign_ok = false;
        }
        m.values[idx] = (!in_cube && sign_ok) ? 1 : 0;
    }
    return m;
}

// Spectrum multiplied by the 0/1 indicator; idempotent.
inline SampledFunction sector_project(const SampledFunction& f, const SectorMask& mask) {
    if (f.grid != mask.grid) throw std::invalid_argument("sector_project: grid mismatch");
    SpectralFunction F = forward_ft(f);
    for (std::size_t idx = 0; idx < F.values.size(); ++idx) {
        if (!mask.member(idx)) F.values[idx] = cplx{0.0, 0.0};
    }
    return inverse_ft(F);
}

}  // namespace modspace
