#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "modspace/calculus.hpp"
#include "modspace/decomposition.hpp"
#include "modspace/modnorm.hpp"
#include "modspace/testbed.hpp"

namespace modspace {

// --- regression utilities -----------------------------------------------------

struct SlopeFit {
    std::vector<std::pair<double, double>> points;  // (log x, log y)
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms residual in log units
    bool conclusive = true; // residual gate at 0.2 log units
};

// Least-squares line through (log x, log y).
inline SlopeFit fit_log_slope(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 4) throw std::invalid_argument("fit_log_slope: needs >= 4 points");
    SlopeFit fit;
    for (const auto& [x, y] : xy) {
        if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("fit_log_slope: values must be positive");
        fit.points.emplace_back(std::log(x), std::log(y));
    }
    const double n = static_cast<double>(fit.points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : fit.points) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::domain_error("fit_log_slope: degenerate abscissae");
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0.0;
    for (const auto& [lx, ly] : fit.points) {
        const double r = ly - (fit.slope * lx + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    fit.conclusive = fit.residual <= 0.2;
    return fit;
}

// One measured point of an experiment, with everything needed to re-run it.
struct ExperimentRecord {
    std::string experiment;
    std::string family;
    std::map<std::string, double> inputs;
    std::map<std::string, double> measured;
    std::map<std::string, double> predicted;
    double tail = 0.0;
    double duration_ms = 0.0;  // informational; excluded from canonical output
};

// Smallest admissible power-of-two grid for lattice content up to k_needed.
inline GridSpec sweep_grid(int dim, int k_needed, int period_mul) {
    int n = 8;
    const double need = 2.0 * period_mul * (k_needed + 3);
    while (n < need) n <<= 1;
    return GridSpec(dim, period_mul, n);
}

// --- finite product identity ---------------------------------------------------

// Residual of  prod a_i - 1 = sum over nonempty subsets prod (a_j - 1),
// checked by direct subset enumeration.
inline double check_product_identity(const std::vector<cplx>& values) {
    if (values.size() > 12) throw std::invalid_argument("product identity: at most 12 factors");
    cplx prod{1.0, 0.0};
    for (const cplx& a : values) prod *= a;
    CompensatedComplexSum rhs;
    const std::size_t n = values.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        cplx term{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) term *= values[i] - cplx{1.0, 0.0};
        }
        rhs.add(term);
    }
    return std::abs(prod - cplx{1.0, 0.0} - rhs.result());
}

// --- STFT product identity -------------------------------------------------------

// Compares V_{w1 w2}(f g)(x, xi) against the frequency convolution
// (2 pi)^{-n/2} Int V_{w1} f(x, xi - eta) V_{w2} g(x, eta) d eta
// on a coarse (x, xi) subgrid; the eta integral is truncated at the grid edge.
// Returns the maximum residual relative to the largest sampled |lhs|.
inline double run_toft_identity(const SampledFunction& f, const SampledFunction& g,
                                const SampledFunction& w1, const SampledFunction& w2,
                                int coarse = 16) {
    const GridSpec& grid = f.grid;
    if (g.grid != grid || w1.grid != grid || w2.grid != grid) {
        throw std::invalid_argument("toft identity: grid mismatch");
    }
    const SampledFunction fg = pointwise_product(f, g);
    const SampledFunction w12 = pointwise_product(w1, w2);
    const int n = grid.samples;
    const int step = std::max(1, n / coarse);
    const double conv_scale =
        std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim) * std::pow(grid.dxi(), grid.dim);

    double max_abs_lhs = 0.0;
    double max_err = 0.0;
    std::vector<cplx> lhs, v1, v2;
    if (grid.dim == 1) {
        for (int x = 0; x < n; x += step) {
            detail::stft_slice(fg, w12, x, 0, lhs);
            detail::stft_slice(f, w1, x, 0, v1);
            detail::stft_slice(g, w2, x, 0, v2);
            for (int xi = 0; xi < n; xi += step) {
                CompensatedComplexSum acc;
                for (int eta = 0; eta < n; ++eta) {
                    const int j = xi - eta + grid.center();
                    if (j < 0 || j >= n) continue;
                    acc.add(v1[j] * v2[eta]);
                }
                const cplx rhs = conv_scale * acc.result();
                max_abs_lhs = std::max(max_abs_lhs, std::abs(lhs[xi]));
                max_err = std::max(max_err, std::abs(lhs[xi] - rhs));
            }
        }
    } else {
        for (int x0 = 0; x0 < n; x0 += step) {
            for (int x1 = 0; x1 < n; x1 += step) {
                detail::stft_slice(fg, w12, x0, x1, lhs);
                detail::stft_slice(f, w1, x0, x1, v1);
                detail::stft_slice(g, w2, x0, x1, v2);
                for (int a = 0; a < n; a += step) {
                    for (int b = 0; b < n; b += step) {
                        CompensatedComplexSum acc;
                        for (int e0 = 0; e0 < n; ++e0) {
                            const int j0 = a - e0 + grid.center();
                            if (j0 < 0 || j0 >= n) continue;
                            for (int e1 = 0; e1 < n; ++e1) {
                                const int j1 = b - e1 + grid.center();
                                if (j1 < 0 || j1 >= n) continue;
                                acc.add(v1[grid.flatten(j0, j1)] * v2[grid.flatten(e0, e1)]);
                            }
                        }
                        const cplx rhs = conv_scale * acc.result();
                        const cplx l = lhs[grid.flatten(a, b)];
                        max_abs_lhs = std::max(max_abs_lhs, std::abs(l));
                        max_err = std::max(max_err, std::abs(l - rhs));
                    }
                }
            }
        }
    }
    if (max_abs_lhs == 0.0) return 0.0;
    return max_err / max_abs_lhs;
}

// --- bilinear estimate ------------------------------------------------------------

struct BilinearResult {
    std::vector<ExperimentRecord> records;
    double max_ratio = 0.0;
    // Empirical constant against the matched-window value 2^s; the excess is
    // the single-window bookkeeping deviation (left norm generated by the
    // squared window in the matched derivation).
    double ratio_vs_two_pow_s = 0.0;
};

// Ratio ||f g|| / (||f||_{M^0_{inf,1}} ||g|| + ||f|| ||g||_{M^0_{inf,1}}) over a
// corpus; the summary maximum is the empirical bilinear constant.
inline BilinearResult run_bilinear(const std::vector<SampledFunction>& corpus,
                                   const SpaceParams& params, const DecompositionBank& bank) {
    if (embeds_into_Linfty(params).status != Status::holds) {
        throw std::invalid_argument("run_bilinear: params must embed into L_inf");
    }
    const SpaceParams sup_params(Rational(0), ExtendedExponent::infinity(),
                                 ExtendedExponent(Rational(1)), params.dim);
    BilinearResult out;
    std::vector<double> norm_s, norm_w;
    for (const auto& f : corpus) {
        norm_s.push_back(mod_norm_decomp(f, params, bank).value);
        norm_w.push_back(mod_norm_decomp(f, sup_params, bank).value);
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = i; j < corpus.size(); ++j) {
            const double lhs =
                mod_norm_decomp(pointwise_product(corpus[i], corpus[j]), params, bank).value;
            const double rhs = norm_w[i] * norm_s[j] + norm_s[i] * norm_w[j];
            if (rhs == 0.0) continue;
            const double ratio = lhs / rhs;
            out.max_ratio = std::max(out.max_ratio, ratio);
            ExperimentRecord rec;
            rec.experiment = "bilinear";
            rec.family = "pair";
            rec.inputs = {{"i", static_cast<double>(i)}, {"j", static_cast<double>(j)}};
            rec.measured = {{"lhs", lhs}, {"rhs", rhs}, {"ratio", ratio}};
            out.records.push_back(std::move(rec));
        }
    }
    out.ratio_vs_two_pow_s = out.max_ratio / std::pow(2.0, params.s.to_double());
    return out;
}

// --- counterexample growth sweeps ---------------------------------------------------

struct CounterexampleConfig {
    std::string regime;  // "power" | "constant" | "bracket-power"
    SpaceParams params;
    std::vector<long long> cutoffs;
    double eps = 0.2;
    int period_mul = 24;
    double cross_gap_limit = 0.03;
};

struct CounterexampleResult {
    SlopeFit product_fit;  // log ||f_N f_N|| against log N
    SlopeFit squared_fit;  // log ||f_N||^2 against log N
    std::vector<ExperimentRecord> records;
    double max_cross_gap = 0.0;
    bool cross_check_ok = true;
};

// Blow-up families: the lattice-modulated test functions whose product norms
// grow with a known exponent while the squared norms stay small.
inline CounterexampleResult run_counterexample_sweep(const CounterexampleConfig& cfg) {
    const SpaceParams& params = cfg.params;
    if (params.dim != 1) throw std::invalid_argument("counterexample sweep: 1-D regimes only");
    if (cfg.cutoffs.size() < 4) throw std::invalid_argument("counterexample sweep: needs >= 4 cutoffs");
    const bool q_inf = params.q.is_infinite();
    if (cfg.regime == "power") {
        if (!(params.s == Rational(0)) || q_inf || !(params.q > ExtendedExponent(Rational(1)))) {
            throw std::invalid_argument("power regime needs s = 0 and 1 < q < inf");
        }
    } else if (cfg.regime == "constant") {
        if (!q_inf || !(params.s > Rational(0)) || !(params.s < Rational(params.dim))) {
            throw std::invalid_argument("constant regime needs q = inf and 0 < s < n");
        }
    } else if (cfg.regime == "bracket-power") {
        if (!(params.s < Rational(0))) throw std::invalid_argument("bracket-power regime needs s < 0");
    } else {
        throw std::invalid_argument("unknown counterexample regime: " + cfg.regime);
    }

    CounterexampleResult out;
    std::vector<std::pair<double, double>> prod_pts, sq_pts;
    for (long long cutoff : cfg.cutoffs) {
        const auto t_start = std::chrono::steady_clock::now();
        LatticeCoefficients coeffs;
        if (cfg.regime == "power") {
            coeffs = family_power(params.q.to_double(), cutoff);
        } else if (cfg.regime == "constant") {
            coeffs = family_constant(cutoff, 1);
        } else {
            coeffs = family_bracket_power(2.0 * std::abs(params.s.to_double()), cutoff, 1);
        }
        const int k_needed = static_cast<int>(2 * cutoff + 2);
        const GridSpec grid = sweep_grid(1, k_needed, cfg.period_mul);
        const DecompositionBank bank = build_bank(grid, k_needed);
        const SampledFunction psi = make_band_limited_psi(grid, cfg.eps);
        const SampledFunction f = make_lattice_modulated(psi, coeffs);
        const SampledFunction ff = pointwise_product(f, f);

        const NormReport norm_f = mod_norm_decomp(f, params, bank);
        const NormReport norm_ff = mod_norm_decomp(ff, params, bank);
        const double psi_lp = lp_norm(psi, params.p);
        const double psi2_lp = lp_norm(pointwise_product(psi, psi), params.p);
        const OracleNorm oracle_f = oracle_lattice_norm(coeffs, psi_lp, params);
        const OracleNorm oracle_ff = oracle_product_norm(coeffs, coeffs, psi2_lp, params, cfg.eps);

        const double gap_f = std::abs(norm_f.value - oracle_f.value) / oracle_f.value;
        const double gap_ff = std::abs(norm_ff.value - oracle_ff.value) / oracle_ff.value;
        out.max_cross_gap = std::max({out.max_cross_gap, gap_f, gap_ff});

        ExperimentRecord rec;
        rec.experiment = "counterexample-" + cfg.regime;
        rec.family = coeffs.family;
        rec.inputs = {{"cutoff", static_cast<double>(cutoff)},
                      {"M", static_cast<double>(cfg.period_mul)},
                      {"N_grid", static_cast<double>(grid.samples)},
                      {"k_max", static_cast<double>(bank.k_max)},
                      {"eps", cfg.eps}};
        rec.measured = {{"norm_f", norm_f.value},
                        {"norm_ff", norm_ff.value},
                        {"norm_f_squared", norm_f.value * norm_f.value},
                        {"gap_f", gap_f},
                        {"gap_ff", gap_ff}};
        rec.predicted = {{"oracle_f", oracle_f.value}, {"oracle_ff", oracle_ff.value}};
        rec.tail = std::max(norm_f.tail, norm_ff.tail);
        rec.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
                .count();
        out.records.push_back(std::move(rec));

        prod_pts.emplace_back(static_cast<double>(cutoff), norm_ff.value);
        sq_pts.emplace_back(static_cast<double>(cutoff), norm_f.value * norm_f.value);
    }
    out.product_fit = fit_log_slope(prod_pts);
    out.squared_fit = fit_log_slope(sq_pts);
    out.cross_check_ok = out.max_cross_gap <= cfg.cross_gap_limit;
    return out;
}

// --- sector decay ---------------------------------------------------------------------

struct SectorDecayConfig {
    SpaceParams params;
    std::vector<double> radii;  // each > 2
    int period_mul = 24;
    double eps = 0.2;
};

struct SectorDecayResult {
    SlopeFit fit;         // log c(R) against log(R - 2)
    SlopeFit fit_radius;  // diagnostic: log c(R) against log R
    std::vector<ExperimentRecord> records;
};

// Empirical product constant for pairs with spectrum in one open sector:
// c(R) = max over the corpus of ||f g|| / (||f|| ||g||). The corpus holds a
// near-extremal block family (weights <k>^{-s} over [R+1, 2R]) plus single
// modes and a short constant block.
inline SectorDecayResult run_sector_decay(const SectorDecayConfig& cfg) {
    const SpaceParams& params = cfg.params;
    if (params.dim != 1) throw std::invalid_argument("sector decay: 1-D corpus");
    if (!(params.s > n_over_conj(params.q, params.dim))) {
        throw std::invalid_argument("sector decay: needs s > n/q'");
    }
    if (cfg.radii.size() < 4) throw std::invalid_argument("sector decay: needs >= 4 radii");
    SectorDecayResult out;
    const double s = params.s.to_double();
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<double, double>> pts_radius;
    for (double R : cfg.radii) {
        const auto t_start = std::chrono::steady_clock::now();
        if (!(R > 2.0)) throw std::invalid_argument("sector decay: radius must exceed 2");
        const int base = static_cast<int>(std::floor(R)) + 1;
        const int top = 2 * static_cast<int>(std::floor(R));
        // products reach twice the largest corpus mode; keep the outermost
        // bank shell strictly beyond that
        const int k_needed = std::max(4 * static_cast<int>(std::floor(R)),
                                      2 * static_cast<int>(std::floor(R)) + 8) + 2;
        const GridSpec grid = sweep_grid(1, k_needed, cfg.period_mul);
        const DecompositionBank bank = build_bank(grid, k_needed);
        const SampledFunction psi = make_band_limited_psi(grid, cfg.eps);
        const SectorMask sector = make_sector_mask(grid, R, {0, 0});

        std::vector<LatticeCoefficients> families;
        families.push_back(family_single_mode({base, 0}));
        LatticeCoefficients block{1, "sector-block", {}};
        for (int k = base; k <= top; ++k) {
            block.entries.push_back({{k, 0}, std::pow(1.0 + static_cast<double>(k) * k, -0.5 * s)});
        }
        families.push_back(block);
        LatticeCoefficients flat{1, "sector-flat", {}};
        for (int k = base; k <= base + 3; ++k) flat.entries.push_back({{k, 0}, cplx{1.0, 0.0}});
        families.push_back(flat);

        std::vector<SampledFunction> corpus;
        for (const auto& fam : families) {
            SampledFunction f = sector_project(make_lattice_modulated(psi, fam), sector);
            if (max_abs(f) == 0.0) throw std::runtime_error("sector decay: empty corpus after projection");
            corpus.push_back(std::move(f));
        }
        double c_R = 0.0;
        std::vector<double> norms;
        for (const auto& f : corpus) norms.push_back(mod_norm_decomp(f, params, bank).value);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            for (std::size_t j = i; j < corpus.size(); ++j) {
                const double prod =
                    mod_norm_decomp(pointwise_product(corpus[i], corpus[j]), params, bank).value;
                c_R = std::max(c_R, prod / (norms[i] * norms[j]));
            }
        }
        pts.emplace_back(R - 2.0, c_R);
        pts_radius.emplace_back(R, c_R);
        ExperimentRecord rec;
        rec.experiment = "sector-decay";
        rec.family = "sector-corpus";
        rec.inputs = {{"R", R}, {"M", static_cast<double>(cfg.period_mul)},
                      {"N_grid", static_cast<double>(grid.samples)},
                      {"k_max", static_cast<double>(bank.k_max)},
                      {"eps", cfg.eps}};
        rec.measured = {{"c_R", c_R}};
        rec.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
                .count();
        out.records.push_back(std::move(rec));
    }
    out.fit = fit_log_slope(pts);
    out.fit_radius = fit_log_slope(pts_radius);
    return out;
}

// --- power growth -----------------------------------------------------------------------

struct PowerGrowthResult {
    std::vector<ExperimentRecord> records;
    double fitted_slope = 0.0;      // slope of log ||g^m|| against m
    double relative_residual = 0.0; // rms residual over the value range
    double slope_bound = 0.0;       // log(c3 c4 ||g||) from measured constants
};

// Norms of powers g^m under an algebra-regime parameter set; log ||g^m|| is
// asymptotically linear in m with slope at most log(c3 c4 ||g||), the
// constants taken from the measured bilinear ratio and embedding ratio.
inline PowerGrowthResult run_power_growth(const SampledFunction& g, const SpaceParams& params,
                                          const std::vector<int>& powers,
                                          const DecompositionBank& bank, double bilinear_constant) {
    if (is_algebra(params).status != Status::holds) {
        throw std::invalid_argument("run_power_growth: params must satisfy the algebra property");
    }
    if (powers.size() < 3) throw std::invalid_argument("run_power_growth: needs >= 3 powers");
    const SpaceParams sup_params(Rational(0), ExtendedExponent::infinity(),
                                 ExtendedExponent(Rational(1)), params.dim);
    const double g_norm = mod_norm_decomp(g, params, bank).value;
    const double c4 = mod_norm_decomp(g, sup_params, bank).value / g_norm;
    PowerGrowthResult out;
    out.slope_bound = std::log(std::max(1.0, bilinear_constant) * std::max(c4, 1e-300) * g_norm);

    std::vector<double> ms, logs;
    SampledFunction power = g;
    int current = 1;
    for (int m : powers) {
        if (m < 1) throw std::invalid_argument("run_power_growth: powers must be >= 1");
        while (current < m) {
            power = pointwise_product(power, g);
            ++current;
        }
        const double norm = mod_norm_decomp(power, params, bank).value;
        ms.push_back(static_cast<double>(m));
        logs.push_back(std::log(norm));
        ExperimentRecord rec;
        rec.experiment = "power-growth";
        rec.inputs = {{"m", static_cast<double>(m)}};
        rec.measured = {{"norm", norm}, {"norm_root_m", std::pow(norm, 1.0 / m)}};
        out.records.push_back(std::move(rec));
    }
    // Linear fit of log ||g^m|| against m.
    const double n = static_cast<double>(ms.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        sx += ms[i];
        sy += logs[i];
        sxx += ms[i] * ms[i];
        sxy += ms[i] * logs[i];
    }
    const double det = n * sxx - sx * sx;
    out.fitted_slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0.0;
    double lo = logs.front(), hi = logs.front();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double r = logs[i] - (out.fitted_slope * ms[i] + intercept);
        rss += r * r;
        lo = std::min(lo, logs[i]);
        hi = std::max(hi, logs[i]);
    }
    const double range = std::max(hi - lo, 1e-12);
    out.relative_residual = std::sqrt(rss / n) / range;
    return out;
}

// --- exponential growth -------------------------------------------------------------------

struct ExpGrowthConfig {
    SpaceParams params;
    std::vector<double> lambdas;
    int k_max = 140;
    int period_mul = 24;
};

struct ExpGrowthResult {
    SlopeFit fit;  // large-lambda slope of log ||e^{i lambda u} - 1||
    std::vector<ExperimentRecord> records;
    double small_lambda_ratio = 0.0;  // || e^{i l u} - 1 || / (l ||u||) at the smallest l
};

// Measures || e^{i lambda u} - 1 ||_{M^s_{p,q}} over a lambda sweep; the
// large-lambda slope is fitted over the top half of the sweep.
inline ExpGrowthResult run_exp_growth(const SampledFunction& u, const ExpGrowthConfig& cfg) {
    const SpaceParams& params = cfg.params;
    if (params.p.is_infinite() || params.p == ExtendedExponent(Rational(1))) {
        throw std::invalid_argument("run_exp_growth: needs 1 < p < inf");
    }
    if (!(params.s > n_over_conj(params.q, params.dim))) {
        throw std::invalid_argument("run_exp_growth: needs s > n/q'");
    }
    double max_imag = 0.0;
    for (const cplx& v : u.values) max_imag = std::max(max_imag, std::abs(v.imag()));
    if (max_imag > 1e-12 * std::max(1.0, max_abs(u))) {
        throw std::invalid_argument("run_exp_growth: u must be real-valued");
    }
    if (cfg.lambdas.size() < 4) throw std::invalid_argument("run_exp_growth: needs >= 4 lambdas");

    const DecompositionBank bank = build_bank(u.grid, cfg.k_max);
    const double u_norm = mod_norm_decomp(u, params, bank).value;
    ExpGrowthResult out;
    std::vector<std::pair<double, double>> pts;
    for (double lam : cfg.lambdas) {
        const auto t_start = std::chrono::steady_clock::now();
        SampledFunction w(u.grid);
        for (std::size_t i = 0; i < w.values.size(); ++i) {
            w.values[i] = std::polar(1.0, lam * u.values[i].real()) - cplx{1.0, 0.0};
        }
        const NormReport norm = mod_norm_decomp(w, params, bank);
        pts.emplace_back(lam, norm.value);
        ExperimentRecord rec;
        rec.experiment = "exp-growth";
        rec.inputs = {{"lambda", lam}};
        rec.measured = {{"norm", norm.value}, {"norm_over_lambda_unorm", norm.value / (lam * u_norm)}};
        rec.tail = norm.tail;
        rec.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
                .count();
        out.records.push_back(std::move(rec));
    }
    out.small_lambda_ratio = pts.front().second / (pts.front().first * u_norm);
    const std::size_t half = pts.size() / 2;
    std::vector<std::pair<double, double>> top(pts.begin() + half, pts.end());
    while (top.size() < 4 && top.size() < pts.size()) {
        top.insert(top.begin(), pts[pts.size() - top.size() - 1]);
    }
    out.fit = fit_log_slope(top);
    return out;
}

// --- smoothed product limit ------------------------------------------------------------------

struct ProductLimitResult {
    std::vector<ExperimentRecord> records;  // one per level: increment norms
    double final_increment = 0.0;
    bool monotone = true;
    double product_norm = 0.0;
    double bound_ratio = 0.0;  // ||fg|| / (||f||_{M^{|s|}_{p1,1}} ||g||_{M^s_{p2,q}})
};

// Cauchy increments || S^{j+1}f S^{j+1}g - S^j f S^j g || of the smoothed
// products, plus the two-factor bound ratio for the limit product.
inline ProductLimitResult run_product_limit(const SampledFunction& f, const SampledFunction& g,
                                            const SpaceParams& target,
                                            const ExtendedExponent& p1, const ExtendedExponent& p2,
                                            const std::vector<int>& levels,
                                            const DecompositionBank& bank) {
    if (!(target.s <= Rational(0))) throw std::invalid_argument("product limit: needs s <= 0");
    if (levels.size() < 2) throw std::invalid_argument("product limit: needs >= 2 levels");
    ProductLimitResult out;
    std::vector<SampledFunction> smoothed_products;
    for (int j : levels) {
        smoothed_products.push_back(
            pointwise_product(dyadic_lowpass(f, j), dyadic_lowpass(g, j)));
    }
    // Converged increments are pure round-off spread over every shell; the
    // truncation guard is for truncated content, so it is off here. The final
    // product norm below runs with the normal guard.
    NormOptions inc_opts;
    inc_opts.tail_tolerance = std::numeric_limits<double>::infinity();
    std::vector<double> increments;
    for (std::size_t i = 0; i + 1 < smoothed_products.size(); ++i) {
        const double inc = mod_norm_decomp(subtract(smoothed_products[i + 1], smoothed_products[i]),
                                           target, bank, inc_opts)
                               .value;
        increments.push_back(inc);
        out.final_increment = inc;
        ExperimentRecord rec;
        rec.experiment = "product-limit";
        rec.inputs = {{"level", static_cast<double>(levels[i])}};
        rec.measured = {{"increment", inc}};
        out.records.push_back(std::move(rec));
    }
    out.product_norm = mod_norm_decomp(smoothed_products.back(), target, bank).value;
    // Monotone decrease is asserted above the round-off floor; increments of
    // fully resolved levels are pure noise and carry no ordering information.
    const double floor = 1e-12 * std::max(out.product_norm, 1e-300);
    for (std::size_t i = 0; i + 1 < increments.size(); ++i) {
        if (std::max(increments[i], increments[i + 1]) <= floor) continue;
        if (increments[i + 1] > increments[i] * (1.0 + 1e-9)) out.monotone = false;
    }
    const SpaceParams f_params(rational_abs(target.s), p1, ExtendedExponent(Rational(1)), target.dim);
    const SpaceParams g_params(target.s, p2, target.q, target.dim);
    const double denom =
        mod_norm_decomp(f, f_params, bank).value * mod_norm_decomp(g, g_params, bank).value;
    out.bound_ratio = denom > 0.0 ? out.product_norm / denom : 0.0;
    return out;
}

// --- band-limited dilation scaling -----------------------------------------------------------

// Ratio ||f_r||_{L_q} / ||f_r||_{L_p} for spectral-radius-r dilates of a fixed
// bump; the log-log slope recovers n (1/p - 1/q).
inline SlopeFit run_nikolskij(const GridSpec& grid, const ExtendedExponent& p,
                              const ExtendedExponent& q, const std::vector<double>& radii) {
    std::vector<std::pair<double, double>> pts;
    for (double r : radii) {
        if (!(r > 0.0) || r + 1.0 >= grid.xi_max()) {
            throw std::invalid_argument("nikolskij: radius outside grid guard");
        }
        SpectralFunction F(grid);
        for (std::size_t idx = 0; idx < F.values.size(); ++idx) {
            const auto c = grid.unflatten(idx);
            double v = detail::bump_profile(grid.xi_coord(c[0]) / r, 0.5, 1.0);
            if (grid.dim == 2) v *= detail::bump_profile(grid.xi_coord(c[1]) / r, 0.5, 1.0);
            F.values[idx] = v;
        }
        const SampledFunction f = inverse_ft(F);
        pts.emplace_back(r, lp_norm(f, q) / lp_norm(f, p));
    }
    return fit_log_slope(pts);
}

}  // namespace modspace
