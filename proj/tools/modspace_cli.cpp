// modspace: command-line workbench for weighted modulation-space numerics.
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 truncation abort.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modspace/calculus.hpp"
#include "modspace/harness.hpp"
#include "modspace/io.hpp"
#include "modspace/modnorm.hpp"
#include "modspace/testbed.hpp"

namespace ms = modspace;
using ms::json;

namespace {

const int kExitPass = 0;
const int kExitAssert = 1;
const int kExitUsage = 2;
const int kExitTruncation = 3;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    for (double v : parse_list(text)) out.push_back(static_cast<long long>(v));
    return out;
}

struct FamilyOptions {
    std::string family = "gaussian";
    std::string input_file;
    double width = 1.0;
    double eps = 0.2;
    double family_q = 2.0;
    double delta = 1.0;
    long long cutoff = 8;
    long long mode = 3;
    double amplitude = 1.0;
};

void add_family_flags(CLI::App* cmd, FamilyOptions& fam) {
    cmd->add_option("--family", fam.family,
                    "named family: gaussian|impulse|single-mode|power|log-power|constant|"
                    "bracket-power|harmonic-log");
    cmd->add_option("--input", fam.input_file, "sample table file (JSON header + samples)");
    cmd->add_option("--width", fam.width, "gaussian width");
    cmd->add_option("--eps", fam.eps, "spectral half-width of the bump window psi");
    cmd->add_option("--family-q", fam.family_q, "q parameter of the power/log-power family");
    cmd->add_option("--delta", fam.delta, "delta of log-power / exponent of bracket-power");
    cmd->add_option("--cutoff", fam.cutoff, "lattice cutoff N of the family");
    cmd->add_option("--mode", fam.mode, "mode index for single-mode");
    cmd->add_option("--amplitude", fam.amplitude, "scale factor applied to the function");
}

ms::SampledFunction build_function(const FamilyOptions& fam, const ms::GridSpec& grid) {
    if (!fam.input_file.empty()) return ms::read_samples(fam.input_file);
    ms::SampledFunction f(grid);
    if (fam.family == "gaussian") {
        f = ms::make_gaussian(grid, fam.width);
    } else if (fam.family == "impulse") {
        f = ms::make_impulse(grid);
    } else {
        const ms::SampledFunction psi = ms::make_band_limited_psi(grid, fam.eps);
        const ms::LatticeCoefficients coeffs = ms::coefficient_family(
            fam.family, fam.family_q, fam.delta, fam.family == "single-mode" ? fam.mode : fam.cutoff,
            grid.dim);
        f = ms::make_lattice_modulated(psi, coeffs);
    }
    if (fam.amplitude != 1.0) f = ms::scale(f, fam.amplitude);
    return f;
}

void emit(const json& j, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        ms::write_text_file(output_path, j.dump(2) + "\n");
    }
}

int exit_code_for(const ms::Verdict&) { return kExitPass; }

}  // namespace

namespace {

// Plain key=value configuration: entries become flags of the invoked
// subcommand unless the same flag was given explicitly, so the command line
// always overrides the file.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("config line is not key=value: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        }
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for weighted modulation-space norms, products and composition rules"};
    app.require_subcommand(1);
    static std::string config_sink;
    const auto with_config = [](CLI::App* sub) {
        sub->add_option("--config", config_sink,
                        "plain key=value configuration file; command-line flags override it");
        return sub;
    };

    std::string s_str = "0", p_str = "2", q_str = "2";
    int dim = 1;
    int grid_M = 24, grid_N = 0, k_max = 24;
    std::string output_path;
    double tail_tol = 1e-4;

    // ---- norm ----
    FamilyOptions norm_fam;
    std::string norm_method = "decomp";
    double window_width = 1.0;
    bool with_contributions = false;
    CLI::App* norm_cmd = with_config(app.add_subcommand("norm", "compute a modulation / Sobolev norm"));
    add_family_flags(norm_cmd, norm_fam);
    norm_cmd->add_option("--s", s_str, "weight exponent s (rational)");
    norm_cmd->add_option("--p", p_str, "inner exponent p (rational or inf)");
    norm_cmd->add_option("--q", q_str, "outer exponent q (rational or inf)");
    norm_cmd->add_option("--n", dim, "dimension (1 or 2)");
    norm_cmd->add_option("--M", grid_M, "grid period multiplier");
    norm_cmd->add_option("--N", grid_N, "grid samples per axis (0 = auto)");
    norm_cmd->add_option("--kmax", k_max, "decomposition bank radius");
    norm_cmd->add_option("--method", norm_method, "decomp | stft | sobolev");
    norm_cmd->add_option("--window-width", window_width, "stft window width");
    norm_cmd->add_flag("--contributions", with_contributions, "include per-piece contributions");
    norm_cmd->add_option("--tail-tol", tail_tol, "truncation guard threshold");
    norm_cmd->add_option("--output", output_path, "write JSON here instead of stdout");

    // ---- embed ----
    std::string e_s0 = "0", e_p0 = "2", e_q0 = "2", e_s1 = "0", e_p1 = "2", e_q1 = "2";
    bool into_linfty = false;
    CLI::App* embed_cmd = with_config(app.add_subcommand("embed", "decide an embedding between two spaces"));
    embed_cmd->add_option("--s0", e_s0, "source weight")->required();
    embed_cmd->add_option("--p0", e_p0, "source p");
    embed_cmd->add_option("--q0", e_q0, "source q");
    embed_cmd->add_option("--s1", e_s1, "target weight");
    embed_cmd->add_option("--p1", e_p1, "target p");
    embed_cmd->add_option("--q1", e_q1, "target q");
    embed_cmd->add_option("--n", dim, "dimension");
    embed_cmd->add_flag("--linfty", into_linfty, "decide embedding into L_inf instead");
    embed_cmd->add_option("--output", output_path, "write JSON here instead of stdout");

    // ---- algebra ----
    int tm_power = 0;
    bool want_superposition = false;
    std::string alpha_str;
    CLI::App* algebra_cmd = with_config(app.add_subcommand("algebra", "algebra property and composition calculators"));
    algebra_cmd->add_option("--s", s_str, "weight s")->required();
    algebra_cmd->add_option("--p", p_str, "p");
    algebra_cmd->add_option("--q", q_str, "q");
    algebra_cmd->add_option("--n", dim, "dimension");
    algebra_cmd->add_option("--tm", tm_power, "also report t_m(s) for this m >= 2");
    algebra_cmd->add_flag("--superposition", want_superposition,
                          "also report the superposition growth/measure exponents and the Besov threshold");
    algebra_cmd->add_option("--alpha", alpha_str, "also decide the power-composition rule for u|u|^alpha");
    algebra_cmd->add_option("--output", output_path, "write JSON here instead of stdout");

    // ---- product ----
    std::string ps1 = "0", pp1 = "2", pq1 = "2", ps2 = "0", pp2 = "2", pq2 = "2", ps0 = "0",
                pp = "2", pq = "2";
    CLI::App* product_cmd = with_config(app.add_subcommand("product", "decide a product embedding"));
    product_cmd->add_option("--s1", ps1)->required();
    product_cmd->add_option("--p1", pp1);
    product_cmd->add_option("--q1", pq1);
    product_cmd->add_option("--s2", ps2)->required();
    product_cmd->add_option("--p2", pp2);
    product_cmd->add_option("--q2", pq2);
    product_cmd->add_option("--s0", ps0)->required();
    product_cmd->add_option("--p", pp);
    product_cmd->add_option("--q", pq);
    product_cmd->add_option("--n", dim, "dimension");
    product_cmd->add_option("--output", output_path, "write JSON here instead of stdout");

    // ---- sweep ----
    std::string experiment;
    std::string cutoffs_str = "32,64,128,256,512";
    std::string radii_str = "3,4,6,8,12";
    std::string lambdas_str = "1,2,4,8,16,32,64";
    std::string powers_str = "1,2,3,4,5,6,7,8";
    std::string levels_str = "0,1,2,3,4,5";
    std::string widths_str = "0.8,0.894,1.0,1.118,1.25";
    std::string out_prefix;
    FamilyOptions sweep_fam;
    CLI::App* sweep_cmd = with_config(app.add_subcommand(
        "sweep", "run an experiment driver: counterexample-power | counterexample-constant | "
                 "counterexample-bracket | sector-decay | exp-growth | power-growth | "
                 "product-limit | nikolskij | equivalence"));
    sweep_cmd->add_option("experiment", experiment, "experiment id")->required();
    sweep_cmd->add_option("--s", s_str, "weight s");
    sweep_cmd->add_option("--p", p_str, "p");
    sweep_cmd->add_option("--q", q_str, "q");
    sweep_cmd->add_option("--n", dim, "dimension");
    sweep_cmd->add_option("--M", grid_M, "grid period multiplier");
    sweep_cmd->add_option("--kmax", k_max, "bank radius where applicable");
    sweep_cmd->add_option("--cutoffs", cutoffs_str, "comma list of lattice cutoffs N");
    sweep_cmd->add_option("--radii", radii_str, "comma list of sector radii R or spectral radii");
    sweep_cmd->add_option("--lambdas", lambdas_str, "comma list of lambdas");
    sweep_cmd->add_option("--powers", powers_str, "comma list of powers m");
    sweep_cmd->add_option("--levels", levels_str, "comma list of smoothing levels j");
    sweep_cmd->add_option("--widths", widths_str, "comma list of gaussian widths");
    add_family_flags(sweep_cmd, sweep_fam);
    sweep_cmd->add_option("--out", out_prefix, "write <out>.json and <out>.csv");

    // ---- identity ----
    std::string check_kind = "toft";
    std::string values_str = "1,0;0.5,0.25;-0.2,0.7;0.9,-0.1;0.3,0.4";
    double identity_tol = 1e-3;
    CLI::App* identity_cmd = with_config(app.add_subcommand("identity", "run an identity check"));
    identity_cmd->add_option("--check", check_kind, "toft | subset-product");
    identity_cmd->add_option("--values", values_str, "factors for subset-product: re,im;re,im;...");
    identity_cmd->add_option("--tol", identity_tol, "pass/fail threshold");
    identity_cmd->add_option("--M", grid_M, "grid period multiplier (toft)");
    identity_cmd->add_option("--N", grid_N, "grid samples (toft)");
    identity_cmd->add_option("--n", dim, "dimension (toft)");
    identity_cmd->add_option("--output", output_path, "write JSON here instead of stdout");

    // ---- report ----
    std::string report_inputs;
    std::string report_csv, report_json;
    CLI::App* report_cmd = with_config(app.add_subcommand("report", "aggregate record files to CSV/JSON"));
    report_cmd->add_option("--inputs", report_inputs, "comma list of record JSON files")->required();
    report_cmd->add_option("--csv", report_csv, "CSV output path");
    report_cmd->add_option("--json", report_json, "merged JSON output path");

    try {
        std::vector<std::string> args = apply_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed_ms = [&t0]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        if (norm_cmd->parsed()) {
            const ms::SpaceParams params(ms::parse_rational(s_str), ms::parse_exponent(p_str),
                                         ms::parse_exponent(q_str), dim);
            ms::GridSpec grid = grid_N > 0 ? ms::GridSpec(dim, grid_M, grid_N)
                                           : ms::sweep_grid(dim, k_max, grid_M);
            if (!norm_fam.input_file.empty()) {
                grid = ms::read_samples(norm_fam.input_file).grid;
                // default bank radius adapts to the file's own grid
                if (norm_cmd->count("--kmax") == 0) {
                    k_max = std::max(1, static_cast<int>(grid.xi_max()) - 3);
                }
            }
            const ms::SampledFunction f = build_function(norm_fam, grid);
            ms::NormOptions opts;
            opts.tail_tolerance = tail_tol;
            opts.keep_contributions = with_contributions;
            json j;
            if (norm_method == "decomp") {
                const auto bank = ms::build_bank(f.grid, k_max);
                j = ms::to_json(ms::mod_norm_decomp(f, params, bank, opts), with_contributions);
            } else if (norm_method == "stft") {
                const auto window = ms::make_gaussian_window(f.grid, window_width);
                j = ms::to_json(ms::mod_norm_stft(f, params, window, opts), with_contributions);
            } else if (norm_method == "sobolev") {
                j = json{{"value", ms::sobolev_norm(f, params.s.to_double())},
                         {"method", "sobolev"},
                         {"s", params.s.str()}};
            } else {
                std::cerr << "unknown method: " << norm_method << "\n";
                return kExitUsage;
            }
            emit(j, output_path);
            return kExitPass;
        }

        if (embed_cmd->parsed()) {
            const ms::SpaceParams source(ms::parse_rational(e_s0), ms::parse_exponent(e_p0),
                                         ms::parse_exponent(e_q0), dim);
            ms::Verdict v;
            if (into_linfty) {
                v = ms::embeds_into_Linfty(source);
            } else {
                const ms::SpaceParams target(ms::parse_rational(e_s1), ms::parse_exponent(e_p1),
                                             ms::parse_exponent(e_q1), dim);
                v = ms::embeds(source, target);
            }
            emit(ms::to_json(v), output_path);
            return exit_code_for(v);
        }

        if (algebra_cmd->parsed()) {
            const ms::SpaceParams params(ms::parse_rational(s_str), ms::parse_exponent(p_str),
                                         ms::parse_exponent(q_str), dim);
            json j{{"algebra", ms::to_json(ms::is_algebra(params))},
                   {"linfty_embedding", ms::to_json(ms::embeds_into_Linfty(params))}};
            if (tm_power >= 2) {
                j["t_m"] = ms::t_m(params.s, tm_power, params.q, params.dim).str();
            }
            if (want_superposition) {
                const auto e = ms::superposition_exponent(params.s, params.q, params.dim);
                j["superposition"] = {{"growth", e.growth.str()},
                                      {"growth_value", e.growth.to_double()},
                                      {"measure", e.measure.str()},
                                      {"measure_value", e.measure.to_double()},
                                      {"besov_threshold",
                                       ms::besov_threshold(params.s, params.q, params.dim).str()}};
            }
            if (!alpha_str.empty()) {
                j["power_alpha"] = ms::to_json(
                    ms::power_alpha_ok(ms::parse_rational(alpha_str), params.s, params.q, params.dim));
            }
            emit(j, output_path);
            return kExitPass;
        }

        if (product_cmd->parsed()) {
            ms::ProductQuery Q;
            Q.s1 = ms::parse_rational(ps1);
            Q.s2 = ms::parse_rational(ps2);
            Q.s0 = ms::parse_rational(ps0);
            Q.p1 = ms::parse_exponent(pp1);
            Q.p2 = ms::parse_exponent(pp2);
            Q.p = ms::parse_exponent(pp);
            Q.q1 = ms::parse_exponent(pq1);
            Q.q2 = ms::parse_exponent(pq2);
            Q.q = ms::parse_exponent(pq);
            Q.dim = dim;
            const ms::Verdict v = ms::product_verdict(Q);
            emit(ms::to_json(v), output_path);
            return exit_code_for(v);
        }

        if (sweep_cmd->parsed()) {
            const ms::SpaceParams params(ms::parse_rational(s_str), ms::parse_exponent(p_str),
                                         ms::parse_exponent(q_str), dim);
            json manifest{{"experiment", experiment}, {"params", ms::to_json(params)},
                          {"M", grid_M}};
            json summary;
            std::vector<ms::ExperimentRecord> records;
            bool ok = true;

            if (experiment.rfind("counterexample-", 0) == 0) {
                ms::CounterexampleConfig cfg;
                cfg.regime = experiment.substr(std::string("counterexample-").size());
                if (cfg.regime == "bracket") cfg.regime = "bracket-power";
                cfg.params = params;
                cfg.cutoffs = parse_int_list(cutoffs_str);
                cfg.period_mul = grid_M;
                cfg.eps = sweep_fam.eps;
                manifest["cutoffs"] = cfg.cutoffs;
                const auto res = ms::run_counterexample_sweep(cfg);
                records = res.records;
                summary = json{{"product_fit", ms::to_json(res.product_fit)},
                               {"squared_fit", ms::to_json(res.squared_fit)},
                               {"max_cross_gap", res.max_cross_gap},
                               {"cross_check_ok", res.cross_check_ok}};
                ok = res.cross_check_ok && res.product_fit.conclusive;
            } else if (experiment == "sector-decay") {
                ms::SectorDecayConfig cfg;
                cfg.params = params;
                cfg.radii = parse_list(radii_str);
                cfg.period_mul = grid_M;
                manifest["radii"] = cfg.radii;
                const auto res = ms::run_sector_decay(cfg);
                records = res.records;
                summary = json{{"fit", ms::to_json(res.fit)},
                               {"fit_vs_radius", ms::to_json(res.fit_radius)}};
                ok = res.fit.conclusive;
            } else if (experiment == "exp-growth") {
                ms::ExpGrowthConfig cfg;
                cfg.params = params;
                cfg.lambdas = parse_list(lambdas_str);
                cfg.k_max = k_max;
                cfg.period_mul = grid_M;
                const ms::GridSpec grid = ms::sweep_grid(dim, cfg.k_max, grid_M);
                const ms::SampledFunction psi = ms::make_band_limited_psi(grid, sweep_fam.eps);
                ms::LatticeCoefficients coeffs{1, "cosine", {{{-2, 0}, 0.25}, {{-1, 0}, 0.5},
                                                             {{1, 0}, 0.5}, {{2, 0}, 0.25}}};
                ms::SampledFunction u = ms::make_lattice_modulated(psi, coeffs);
                u = ms::scale(u, sweep_fam.amplitude);
                manifest["lambdas"] = cfg.lambdas;
                const auto res = ms::run_exp_growth(u, cfg);
                records = res.records;
                summary = json{{"fit", ms::to_json(res.fit)},
                               {"small_lambda_ratio", res.small_lambda_ratio}};
                ok = res.fit.conclusive;
            } else if (experiment == "power-growth") {
                const ms::GridSpec grid = ms::sweep_grid(dim, k_max, grid_M);
                const auto bank = ms::build_bank(grid, k_max);
                const ms::SampledFunction psi = ms::make_band_limited_psi(grid, sweep_fam.eps);
                ms::LatticeCoefficients coeffs{1, "cosine", {{{-1, 0}, 0.5}, {{1, 0}, 0.5}}};
                ms::SampledFunction g = ms::scale(ms::make_lattice_modulated(psi, coeffs),
                                                  sweep_fam.amplitude);
                std::vector<int> powers;
                for (long long m : parse_int_list(powers_str)) powers.push_back(static_cast<int>(m));
                const ms::SampledFunction gauss = ms::make_gaussian(grid, 1.0);
                const auto bil = ms::run_bilinear({g, gauss}, params, bank);
                const auto res = ms::run_power_growth(g, params, powers, bank, bil.max_ratio);
                records = res.records;
                summary = json{{"fitted_slope", res.fitted_slope},
                               {"slope_bound", res.slope_bound},
                               {"relative_residual", res.relative_residual}};
                ok = res.relative_residual < 0.05 && res.fitted_slope <= res.slope_bound + 0.2;
            } else if (experiment == "product-limit") {
                const ms::GridSpec grid = ms::sweep_grid(dim, k_max, grid_M);
                const auto bank = ms::build_bank(grid, k_max);
                const ms::SampledFunction f = ms::make_gaussian(grid, 1.0);
                const ms::SampledFunction g = ms::make_gaussian(grid, 0.7);
                std::vector<int> levels;
                for (long long j : parse_int_list(levels_str)) levels.push_back(static_cast<int>(j));
                const auto res = ms::run_product_limit(f, g, params, ms::ExtendedExponent(2),
                                                       ms::ExtendedExponent(2), levels, bank);
                records = res.records;
                summary = json{{"final_increment", res.final_increment},
                               {"monotone", res.monotone},
                               {"product_norm", res.product_norm},
                               {"bound_ratio", res.bound_ratio}};
                ok = res.monotone && res.final_increment < 1e-6;
            } else if (experiment == "nikolskij") {
                const ms::GridSpec grid(dim, grid_M, 2048);
                const auto fit =
                    ms::run_nikolskij(grid, params.p, params.q, parse_list(radii_str));
                summary = json{{"fit", ms::to_json(fit)}};
                ok = fit.conclusive;
            } else if (experiment == "equivalence") {
                const ms::GridSpec grid = ms::sweep_grid(dim, k_max, grid_M);
                const auto bank = ms::build_bank(grid, k_max);
                const auto window = ms::make_gaussian_window(grid, 1.0);
                double lo = 1e300, hi = 0.0;
                for (double w : parse_list(widths_str)) {
                    const ms::SampledFunction f = ms::make_gaussian(grid, w);
                    const double dn = ms::mod_norm_decomp(f, params, bank).value;
                    const double sn = ms::mod_norm_stft(f, params, window).value;
                    const double ratio = sn / dn;
                    lo = std::min(lo, ratio);
                    hi = std::max(hi, ratio);
                    ms::ExperimentRecord rec;
                    rec.experiment = "equivalence";
                    rec.inputs = {{"width", w}};
                    rec.measured = {{"decomp", dn}, {"stft", sn}, {"ratio", ratio}};
                    records.push_back(std::move(rec));
                }
                summary = json{{"ratio_min", lo}, {"ratio_max", hi}, {"spread", hi / lo}};
                ok = hi / lo < 1.2;
            } else {
                std::cerr << "unknown experiment: " << experiment << "\n";
                return kExitUsage;
            }

            const json doc = ms::records_document(manifest, records, elapsed_ms());
            if (!out_prefix.empty()) {
                ms::write_text_file(out_prefix + ".json", doc.dump(2) + "\n");
                ms::write_text_file(out_prefix + ".csv", ms::records_to_csv(records));
            }
            summary["pass"] = ok;
            std::cout << summary.dump(2) << "\n";
            return ok ? kExitPass : kExitAssert;
        }

        if (identity_cmd->parsed()) {
            json j;
            bool ok = true;
            if (check_kind == "subset-product") {
                std::vector<ms::cplx> values;
                std::stringstream ss(values_str);
                std::string pair;
                while (std::getline(ss, pair, ';')) {
                    const auto comma = pair.find(',');
                    values.emplace_back(std::stod(pair.substr(0, comma)),
                                        comma == std::string::npos ? 0.0
                                                                   : std::stod(pair.substr(comma + 1)));
                }
                const double residual = ms::check_product_identity(values);
                j = json{{"check", "subset-product"}, {"residual", residual}};
                ok = residual < identity_tol;
            } else if (check_kind == "toft") {
                const ms::GridSpec grid(dim, grid_M > 8 ? 4 : grid_M, grid_N > 0 ? grid_N : 256);
                const ms::SampledFunction f = ms::make_gaussian(grid, 1.0);
                const ms::SampledFunction g = ms::modulate(ms::make_gaussian(grid, 0.8), {2, 0});
                const ms::SampledFunction w = ms::make_gaussian_window(grid, 1.0);
                const double residual = ms::run_toft_identity(f, g, w, w);
                j = json{{"check", "toft"}, {"residual", residual}};
                ok = residual < identity_tol;
            } else {
                std::cerr << "unknown identity check: " << check_kind << "\n";
                return kExitUsage;
            }
            j["pass"] = ok;
            emit(j, output_path);
            return ok ? kExitPass : kExitAssert;
        }

        if (report_cmd->parsed()) {
            std::vector<ms::ExperimentRecord> merged;
            json merged_json = json::array();
            std::stringstream ss(report_inputs);
            std::string path;
            while (std::getline(ss, path, ',')) {
                std::ifstream in(path);
                if (!in) throw std::runtime_error("cannot open: " + path);
                json doc;
                in >> doc;
                for (const auto& r : doc.at("records")) {
                    merged_json.push_back(r);
                    ms::ExperimentRecord rec;
                    rec.experiment = r.value("experiment", "");
                    rec.family = r.value("family", "");
                    for (auto it = r.at("inputs").begin(); it != r.at("inputs").end(); ++it) {
                        rec.inputs[it.key()] = it.value().get<double>();
                    }
                    for (auto it = r.at("measured").begin(); it != r.at("measured").end(); ++it) {
                        rec.measured[it.key()] = it.value().get<double>();
                    }
                    for (auto it = r.at("predicted").begin(); it != r.at("predicted").end(); ++it) {
                        rec.predicted[it.key()] = it.value().get<double>();
                    }
                    rec.tail = r.value("tail", 0.0);
                    merged.push_back(std::move(rec));
                }
            }
            if (!report_csv.empty()) ms::write_text_file(report_csv, ms::records_to_csv(merged));
            if (!report_json.empty()) {
                ms::write_text_file(report_json, json{{"records", merged_json}}.dump(2) + "\n");
            }
            std::cout << json{{"records", merged.size()}}.dump() << "\n";
            return kExitPass;
        }
    } catch (const ms::TruncationError& e) {
        std::cerr << "truncation abort: " << e.what() << "\n";
        return kExitTruncation;
    } catch (const ms::RuleContradiction& e) {
        std::cerr << "rule contradiction: " << e.what() << "\n";
        return kExitAssert;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
