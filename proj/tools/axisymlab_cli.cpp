// axisymlab command line: run / check / diag / dump.
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure,
// 4 completed run flagged as under-resolved.

#include <cmath>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "axisym/runner.hpp"
#include "axisym/snapshot_io.hpp"

using namespace axisym;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnderResolved = 4;

bool g_json_errors = false;

int fail(int code, const std::string& type, const std::string& message) {
    if (g_json_errors) {
        nlohmann::json j{{"error", message}, {"type", type}, {"exit_code", code}};
        std::cout << j.dump() << "\n";
    } else {
        std::cerr << "error (" << type << "): " << message << "\n";
    }
    return code;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return g;
}

int check_specfun() {
    using namespace specfun;
    QuadratureSpec tight{1e-14, 1e-12, 4000};
    nlohmann::json out;
    double worst = 0.0, worst_p = 0.0, worst_pp = 0.0;
    for (double s : log_grid(1e-8, 1e8, 200)) {
        worst = std::max(worst, std::abs(f_fast(s) - f_oracle(s, tight)));
        const double op = f_prime_oracle(s, tight);
        const double opp = f_second_oracle(s, tight);
        worst_p = std::max(worst_p, std::abs(f_prime(s) - op) / std::max(1.0, std::abs(op)));
        worst_pp = std::max(worst_pp, std::abs(f_second(s) - opp) / std::max(1.0, std::abs(opp)));
    }
    out["fast_vs_oracle"] = {{"f", worst}, {"fp", worst_p}, {"fpp", worst_pp}};
    out["asymptotes"] = {
        {"log8_minus_2_err", std::abs(f_fast(1e-8) + 0.5 * std::log(1e-8) - (std::log(8.) - 2.))},
        {"inf_coeff_rel_err", std::abs(f_fast(1e6) * std::pow(1e6, 1.5) / (M_PI / 2) - 1.0)}};
    const auto rep = verify_f_bounds(log_grid(1e-8, 1e8, 200), 0.5, {1e-12, 1e-10, 4000});
    out["bounds"] = nlohmann::json::parse(rep.to_json());
    const bool pass = worst <= 1e-8 && worst_p <= 1e-6 && worst_pp <= 1e-6 && rep.all_finite;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNumerical;
}

int check_kernels() {
    using namespace kernels;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto sample = [&]() {
        for (;;) {
            PointRZ p{uni(rng), 2 * uni(rng) - 1};
            if (p.r > 0.05 && p.norm() < 0.93) return p;
        }
    };
    double worst_ident = 0.0;
    for (int k = 0; k < 1000; ++k) {
        auto res = inversion_identities_check(sample());
        for (double r : res) worst_ident = std::max(worst_ident, std::abs(r));
    }
    double worst_fd = 0.0, fitted = 0.0;
    int used = 0;
    const double h = 1e-6;
    while (used < 100) {
        const PointRZ x = sample(), y = sample();
        if (dist(x, y) < 0.15) continue;
        ++used;
        const SourceGeom src = make_source_geom(y);
        const KernelGrad g = kernel_grad(x, src);
        const double fd = (kernel_k({x.r + h, x.z}, y) - kernel_k({x.r - h, x.z}, y)) / (2 * h);
        worst_fd = std::max(worst_fd, std::abs(g.dk_dr - fd) / std::max(1.0, std::abs(fd)));
        const KernelEval ev = kernel_gradients(x, y);
        const double d = dist(x, y);
        const double lhs = std::max({std::abs(ev.grad.dk_dz / y.r), std::abs(ev.grad.dk_dr / y.r),
                                     std::abs(ev.grad.dj_dr / y.r - ev.j / (y.r * x.r) +
                                              2.0 * ev.g / std::pow(x.r, 3))});
        const double rhs = std::min(y.r / std::pow(d, 3), std::sqrt(y.r / x.r) / (d * d));
        fitted = std::max(fitted, lhs / rhs);
    }
    double worst_boundary = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double th = M_PI * k / 100.0 - M_PI / 2;
        worst_boundary = std::max(
            worst_boundary, std::abs(greens_g({std::cos(th), std::sin(th)}, {0.45, -0.15})));
    }
    nlohmann::json out{{"identities_max_residual", worst_ident},
                       {"grad_fd_rel_err", worst_fd},
                       {"second_derivative_fitted_c", fitted},
                       {"boundary_vanishing", worst_boundary}};
    const bool pass = worst_ident <= 1e-10 && worst_fd <= 1e-5 && std::isfinite(fitted) &&
                      worst_boundary <= 1e-10;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNumerical;
}

double cli_bump(PointRZ p, PointRZ c, double rad) {
    const double d2 = dist2(p, c) / (rad * rad);
    if (d2 >= 1.0) return 0.0;
    const double q = 1.0 - d2;
    return q * q * q;
}

int check_velocity() {
    auto grid = make_grid({49, 49, 1.5, 1.5, Symmetry::OddInZ});
    ScalarFieldRZ w(grid, [](PointRZ p) { return cli_bump(p, {0.55, 0.35}, 0.3); });
    BiotSavartOperator op(w);
    double worst_noflow = 0.0;
    for (int k = 1; k < 16; ++k) {
        const double th = 0.5 * M_PI * k / 16.0;
        const PointRZ x{std::cos(th), std::sin(th)};
        const auto u = op.velocity(x);
        worst_noflow = std::max(worst_noflow, std::abs(u.ur * x.r + u.uz * x.z));
    }
    const auto axis = op.velocity({0.0, 0.4});
    double worst_div = 0.0;
    for (PointRZ x : {PointRZ{0.5, 0.3}, PointRZ{0.62, 0.12}, PointRZ{0.35, 0.45}}) {
        const auto g = op.gradient(x);
        const auto u = op.velocity(x);
        worst_div = std::max(worst_div, std::abs(g.dur_dr + u.ur / x.r + g.duz_dz));
    }
    nlohmann::json out{{"noflow_max", worst_noflow},
                       {"noflow_limit", 1e-3 * w.sup_norm()},
                       {"axis_ur", axis.ur},
                       {"div_residual_max", worst_div}};
    const bool pass = worst_noflow <= 1e-3 * w.sup_norm() && axis.ur == 0.0 && worst_div <= 5e-3;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNumerical;
}

int check_transport() {
    auto grid = make_grid({41, 41, 1.5, 1.5, Symmetry::OddInZ});
    ScalarFieldRZ w0(grid, [](PointRZ p) { return cli_bump(p, {0.5, 0.35}, 0.32); });
    SimState s{0.0, w0, {}};
    TimeStepSpec ts;
    ts.dt = 0.05;
    SimState cur = s;
    for (int k = 0; k < 3; ++k) cur = advect_step(cur, ts);
    const double sup_drift = cur.w.sup_norm() - w0.sup_norm();
    bool odd_ok = true;
    for (int i = 0; i < grid->n_rho(); ++i) odd_ok = odd_ok && cur.w.value(i, 0) == 0.0;
    nlohmann::json out{{"sup_drift", sup_drift}, {"odd_row_exact", odd_ok}};
    const bool pass = sup_drift <= 1e-14 && odd_ok;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNumerical;
}

int check_lemma41() {
    scenario::ScenarioParams p;
    p.eps = 0.08;
    p.delta = 0.25;
    p.inner_exponent = 2;
    auto grid = make_grid({81, 81, 2.5, 2.5, Symmetry::OddInZ});
    const auto w0 = scenario::ks_initial_data(p, grid);
    BiotSavartOperator op(w0);
    double worst_b1 = 0.0;
    int n = 0;
    for (double d : {0.05, 0.03}) {
        for (double fr : {0.2, 0.5, 0.8}) {
            const double phi = fr * (M_PI / 2 - p.gamma);
            const PointRZ x{1.0 - d * std::sin(phi), d * std::cos(phi)};
            if (!scenario::in_D1(x, p)) continue;
            const auto res = diagnostics::lemma41_residual_uz(x, op, p);
            worst_b1 = std::max(worst_b1, std::abs(res.residual_scaled));
            ++n;
        }
    }
    std::vector<double> logs, vals;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        logs.push_back(std::log(1.0 / delta));
        vals.push_back(diagnostics::key_integral_q({1.0 - delta / std::sqrt(2), delta / std::sqrt(2)},
                                                   [](PointRZ) { return 1.0; }, p));
    }
    const auto fit = diagnostics::linear_fit(logs, vals);
    nlohmann::json out{{"b1_fitted", worst_b1},
                       {"n_samples", n},
                       {"q_log_slope", fit.slope},
                       {"q_log_r2", fit.r2}};
    const bool pass = std::isfinite(worst_b1) && n >= 4 && fit.slope > 0 && fit.r2 > 0.98;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNumerical;
}

int check_kato() {
    auto grid = make_grid({49, 49, 1.5, 1.5, Symmetry::OddInZ});
    ScalarFieldRZ w(grid, [](PointRZ p) { return cli_bump(p, {0.7, 0.2}, 0.25); });
    const auto rep = diagnostics::kato_check(w, {0.1, 0.2, 0.4, 0.8}, 12, 7);
    nlohmann::json out = nlohmann::json::parse(rep.to_json());
    const bool pass = std::isfinite(rep.fitted_c1) && rep.small_over_large <= 0.5;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitNumerical;
}

int run_check(const std::string& suite) {
    if (suite == "specfun") return check_specfun();
    if (suite == "kernels") return check_kernels();
    if (suite == "velocity") return check_velocity();
    if (suite == "transport") return check_transport();
    if (suite == "lemma41") return check_lemma41();
    if (suite == "kato") return check_kato();
    return fail(kExitConfig, "usage", "unknown check suite '" + suite + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymlab: axisymmetric Euler (no swirl) laboratory on the unit ball"};
    app.require_subcommand(1);

    std::string config_path, suite, run_dir, snap_path, csv_path, table_path;
    bool dry_run = false, quad_refine = false;

    CLI::App* run = app.add_subcommand("run", "execute a configured simulation");
    run->add_option("--config", config_path, "configuration file")->required();
    run->add_flag("--dry-run", dry_run, "validate and print the resolved config, write nothing");
    run->add_flag("--quad-refine", quad_refine, "double the quadrature orders");
    run->add_flag("--json-errors", g_json_errors, "machine-readable errors on stdout");

    CLI::App* check = app.add_subcommand("check", "run a verification suite");
    check->add_option("suite", suite,
                      "one of: specfun, kernels, velocity, transport, lemma41, kato")
        ->required();
    check->add_flag("--json-errors", g_json_errors, "machine-readable errors on stdout");

    CLI::App* diag = app.add_subcommand("diag", "regenerate reports from a run directory");
    diag->add_option("rundir", run_dir, "run directory containing manifest.json")->required();
    diag->add_flag("--json-errors", g_json_errors, "machine-readable errors on stdout");

    CLI::App* dump = app.add_subcommand("dump", "convert a snapshot to CSV");
    dump->add_option("snapshot", snap_path, "snapshot file")->required();
    dump->add_option("csv", csv_path, "output CSV path")->required();

    CLI::App* sfc = app.add_subcommand("specfun-check", "alias of `check specfun`");
    sfc->add_option("--dump-table", table_path, "also dump the mid-range evaluator table");
    CLI::App* krc = app.add_subcommand("kernels-check", "alias of `check kernels`");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) {
            SimConfig cfg = load_config(config_path);
            if (quad_refine) cfg.quad.refine = true;
            if (dry_run) {
                std::cout << cfg.echo();
                return kExitOk;
            }
            const RunRecord rec = run_simulation(cfg);
            regenerate_reports(rec.dir);
            std::cout << "run complete: " << rec.steps << " steps to t = " << rec.t_final
                      << ", record in " << rec.dir << "\n";
            if (rec.under_resolved) {
                std::cerr << "warning: final field flagged as under-resolved\n";
                return kExitUnderResolved;
            }
            return kExitOk;
        }
        if (check->parsed()) return run_check(suite);
        if (sfc->parsed()) {
            if (!table_path.empty()) specfun::dump_mid_table(table_path);
            return run_check("specfun");
        }
        if (krc->parsed()) return run_check("kernels");
        if (diag->parsed()) {
            regenerate_reports(run_dir);
            std::cout << "reports regenerated under " << run_dir << "/reports\n";
            return kExitOk;
        }
        if (dump->parsed()) {
            snapshot_to_csv(read_snapshot(snap_path), csv_path);
            std::cout << "wrote " << csv_path << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        return fail(kExitConfig, "config", e.what());
    } catch (const IoError& e) {
        return fail(kExitConfig, "io", e.what());
    } catch (const DomainError& e) {
        return fail(kExitNumerical, "domain", e.what());
    } catch (const std::exception& e) {
        return fail(kExitNumerical, "numerical", e.what());
    }
    return fail(kExitConfig, "usage", "no subcommand executed");
}
