// adns — spectral simulator and statistical verification harness for the 2D
// stochastic damped anisotropic Navier-Stokes equation on a periodic box.
//
// Subcommands: simulate | couple | tails | ergodic | gn-check | calibrate.
// Exit codes: 0 pass, 2 statistical bound violation, 3 numerical blow-up,
// 64 configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "adns/config.hpp"
#include "adns/energy.hpp"
#include "adns/ergodic.hpp"
#include "adns/errors.hpp"
#include "adns/io.hpp"
#include "adns/parallel.hpp"
#include "adns/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolation = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitConfig = 64;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    int threads = adns::default_thread_count();
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "run configuration file")->required();
    cmd->add_option("--seed", opts.seed, "override the master seed");
    cmd->add_option("--out", opts.out_dir, "override the output directory");
    cmd->add_option("--threads", opts.threads, "cap on worker threads");
}

std::string resolve_out_dir(const CommonOpts& opts, const adns::RunConfig& cfg) {
    if (opts.out_dir) return *opts.out_dir;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("ADNS_OUT_DIR")) return env;
    return "out";
}

adns::RunConfig load(const CommonOpts& opts) {
    adns::RunConfig cfg = adns::load_config(opts.config_path);
    if (opts.seed) cfg.solver.seed = *opts.seed;
    return cfg;
}

void write_ledger_csv(const adns::EnergyLedger& ledger, const std::string& path) {
    adns::CsvWriter csv(path, {"t", "l2_sq", "d1_sq", "grad_sq", "d1grad_sq", "M0", "QV0", "M1", "QV1"});
    for (const auto& r : ledger.rows())
        csv.write_row({r.t, r.norms.l2_sq, r.norms.d1_sq, r.norms.grad_sq, r.norms.d1grad_sq, r.M0,
                       r.QV0, r.M1, r.QV1});
}

void write_diagnostics_csv(const adns::EnergyLedger& ledger, const std::string& path) {
    adns::CsvWriter csv(path, {"t", "E0", "E1", "ito_l2_res", "ito_h1_res"});
    for (const auto& r : ledger.rows())
        csv.write_row({r.t, adns::compute_E0(ledger, r.t), adns::compute_E1(ledger, r.t),
                       adns::ito_l2_residual(ledger, r.t), adns::ito_h1_residual(ledger, r.t)});
}

int cmd_simulate(const CommonOpts& opts) {
    adns::RunConfig cfg = load(opts);
    const std::string dir = resolve_out_dir(opts, cfg);
    std::filesystem::create_directories(dir);
    adns::RunManifest manifest("simulate", opts.config_path, cfg.solver.seed);
    manifest.set_config_snapshot(cfg.raw_text);

    adns::SimulationResult result = adns::simulate(cfg.solver);

    write_ledger_csv(result.ledger, dir + "/ledger.csv");
    write_diagnostics_csv(result.ledger, dir + "/diagnostics.csv");
    adns::save_velocity(result.trajectory.final_state, dir + "/final_state.bin");
    adns::dump_velocity_text(result.trajectory.final_state, dir + "/final_state.txt");
    manifest.add_output(dir + "/ledger.csv");
    manifest.add_output(dir + "/diagnostics.csv");
    manifest.add_output(dir + "/final_state.bin");
    manifest.add_output(dir + "/final_state.txt");
    manifest.add_verdict("simulate", "completed");
    manifest.write(dir + "/manifest.json", kExitOk);
    std::cout << "simulate: " << result.ledger.rows().size() << " samples -> " << dir << "\n";
    return kExitOk;
}

int cmd_couple(const CommonOpts& opts) {
    adns::RunConfig cfg = load(opts);
    if (!cfg.couple) throw adns::ConfigError("missing section 'couple'");
    const adns::CoupleSection& sect = *cfg.couple;
    const std::string dir = resolve_out_dir(opts, cfg);
    std::filesystem::create_directories(dir);
    adns::RunManifest manifest("couple", opts.config_path, cfg.solver.seed);
    manifest.set_config_snapshot(cfg.raw_text);

    adns::SolverConfig run = cfg.solver;
    run.storage = adns::FieldStorage::none;
    adns::SpectralVelocity u0 = adns::make_initial(run.grid, run.init, run.seed);
    adns::SpectralVelocity v0 = adns::make_initial(run.grid, sect.v_init, run.seed);
    adns::CoupledResult result = adns::simulate_coupled(run, std::move(u0), std::move(v0));

    adns::fill_bound_curves(result.record, result.u_ledger, sect.c0, sect.c2, sect.R);
    const adns::ContractionVerdict verdict =
        adns::contraction_check(result.record, sect.c2, sect.R, sect.floor_rel);

    adns::CsvWriter csv(dir + "/coupling.csv", {"n", "t", "delta_l2_sq", "bound_c0", "bound_c2"});
    for (std::size_t i = 0; i < result.record.times.size(); ++i)
        csv.write_row({static_cast<double>(i), result.record.times[i], result.record.delta_l2_sq[i],
                       result.record.bound_c0[i], result.record.bound_c2[i]});
    write_ledger_csv(result.u_ledger, dir + "/ledger_u.csv");

    const char* status = verdict.status == adns::ContractionVerdict::Status::pass      ? "pass"
                         : verdict.status == adns::ContractionVerdict::Status::no_claim ? "no-claim"
                                                                                        : "fail";
    manifest.add_output(dir + "/coupling.csv");
    manifest.add_output(dir + "/ledger_u.csv");
    manifest.add_verdict("contraction", status);
    manifest.add_verdict("detail", verdict.detail);
    manifest.add_verdict("event_ER", result.record.er_flag ? "true" : "false");
    manifest.add_verdict("lambda", adns::format_full(result.record.lambda));
    manifest.add_verdict("K", adns::format_full(result.record.K));
    manifest.add_verdict("R", adns::format_full(result.record.R));
    manifest.add_verdict("u0_h1_sq", adns::format_full(result.record.u0_h1_sq));
    manifest.add_verdict("delta0_l2_sq", adns::format_full(result.record.delta0_l2_sq));
    manifest.add_verdict("c0_hat", adns::format_full(result.record.c0_hat));
    manifest.add_verdict("c2_hat", adns::format_full(result.record.c2_hat));
    const int code =
        verdict.status == adns::ContractionVerdict::Status::fail ? kExitBoundViolation : kExitOk;
    manifest.write(dir + "/manifest.json", code);
    std::cout << "couple: contraction " << status << " (" << verdict.detail << ")\n";
    return code;
}

int cmd_tails(const CommonOpts& opts) {
    adns::RunConfig cfg = load(opts);
    if (!cfg.tails) throw adns::ConfigError("missing section 'tails'");
    const adns::TailsSection& sect = *cfg.tails;
    const std::string dir = resolve_out_dir(opts, cfg);
    std::filesystem::create_directories(dir);
    adns::RunManifest manifest("tails", opts.config_path, cfg.solver.seed);
    manifest.set_config_snapshot(cfg.raw_text);

    adns::TailPlan plan;
    plan.martingale_cells = sect.martingale_cells;
    plan.e0_thresholds = sect.e0_thresholds;
    plan.e1_thresholds = sect.e1_thresholds;
    plan.replicas = sect.replicas;
    plan.horizon = sect.horizon;
    const adns::TailReport report = adns::run_tail_plan(cfg.solver, plan, opts.threads);

    adns::CsvWriter csv(dir + "/tails.csv",
                        {"kind", "gamma", "R", "replicas", "exceedances", "excluded", "frequency",
                         "ci_halfwidth", "bound", "horizon", "satisfied"});
    for (const auto& r : report.rows)
        csv.write_raw_row({r.kind, adns::format_full(r.gamma), adns::format_full(r.R),
                           std::to_string(r.replicas), std::to_string(r.exceedances),
                           std::to_string(r.excluded), adns::format_full(r.frequency),
                           adns::format_full(r.ci_halfwidth), adns::format_full(r.bound),
                           adns::format_full(r.horizon), r.satisfied() ? "1" : "0"});

    const bool ok = report.all_satisfied();
    manifest.add_output(dir + "/tails.csv");
    manifest.add_verdict("tails", ok ? "pass" : "bound-violation");
    const int code = ok ? kExitOk : kExitBoundViolation;
    manifest.write(dir + "/manifest.json", code);
    std::cout << "tails: " << report.rows.size() << " cells, "
              << (ok ? "all bounds satisfied" : "BOUND VIOLATION") << "\n";
    return code;
}

int cmd_ergodic(const CommonOpts& opts) {
    adns::RunConfig cfg = load(opts);
    if (!cfg.ergodic) throw adns::ConfigError("missing section 'ergodic'");
    const adns::ErgodicSection& sect = *cfg.ergodic;
    const std::string dir = resolve_out_dir(opts, cfg);
    std::filesystem::create_directories(dir);
    adns::RunManifest manifest("ergodic", opts.config_path, cfg.solver.seed);
    manifest.set_config_snapshot(cfg.raw_text);

    const std::vector<adns::Observable> phis = adns::canonical_observables(cfg.solver.grid);
    const adns::ErgodicReport report =
        adns::uniqueness_gap(cfg.solver, cfg.solver.init, sect.v_init, phis, sect.horizon,
                             sect.burn_in, sect.stride, sect.gap_threshold, sect.c2, opts.threads);

    adns::CsvWriter csv(dir + "/ergodic.csv",
                        {"observable", "avg_u", "avg_v", "gap", "se_u", "se_v", "pass"});
    for (const auto& r : report.rows)
        csv.write_raw_row({r.id, adns::format_full(r.avg_u), adns::format_full(r.avg_v),
                           adns::format_full(r.gap), adns::format_full(r.se_u),
                           adns::format_full(r.se_v), r.pass ? "1" : "0"});
    manifest.add_output(dir + "/ergodic.csv");

    if (sect.coupled_series) {
        adns::SolverConfig run = cfg.solver;
        run.t_final = sect.series_horizon;
        run.output_every = static_cast<int>(std::lround(sect.stride / run.dt));
        run.storage = adns::FieldStorage::samples;
        adns::SpectralVelocity u0 = adns::make_initial(run.grid, run.init, run.seed);
        adns::SpectralVelocity v0 = adns::make_initial(run.grid, sect.v_init, run.seed);
        const adns::CoupledResult coupled = adns::simulate_coupled(run, std::move(u0), std::move(v0));
        const adns::CesaroSeries series = adns::coupling_limit_series(coupled, phis);
        std::vector<std::string> cols = {"n", "t_n", "delta_l2"};
        for (const auto& id : series.ids) cols.push_back("cesaro_" + id);
        adns::CsvWriter scsv(dir + "/coupling_series.csv", cols);
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            std::vector<double> row = {static_cast<double>(i + 1), series.times[i],
                                       series.delta_l2[i]};
            for (const auto& c : series.cesaro) row.push_back(c[i]);
            scsv.write_row(row);
        }
        manifest.add_output(dir + "/coupling_series.csv");
    }

    const bool ok = report.all_pass();
    manifest.add_verdict("ergodic", ok ? "pass" : "gap-violation");
    const int code = ok ? kExitOk : kExitBoundViolation;
    manifest.write(dir + "/manifest.json", code);
    std::cout << "ergodic: " << report.rows.size() << " observables, "
              << (ok ? "all gaps within budget" : "GAP VIOLATION") << "\n";
    return code;
}

int cmd_gn_check(const CommonOpts& opts) {
    adns::RunConfig cfg = load(opts);
    const adns::GnSection sect = cfg.gn.value_or(adns::GnSection{});
    const std::string dir = resolve_out_dir(opts, cfg);
    std::filesystem::create_directories(dir);
    adns::RunManifest manifest("gn-check", opts.config_path, cfg.solver.seed);
    manifest.set_config_snapshot(cfg.raw_text);

    std::vector<adns::GnPairing> rows(sect.pairs);
    adns::parallel_for(sect.pairs, opts.threads, [&](long i) {
        const adns::SpectralVelocity u =
            adns::random_divfree_field(cfg.solver.grid, adns::derive_seed(cfg.solver.seed, 2 * i),
                                       sect.spectrum_exponent, sect.amplitude);
        const adns::SpectralVelocity d =
            adns::random_divfree_field(cfg.solver.grid, adns::derive_seed(cfg.solver.seed, 2 * i + 1),
                                       sect.spectrum_exponent, sect.amplitude);
        rows[i] = adns::gn_pairing_check(u, d);
    });

    adns::CsvWriter csv(dir + "/gn_report.csv", {"sample", "lhs", "rhs_unit", "ratio"});
    double max_ratio = 0.0;
    for (long i = 0; i < sect.pairs; ++i) {
        csv.write_row({static_cast<double>(i), rows[i].lhs, rows[i].rhs_unit, rows[i].ratio()});
        max_ratio = std::max(max_ratio, rows[i].ratio());
    }
    manifest.add_output(dir + "/gn_report.csv");
    manifest.add_verdict("max_ratio", adns::format_full(max_ratio));
    manifest.write(dir + "/manifest.json", kExitOk);
    std::cout << "gn-check: " << sect.pairs << " pairs, max ratio " << max_ratio << "\n";
    return kExitOk;
}

int cmd_calibrate(const CommonOpts& opts) {
    adns::RunConfig cfg = load(opts);
    const adns::CalibrateSection sect = cfg.calibrate.value_or(adns::CalibrateSection{});
    const std::string dir = resolve_out_dir(opts, cfg);
    std::filesystem::create_directories(dir);
    adns::RunManifest manifest("calibrate", opts.config_path, cfg.solver.seed);
    manifest.set_config_snapshot(cfg.raw_text);

    struct Cell {
        double lambda, noise_scale, amplitude;
        int salt;
    };
    std::vector<Cell> cells;
    int salt = 0;
    for (double lambda : sect.lambdas)
        for (double ns : sect.noise_scales)
            for (double amp : sect.amplitudes)
                for (int s = 0; s < sect.seeds_per_cell; ++s) cells.push_back({lambda, ns, amp, salt++});

    std::vector<adns::CoupledRunSummary> ensemble(cells.size());
    adns::parallel_for(static_cast<long>(cells.size()), opts.threads, [&](long i) {
        const Cell& cell = cells[i];
        adns::SolverConfig run = cfg.solver;
        run.lambda = cell.lambda;
        run.t_final = sect.horizon;
        run.storage = adns::FieldStorage::none;
        run.sigma = cfg.solver.sigma.scaled(cell.noise_scale);
        adns::InitSpec u0_spec{adns::InitSpec::Kind::random_divfree, 3.0, cell.amplitude, 0.0,
                               static_cast<std::uint64_t>(2 * cell.salt), ""};
        adns::SpectralVelocity u0 = adns::make_initial(run.grid, u0_spec, run.seed);
        adns::SpectralVelocity v0(run.grid);
        if (cell.salt % 2 == 0) {
            adns::InitSpec v0_spec{adns::InitSpec::Kind::random_divfree, 3.0,
                                   0.7 * cell.amplitude, 0.0,
                                   static_cast<std::uint64_t>(2 * cell.salt + 1), ""};
            v0 = adns::make_initial(run.grid, v0_spec, run.seed);
        } else {
            // shear-offset pair: the separation sits on the k1 = 0 line where
            // only the damping dissipates, the binding direction of the bound
            v0 = u0;
            v0.comp1().at(0, 1) += adns::Complex(0.0, 0.25 * cell.amplitude);
            v0.comp1().at(0, run.grid.n_v - 1) += adns::Complex(0.0, -0.25 * cell.amplitude);
        }
        const adns::CoupledResult result = adns::simulate_coupled(
            run, std::move(u0), std::move(v0), {}, static_cast<std::uint64_t>(cell.salt));
        const double R = sect.r_over_k * std::max(run.sigma.k_h1(), 1e-3);
        ensemble[i] = adns::summarize_coupled_run(static_cast<int>(i), result, R);
    });

    const adns::CalibratedConstants constants = adns::calibrate_constants(ensemble);

    adns::CsvWriter csv(dir + "/calibration.csv",
                        {"run", "lambda", "K", "R", "u0_h1_sq", "delta0_l2_sq"});
    for (const auto& run : ensemble)
        csv.write_row({static_cast<double>(run.run_id), run.lambda, run.K, run.R, run.u0_h1_sq,
                       run.delta0_l2_sq});
    adns::CsvWriter ccsv(dir + "/constants.csv", {"c0_hat", "c2_hat", "c0_run", "c2_run"});
    ccsv.write_row({constants.c0, constants.c2, static_cast<double>(constants.c0_run_id),
                    static_cast<double>(constants.c2_run_id)});

    manifest.add_output(dir + "/calibration.csv");
    manifest.add_output(dir + "/constants.csv");
    manifest.add_verdict("c0_hat", adns::format_full(constants.c0));
    manifest.add_verdict("c2_hat", adns::format_full(constants.c2));
    manifest.write(dir + "/manifest.json", kExitOk);
    std::cout << "calibrate: C0_hat = " << constants.c0 << " (run " << constants.c0_run_id
              << "), C2_hat = " << constants.c2 << " (run " << constants.c2_run_id << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral simulator and verification harness for the stochastic damped "
                 "anisotropic Navier-Stokes system"};
    app.set_version_flag("--version", std::string("adns ") + adns::kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    int (*handler)(const CommonOpts&) = nullptr;
    auto register_cmd = [&](const std::string& name, const std::string& desc,
                            int (*fn)(const CommonOpts&)) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common(cmd, opts);
        cmd->callback([&handler, fn]() { handler = fn; });
    };
    register_cmd("simulate", "integrate one trajectory and write its energy ledger", cmd_simulate);
    register_cmd("couple", "same-noise pair and the contraction bound", cmd_couple);
    register_cmd("tails", "Monte Carlo tail-bound verification", cmd_tails);
    register_cmd("ergodic", "long-run observable averages from two initial conditions", cmd_ergodic);
    register_cmd("gn-check", "empirical anisotropic interpolation constants", cmd_gn_check);
    register_cmd("calibrate", "calibrate the coupling constants over an ensemble", cmd_calibrate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        return handler(opts);
    } catch (const adns::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const adns::BlowupError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return kExitBlowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
