#include "decoh/runner.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "decoh/collision.hpp"
#include "decoh/diagnostics.hpp"
#include "decoh/evolution.hpp"
#include "decoh/io.hpp"
#include "decoh/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decoh {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void append_row(std::string& s, std::initializer_list<double> vals) {
    bool first = true;
    for (const double v : vals) {
        if (!first) s += ',';
        s += fmt_sci(v);
        first = false;
    }
    s += '\n';
}

AmplitudeTable build_table(const RunConfig& cfg) {
    return build_amplitude_table(cfg.potential, momentum_grid_for(cfg.packet, cfg.n_k),
                                 cfg.bvp_points);
}

std::string timeseries_csv(const std::vector<TimeseriesRow>& rows) {
    std::string s = "step,t,trace,herm_defect,momentum,kinetic_energy,visibility\n";
    s.reserve(s.size() + rows.size() * 160);
    for (const auto& r : rows) {
        s += std::to_string(r.step);
        s += ',';
        append_row(s, {r.t, r.trace, r.herm_defect, r.momentum, r.kinetic_energy, r.visibility});
    }
    return s;
}

void write_snapshot_files(const std::string& out_dir, const GridSpec& grid,
                          const std::vector<SnapshotRecord>& snaps,
                          std::vector<std::string>& outputs) {
    for (const auto& rec : snaps) {
        const std::string tag = std::to_string(rec.step);

        std::string d = "X,rho_diag\n";
        d.reserve(d.size() + grid.J * 50);
        for (std::size_t j = 0; j < grid.J; ++j)
            append_row(d, {grid.node(j), rec.rho.at(j, j).real()});
        const std::string dname = "density_t" + tag + ".csv";
        write_text_file(out_dir + "/" + dname, d);
        outputs.push_back(dname);

        std::string m = "X,X_prime,abs_rho\n";
        m.reserve(m.size() + grid.J * grid.J * 72);
        for (std::size_t i = 0; i < grid.J; ++i)
            for (std::size_t j = 0; j < grid.J; ++j)
                append_row(m, {grid.node(i), grid.node(j), std::abs(rec.rho.at(i, j))});
        const std::string mname = "rho_abs_t" + tag + ".csv";
        write_text_file(out_dir + "/" + mname, m);
        outputs.push_back(mname);
    }
}

int finish(const std::string& out_dir, const std::string& command, const RunConfig& cfg,
           const std::vector<CheckResult>& checks,
           const std::vector<std::pair<std::string, double>>& timings,
           const std::vector<std::string>& outputs, bool emit_plots) {
    write_manifest(out_dir, command, canonical_config_json(cfg), checks, timings, outputs);
    if (emit_plots) emit_plot_scripts(out_dir, outputs);
    int rc = 0;
    for (const auto& c : checks) {
        if (!c.pass) {
            std::cerr << "invariant violation: " << c.name << '\n';
            rc = 3;
        }
    }
    return rc;
}

// Free transport and the collision scenario share everything but the
// schedule.
int run_transport(const RunConfig& cfg, const std::string& out_dir, bool emit_plots,
                  bool with_collisions, const std::string& command) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);

    CollisionSchedule sched = cfg.schedule;
    if (!with_collisions) sched.N = 0;

    ScenarioOptions opt;
    opt.snapshots = cfg.snapshots;
    opt.vis_lo = cfg.vis_lo;
    opt.vis_hi = cfg.vis_hi;
    opt.n_k = cfg.n_k;
    opt.bvp_points = cfg.bvp_points;

    const auto t_run = Clock::now();
    const ScenarioResult res = run_scenario(cfg.heavy, cfg.grid, cfg.time, cfg.mass,
                                            cfg.potential, cfg.packet, sched, opt);
    const double run_s = since(t_run);

    double worst_trace = 0.0, worst_herm = 0.0;
    for (const auto& r : res.timeseries) {
        worst_trace = std::max(worst_trace, std::abs(r.trace - 1.0));
        worst_herm = std::max(worst_herm, r.herm_defect);
    }

    std::vector<CheckResult> checks;
    if (sched.N > 0) {
        checks.push_back({"amplitude table invariants", true});
        checks.push_back({"collision kernel invariants", true});
    }
    checks.push_back({"trace drift <= 1e-9", worst_trace <= 1e-9});
    checks.push_back({"hermiticity defect <= 1e-9", worst_herm <= 1e-9});

    const auto t_io = Clock::now();
    std::vector<std::string> outputs;
    write_text_file(out_dir + "/timeseries.csv", timeseries_csv(res.timeseries));
    outputs.push_back("timeseries.csv");
    write_snapshot_files(out_dir, cfg.grid, res.snapshots, outputs);
    const double io_s = since(t_io);

    return finish(out_dir, command, cfg, checks,
                  {{"run", run_s}, {"io", io_s}, {"total", since(t0)}}, outputs, emit_plots);
}

std::vector<std::size_t> parse_step_list(const std::string& arg) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
        const std::size_t comma = arg.find(',', pos);
        std::string tok = arg.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size())
            throw config_error("--snapshots: '" + tok + "' is not a step index");
        out.push_back(std::size_t(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int cmd_amplitudes(const RunConfig& cfg, const std::string& out_dir, bool emit_plots) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);

    const auto t_build = Clock::now();
    const AmplitudeTable table = build_table(cfg);
    const double build_s = since(t_build);

    std::string s = "k,re_r,im_r,re_t,im_t,abs_r_sq\n";
    s.reserve(s.size() + table.grid.size() * 140);
    for (std::size_t i = 0; i < table.grid.size(); ++i)
        append_row(s, {table.grid.k[i], table.r[i].real(), table.r[i].imag(), table.t[i].real(),
                       table.t[i].imag(), std::norm(table.r[i])});
    write_text_file(out_dir + "/amplitudes.csv", s);

    return finish(out_dir, "amplitudes", cfg, {{"amplitude table invariants", true}},
                  {{"build", build_s}, {"total", since(t0)}}, {"amplitudes.csv"}, emit_plots);
}

int cmd_kernel(const RunConfig& cfg, const std::string& out_dir, bool emit_plots) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);

    const auto t_build = Clock::now();
    const AmplitudeTable table = build_table(cfg);
    const CollisionKernel kernel = build_collision_kernel(table, cfg.packet, cfg.grid);
    const double build_s = since(t_build);

    const std::size_t J = cfg.grid.J;
    std::string s = "X,X_prime,re_I,im_I,abs_I\n";
    s.reserve(s.size() + J * J * 120);
    for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j)
            append_row(s, {cfg.grid.node(i), cfg.grid.node(j), kernel.at(i, j).real(),
                           kernel.at(i, j).imag(), std::abs(kernel.at(i, j))});
    write_text_file(out_dir + "/kernel.csv", s);

    std::string a = "X,abs_I\n";
    a.reserve(a.size() + J * 50);
    for (std::size_t i = 0; i < J; ++i)
        append_row(a, {cfg.grid.node(i), std::abs(kernel.at(i, J - 1 - i))});
    write_text_file(out_dir + "/kernel_antidiag.csv", a);

    return finish(out_dir, "kernel", cfg,
                  {{"amplitude table invariants", true}, {"collision kernel invariants", true}},
                  {{"build", build_s}, {"total", since(t0)}},
                  {"kernel.csv", "kernel_antidiag.csv"}, emit_plots);
}

int cmd_evolve(const RunConfig& cfg, const std::string& out_dir, bool emit_plots) {
    return run_transport(cfg, out_dir, emit_plots, false, "evolve");
}

int cmd_scenario(const RunConfig& cfg, const std::string& out_dir, bool emit_plots) {
    return run_transport(cfg, out_dir, emit_plots, true, "scenario");
}

int cmd_validate(const RunConfig& cfg, const std::string& out_dir, bool emit_plots) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);

    const auto t_study = Clock::now();
    const ConvergenceStudy study = convergence_study(cfg.oracle);
    const double study_s = since(t_study);

    std::string s = "tau,l2_error,fitted_slope\n";
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
        s += fmt_sci(study.rows[i].tau);
        s += ',';
        s += fmt_sci(study.rows[i].l2_error);
        s += ',';
        if (i + 1 == study.rows.size()) s += fmt_sci(study.fitted_slope);
        s += '\n';
    }
    write_text_file(out_dir + "/oracle_convergence.csv", s);

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < study.rows.size(); ++i)
        if (study.rows[i + 1].l2_error > 1.1 * study.rows[i].l2_error) monotone = false;
    bool rate_ok = true;
    if (study.rows.size() >= 2) {
        const auto& a = study.rows.front();
        const auto& b = study.rows.back();
        rate_ok = b.l2_error <= 1.05 * a.l2_error * std::pow(b.tau / a.tau, -0.25);
    }
    const std::vector<CheckResult> checks = {
        {"oracle errors monotone in tau (within 10%)", monotone},
        {"oracle log-log slope <= -0.2", study.rows.size() < 2 || study.fitted_slope <= -0.2},
        {"oracle error consistent with the tau^(-1/4) rate", rate_ok},
    };
    return finish(out_dir, "validate", cfg, checks,
                  {{"study", study_s}, {"total", since(t0)}}, {"oracle_convergence.csv"},
                  emit_plots);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"decoh1d: collisional decoherence of a heavy particle on a line"};
    app.require_subcommand(1);

    std::string config_path, out_override, snapshots_arg;
    int threads = 0;
    bool plots = false;
    const auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path, "JSON configuration file (omit for defaults)");
        c->add_option("--out", out_override, "output directory (overrides the config)");
        c->add_option("--snapshots", snapshots_arg,
                      "comma-separated snapshot steps (overrides the config)");
        c->add_option("--threads", threads,
                      "worker threads, 0 = runtime default (results are thread-count independent)");
        c->add_flag("--emit-plots", plots, "also write gnuplot scripts next to the CSVs");
    };

    CLI::App* sub_amp =
        app.add_subcommand("amplitudes", "tabulate r_k, t_k for the configured potential");
    CLI::App* sub_ker = app.add_subcommand("kernel", "assemble the collision kernel on the grid");
    CLI::App* sub_evo =
        app.add_subcommand("evolve", "free transport of the initial state (no collisions)");
    CLI::App* sub_sce =
        app.add_subcommand("scenario", "scheduled collisions interleaved with free transport");
    CLI::App* sub_val = app.add_subcommand("validate", "finite-time propagator convergence study");
    for (CLI::App* c : {sub_amp, sub_ker, sub_evo, sub_sce, sub_val}) add_common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = parse_config(read_text_file(config_path));
        if (!snapshots_arg.empty()) cfg.snapshots = parse_step_list(snapshots_arg);
        if (!out_override.empty()) cfg.out_dir = out_override;
        cfg.validate();

        if (threads < 0) throw config_error("--threads must be >= 0");
        if (threads > 0) {
#ifdef _OPENMP
            omp_set_num_threads(threads);
#endif
        }

        if (sub_amp->parsed()) return cmd_amplitudes(cfg, cfg.out_dir, plots);
        if (sub_ker->parsed()) return cmd_kernel(cfg, cfg.out_dir, plots);
        if (sub_evo->parsed()) return cmd_evolve(cfg, cfg.out_dir, plots);
        if (sub_sce->parsed()) return cmd_scenario(cfg, cfg.out_dir, plots);
        if (sub_val->parsed()) return cmd_validate(cfg, cfg.out_dir, plots);
        return 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace decoh
