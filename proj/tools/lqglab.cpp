// SPDX-License-Identifier: Apache-2.0
//
// lqglab — numerical laboratory for the spectrum of the Liouville
// Green operator: Gaussian free field sampling, multiplicative-chaos
// measures, Nystrom eigenproblems, Weyl-law and heat-trace estimation,
// Liouville Brownian motion Monte Carlo, and spacing statistics.

#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "lqg/runner.hpp"

namespace {

void add_common_options(CLI::App* cmd, lqg::ExperimentConfig& cfg) {
    cmd->add_option("--kind,--domain.kind", cfg.domain, "Domain: disc | square")
        ->capture_default_str();
    cmd->add_option("--cutoff,--domain.series_cutoff", cfg.series_cutoff,
                    "Green series modes per axis (square)")
        ->capture_default_str();
    cmd->add_option("--n,--domain.n", cfg.n, "Grid resolution per axis")
        ->capture_default_str();
    cmd->add_option("--gamma,--field.gamma", cfg.gamma, "Coupling constant in [0,2)")
        ->capture_default_str();
    cmd->add_option("--seed,--run.seed", cfg.base_seed, "Base seed")->capture_default_str();
    cmd->add_option("--replicas,--run.replicas", cfg.replicas, "Independent field replicas")
        ->capture_default_str();
    cmd->add_option("--threads,--run.threads", cfg.threads,
                    "Worker pool size (0 = hardware)")
        ->capture_default_str();
    cmd->add_option("--out,--run.out", cfg.out_dir,
                    "Output directory (default $LQGLAB_OUT or ./out)");
    cmd->add_option("--window-lo,--spectral.window_lo", cfg.window_lo,
                    "Bulk window lower fraction")
        ->capture_default_str();
    cmd->add_option("--window-hi,--spectral.window_hi", cfg.window_hi,
                    "Bulk window upper fraction")
        ->capture_default_str();
    cmd->add_flag("--strict,--run.strict", cfg.strict,
                  "Exit 4 when diagnostics are raised");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liouville quantum gravity spectral laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (INI, flat sections per module)");
    app.fallthrough();

    lqg::ExperimentConfig cfg;
    std::map<std::string, std::function<std::vector<std::string>(const lqg::ExperimentConfig&)>>
        dispatch;

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and eigenfunctions");
    add_common_options(spectrum, cfg);
    spectrum->add_option("--eigfunc", cfg.eigfunc_modes, "Write eigenfunction CSV for mode n");
    dispatch["spectrum"] = lqg::cmd_spectrum;

    auto* weyl = app.add_subcommand("weyl", "Ensemble Weyl-law report");
    add_common_options(weyl, cfg);
    dispatch["weyl"] = lqg::cmd_weyl;

    auto* heat = app.add_subcommand("heattrace", "Heat trace and plateau");
    add_common_options(heat, cfg);
    heat->add_option("--t-min,--heat.t_min", cfg.t_min, "Time grid start (0 = auto)");
    heat->add_option("--t-max,--heat.t_max", cfg.t_max, "Time grid end (0 = auto)");
    heat->add_option("--t-points,--heat.t_points", cfg.t_points, "Time grid size")
        ->capture_default_str();
    heat->add_option("--fit-lo,--heat.fit_lo", cfg.fit_lo,
                     "Boundary-fit window start (0 = auto)");
    heat->add_option("--fit-hi,--heat.fit_hi", cfg.fit_hi,
                     "Boundary-fit window end (0 = auto)");
    dispatch["heattrace"] = lqg::cmd_heattrace;

    auto* spacing = app.add_subcommand("spacing", "Unfolded spacing statistics");
    add_common_options(spacing, cfg);
    spacing->add_option("--spectrum,--spacing.spectrum_file", cfg.spectrum_file,
                        "Reuse a stored spectrum CSV");
    dispatch["spacing"] = lqg::cmd_spacing;

    auto* que = app.add_subcommand("que", "Quantum-ergodicity diagnostics");
    add_common_options(que, cfg);
    que->add_option("--partition,--que.partition", cfg.que_partition, "Macro-cells per axis")
        ->capture_default_str();
    que->add_option("--modes,--que.modes", cfg.eigfunc_modes, "Eigenfunction indices");
    dispatch["que"] = lqg::cmd_que;

    auto* lbm = app.add_subcommand("lbm", "Liouville Brownian motion Monte Carlo");
    add_common_options(lbm, cfg);
    lbm->add_option("--paths,--mc.n_paths", cfg.mc.n_paths, "Occupation-check paths")
        ->capture_default_str();
    lbm->add_option("--bridges,--mc.n_bridges", cfg.mc.n_bridges,
                    "Bridge-identity samples (0 = skip)")
        ->capture_default_str();
    lbm->add_option("--dt,--mc.dt", cfg.mc.dt, "Base time step")->capture_default_str();
    lbm->add_option("--u-points,--mc.u_points", cfg.mc.u_points, "Bridge duration grid size")
        ->capture_default_str();
    lbm->add_option("--u-min,--mc.u_min", cfg.mc.u_min, "Shortest bridge duration")
        ->capture_default_str();
    lbm->add_option("--u-max,--mc.u_max", cfg.mc.u_max, "Longest bridge duration")
        ->capture_default_str();
    lbm->add_option("--lambda,--mc.lambda", cfg.lbm_lambda,
                    "Spectral parameter (0 = median eigenvalue)");
    dispatch["lbm"] = lqg::cmd_lbm;

    auto* kpz = app.add_subcommand("kpz", "KPZ exponent solver");
    kpz->add_option("--x,--kpz.x", cfg.kpz_x, "Euclidean scaling exponent in (0,1]")
        ->capture_default_str();
    kpz->add_option("--gamma,--field.gamma", cfg.gamma, "Coupling constant in [0,2)")
        ->capture_default_str();
    kpz->add_option("--out,--run.out", cfg.out_dir, "Output directory");
    kpz->add_flag("--strict,--run.strict", cfg.strict, "Exit 4 on diagnostics");
    dispatch["kpz"] = lqg::cmd_kpz;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const auto diagnostics = dispatch.at(sub->get_name())(cfg);
        if (!diagnostics.empty() && cfg.strict) {
            std::cerr << "lqglab: " << diagnostics.size()
                      << " diagnostic flag(s) raised under --strict\n";
            return 4;
        }
        return 0;
    } catch (const lqg::ConfigError& e) {
        std::cerr << "lqglab: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const lqg::NumericalError& e) {
        std::cerr << "lqglab: numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "lqglab: error: " << e.what() << "\n";
        return 3;
    }
}
