// SPDX-License-Identifier: Apache-2.0
#include "lqg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include <json.hpp>

#include "lqg/chaos.hpp"
#include "lqg/heat.hpp"
#include "lqg/io.hpp"
#include "lqg/lbm.hpp"
#include "lqg/pipeline.hpp"

namespace lqg {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct RunContext {
    std::string command;
    std::string dir;
    std::string run_id;
    std::string config_hash;
    json record;
    std::vector<std::string> outputs;
    std::vector<std::string> diagnostics;
    Clock::time_point t0 = Clock::now();

    RunContext(const std::string& cmd, const ExperimentConfig& cfg) : command(cmd) {
        cfg.validate();
        dir = cfg.resolved_out_dir();
        std::filesystem::create_directories(dir);
        config_hash = hex64(fnv1a(cfg.canonical()));
        run_id = hex64(fnv1a(std::string(kArtifactVersion) + ";" + cmd + ";" +
                             cfg.canonical() + ";seed=" + std::to_string(cfg.base_seed)));
        record["run_id"] = run_id;
        record["config_hash"] = config_hash;
        record["artifact_version"] = kArtifactVersion;
        record["command"] = cmd;
        record["config"] = json::parse(config_json(cfg));
        record["wall_clock_s"] = json::object();
        record["diagnostics"] = json::array();
    }

    static std::string config_json(const ExperimentConfig& c) {
        json j;
        j["domain"] = c.domain;
        j["series_cutoff"] = c.series_cutoff;
        j["n"] = c.n;
        j["gamma"] = c.gamma;
        j["base_seed"] = c.base_seed;
        j["replicas"] = c.replicas;
        j["window"] = {c.window_lo, c.window_hi};
        j["t_grid"] = {c.t_min, c.t_max, c.t_points};
        j["fit_window"] = {c.fit_lo, c.fit_hi};
        j["que_partition"] = c.que_partition;
        j["eigfunc_modes"] = c.eigfunc_modes;
        j["mc"] = {{"n_paths", c.mc.n_paths},
                   {"n_bridges", c.mc.n_bridges},
                   {"dt", c.mc.dt},
                   {"u_points", c.mc.u_points},
                   {"u_min", c.mc.u_min},
                   {"u_max", c.mc.u_max}};
        j["lbm_lambda"] = c.lbm_lambda;
        j["diag_t"] = c.diag_t;
        j["kpz_x"] = c.kpz_x;
        j["spectrum_file"] = c.spectrum_file;
        j["threads"] = c.threads;
        j["strict"] = c.strict;
        return j.dump();
    }

    std::string path(const std::string& name) {
        outputs.push_back(name);
        return dir + "/" + name;
    }

    std::string comment(const std::string& extra = "") const {
        std::string c = "run_id=" + run_id + " config_hash=" + config_hash;
        if (!extra.empty()) c += " " + extra;
        return c;
    }

    void flag(const std::string& text) {
        diagnostics.push_back(text);
        std::cerr << "[lqg] diagnostic: " << text << "\n";
    }

    void stage_done(const std::string& name, Clock::time_point since) {
        record["wall_clock_s"][name] =
            std::chrono::duration<double>(Clock::now() - since).count();
    }

    void finish(json summary) {
        record["summary"] = std::move(summary);
        record["outputs"] = outputs;
        for (const auto& d : diagnostics) record["diagnostics"].push_back(d);
        record["wall_clock_s"]["total"] =
            std::chrono::duration<double>(Clock::now() - t0).count();
        std::ofstream out(dir + "/record_" + command + ".json");
        out << record.dump(2) << "\n";
    }
};

template <class Fn>
auto run_stage(RunContext& ctx, const std::string& name, Fn&& fn) {
    const auto t0 = Clock::now();
    try {
        auto out = fn();
        ctx.stage_done(name, t0);
        return out;
    } catch (const NumericalError& e) {
        throw NumericalError("stage " + name + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError("stage " + name + ": " + e.what());
    }
}

std::vector<double> heat_time_grid(const ExperimentConfig& cfg,
                                   const LiouvilleSpectrum& spec, double& trusted_floor) {
    const auto P = static_cast<int>(spec.size());
    const int n_hi = std::max(1, std::min(P, static_cast<int>(std::floor(cfg.window_hi * P))));
    const double lambda_hi = spec.lambdas[n_hi - 1];
    trusted_floor = 1.0 / lambda_hi;
    const double tmin = cfg.t_min > 0.0 ? cfg.t_min : 0.05 / lambda_hi;
    const double tmax = cfg.t_max > 0.0 ? cfg.t_max : 5.0 / spec.lambdas[0];
    return log_spaced_times(tmin, tmax, cfg.t_points);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg) {
    RunContext ctx("spectrum", cfg);
    const auto params = CouplingParams::make(cfg.gamma);
    const Workspace ws =
        run_stage(ctx, "workspace", [&] { return make_workspace(cfg.domain_spec(), cfg.n); });
    const Replica rep = run_stage(ctx, "field",
                                  [&] { return sample_replica(ws, params, cfg.base_seed); });
    const LiouvilleSpectrum spec =
        run_stage(ctx, "spectral", [&] { return replica_spectrum(ws, rep); });
    if (spec.clamped > 0)
        ctx.flag("clamped " + std::to_string(spec.clamped) + " nonpositive eigenvalues");

    char meta[160];
    std::snprintf(meta, sizeof meta, "gamma=%.17g mu_total=%.17g jitter=%.3g P=%zu",
                  cfg.gamma, rep.measure.total, ws.cov.jitter_used, spec.size());
    CsvWriter csv(ctx.path("spectrum.csv"), ctx.comment(meta), "n,lambda,mu_n");
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double l = spec.lambdas[static_cast<Eigen::Index>(k)];
        csv.row({std::to_string(k + 1), CsvWriter::num(l), CsvWriter::num(1.0 / l)});
    }
    write_field_snapshot(ctx.path("field.lqgf"), rep.field.values, rep.measure.weights);

    for (int mode : cfg.eigfunc_modes) {
        if (mode < 1 || static_cast<std::size_t>(mode) > spec.size())
            throw ConfigError("eigfunc mode out of range: " + std::to_string(mode));
        CsvWriter ef(ctx.path("eigfunc_" + std::to_string(mode) + ".csv"),
                     ctx.comment("mode=" + std::to_string(mode)), "i,x1,x2,f_n");
        for (std::size_t i = 0; i < ws.grid.size(); ++i)
            ef.row({std::to_string(i), CsvWriter::num(ws.grid.points[i].x),
                    CsvWriter::num(ws.grid.points[i].y),
                    CsvWriter::num(spec.eigfuncs(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(mode - 1)))});
    }

    json summary;
    summary["P"] = spec.size();
    summary["mu_total"] = rep.measure.total;
    summary["lambda_1"] = spec.lambdas[0];
    summary["jitter_used"] = ws.cov.jitter_used;
    ctx.record["replica_seeds"] = {cfg.base_seed};
    ctx.finish(summary);
    return ctx.diagnostics;
}

std::vector<std::string> cmd_weyl(const ExperimentConfig& cfg) {
    RunContext ctx("weyl", cfg);
    const auto params = CouplingParams::make(cfg.gamma);
    const Workspace ws =
        run_stage(ctx, "workspace", [&] { return make_workspace(cfg.domain_spec(), cfg.n); });

    struct Row {
        std::uint64_t seed;
        double mu_total;
        WeylFit fit;
        std::vector<double> lambdas;
    };
    std::vector<Row> rows(static_cast<std::size_t>(cfg.replicas));
    run_stage(ctx, "replicas", [&] {
        parallel_for(static_cast<std::size_t>(cfg.replicas), [&](std::size_t r) {
            const std::uint64_t seed = cfg.base_seed + r;
            const Replica rep = sample_replica(ws, params, seed);
            const LiouvilleSpectrum spec = replica_spectrum(ws, rep);
            rows[r].seed = seed;
            rows[r].mu_total = rep.measure.total;
            rows[r].fit = weyl_fit(spec, params, {cfg.window_lo, cfg.window_hi});
            rows[r].lambdas.assign(spec.lambdas.begin(), spec.lambdas.end());
        }, cfg.threads);
        return 0;
    });

    CsvWriter csv(ctx.path("weyl.csv"), ctx.comment(),
                  "replica,seed,mu_total,c_hat,discrepancy,polya_fraction");
    std::vector<double> slopes;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        slopes.push_back(row.fit.slope);
        csv.row({std::to_string(r), std::to_string(row.seed), CsvWriter::num(row.mu_total),
                 CsvWriter::num(row.fit.slope), CsvWriter::num(row.fit.discrepancy),
                 CsvWriter::num(row.fit.polya_fraction)});
    }
    // ensemble variance of N(lambda) at probe values taken from the
    // first replica's window quantiles
    const auto& l0 = rows[0].lambdas;
    const int P0 = static_cast<int>(l0.size());
    const int lo = std::max(1, static_cast<int>(std::ceil(cfg.window_lo * P0)));
    const int hi = std::min(P0, static_cast<int>(std::floor(cfg.window_hi * P0)));
    json probes = json::array();
    std::string probe_text;
    for (double q : {0.25, 0.5, 0.75}) {
        const double lambda_probe =
            l0[static_cast<std::size_t>(lo + q * (hi - lo)) - 1] * rows[0].mu_total;
        double mean = 0.0, var = 0.0;
        std::vector<double> ns;
        for (const auto& row : rows) {
            const double scaled_probe = lambda_probe / row.mu_total;
            const auto count = std::upper_bound(row.lambdas.begin(), row.lambdas.end(),
                                                scaled_probe) -
                               row.lambdas.begin();
            ns.push_back(static_cast<double>(count));
        }
        for (double v : ns) mean += v;
        mean /= static_cast<double>(ns.size());
        for (double v : ns) var += (v - mean) * (v - mean);
        var /= std::max<std::size_t>(1, ns.size() - 1);
        probes.push_back({{"lambda_mu", lambda_probe}, {"mean_N", mean}, {"var_N", var}});
        probe_text += " var_N(" + CsvWriter::num(lambda_probe) + ")=" + CsvWriter::num(var);
    }
    const double med = median(slopes);
    double mean_slope = std::accumulate(slopes.begin(), slopes.end(), 0.0) /
                        static_cast<double>(slopes.size());
    csv.comment("aggregate median_c_hat=" + CsvWriter::num(med) +
                " mean_c_hat=" + CsvWriter::num(mean_slope) +
                " c_gamma=" + CsvWriter::num(params.weyl_const) + probe_text);

    json summary;
    summary["median_c_hat"] = med;
    summary["mean_c_hat"] = mean_slope;
    summary["c_gamma"] = params.weyl_const;
    summary["probes"] = probes;
    json seeds = json::array();
    for (const auto& row : rows) seeds.push_back(row.seed);
    ctx.record["replica_seeds"] = seeds;
    ctx.finish(summary);
    return ctx.diagnostics;
}

std::vector<std::string> cmd_heattrace(const ExperimentConfig& cfg) {
    RunContext ctx("heattrace", cfg);
    const auto params = CouplingParams::make(cfg.gamma);
    const Workspace ws =
        run_stage(ctx, "workspace", [&] { return make_workspace(cfg.domain_spec(), cfg.n); });

    double trusted_floor = 0.0;
    std::vector<double> times;
    std::vector<double> mean_scaled, mean_values;
    double mean_mu = 0.0;
    json seeds = json::array();
    run_stage(ctx, "replicas", [&] {
        for (int r = 0; r < cfg.replicas; ++r) {
            const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(r);
            seeds.push_back(seed);
            const Replica rep = sample_replica(ws, params, seed);
            const LiouvilleSpectrum spec = replica_spectrum(ws, rep);
            if (r == 0) times = heat_time_grid(cfg, spec, trusted_floor);
            const HeatTrace tr = heat_trace(spec, times, trusted_floor);
            if (r == 0) {
                mean_scaled.assign(times.size(), 0.0);
                mean_values.assign(times.size(), 0.0);
            }
            for (std::size_t k = 0; k < times.size(); ++k) {
                mean_scaled[k] += tr.scaled[k] / cfg.replicas;
                mean_values[k] += tr.values[k] / cfg.replicas;
            }
            mean_mu += rep.measure.total / cfg.replicas;
        }
        return 0;
    });

    HeatTrace mean_trace;
    mean_trace.times = times;
    mean_trace.values = mean_values;
    mean_trace.scaled = mean_scaled;
    for (double t : times) mean_trace.trusted.push_back(t >= trusted_floor ? 1 : 0);
    const PlateauEstimate plateau = plateau_estimate(mean_trace, params, mean_mu);
    if (!plateau.plateau_found) ctx.flag("no plateau at this resolution");

    // the boundary correction lives between the plateau and the
    // lowest-mode decay scale (t_max was anchored at 5/lambda_1)
    const double c_est = params.weyl_const * mean_mu;
    const double auto_lo = 4.0 * plateau.t_star;
    const double auto_hi = times.back() / 10.0;
    const BoundaryFit bfit = boundary_correction_fit(
        times, mean_scaled, c_est, cfg.fit_lo > 0.0 ? cfg.fit_lo : auto_lo,
        cfg.fit_hi > 0.0 ? cfg.fit_hi : auto_hi);
    if (!bfit.valid) ctx.flag("boundary fit skipped: nonpositive residuals in window");

    char meta[200];
    std::snprintf(meta, sizeof meta,
                  "gamma=%.17g mu_total=%.17g replicas=%d trusted_floor=%.6g", cfg.gamma,
                  mean_mu, cfg.replicas, trusted_floor);
    CsvWriter csv(ctx.path("heattrace.csv"), ctx.comment(meta), "t,H,tH");
    for (std::size_t k = 0; k < times.size(); ++k)
        csv.row({CsvWriter::num(times[k]), CsvWriter::num(mean_values[k]),
                 CsvWriter::num(mean_scaled[k])});
    csv.comment("plateau t_star=" + CsvWriter::num(plateau.t_star) +
                " value=" + CsvWriter::num(plateau.value) +
                " ratio=" + CsvWriter::num(plateau.ratio) +
                (bfit.valid ? " alpha=" + CsvWriter::num(bfit.alpha) : ""));

    json summary;
    summary["plateau_t"] = plateau.t_star;
    summary["plateau_value"] = plateau.value;
    summary["plateau_ratio"] = plateau.ratio;
    summary["plateau_found"] = plateau.plateau_found;
    summary["kpz_delta_smooth"] = kpz_solve(0.5, cfg.gamma).delta;
    if (bfit.valid) {
        summary["boundary_alpha"] = bfit.alpha;
        summary["boundary_points"] = bfit.points_used;
    }
    ctx.record["replica_seeds"] = seeds;
    ctx.finish(summary);
    return ctx.diagnostics;
}

std::vector<std::string> cmd_spacing(const ExperimentConfig& cfg) {
    RunContext ctx("spacing", cfg);
    LiouvilleSpectrum spec;
    double gamma = cfg.gamma;
    if (!cfg.spectrum_file.empty()) {
        const SpectrumCsv file = run_stage(ctx, "load", [&] {
            return read_spectrum_csv(cfg.spectrum_file);
        });
        spec.lambdas = Eigen::Map<const Vec>(file.lambdas.data(),
                                             static_cast<Eigen::Index>(file.lambdas.size()));
        spec.mu_total = file.mu_total;
        gamma = file.gamma;
    } else {
        const auto params = CouplingParams::make(cfg.gamma);
        const Workspace ws = run_stage(ctx, "workspace",
                                       [&] { return make_workspace(cfg.domain_spec(), cfg.n); });
        const Replica rep = run_stage(ctx, "field",
                                      [&] { return sample_replica(ws, params, cfg.base_seed); });
        spec = run_stage(ctx, "spectral", [&] { return replica_spectrum(ws, rep); });
    }
    const auto params = CouplingParams::make(gamma);
    const SpacingStats st = run_stage(ctx, "spacing", [&] {
        return unfold_gaps(spec, params, {cfg.window_lo, cfg.window_hi});
    });

    char meta[160];
    std::snprintf(meta, sizeof meta, "gamma=%.17g mu_total=%.17g", gamma, spec.mu_total);
    CsvWriter csv(ctx.path("spacing.csv"), ctx.comment(meta), "j,s");
    for (std::size_t j = 0; j < st.gaps.size(); ++j)
        csv.row({std::to_string(st.n_lo + static_cast<int>(j)), CsvWriter::num(st.gaps[j])});
    csv.comment("ks_goe=" + CsvWriter::num(st.ks_goe) +
                " ks_poisson=" + CsvWriter::num(st.ks_poisson) +
                " mean_gap=" + CsvWriter::num(st.mean_gap) +
                " n_gaps=" + std::to_string(st.gaps.size()));

    json summary;
    summary["ks_goe"] = st.ks_goe;
    summary["ks_poisson"] = st.ks_poisson;
    summary["mean_gap"] = st.mean_gap;
    summary["n_gaps"] = st.gaps.size();
    ctx.record["replica_seeds"] = {cfg.base_seed};
    ctx.finish(summary);
    return ctx.diagnostics;
}

std::vector<std::string> cmd_que(const ExperimentConfig& cfg) {
    RunContext ctx("que", cfg);
    const auto params = CouplingParams::make(cfg.gamma);
    const Workspace ws =
        run_stage(ctx, "workspace", [&] { return make_workspace(cfg.domain_spec(), cfg.n); });
    const Replica rep = run_stage(ctx, "field",
                                  [&] { return sample_replica(ws, params, cfg.base_seed); });
    const LiouvilleSpectrum spec =
        run_stage(ctx, "spectral", [&] { return replica_spectrum(ws, rep); });

    std::vector<int> modes = cfg.eigfunc_modes;
    if (modes.empty()) {
        const auto P = static_cast<int>(spec.size());
        const int lo = std::max(1, static_cast<int>(std::ceil(cfg.window_lo * P)));
        const int hi = std::min(P, static_cast<int>(std::floor(cfg.window_hi * P)));
        for (int k = 0; k < 8; ++k) modes.push_back(lo + k * std::max(1, (hi - lo) / 7));
    }

    char meta[160];
    std::snprintf(meta, sizeof meta, "gamma=%.17g partition_k=%d", cfg.gamma,
                  cfg.que_partition);
    CsvWriter csv(ctx.path("que.csv"), ctx.comment(meta), "n,tv,ipr");
    json rows = json::array();
    for (int n : modes) {
        const QueReport rep_n = que_divergence(spec, ws.grid, n, cfg.que_partition);
        csv.row({std::to_string(n), CsvWriter::num(rep_n.tv_distance),
                 CsvWriter::num(rep_n.ipr)});
        rows.push_back({{"n", n}, {"tv", rep_n.tv_distance}, {"ipr", rep_n.ipr}});
    }
    json summary;
    summary["modes"] = rows;
    ctx.record["replica_seeds"] = {cfg.base_seed};
    ctx.finish(summary);
    return ctx.diagnostics;
}

std::vector<std::string> cmd_lbm(const ExperimentConfig& cfg) {
    RunContext ctx("lbm", cfg);
    const auto params = CouplingParams::make(cfg.gamma);
    const Workspace ws =
        run_stage(ctx, "workspace", [&] { return make_workspace(cfg.domain_spec(), cfg.n); });
    const Replica rep = run_stage(ctx, "field",
                                  [&] { return sample_replica(ws, params, cfg.base_seed); });

    const Point center = cfg.domain_spec().kind == DomainKind::UnitDisc
                             ? Point{0.0, 0.0}
                             : Point{0.5, 0.5};
    const Vec ones = Vec::Ones(static_cast<Eigen::Index>(ws.grid.size()));
    const OccupationResult occ = run_stage(ctx, "occupation", [&] {
        return occupation_check(ws.grid, rep.field, rep.measure, params, center, ones,
                                cfg.mc.n_paths, cfg.mc.dt,
                                cfg.base_seed + 1000000000ULL, cfg.threads);
    });
    char meta[160];
    std::snprintf(meta, sizeof meta, "gamma=%.17g dt=%.3g x0=(%.6g,%.6g)", cfg.gamma,
                  cfg.mc.dt, occ.x0.x, occ.x0.y);
    CsvWriter csv(ctx.path("occupation.csv"), ctx.comment(meta), "paths,mc,target,z");
    csv.row({std::to_string(occ.n_paths), CsvWriter::num(occ.mc),
             CsvWriter::num(occ.target), CsvWriter::num(occ.z)});
    if (std::abs(occ.z) > 3.0)
        ctx.flag("occupation z-score above 3: " + CsvWriter::num(occ.z));

    json summary;
    summary["occupation"] = {{"mc", occ.mc},
                             {"target", occ.target},
                             {"z", occ.z},
                             {"se", occ.se},
                             {"n_paths", occ.n_paths}};

    if (cfg.mc.n_bridges > 0) {
        const LiouvilleSpectrum spec =
            run_stage(ctx, "spectral", [&] { return replica_spectrum(ws, rep); });
        const double lambda =
            cfg.lbm_lambda > 0.0 ? cfg.lbm_lambda
                                 : spec.lambdas[static_cast<Eigen::Index>(spec.size() / 2)];
        const auto u_grid = log_spaced_times(cfg.mc.u_min, cfg.mc.u_max, cfg.mc.u_points);
        const BridgeIdentityResult bridge = run_stage(ctx, "bridge", [&] {
            return bridge_identity_check(ws.grid, rep.field, params, spec, center, lambda,
                                         cfg.mc.n_bridges, u_grid,
                                         cfg.base_seed + 2000000000ULL, cfg.threads);
        });
        CsvWriter bcsv(ctx.path("bridge.csv"), ctx.comment(),
                       "lambda,mc,spectral,rel_gap,n_bridges");
        bcsv.row({CsvWriter::num(lambda), CsvWriter::num(bridge.mc_side),
                  CsvWriter::num(bridge.spectral_side), CsvWriter::num(bridge.relative_gap),
                  std::to_string(cfg.mc.n_bridges)});
        if (bridge.inconclusive) ctx.flag("bridge identity inconclusive: MC variance too large");
        summary["bridge"] = {{"lambda", lambda},
                             {"mc", bridge.mc_side},
                             {"spectral", bridge.spectral_side},
                             {"rel_gap", bridge.relative_gap},
                             {"se", bridge.se},
                             {"inconclusive", bridge.inconclusive}};
    }
    ctx.record["replica_seeds"] = {cfg.base_seed};
    ctx.finish(summary);
    return ctx.diagnostics;
}

std::vector<std::string> cmd_kpz(const ExperimentConfig& cfg) {
    RunContext ctx("kpz", cfg);
    const KpzExponents sol = kpz_solve(cfg.kpz_x, cfg.gamma);
    CsvWriter csv(ctx.path("kpz.csv"), ctx.comment(), "x,gamma,delta");
    csv.row({CsvWriter::num(sol.euclid_x), CsvWriter::num(sol.gamma),
             CsvWriter::num(sol.delta)});
    std::cout << "delta = " << CsvWriter::num(sol.delta) << "\n";
    json summary;
    summary["x"] = sol.euclid_x;
    summary["gamma"] = sol.gamma;
    summary["delta"] = sol.delta;
    ctx.finish(summary);
    return ctx.diagnostics;
}

}  // namespace lqg
