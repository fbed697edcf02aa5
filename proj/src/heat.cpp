// SPDX-License-Identifier: Apache-2.0
#include "lqg/heat.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lqg {

std::vector<double> log_spaced_times(double tmin, double tmax, int count) {
    if (!(tmin > 0.0 && tmax > tmin && count >= 2))
        throw ConfigError("log_spaced_times: need 0 < tmin < tmax and count >= 2");
    std::vector<double> t(static_cast<std::size_t>(count));
    const double step = std::log(tmax / tmin) / (count - 1);
    for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = tmin * std::exp(k * step);
    return t;
}

HeatTrace heat_trace(const LiouvilleSpectrum& spectrum, const std::vector<double>& times,
                     double trusted_above) {
    HeatTrace tr;
    tr.times = times;
    const auto P = spectrum.lambdas.size();
    for (double t : times) {
        if (!(t > 0.0)) throw ConfigError("heat_trace: times must be positive");
        double h = 0.0;
        // smallest terms first (largest lambda) for accurate summation
        for (Eigen::Index k = P - 1; k >= 0; --k) h += std::exp(-spectrum.lambdas[k] * t);
        tr.values.push_back(h);
        tr.scaled.push_back(t * h);
        tr.trusted.push_back(t >= trusted_above ? 1 : 0);
    }
    return tr;
}

double spectral_heat_kernel(const LiouvilleSpectrum& spectrum, double t, int i, int j) {
    if (!(t > 0.0)) throw ConfigError("spectral_heat_kernel: t must be positive");
    const auto P = spectrum.lambdas.size();
    double p = 0.0;
    for (Eigen::Index k = P - 1; k >= 0; --k)
        p += std::exp(-spectrum.lambdas[k] * t) * spectrum.eigfuncs(i, k) *
             spectrum.eigfuncs(j, k);
    return p;
}

double subprobability_check(const LiouvilleSpectrum& spectrum, double t) {
    if (!(t > 0.0)) throw ConfigError("subprobability_check: t must be positive");
    // sum_j p_t(i,j) mu_j = sum_n e^{-lambda_n t} f_n(x_i) <f_n, 1>_mu
    const Vec w = spectrum.eigfuncs.transpose() * spectrum.mu;
    const Vec decay = (-t * spectrum.lambdas.array()).exp();
    const Vec mass = spectrum.eigfuncs * decay.cwiseProduct(w);
    return mass.maxCoeff();
}

KaramataResult karamata_check(const std::vector<std::pair<double, double>>& atoms,
                              double rho, double lambda_probe, double t_probe) {
    if (rho < 0.0) throw ConfigError("karamata_check: rho must be >= 0");
    if (!(lambda_probe > 0.0 && t_probe > 0.0))
        throw ConfigError("karamata_check: probes must be positive");
    KaramataResult res;
    double nu_hat = 0.0, nu_t = 0.0, tail = 0.0;
    double smax = 0.0;
    for (const auto& [s, w] : atoms) smax = std::max(smax, s);
    for (const auto& [s, w] : atoms) {
        const double term = w * std::exp(-lambda_probe * s);
        nu_hat += term;
        if (s > 0.9 * smax) tail += term;
        if (s <= t_probe) nu_t += w;
    }
    res.laplace_side = std::pow(lambda_probe, rho) * nu_hat;
    res.counting_side = std::pow(t_probe, -rho) * nu_t;
    const double expected = res.laplace_side / std::tgamma(1.0 + rho);
    res.relative_gap = expected != 0.0
                           ? std::abs(res.counting_side - expected) / std::abs(expected)
                           : std::abs(res.counting_side);
    // flag an unresolved Laplace tail: the largest atoms still contribute
    res.convergent = nu_hat == 0.0 || tail <= 0.01 * nu_hat || smax <= t_probe;
    return res;
}

KpzExponents kpz_solve(double x, double gamma) {
    if (!(gamma >= 0.0 && gamma < 2.0)) throw ConfigError("kpz_solve: gamma outside [0,2)");
    if (!(x > 0.0 && x <= 1.0))
        throw DomainError("kpz_solve: no root in [0,1] for x outside (0,1]");
    KpzExponents out;
    out.euclid_x = x;
    out.gamma = gamma;
    if (gamma == 0.0) {
        out.delta = x;
        return out;
    }
    const double a = gamma * gamma / 4.0;  // < 1
    const double b = 1.0 - a;              // > 0
    out.delta = 2.0 * x / (b + std::sqrt(b * b + 4.0 * a * x));
    return out;
}

PlateauEstimate plateau_estimate(const HeatTrace& trace, const CouplingParams& params,
                                 double mu_total) {
    const auto M = trace.times.size();
    if (M < 20) throw ConfigError("plateau_estimate: need >= 20 time points");
    const double target = params.weyl_const * mu_total;

    std::vector<double> slope(M, 0.0);  // d(tH)/d(log t), centered
    for (std::size_t k = 1; k + 1 < M; ++k)
        slope[k] = (trace.scaled[k + 1] - trace.scaled[k - 1]) /
                   std::log(trace.times[k + 1] / trace.times[k - 1]);

    PlateauEstimate est;
    std::size_t best = 0;
    bool have = false;
    // prefer sign changes of the slope (local extrema of the scaled
    // trace); fall back to the flattest interior point
    for (std::size_t k = 1; k + 2 < M; ++k) {
        if ((slope[k] >= 0.0) != (slope[k + 1] >= 0.0)) {
            const std::size_t cand = std::abs(slope[k]) <= std::abs(slope[k + 1]) ? k : k + 1;
            if (!have || trace.scaled[cand] > trace.scaled[best]) {
                best = cand;
                have = true;
            }
        }
    }
    est.plateau_found = have;
    if (!have) {
        best = 1;
        for (std::size_t k = 2; k + 1 < M; ++k)
            if (std::abs(slope[k]) < std::abs(slope[best])) best = k;
    }
    est.t_star = trace.times[best];
    est.value = trace.scaled[best];
    est.ratio = est.value / target;
    return est;
}

BoundaryFit boundary_correction_fit(const std::vector<double>& times,
                                    const std::vector<double>& scaled_mean, double c_est,
                                    double t_lo, double t_hi) {
    BoundaryFit fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < t_lo || times[k] > t_hi) continue;
        const double resid = c_est - scaled_mean[k];
        if (resid <= 0.0) return fit;  // valid stays false
        const double lx = std::log(times[k]), ly = std::log(resid);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++fit.points_used;
    }
    if (fit.points_used < 3) return fit;
    const double n = fit.points_used;
    fit.alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.valid = true;
    return fit;
}

DiagStat annealed_diag_stat(const Workspace& ws, const CouplingParams& params,
                            int replicas, double t, std::uint64_t base_seed,
                            unsigned threads) {
    if (replicas < 20) throw ConfigError("annealed_diag_stat: need >= 20 replicas");
    if (!(t > 0.0)) throw ConfigError("annealed_diag_stat: t must be positive");
    DiagStat stat;
    stat.gamma = params.gamma;
    stat.t = t;
    stat.samples.resize(static_cast<std::size_t>(replicas));
    stat.laplace_samples.resize(static_cast<std::size_t>(replicas));
    stat.seeds.resize(static_cast<std::size_t>(replicas));
    stat.locations.resize(static_cast<std::size_t>(replicas));

    parallel_for(static_cast<std::size_t>(replicas), [&](std::size_t r) {
        const std::uint64_t seed = base_seed + r;
        const Replica rep = sample_replica(ws, params, seed);
        const LiouvilleSpectrum spec = replica_spectrum(ws, rep);

        // draw x from mu; dedicated stream so path/bridge draws elsewhere
        // cannot shift it
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const double u = std::uniform_real_distribution<double>()(rng) * rep.measure.total;
        double acc = 0.0;
        Eigen::Index pick = 0;
        for (Eigen::Index i = 0; i < rep.measure.weights.size(); ++i) {
            acc += rep.measure.weights[i];
            if (acc >= u) {
                pick = i;
                break;
            }
        }
        stat.seeds[r] = seed;
        stat.locations[r] = ws.grid.points[static_cast<std::size_t>(pick)];
        stat.samples[r] = t * spectral_heat_kernel(spec, t, static_cast<int>(pick),
                                                   static_cast<int>(pick));
        const double lambda = 1.0 / t;
        double lap = 0.0;
        for (Eigen::Index k = 0; k < spec.lambdas.size(); ++k) {
            const double d = spec.lambdas[k] + lambda;
            lap += spec.eigfuncs(pick, k) * spec.eigfuncs(pick, k) / (d * d);
        }
        stat.laplace_samples[r] = lambda * lap;
    }, threads);

    double mean = 0.0;
    for (double v : stat.samples) mean += v;
    mean /= replicas;
    double var = 0.0;
    for (double v : stat.samples) var += (v - mean) * (v - mean);
    var /= std::max(1, replicas - 1);
    stat.mean = mean;
    stat.coefficient_of_variation = mean != 0.0 ? std::sqrt(var) / mean : 0.0;
    return stat;
}

}  // namespace lqg
