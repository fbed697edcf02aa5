// SPDX-License-Identifier: Apache-2.0
#include "lqg/lbm.hpp"

#include <cmath>
#include <iostream>
#include <random>

#include "lqg/bessel.hpp"

namespace lqg {

namespace {

inline double clock_rate(const DomainGrid& grid, const FieldSample& field,
                         const CouplingParams& params, Point p) {
    const int cell = grid.nearest_cell(p);
    const double g = params.gamma;
    return std::pow(grid.mesh, g * g / 2.0) * std::exp(g * field.values[cell]);
}

}  // namespace

ClockPath simulate_clock_path(const DomainGrid& grid, const FieldSample& field,
                              const CouplingParams& params, Point x0, double dt,
                              std::uint64_t seed) {
    if (!grid.inside(x0)) throw ConfigError("simulate_clock_path: start outside domain");
    if (!(dt > 0.0)) throw ConfigError("simulate_clock_path: dt must be positive");
    ClockPath path;
    path.start = x0;
    path.dt = dt;
    path.seed = seed;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const double sigma = std::sqrt(dt);
    Point p = x0;
    int k = 0;
    while (true) {
        const double rate = clock_rate(grid, field, params, p);
        const Point inc{sigma * normal(rng), sigma * normal(rng)};
        path.steps.push_back(inc);
        path.clock_increments.push_back(rate * dt);
        path.f_total += rate * dt;
        p.x += inc.x;
        p.y += inc.y;
        ++k;
        if (!grid.inside(p)) {
            path.exit_step = k;
            break;
        }
    }
    return path;
}

OccupationResult occupation_check(const DomainGrid& grid, const FieldSample& field,
                                  const GmcMeasure& measure, const CouplingParams& params,
                                  Point x0, const Vec& f, int n_paths, double dt,
                                  std::uint64_t seed, unsigned threads) {
    if (n_paths < 1) throw ConfigError("occupation_check: need at least one path");
    OccupationResult res;
    res.n_paths = n_paths;

    const int i0 = grid.nearest_cell(x0);
    res.x0 = grid.points[static_cast<std::size_t>(i0)];
    res.snap_offset = dist(res.x0, x0);
    if (res.snap_offset > 0.0)
        std::cerr << "[lqg] occupation_check: start snapped to grid point, offset "
                  << res.snap_offset << "\n";

    for (Eigen::Index j = 0; j < f.size(); ++j)
        res.target += grid.green(i0, j) * f[j] * measure.weights[j];

    // one functional value per path, reduced serially for determinism
    std::vector<double> vals(static_cast<std::size_t>(n_paths));
    const double sigma = std::sqrt(dt);
    const double g = params.gamma;
    const double mesh_factor = std::pow(grid.mesh, g * g / 2.0);
    parallel_for(static_cast<std::size_t>(n_paths), [&](std::size_t pi) {
        std::mt19937_64 rng(seed + pi);
        std::normal_distribution<double> normal;
        Point p = res.x0;
        double acc = 0.0;
        while (true) {
            const int cell = grid.nearest_cell(p);
            acc += f[cell] * mesh_factor * std::exp(g * field.values[cell]) * dt;
            p.x += sigma * normal(rng);
            p.y += sigma * normal(rng);
            if (!grid.inside(p)) break;
        }
        vals[pi] = acc;
    }, threads);

    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= n_paths;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max(1, n_paths - 1);
    res.mc = mean;
    res.se = std::sqrt(var / n_paths);
    res.z = res.se > 0.0 ? (res.mc - res.target) / res.se : 0.0;
    return res;
}

BridgeSample sample_bridge(const DomainGrid& grid, const FieldSample& field,
                           const CouplingParams& params, Point x, double u, double dt,
                           std::uint64_t seed) {
    if (!(u > 0.0)) throw ConfigError("sample_bridge: duration must be positive");
    if (!(dt > 0.0 && dt <= u / 16.0))
        throw ConfigError("sample_bridge: need dt <= u/16");
    const int m = static_cast<int>(std::ceil(u / dt));
    const double step = u / m;
    const double sigma = std::sqrt(step);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Point> w(static_cast<std::size_t>(m) + 1);
    w[0] = {0.0, 0.0};
    for (int k = 1; k <= m; ++k)
        w[static_cast<std::size_t>(k)] = {
            w[static_cast<std::size_t>(k - 1)].x + sigma * normal(rng),
            w[static_cast<std::size_t>(k - 1)].y + sigma * normal(rng)};

    BridgeSample b;
    b.x = x;
    b.duration = u;
    b.stayed_inside = true;
    const Point wm = w[static_cast<std::size_t>(m)];
    for (int k = 0; k <= m; ++k) {
        const double frac = static_cast<double>(k) / m;
        const Point pk{x.x + w[static_cast<std::size_t>(k)].x - frac * wm.x,
                       x.y + w[static_cast<std::size_t>(k)].y - frac * wm.y};
        b.max_displacement = std::max(b.max_displacement, dist(pk, x));
        if (!grid.inside(pk)) b.stayed_inside = false;
        if (k < m) b.f_u += clock_rate(grid, field, params, pk) * step;
    }
    return b;
}

namespace {

// diagonal kernel of 1D Brownian motion killed outside (0,1)
double interval_transition_diag(double u, double z) {
    double acc = 0.0;
    const int K = 2 + static_cast<int>(std::ceil(4.0 * std::sqrt(std::max(u, 1e-12))));
    for (int k = -K; k <= K; ++k) {
        const double a = 2.0 * k;
        const double b = 2.0 * z + 2.0 * k;
        acc += std::exp(-a * a / (2.0 * u)) - std::exp(-b * b / (2.0 * u));
    }
    return acc / std::sqrt(2.0 * M_PI * u);
}

}  // namespace

double classical_transition_diag(const DomainSpec& spec, double u, Point x) {
    if (!(u > 0.0)) throw ConfigError("classical_transition_diag: u must be positive");
    if (spec.kind == DomainKind::UnitSquare)
        return interval_transition_diag(u, x.x) * interval_transition_diag(u, x.y);

    const double r = std::sqrt(x.x * x.x + x.y * x.y);
    if (u < 0.05) {
        // free kernel minus the first image charge across the boundary
        const double delta = 1.0 - r;
        return (1.0 - std::exp(-2.0 * delta * delta / u)) / (2.0 * M_PI * u);
    }
    // Dirichlet eigenseries: lambda = j_{m,k}^2 / 2 with weight
    // J_m(j r)^2 / (pi J_{m+1}(j)^2), doubled for m >= 1
    double acc = 0.0;
    const double jmax = std::sqrt(2.0 * 40.0 / u);  // e^{-j^2 u / 2} < 4e-18 beyond
    for (int m = 0; bessel_first_zero_lower_bound(m) < jmax; ++m) {
        for (double j : bessel_zeros_below(m, jmax)) {
            const double jm1 = bessel_jn(m + 1, j);
            const double jr = bessel_jn(m, j * r);
            const double mult = m == 0 ? 1.0 : 2.0;
            acc += mult * std::exp(-j * j * u / 2.0) * jr * jr / (M_PI * jm1 * jm1);
        }
    }
    return acc;
}

BridgeIdentityResult bridge_identity_check(const DomainGrid& grid, const FieldSample& field,
                                           const CouplingParams& params,
                                           const LiouvilleSpectrum& spectrum, Point x,
                                           double lambda, int n_bridges,
                                           const std::vector<double>& u_grid,
                                           std::uint64_t seed, unsigned threads) {
    if (u_grid.size() < 2) throw ConfigError("bridge_identity_check: need >= 2 u points");
    if (n_bridges < static_cast<int>(u_grid.size()))
        throw ConfigError("bridge_identity_check: need at least one bridge per u");
    BridgeIdentityResult res;
    const int i0 = grid.nearest_cell(x);
    res.x = grid.points[static_cast<std::size_t>(i0)];

    for (Eigen::Index k = 0; k < spectrum.lambdas.size(); ++k) {
        const double d = spectrum.lambdas[k] + lambda;
        res.spectral_side += spectrum.eigfuncs(i0, k) * spectrum.eigfuncs(i0, k) / (d * d);
    }

    const int per_u = n_bridges / static_cast<int>(u_grid.size());
    std::vector<double> means(u_grid.size()), vars(u_grid.size());
    parallel_for(u_grid.size(), [&](std::size_t ui) {
        const double u = u_grid[ui];
        const double dt = u / 64.0;
        double mean = 0.0, m2 = 0.0;
        for (int b = 0; b < per_u; ++b) {
            const BridgeSample br = sample_bridge(grid, field, params, res.x, u, dt,
                                                  seed + ui * 1000003ULL + b);
            const double v = br.stayed_inside
                                 ? br.f_u * std::exp(-lambda * br.f_u)
                                 : 0.0;
            const double d0 = v - mean;
            mean += d0 / (b + 1);
            m2 += d0 * (v - mean);
        }
        means[ui] = mean;
        vars[ui] = per_u > 1 ? m2 / (per_u - 1) : 0.0;
    }, threads);

    // trapezoid in log u of E[F e^{-lambda F} 1_stay] p_u(x,x) u
    double integral = 0.0, var_integral = 0.0;
    std::vector<double> integrand(u_grid.size()), weight(u_grid.size(), 0.0);
    for (std::size_t k = 0; k < u_grid.size(); ++k)
        integrand[k] = means[k] * classical_transition_diag(grid.spec, u_grid[k], res.x) *
                       u_grid[k];
    for (std::size_t k = 0; k + 1 < u_grid.size(); ++k) {
        const double dlog = std::log(u_grid[k + 1] / u_grid[k]);
        weight[k] += 0.5 * dlog;
        weight[k + 1] += 0.5 * dlog;
    }
    for (std::size_t k = 0; k < u_grid.size(); ++k) {
        integral += weight[k] * integrand[k];
        const double p = classical_transition_diag(grid.spec, u_grid[k], res.x);
        const double c = weight[k] * p * u_grid[k];
        var_integral += c * c * vars[k] / per_u;
    }
    res.mc_side = integral;
    res.se = std::sqrt(var_integral);
    res.relative_gap = std::abs(res.mc_side - res.spectral_side) /
                       std::max(res.spectral_side, 1e-300);
    res.inconclusive = res.se > 0.5 * res.spectral_side;
    return res;
}

}  // namespace lqg
