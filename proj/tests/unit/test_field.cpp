// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "lqg/field.hpp"
#include "lqg/pipeline.hpp"

using namespace lqg;

TEST_CASE("coupling parameters") {
    CHECK_THROWS_AS(CouplingParams::make(2.5), ConfigError);
    CHECK_THROWS_AS(CouplingParams::make(2.0), ConfigError);
    CHECK_THROWS_AS(CouplingParams::make(-0.1), ConfigError);

    const auto p0 = CouplingParams::make(0.0);
    CHECK(!p0.q_param.has_value());
    CHECK(p0.weyl_const == doctest::Approx(1.0 / (2 * M_PI)).epsilon(1e-15));

    const auto p1 = CouplingParams::make(1.0);
    CHECK(*p1.q_param == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(p1.weyl_const == doctest::Approx(1.0 / (1.5 * M_PI)).epsilon(1e-15));
    CHECK(CouplingParams::make(std::sqrt(2.0)).weyl_const ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-14));

    // c_gamma increases in gamma and stays above the classical constant
    double prev = p0.weyl_const;
    for (double g = 0.1; g < 2.0; g += 0.1) {
        const double c = CouplingParams::make(g).weyl_const;
        CHECK(c > prev);
        CHECK(c >= 1.0 / (2 * M_PI));
        prev = c;
    }
}

TEST_CASE("covariance of a one-point grid") {
    DomainGrid grid;
    grid.green = Mat::Constant(1, 1, 2.0);
    grid.points = {{0.0, 0.0}};
    const CovarianceModel model = build_covariance(grid);
    CHECK(model.factor(0, 0) == doctest::Approx(std::sqrt(M_PI * 2.0)).epsilon(1e-15));
    CHECK(model.jitter_used == 0.0);
}

TEST_CASE("covariance on the disc grid") {
    const DomainGrid grid = build_grid(DomainSpec{}, 16);
    const CovarianceModel model = build_covariance(grid);
    CHECK(model.jitter_used <= 1e-8);

    // diagonal is log(1/mesh) + kappa0 + log R(x)
    for (std::size_t i = 0; i < grid.size(); i += 7) {
        const auto ei = static_cast<Eigen::Index>(i);
        const double expected =
            std::log(1.0 / grid.mesh) + kKappa0 + std::log(grid.conf_radius[ei]);
        CHECK(model.cov(ei, ei) == doctest::Approx(expected).epsilon(1e-12));
    }

    const Mat delta = model.factor * model.factor.transpose() - model.cov;
    CHECK(delta.norm() / model.cov.norm() < 1e-8);
}

TEST_CASE("gff sampling determinism and moments") {
    const Workspace ws = make_workspace(DomainSpec{}, 16);
    const FieldSample a = sample_gff(ws.cov, 42), b = sample_gff(ws.cov, 42);
    CHECK(a.values == b.values);  // bit-identical
    CHECK(sample_gff(ws.cov, 43).values != a.values);

    const int N = 10000;
    const Eigen::Index p = 0, q = static_cast<Eigen::Index>(ws.grid.size() / 2);
    std::vector<double> hp(static_cast<std::size_t>(N)), hq(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        const FieldSample s = sample_gff(ws.cov, 1000 + static_cast<std::uint64_t>(k));
        hp[static_cast<std::size_t>(k)] = s.values[p];
        hq[static_cast<std::size_t>(k)] = s.values[q];
    }
    double mean_p = 0.0, mean_q = 0.0;
    for (int k = 0; k < N; ++k) {
        mean_p += hp[static_cast<std::size_t>(k)];
        mean_q += hq[static_cast<std::size_t>(k)];
    }
    mean_p /= N;
    mean_q /= N;
    double var_p = 0.0, cov_pq = 0.0;
    for (int k = 0; k < N; ++k) {
        const double dp = hp[static_cast<std::size_t>(k)] - mean_p;
        var_p += dp * dp;
        cov_pq += dp * (hq[static_cast<std::size_t>(k)] - mean_q);
    }
    var_p /= N - 1;
    cov_pq /= N - 1;

    const double se_var = ws.cov.cov(p, p) * std::sqrt(2.0 / N);
    CHECK(std::abs(var_p - ws.cov.cov(p, p)) < 3 * se_var);
    const double se_mean = std::sqrt(ws.cov.cov(p, p) / N);
    CHECK(std::abs(mean_p) < 3 * se_mean);
    const double se_cov = std::sqrt((ws.cov.cov(p, p) * ws.cov.cov(q, q) +
                                     ws.cov.cov(p, q) * ws.cov.cov(p, q)) /
                                    N);
    CHECK(std::abs(cov_pq - ws.cov.cov(p, q)) < 3 * se_cov);
}

TEST_CASE("gmc weights") {
    SUBCASE("gamma zero degenerates to the cell measure") {
        const DomainGrid grid = build_grid(DomainSpec{}, 16);
        FieldSample f;
        f.values = Vec::Random(static_cast<Eigen::Index>(grid.size()));
        const GmcMeasure m = gmc_weights(grid, f, CouplingParams::make(0.0));
        for (Eigen::Index i = 0; i < m.weights.size(); ++i)
            CHECK(m.weights[i] == grid.cell_area);
        CHECK(m.total ==
              doctest::Approx(static_cast<double>(grid.size()) * grid.cell_area)
                  .epsilon(1e-14));
    }

    SUBCASE("pointwise formula") {
        DomainGrid g;
        g.mesh = 1.0 / 64;
        g.cell_area = g.mesh * g.mesh;
        g.points = {{0.0, 0.0}};
        FieldSample f;
        f.values = Vec::Constant(1, 1.0);
        const GmcMeasure m = gmc_weights(g, f, CouplingParams::make(1.0));
        CHECK(m.weights[0] ==
              doctest::Approx(std::pow(1.0 / 64, 2.5) * std::exp(1.0)).epsilon(1e-14));
    }
}

TEST_CASE("annealed mass law at gamma = 1") {
    // ensemble mean of mu(Sigma) vs e^{kappa0/2} int_disc sqrt(1-|x|^2)
    const Workspace ws = make_workspace(DomainSpec{}, 32);
    const auto params = CouplingParams::make(1.0);
    const int R = 200;
    std::vector<double> totals;
    for (int r = 0; r < R; ++r)
        totals.push_back(
            sample_replica(ws, params, 500 + static_cast<std::uint64_t>(r)).measure.total);
    double mean = 0.0;
    for (double v : totals) mean += v;
    mean /= R;
    double var = 0.0;
    for (double v : totals) var += (v - mean) * (v - mean);
    var /= R - 1;
    const double se = std::sqrt(var / R);
    const double target = std::exp(kKappa0 / 2) * 2 * M_PI / 3;
    // 3 SE plus a small allowance for the boundary cells missing from
    // the Riemann sum
    CHECK(std::abs(mean - target) < 3 * se + 0.02 * target);
}

TEST_CASE("ball mass profile") {
    const DomainGrid grid = build_grid(DomainSpec{}, 32);

    FieldSample flat;
    flat.values = Vec::Zero(static_cast<Eigen::Index>(grid.size()));
    const GmcMeasure lebesgue = gmc_weights(grid, flat, CouplingParams::make(0.0));
    const auto prof = ball_mass_profile(grid, lebesgue, {0.3, 2.0});
    CHECK(prof[1] == doctest::Approx(lebesgue.total).epsilon(1e-12));
    CHECK(std::abs(prof[0] - M_PI * 0.3 * 0.3) < 6 * 0.3 * grid.mesh);

    const Workspace ws = make_workspace(DomainSpec{}, 32);
    const Replica rep = sample_replica(ws, CouplingParams::make(1.0), 9);
    std::vector<double> radii;
    for (double r = 4 * ws.grid.mesh; r < 0.5; r *= 1.5) radii.push_back(r);
    const auto lqg_prof = ball_mass_profile(ws.grid, rep.measure, radii);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto B = static_cast<double>(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double lx = std::log(radii[k]), ly = std::log(lqg_prof[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double q = (B * sxy - sx * sy) / (B * sxx - sx * sx);
    CHECK(q > 0.0);  // power-law ball-mass bound, fitted exponent
}
