// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "lqg/bessel.hpp"
#include "lqg/heat.hpp"
#include "lqg/lbm.hpp"
#include "lqg/pipeline.hpp"

using namespace lqg;

TEST_CASE("clock path at gamma zero is Lebesgue time") {
    const Workspace ws = make_workspace(DomainSpec{}, 16);
    const auto params = CouplingParams::make(0.0);
    FieldSample flat;
    flat.values = Vec::Zero(static_cast<Eigen::Index>(ws.grid.size()));
    const ClockPath path = simulate_clock_path(ws.grid, flat, params, {0, 0}, 1e-3, 5);
    for (double df : path.clock_increments) CHECK(df == 1e-3);
    CHECK(path.f_total == doctest::Approx(path.exit_step * 1e-3).epsilon(1e-12));
    CHECK(path.exit_step == static_cast<int>(path.steps.size()));

    // determinism
    const ClockPath again = simulate_clock_path(ws.grid, flat, params, {0, 0}, 1e-3, 5);
    CHECK(again.f_total == path.f_total);
    CHECK(again.exit_step == path.exit_step);

    CHECK_THROWS_AS(simulate_clock_path(ws.grid, flat, params, {2.0, 0.0}, 1e-3, 5),
                    ConfigError);
}

TEST_CASE("clock increments are positive at gamma = 1") {
    const Workspace ws = make_workspace(DomainSpec{}, 16);
    const auto params = CouplingParams::make(1.0);
    const Replica rep = sample_replica(ws, params, 21);
    const ClockPath path =
        simulate_clock_path(ws.grid, rep.field, params, {0.2, -0.1}, 1e-3, 77);
    CHECK(path.f_total > 0.0);
    double acc = 0.0;
    for (double df : path.clock_increments) {
        CHECK(df > 0.0);
        acc += df;
    }
    CHECK(acc == doctest::Approx(path.f_total).epsilon(1e-12));
}

TEST_CASE("occupation check against the mean exit time") {
    // gamma = 0, f == 1: both sides are E[T_Sigma] = (1-|x|^2)/2 = 1/2
    const Workspace ws = make_workspace(DomainSpec{}, 32);
    const auto params = CouplingParams::make(0.0);
    FieldSample flat;
    flat.values = Vec::Zero(static_cast<Eigen::Index>(ws.grid.size()));
    const GmcMeasure lebesgue = gmc_weights(ws.grid, flat, params);
    const Vec ones = Vec::Ones(static_cast<Eigen::Index>(ws.grid.size()));

    const OccupationResult res =
        occupation_check(ws.grid, flat, lebesgue, params, {0, 0}, ones, 10000, 1e-4, 400);
    CHECK(std::abs(res.target - 0.5) < 0.01);  // quadrature of the Green row
    CHECK(std::abs(res.mc - 0.5) < 3 * res.se + 0.01);
    CHECK(std::abs(res.z) < 3.5);

    // f == 0
    const OccupationResult zero =
        occupation_check(ws.grid, flat, lebesgue, params, {0, 0},
                         Vec::Zero(static_cast<Eigen::Index>(ws.grid.size())), 100, 1e-3, 6);
    CHECK(zero.mc == 0.0);
    CHECK(zero.target == 0.0);
}

TEST_CASE("occupation check on a macro cell at gamma = 1") {
    const Workspace ws = make_workspace(DomainSpec{}, 32);
    const auto params = CouplingParams::make(1.0);
    const Replica rep = sample_replica(ws, params, 31);
    Vec f = Vec::Zero(static_cast<Eigen::Index>(ws.grid.size()));
    for (std::size_t i = 0; i < ws.grid.size(); ++i)
        if (ws.grid.points[i].x > 0.0 && ws.grid.points[i].y > 0.0)
            f[static_cast<Eigen::Index>(i)] = 1.0;
    const OccupationResult res =
        occupation_check(ws.grid, rep.field, rep.measure, params, {0, 0}, f, 10000, 1e-4, 41);
    CHECK(std::abs(res.z) <= 3.0);
}

TEST_CASE("brownian bridge construction") {
    const Workspace ws = make_workspace(DomainSpec{}, 16);
    const auto params = CouplingParams::make(0.0);
    FieldSample flat;
    flat.values = Vec::Zero(static_cast<Eigen::Index>(ws.grid.size()));

    const BridgeSample b = sample_bridge(ws.grid, flat, params, {0.1, 0.2}, 0.05, 1e-4, 9);
    CHECK(b.duration == 0.05);
    CHECK(b.f_u == doctest::Approx(0.05).epsilon(1e-12));  // clock = Lebesgue at gamma 0

    CHECK_THROWS_AS(sample_bridge(ws.grid, flat, params, {0.1, 0.2}, 0.05, 0.05, 9),
                    ConfigError);

    // range scales like sqrt(u) over an ensemble
    double r1 = 0.0, r4 = 0.0;
    const int B = 400;
    for (int k = 0; k < B; ++k) {
        r1 += sample_bridge(ws.grid, flat, params, {0, 0}, 0.01, 1e-4,
                            1000 + static_cast<std::uint64_t>(k))
                  .max_displacement;
        r4 += sample_bridge(ws.grid, flat, params, {0, 0}, 0.04, 4e-4,
                            5000 + static_cast<std::uint64_t>(k))
                  .max_displacement;
    }
    CHECK(r4 / r1 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("classical transition density on the diagonal") {
    const DomainSpec disc;
    // continuity across the image/eigenseries switchover
    const Point x{0.3, 0.0};
    CHECK(classical_transition_diag(disc, 0.0499, x) ==
          doctest::Approx(classical_transition_diag(disc, 0.0501, x)).epsilon(5e-3));
    // short time: free kernel dominates in the bulk
    CHECK(classical_transition_diag(disc, 0.01, {0, 0}) ==
          doctest::Approx(1.0 / (2 * M_PI * 0.01)).epsilon(1e-6));

    DomainSpec square;
    square.kind = DomainKind::UnitSquare;
    // independent eigenmode double sum oracle
    const Point y{0.4, 0.55};
    const double u = 0.2;
    double series = 0.0;
    for (int m = 1; m <= 40; ++m)
        for (int k = 1; k <= 40; ++k) {
            const double phi = 2.0 * std::sin(m * M_PI * y.x) * std::sin(k * M_PI * y.y);
            series += std::exp(-M_PI * M_PI * (m * m + k * k) / 2.0 * u) * phi * phi;
        }
    CHECK(classical_transition_diag(square, u, y) == doctest::Approx(series).epsilon(1e-8));
}

TEST_CASE("bridge identity at gamma zero against the classical spectrum") {
    const Workspace ws = make_workspace(DomainSpec{}, 16);
    const auto params = CouplingParams::make(0.0);
    FieldSample flat;
    flat.values = Vec::Zero(static_cast<Eigen::Index>(ws.grid.size()));
    const GmcMeasure lebesgue = gmc_weights(ws.grid, flat, params);
    const LiouvilleSpectrum spec = eigendecompose(assemble_operator(ws.grid, lebesgue));

    const double lambda = spec.lambdas[static_cast<Eigen::Index>(spec.size() / 2)];
    const auto u_grid = log_spaced_times(1e-4, 2.0, 20);
    const BridgeIdentityResult res = bridge_identity_check(
        ws.grid, flat, params, spec, {0, 0}, lambda, 20000, u_grid, 1234);
    CHECK(res.spectral_side > 0.0);
    CHECK(std::abs(res.mc_side - res.spectral_side) < 3 * res.se + 0.05 * res.spectral_side);
    CHECK(!res.inconclusive);
}
