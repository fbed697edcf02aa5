// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "lqg/bessel.hpp"
#include "lqg/chaos.hpp"
#include "lqg/pipeline.hpp"

using namespace lqg;

TEST_CASE("wigner surmise cdf") {
    CHECK(wigner_surmise_cdf(0.0) == 0.0);
    CHECK(wigner_surmise_cdf(1.0) == doctest::Approx(1.0 - std::exp(-M_PI / 4)).epsilon(1e-15));
    CHECK_THROWS_AS(wigner_surmise_cdf(-0.1), DomainError);

    // a valid CDF: nondecreasing toward 1
    double prev = 0.0;
    for (double s = 0.0; s < 8.0; s += 0.05) {
        const double v = wigner_surmise_cdf(s);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(prev > 1.0 - 1e-15);

    // unit mean of the surmise density via Simpson quadrature
    const int N = 20000;
    const double h = 10.0 / N;
    double mean = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double s = k * h;
        const double w = (k == 0 || k == N) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        mean += w * s * (M_PI * s / 2) * std::exp(-M_PI * s * s / 4);
    }
    mean *= h / 3;
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("ks distance") {
    CHECK(ks_distance({1.0}, [](double) { return 0.5; }) == doctest::Approx(0.5));

    // samples at the exact quantiles k/(n+1)
    const int n = 99;
    std::vector<double> quantiles;
    for (int k = 1; k <= n; ++k) quantiles.push_back(k / (n + 1.0));
    CHECK(ks_distance(quantiles, [](double s) { return s; }) <= 1.0 / (n + 1) + 1e-12);

    // large sample from the reference law itself
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u;
    std::vector<double> wig;
    for (int k = 0; k < 10000; ++k)
        wig.push_back(std::sqrt(-4.0 * std::log1p(-u(rng)) / M_PI));
    CHECK(ks_distance(wig, wigner_surmise_cdf) < 0.02);
    CHECK_THROWS_AS(ks_distance({}, wigner_surmise_cdf), ConfigError);
}

TEST_CASE("unfolded gaps") {
    const auto params = CouplingParams::make(1.0);
    const double scale = params.weyl_const * 2.0;

    SUBCASE("synthetic linear spectrum has unit gaps") {
        LiouvilleSpectrum spec;
        spec.mu_total = 2.0;
        spec.lambdas = Vec(1500);
        for (int k = 0; k < 1500; ++k) spec.lambdas[k] = (k + 1) / scale;
        const SpacingStats st = unfold_gaps(spec, params, {0.02, 0.9});
        for (double s : st.gaps) CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(st.mean_gap == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(st.ks_poisson > 0.3);  // degenerate empirical CDF far from exponential
    }
    SUBCASE("poisson spectrum prefers the exponential law") {
        std::mt19937_64 rng(23);
        std::exponential_distribution<double> exp1(1.0);
        LiouvilleSpectrum spec;
        spec.mu_total = 2.0;
        spec.lambdas = Vec(1200);
        double acc = 0.0;
        for (int k = 0; k < 1200; ++k) {
            acc += exp1(rng) / scale;
            spec.lambdas[k] = acc;
        }
        const SpacingStats st = unfold_gaps(spec, params, {0.01, 0.95});
        CHECK(st.ks_poisson < 0.05);
        CHECK(st.ks_goe > 0.15);
        CHECK(st.ks_poisson < st.ks_goe);
    }
    SUBCASE("window too small") {
        LiouvilleSpectrum spec;
        spec.mu_total = 1.0;
        spec.lambdas = Vec::LinSpaced(300, 1.0, 300.0);
        CHECK_THROWS_AS(unfold_gaps(spec, params, {0.1, 0.2}), ConfigError);
    }
}

TEST_CASE("que divergence extremes") {
    // grid of 16 points in the square, uniform measure
    DomainSpec square;
    square.kind = DomainKind::UnitSquare;
    const DomainGrid grid = build_grid(square, 5);  // 16 interior points
    const auto P = static_cast<Eigen::Index>(grid.size());

    LiouvilleSpectrum spec;
    spec.mu = Vec::Constant(P, 1.0 / static_cast<double>(P));
    spec.mu_total = 1.0;
    spec.lambdas = Vec::LinSpaced(P, 1.0, static_cast<double>(P));
    spec.eigfuncs = Mat::Zero(P, P);

    SUBCASE("constant eigenfunction minimizes both metrics") {
        spec.eigfuncs.col(0) = Vec::Constant(P, 1.0);  // unit L2(mu) norm
        const QueReport rep = que_divergence(spec, grid, 1, 2);
        CHECK(rep.tv_distance == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rep.ipr == doctest::Approx(1.0 / spec.mu_total).epsilon(1e-12));
    }
    SUBCASE("one-cell support maximizes the divergence") {
        spec.eigfuncs(0, 0) = std::sqrt(static_cast<double>(P));  // unit norm on one point
        const QueReport rep = que_divergence(spec, grid, 1, 2);
        const double cell_mass = [&] {
            double m = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (grid.points[i].x < 0.5 && grid.points[i].y < 0.5)
                    m += spec.mu[static_cast<Eigen::Index>(i)];
            return m;
        }();
        CHECK(rep.tv_distance == doctest::Approx(1.0 - cell_mass).epsilon(1e-12));
        CHECK(rep.ipr >= 1.0 / spec.mu_total);
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(que_divergence(spec, grid, 1, 1), ConfigError);
        CHECK_THROWS_AS(que_divergence(spec, grid, 0, 4), ConfigError);
    }
}

TEST_CASE("bessel j0") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j0(0.2) == doctest::Approx(0.9900249722395764).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_j0(-1.0), ConfigError);

    // first zero via bisection on the power series
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(2.404825557695773).epsilon(1e-10));
    CHECK(bessel_zeros(0, 1).front() == doctest::Approx(2.404825557695773).epsilon(1e-10));

    // differential identity J0'' + J0'/r + J0 = 0
    for (double r : {1.0, 2.0, 5.0}) {
        const double h = 1e-4;
        const double d1 = (bessel_j0(r + h) - bessel_j0(r - h)) / (2 * h);
        const double d2 = (bessel_j0(r + h) - 2 * bessel_j0(r) + bessel_j0(r - h)) / (h * h);
        CHECK(std::abs(d2 + d1 / r + bessel_j0(r)) < 1e-6);
    }

    // cross-library accuracy sweep, both series and asymptotic branches
    for (double r = 0.0; r < 50.0; r += 0.37)
        CHECK(std::abs(bessel_j0(r) - std::cyl_bessel_j(0.0, r)) < 1e-10);
}

TEST_CASE("berry autocorrelation of a classical square mode") {
    DomainSpec square;
    square.kind = DomainKind::UnitSquare;
    const DomainGrid grid = build_grid(square, 48);
    const int m = 6;
    Vec f(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i)
        f[static_cast<Eigen::Index>(i)] = 2.0 * std::sin(m * M_PI * grid.points[i].x) *
                                          std::sin(m * M_PI * grid.points[i].y);
    std::vector<double> radii;
    for (double r = 0.015; r <= 0.20; r += 0.01) radii.push_back(r);
    const BerryProfile prof = berry_autocorr_values(f, grid, {0.5, 0.5}, radii);
    REQUIRE(prof.zero_found);
    const double k_expected = M_PI * std::sqrt(2.0) * m;  // |wavevector| of the mode
    CHECK(prof.k_n == doctest::Approx(k_expected).epsilon(0.06));
    CHECK(prof.misfit < 0.12);
}
