// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lqg/spectral.hpp"

namespace lqg {

/// One killed Brownian path with its quantum clock increments
/// dF = mesh^{gamma^2/2} e^{gamma h(cell)} dt.
struct ClockPath {
    Point start;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<Point> steps;              // Brownian increments
    std::vector<double> clock_increments;  // dF per step while inside
    int exit_step = 0;                     // first step index outside the domain
    double f_total = 0.0;
};

ClockPath simulate_clock_path(const DomainGrid& grid, const FieldSample& field,
                              const CouplingParams& params, Point x0, double dt,
                              std::uint64_t seed);

struct OccupationResult {
    double mc = 0.0;      // mean over paths of sum f(cell) dF
    double target = 0.0;  // sum_j g(x0, x_j) f_j mu_j
    double z = 0.0;
    double se = 0.0;
    int n_paths = 0;
    Point x0;              // snapped start point
    double snap_offset = 0.0;
};

OccupationResult occupation_check(const DomainGrid& grid, const FieldSample& field,
                                  const GmcMeasure& measure, const CouplingParams& params,
                                  Point x0, const Vec& f, int n_paths, double dt,
                                  std::uint64_t seed, unsigned threads = 0);

struct BridgeSample {
    Point x;
    double duration = 0.0;
    bool stayed_inside = false;  // tau_Sigma > u along the discrete bridge
    double f_u = 0.0;            // quantum clock over the full bridge
    double max_displacement = 0.0;
};

BridgeSample sample_bridge(const DomainGrid& grid, const FieldSample& field,
                           const CouplingParams& params, Point x, double u, double dt,
                           std::uint64_t seed);

/// Diagonal transition density of standard Brownian motion killed at
/// the domain boundary. Disc: image-charge correction below u = 0.05,
/// Bessel eigenseries above. Square: exact image (theta) product.
double classical_transition_diag(const DomainSpec& spec, double u, Point x);

struct BridgeIdentityResult {
    double mc_side = 0.0;        // integral of E[F e^{-lambda F} 1_stay] p_u(x,x) du
    double spectral_side = 0.0;  // sum_n f_n(x)^2 / (lambda_n + lambda)^2
    double relative_gap = 0.0;
    double se = 0.0;             // quadrature-propagated MC standard error
    bool inconclusive = false;   // MC too noisy to resolve a 50% gap
    Point x;
};

BridgeIdentityResult bridge_identity_check(const DomainGrid& grid, const FieldSample& field,
                                           const CouplingParams& params,
                                           const LiouvilleSpectrum& spectrum, Point x,
                                           double lambda, int n_bridges,
                                           const std::vector<double>& u_grid,
                                           std::uint64_t seed, unsigned threads = 0);

}  // namespace lqg
