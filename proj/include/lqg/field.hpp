// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lqg/domain.hpp"

namespace lqg {

struct CouplingParams {
    double gamma = 0.0;
    std::optional<double> q_param;  // Q = 2/gamma + gamma/2, absent at gamma = 0
    double weyl_const = 0.0;        // c_gamma = 1 / (pi (2 - gamma^2/2))

    static CouplingParams make(double gamma);
};

/// Covariance of the lattice field, C = pi * g so that
/// C(x,y) = -log|x-y| + O(1), factorized once per grid.
struct CovarianceModel {
    Mat cov;     // P x P
    Mat factor;  // lower-triangular, factor * factor^T = cov + jitter I
    double jitter_used = 0.0;
};

struct FieldSample {
    Vec values;  // h_i
    std::uint64_t seed = 0;
};

struct GmcMeasure {
    Vec weights;  // mu_i > 0
    double total = 0.0;
    double gamma = 0.0;
};

CovarianceModel build_covariance(const DomainGrid& grid);

FieldSample sample_gff(const CovarianceModel& model, std::uint64_t seed);

GmcMeasure gmc_weights(const DomainGrid& grid, const FieldSample& field,
                       const CouplingParams& params);

/// sup over grid centres of mu(B(x, r)) for each requested radius.
std::vector<double> ball_mass_profile(const DomainGrid& grid, const GmcMeasure& measure,
                                      const std::vector<double>& radii);

}  // namespace lqg
