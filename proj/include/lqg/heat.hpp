// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lqg/pipeline.hpp"
#include "lqg/spectral.hpp"

namespace lqg {

struct HeatTrace {
    std::vector<double> times;   // ascending
    std::vector<double> values;  // H(t) = sum_n exp(-lambda_n t)
    std::vector<double> scaled;  // t H(t)
    std::vector<char> trusted;   // t above the lattice-truncation floor
};

std::vector<double> log_spaced_times(double tmin, double tmax, int count);

/// trusted_above marks times below the given floor (typically
/// 1/lambda at the bulk-window edge) as lattice-dominated.
HeatTrace heat_trace(const LiouvilleSpectrum& spectrum, const std::vector<double>& times,
                     double trusted_above = 0.0);

/// p_t(x_i, x_j) = sum_n exp(-lambda_n t) f_n(x_i) f_n(x_j)
double spectral_heat_kernel(const LiouvilleSpectrum& spectrum, double t, int i, int j);

/// max_i sum_j p_t(x_i, x_j) mu_j  (killed process: expected <= 1)
double subprobability_check(const LiouvilleSpectrum& spectrum, double t);

struct KaramataResult {
    double laplace_side = 0.0;   // lambda^rho nu_hat(lambda)
    double counting_side = 0.0;  // t^-rho nu(t)
    double relative_gap = 0.0;   // counting vs laplace/Gamma(1+rho)
    bool convergent = true;
};

/// Checks the Tauberian limit relation on an atomic measure at the
/// given probe points (use large lambda & small t, or the reverse pair
/// for the t -> infinity direction).
KaramataResult karamata_check(const std::vector<std::pair<double, double>>& atoms,
                              double rho, double lambda_probe, double t_probe);

struct KpzExponents {
    double euclid_x = 0.0;
    double gamma = 0.0;
    double delta = 0.0;  // root in [0,1] of x = (g^2/4) d^2 + (1 - g^2/4) d
};

KpzExponents kpz_solve(double x, double gamma);

struct PlateauEstimate {
    double t_star = 0.0;
    double value = 0.0;  // t* H(t*)
    double ratio = 0.0;  // value / (c_gamma mu(Sigma))
    bool plateau_found = false;
};

PlateauEstimate plateau_estimate(const HeatTrace& trace, const CouplingParams& params,
                                 double mu_total);

struct BoundaryFit {
    double alpha = 0.0;  // c_est - t H(t) ~ t^alpha over the window
    int points_used = 0;
    bool valid = false;  // false when residuals are nonpositive in the window
};

BoundaryFit boundary_correction_fit(const std::vector<double>& times,
                                    const std::vector<double>& scaled_mean, double c_est,
                                    double t_lo, double t_hi);

struct DiagStat {
    double gamma = 0.0;
    double t = 0.0;
    std::vector<double> samples;          // t p_t(x,x), x drawn from mu
    std::vector<double> laplace_samples;  // lambda sum_n f_n(x)^2/(lambda_n+lambda)^2
    std::vector<std::uint64_t> seeds;
    std::vector<Point> locations;
    double mean = 0.0;
    double coefficient_of_variation = 0.0;
};

DiagStat annealed_diag_stat(const Workspace& ws, const CouplingParams& params,
                            int replicas, double t, std::uint64_t base_seed,
                            unsigned threads = 0);

}  // namespace lqg
