// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lqg/spectral.hpp"

namespace lqg {

struct SpacingStats {
    std::vector<double> gaps;  // c_gamma mu(Sigma) (lambda_{j+1} - lambda_j)
    double ks_goe = 0.0;       // KS distance to the Wigner surmise CDF
    double ks_poisson = 0.0;   // KS distance to 1 - e^{-s}
    double mean_gap = 0.0;
    int n_lo = 0, n_hi = 0;
};

SpacingStats unfold_gaps(const LiouvilleSpectrum& spectrum, const CouplingParams& params,
                         std::pair<double, double> window_frac);

/// Wigner surmise CDF 1 - exp(-pi s^2 / 4), the documented stand-in
/// for the exact GOE spacing law.
double wigner_surmise_cdf(double s);

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct QueReport {
    int n = 0;
    double tv_distance = 0.0;  // |f_n|^2 mu vs mu/mu(Sigma) over a macro-partition
    double ipr = 0.0;          // sum f^4 mu / (sum f^2 mu)^2
};

QueReport que_divergence(const LiouvilleSpectrum& spectrum, const DomainGrid& grid, int n,
                         int partition_k);

struct BerryProfile {
    std::vector<double> radii;
    std::vector<double> autocorr;  // normalized to 1 at r -> 0
    std::vector<double> j0_fit;    // J_0(k_n r) at the fitted wavenumber
    std::vector<char> bin_ok;      // bins with too few pairs are dropped
    double k_n = 0.0;
    double misfit = 0.0;  // rms deviation over kept bins
    bool zero_found = false;
};

/// Radial autocorrelation of the values `f` around `center`, fitted
/// against the Bessel J_0 shape of the random-wave model.
BerryProfile berry_autocorr_values(const Vec& f, const DomainGrid& grid, Point center,
                                   const std::vector<double>& radii);

BerryProfile berry_autocorr(const LiouvilleSpectrum& spectrum, const DomainGrid& grid,
                            int n, Point center, const std::vector<double>& radii);

}  // namespace lqg
