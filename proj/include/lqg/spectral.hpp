// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "lqg/field.hpp"

namespace lqg {

/// Symmetrized Nystrom discretization of the Green operator,
/// M_ij = sqrt(mu_i) g_ij sqrt(mu_j); isospectral to the operator on
/// L^2(mu).
struct LiouvilleOperator {
    Mat matrix;
    Vec mu;
    double mu_total = 0.0;
};

struct LiouvilleSpectrum {
    Vec lambdas;          // ascending, lambda_n = 1 / mu_n
    Mat eigfuncs;         // column n holds f_n(x_i) = v_{n,i} / sqrt(mu_i)
    Vec mu;
    double mu_total = 0.0;
    int clamped = 0;      // eigenvalues in [-tol, 0] excluded from the spectrum

    std::size_t size() const { return static_cast<std::size_t>(lambdas.size()); }
};

struct WeylFit {
    int n_lo = 0, n_hi = 0;       // 1-based index window
    double slope = 0.0;           // least squares of n on lambda_n mu(Sigma), origin pinned
    double discrepancy = 0.0;     // sup over window of |n - slope lambda_n mu(Sigma)|
    double polya_fraction = 0.0;  // fraction with N(lambda_n) <= c_gamma lambda_n mu(Sigma)
};

LiouvilleOperator assemble_operator(const DomainGrid& grid, const GmcMeasure& measure);

/// sqrt(sum_ij g_ij^2 mu_i mu_j); equals the Frobenius norm of M.
double hs_norm(const LiouvilleOperator& op);

LiouvilleSpectrum eigendecompose(const LiouvilleOperator& op);

/// max_i |f_n(x_i) - lambda_n sum_j g_ij f_n(x_j) mu_j|, the discrete
/// fixed-point residual of the eigenfunction equation.
double eigfun_smoothing_residual(const LiouvilleSpectrum& spectrum,
                                 const LiouvilleOperator& op, int n);

/// N(lambda) = #{lambda_n <= lambda}.
int counting_function(const LiouvilleSpectrum& spectrum, double lambda);

WeylFit weyl_fit(const LiouvilleSpectrum& spectrum, const CouplingParams& params,
                 std::pair<double, double> window_frac = {0.02, 0.20});

/// Ascending Dirichlet eigenvalues of -(1/2) Laplacian on the domain:
/// pi^2 (m^2 + k^2) / 2 for the unit square, j_{m,k}^2 / 2 for the
/// unit disc.
std::vector<double> classical_reference_spectrum(const DomainSpec& spec, int count);

}  // namespace lqg
