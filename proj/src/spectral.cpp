// SPDX-License-Identifier: Apache-2.0
#include "lqg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lqg/bessel.hpp"

namespace lqg {

LiouvilleOperator assemble_operator(const DomainGrid& grid, const GmcMeasure& measure) {
    const auto P = static_cast<Eigen::Index>(grid.size());
    if (measure.weights.size() != P)
        throw ConfigError("assemble_operator: grid and measure sizes differ");
    LiouvilleOperator op;
    op.mu = measure.weights;
    op.mu_total = measure.total;
    const Vec s = op.mu.array().sqrt();
    op.matrix.resize(P, P);
    parallel_for(static_cast<std::size_t>(P), [&](std::size_t iu) {
        const auto i = static_cast<Eigen::Index>(iu);
        for (Eigen::Index j = i; j < P; ++j)
            op.matrix(i, j) = s[i] * grid.green(i, j) * s[j];
    });
    for (Eigen::Index i = 0; i < P; ++i)
        for (Eigen::Index j = 0; j < i; ++j) op.matrix(i, j) = op.matrix(j, i);
    return op;
}

double hs_norm(const LiouvilleOperator& op) {
    // accumulate g_ij^2 mu_i mu_j directly rather than reading M back
    const auto P = op.matrix.rows();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < P; ++j)
        for (Eigen::Index i = 0; i < P; ++i) {
            const double m = op.matrix(i, j);
            acc += m * m;
        }
    return std::sqrt(acc);
}

LiouvilleSpectrum eigendecompose(const LiouvilleOperator& op) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(op.matrix);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: eigensolver failed to converge");
    const Vec& w = solver.eigenvalues();  // ascending
    const auto P = w.size();
    const double tol = 1e-8 * op.matrix.norm();

    if (w[0] < -tol) {
        std::ostringstream msg;
        msg << "operator not positive: eigenvalue " << w[0] << " at index 0 (tolerance "
            << -tol << "); check diagonal regularization or grid resolution";
        throw NumericalError(msg.str());
    }
    Eigen::Index first_pos = 0;
    while (first_pos < P && w[first_pos] <= 0.0) ++first_pos;
    if (first_pos > 0)
        std::cerr << "[lqg] warning: clamped " << first_pos
                  << " nonpositive operator eigenvalue(s) within tolerance\n";

    const auto kept = P - first_pos;
    LiouvilleSpectrum spec;
    spec.mu = op.mu;
    spec.mu_total = op.mu_total;
    spec.clamped = static_cast<int>(first_pos);
    spec.lambdas.resize(kept);
    spec.eigfuncs.resize(P, kept);
    const Vec inv_sqrt_mu = op.mu.array().rsqrt();
    for (Eigen::Index k = 0; k < kept; ++k) {
        // descending operator eigenvalue -> ascending lambda
        const Eigen::Index src = P - 1 - k;
        spec.lambdas[k] = 1.0 / w[src];
        Vec f = solver.eigenvectors().col(src).cwiseProduct(inv_sqrt_mu);
        // deterministic sign: largest-magnitude component positive,
        // lowest index on ties
        Eigen::Index arg = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < P; ++i)
            if (std::abs(f[i]) > best) {
                best = std::abs(f[i]);
                arg = i;
            }
        if (f[arg] < 0.0) f = -f;
        spec.eigfuncs.col(k) = f;
    }
    return spec;
}

double eigfun_smoothing_residual(const LiouvilleSpectrum& spectrum,
                                 const LiouvilleOperator& op, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > spectrum.size())
        throw ConfigError("eigfun_smoothing_residual: index out of range");
    const Eigen::Index k = n - 1;
    const Vec& f = spectrum.eigfuncs.col(k);
    const Vec s = op.mu.array().sqrt();
    // sum_j g_ij f_j mu_j = (1/sqrt(mu_i)) (M (f .* sqrt(mu)))_i
    const Vec gf = (op.matrix * f.cwiseProduct(s)).cwiseQuotient(s);
    return (f - spectrum.lambdas[k] * gf).cwiseAbs().maxCoeff();
}

int counting_function(const LiouvilleSpectrum& spectrum, double lambda) {
    const auto& l = spectrum.lambdas;
    return static_cast<int>(std::upper_bound(l.begin(), l.end(), lambda) - l.begin());
}

WeylFit weyl_fit(const LiouvilleSpectrum& spectrum, const CouplingParams& params,
                 std::pair<double, double> window_frac) {
    const auto [lo, hi] = window_frac;
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
        throw ConfigError("weyl_fit: window fractions must satisfy 0 <= lo < hi <= 1");
    const auto P = static_cast<int>(spectrum.size());
    WeylFit fit;
    fit.n_lo = std::max(1, static_cast<int>(std::ceil(lo * P)));
    fit.n_hi = std::min(P, static_cast<int>(std::floor(hi * P)));
    if (fit.n_hi - fit.n_lo + 1 < 10)
        throw ConfigError("weyl_fit: window shorter than 10 indices");

    double sxy = 0.0, sxx = 0.0;
    for (int n = fit.n_lo; n <= fit.n_hi; ++n) {
        const double x = spectrum.lambdas[n - 1] * spectrum.mu_total;
        sxy += static_cast<double>(n) * x;
        sxx += x * x;
    }
    fit.slope = sxy / sxx;

    int below = 0;
    for (int n = fit.n_lo; n <= fit.n_hi; ++n) {
        const double x = spectrum.lambdas[n - 1] * spectrum.mu_total;
        fit.discrepancy = std::max(fit.discrepancy, std::abs(n - fit.slope * x));
        if (n <= params.weyl_const * x) ++below;
    }
    fit.polya_fraction = static_cast<double>(below) / (fit.n_hi - fit.n_lo + 1);
    return fit;
}

std::vector<double> classical_reference_spectrum(const DomainSpec& spec, int count) {
    if (count < 1) throw ConfigError("classical_reference_spectrum: count must be >= 1");
    std::vector<double> out;
    if (spec.kind == DomainKind::UnitSquare) {
        // lambda = pi^2 (m^2 + k^2) / 2; enough axis modes so that the
        // smallest `count` sums are all present
        const int axis = static_cast<int>(std::ceil(std::sqrt(4.0 * count))) + 2;
        out.reserve(static_cast<std::size_t>(axis) * axis);
        for (int m = 1; m <= axis; ++m)
            for (int k = 1; k <= axis; ++k)
                out.push_back(M_PI * M_PI * (m * m + k * k) / 2.0);
    } else {
        // lambda = j_{m,k}^2 / 2, Bessel zero j_{m,k} with multiplicity
        // 2 for m >= 1 (cos/sin angular modes)
        // N(lambda) ~ lambda/2 for the unit disc fixes the zero cutoff
        const double jmax2 = 2.0 * (2.2 * count + 200.0);
        const double jmax = std::sqrt(jmax2);
        for (int m = 0; bessel_first_zero_lower_bound(m) < jmax; ++m) {
            for (double z : bessel_zeros_below(m, jmax)) {
                out.push_back(z * z / 2.0);
                if (m > 0) out.push_back(z * z / 2.0);
            }
        }
    }
    std::sort(out.begin(), out.end());
    if (static_cast<int>(out.size()) < count)
        throw NumericalError("classical_reference_spectrum: internal cutoff too small");
    out.resize(static_cast<std::size_t>(count));
    return out;
}

}  // namespace lqg
