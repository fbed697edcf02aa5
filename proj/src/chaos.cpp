// SPDX-License-Identifier: Apache-2.0
#include "lqg/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "lqg/bessel.hpp"

namespace lqg {

SpacingStats unfold_gaps(const LiouvilleSpectrum& spectrum, const CouplingParams& params,
                         std::pair<double, double> window_frac) {
    const auto [lo, hi] = window_frac;
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
        throw ConfigError("unfold_gaps: window fractions must satisfy 0 <= lo < hi <= 1");
    const auto P = static_cast<int>(spectrum.size());
    SpacingStats st;
    st.n_lo = std::max(1, static_cast<int>(std::ceil(lo * P)));
    st.n_hi = std::min(P, static_cast<int>(std::floor(hi * P)));
    if (st.n_hi - st.n_lo + 1 < 100)
        throw ConfigError("unfold_gaps: window holds fewer than 100 eigenvalues");

    const double scale = params.weyl_const * spectrum.mu_total;
    for (int n = st.n_lo; n < st.n_hi; ++n)
        st.gaps.push_back(scale * (spectrum.lambdas[n] - spectrum.lambdas[n - 1]));
    double mean = 0.0;
    for (double s : st.gaps) mean += s;
    st.mean_gap = mean / static_cast<double>(st.gaps.size());
    st.ks_goe = ks_distance(st.gaps, wigner_surmise_cdf);
    st.ks_poisson = ks_distance(st.gaps, [](double s) { return 1.0 - std::exp(-s); });
    return st;
}

double wigner_surmise_cdf(double s) {
    if (s < 0.0) throw DomainError("wigner_surmise_cdf: negative spacing");
    return 1.0 - std::exp(-M_PI * s * s / 4.0);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ConfigError("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max(d, std::max((i + 1) / n - F, F - i / n));
    }
    return d;
}

QueReport que_divergence(const LiouvilleSpectrum& spectrum, const DomainGrid& grid, int n,
                         int partition_k) {
    if (partition_k < 2) throw ConfigError("que_divergence: partition_k must be >= 2");
    if (n < 1 || static_cast<std::size_t>(n) > spectrum.size())
        throw ConfigError("que_divergence: eigenfunction index out of range");
    QueReport rep;
    rep.n = n;
    const Vec& f = spectrum.eigfuncs.col(n - 1);

    const double side = grid.spec.kind == DomainKind::UnitDisc ? 2.0 : 1.0;
    const double cell = side / partition_k;
    const auto cells = static_cast<std::size_t>(partition_k) * partition_k;
    std::vector<double> fmass(cells, 0.0), mumass(cells, 0.0);
    double f2 = 0.0, f4 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto ei = static_cast<Eigen::Index>(i);
        const int cx = std::min(partition_k - 1,
                                static_cast<int>((grid.points[i].x - grid.origin) / cell));
        const int cy = std::min(partition_k - 1,
                                static_cast<int>((grid.points[i].y - grid.origin) / cell));
        const double w = f[ei] * f[ei] * spectrum.mu[ei];
        fmass[static_cast<std::size_t>(cx) * partition_k + cy] += w;
        mumass[static_cast<std::size_t>(cx) * partition_k + cy] += spectrum.mu[ei];
        f2 += w;
        f4 += f[ei] * f[ei] * w;
    }
    double tv = 0.0;
    for (std::size_t c = 0; c < cells; ++c)
        tv += std::abs(fmass[c] / f2 - mumass[c] / spectrum.mu_total);
    rep.tv_distance = 0.5 * tv;
    rep.ipr = f4 / (f2 * f2);
    return rep;
}

BerryProfile berry_autocorr_values(const Vec& f, const DomainGrid& grid, Point center,
                                   const std::vector<double>& radii) {
    if (radii.size() < 3) throw ConfigError("berry_autocorr: need >= 3 radii");
    BerryProfile prof;
    prof.radii = radii;
    const double rmax = radii.back();

    // local point set around the centre
    std::vector<std::size_t> local;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (dist(grid.points[i], center) <= rmax) local.push_back(i);

    // bin edges at midpoints between requested radii
    const auto B = radii.size();
    std::vector<double> lo(B), hi(B);
    for (std::size_t b = 0; b < B; ++b) {
        lo[b] = b == 0 ? 0.5 * grid.mesh : 0.5 * (radii[b - 1] + radii[b]);
        hi[b] = b + 1 == B ? radii[b] + 0.5 * (radii[b] - radii[b - 1])
                           : 0.5 * (radii[b] + radii[b + 1]);
    }
    std::vector<double> acc(B, 0.0);
    std::vector<long> cnt(B, 0);
    double norm = 0.0;
    for (std::size_t a = 0; a < local.size(); ++a) {
        const auto ia = static_cast<Eigen::Index>(local[a]);
        norm += f[ia] * f[ia];
        for (std::size_t b2 = a + 1; b2 < local.size(); ++b2) {
            const double r = dist(grid.points[local[a]], grid.points[local[b2]]);
            const auto it = std::upper_bound(hi.begin(), hi.end(), r);
            if (it == hi.end()) continue;
            const auto bin = static_cast<std::size_t>(it - hi.begin());
            if (r < lo[bin]) continue;
            acc[bin] += f[ia] * f[static_cast<Eigen::Index>(local[b2])];
            ++cnt[bin];
        }
    }
    if (local.empty() || norm == 0.0)
        throw ConfigError("berry_autocorr: no grid points near the centre");
    norm /= static_cast<double>(local.size());

    constexpr long kMinPairs = 20;
    prof.autocorr.assign(B, 0.0);
    prof.bin_ok.assign(B, 0);
    for (std::size_t b = 0; b < B; ++b) {
        if (cnt[b] >= kMinPairs) {
            prof.autocorr[b] = acc[b] / (static_cast<double>(cnt[b]) * norm);
            prof.bin_ok[b] = 1;
        }
    }

    // wavenumber from the first zero crossing of the profile
    const double j01 = bessel_zeros(0, 1).front();
    double r_zero = 0.0;
    double prev_r = 0.0, prev_v = 1.0;
    for (std::size_t b = 0; b < B; ++b) {
        if (!prof.bin_ok[b]) continue;
        const double v = prof.autocorr[b];
        if (v < 0.0) {
            // linear interpolation between the last positive value and here
            r_zero = prev_r + (radii[b] - prev_r) * prev_v / (prev_v - v);
            prof.zero_found = true;
            break;
        }
        prev_r = radii[b];
        prev_v = v;
    }
    if (prof.zero_found) prof.k_n = j01 / r_zero;

    prof.j0_fit.assign(B, 0.0);
    double mse = 0.0;
    int used = 0;
    for (std::size_t b = 0; b < B; ++b) {
        if (prof.zero_found) prof.j0_fit[b] = bessel_j0(prof.k_n * radii[b]);
        if (prof.bin_ok[b] && prof.zero_found) {
            const double d = prof.autocorr[b] - prof.j0_fit[b];
            mse += d * d;
            ++used;
        }
    }
    prof.misfit = used > 0 ? std::sqrt(mse / used) : 0.0;
    return prof;
}

BerryProfile berry_autocorr(const LiouvilleSpectrum& spectrum, const DomainGrid& grid,
                            int n, Point center, const std::vector<double>& radii) {
    if (n < 1 || static_cast<std::size_t>(n) > spectrum.size())
        throw ConfigError("berry_autocorr: eigenfunction index out of range");
    return berry_autocorr_values(spectrum.eigfuncs.col(n - 1), grid, center, radii);
}

}  // namespace lqg
