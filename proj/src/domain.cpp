// SPDX-License-Identifier: Apache-2.0
#include "lqg/domain.hpp"

#include <algorithm>
#include <cmath>

namespace lqg {

void DomainSpec::validate() const {
    if (kind == DomainKind::UnitSquare && series_cutoff < 16)
        throw ConfigError("domain.series_cutoff must be >= 16 for the unit square");
}

double domain_area(const DomainSpec& spec) {
    return spec.kind == DomainKind::UnitDisc ? M_PI : 1.0;
}

double green_disc(Point x, Point y) {
    const double dx = x.x - y.x, dy = x.y - y.y;
    const double r2 = dx * dx + dy * dy;
    if (r2 == 0.0)
        throw NumericalError("green_disc: evaluation on the diagonal");
    // |1 - x conj(y)|^2 with x, y as complex numbers
    const double re = 1.0 - (x.x * y.x + x.y * y.y);
    const double im = x.x * y.y - x.y * y.x;
    return 0.5 / M_PI * std::log((re * re + im * im) / r2);
}

namespace {

// log(1 - 2 q cos(a) + q^2), stable for small q.
inline double log_poisson_kernel(double q, double cos_a) {
    return std::log1p(q * (q - 2.0 * cos_a));
}

// One image layer of the square Green function: the strip kernel
// summed over the transverse modes in closed form,
//   S(tau) = (1/4pi) log[(1 - 2q cos(pi(a+b)) + q^2) /
//                        (1 - 2q cos(pi(a-b)) + q^2)],  q = e^{-pi tau}.
inline double strip_term(double tau, double cos_sum, double cos_diff) {
    const double q = std::exp(-M_PI * tau);
    return (log_poisson_kernel(q, cos_sum) - log_poisson_kernel(q, cos_diff)) /
           (4.0 * M_PI);
}

constexpr int kImageLayers = 8;  // e^{-2 pi k} < 1e-17 beyond this

}  // namespace

double green_square_exact(Point x, Point y) {
    const double d = std::abs(x.y - y.y);
    const double s = x.y + y.y;
    const double cos_sum = std::cos(M_PI * (x.x + y.x));
    const double cos_diff = std::cos(M_PI * (x.x - y.x));
    if (d == 0.0 && cos_diff == 1.0)
        throw NumericalError("green_square: evaluation on the diagonal");
    double acc = 0.0;
    for (int k = 0; k < kImageLayers; ++k) {
        acc += strip_term(d + 2 * k, cos_sum, cos_diff);
        acc += strip_term(2 - d + 2 * k, cos_sum, cos_diff);
        acc -= strip_term(s + 2 * k, cos_sum, cos_diff);
        acc -= strip_term(2 - s + 2 * k, cos_sum, cos_diff);
    }
    return 2.0 * acc;  // -Delta normalization -> -(1/2) Delta
}

double green_square(Point x, Point y, int cutoff) {
    if (cutoff < 16) throw ConfigError("green_square: cutoff must be >= 16");
    const double zlo = std::min(x.y, y.y), zhi = std::max(x.y, y.y);
    const double d = zhi - zlo;
    double acc = 0.0;
    for (int m = 1; m <= cutoff; ++m) {
        const double a = m * M_PI;
        // sinh(a zlo) sinh(a (1-zhi)) / sinh(a) in overflow-safe form
        const double em = std::exp(-a * d) * (1.0 - std::exp(-2.0 * a * zlo)) *
                          (1.0 - std::exp(-2.0 * a * (1.0 - zhi))) /
                          (2.0 * (1.0 - std::exp(-2.0 * a)));
        acc += 2.0 / a * std::sin(a * x.x) * std::sin(a * y.x) * em;
    }
    return 2.0 * acc;
}

namespace {

// Regular part of the square Green function on the diagonal, in the
// -Delta normalization:
//   h(x) = lim_{y->x} [G(x,y) - (1/2pi) log(1/|x-y|)].
// Obtained from the image-layer expansion by cancelling the log
// singularity of the k=0 strip term analytically.
double square_harmonic_part_neg_laplace(Point x) {
    const double cos2 = std::cos(2.0 * M_PI * x.x);
    auto sbar = [&](double tau) {
        const double q = std::exp(-M_PI * tau);
        return (log_poisson_kernel(q, cos2) - 2.0 * std::log1p(-q)) /
               (4.0 * M_PI);
    };
    double acc = std::log(2.0 * std::sin(M_PI * x.x) / M_PI) / (2.0 * M_PI);
    for (int k = 1; k < kImageLayers; ++k) acc += 2.0 * sbar(2.0 * k);
    for (int k = 0; k < kImageLayers; ++k) {
        acc -= sbar(2.0 * x.y + 2.0 * k);
        acc -= sbar(2.0 - 2.0 * x.y + 2.0 * k);
    }
    return acc;
}

double harmonic_part(const DomainSpec& spec, Point x) {
    if (spec.kind == DomainKind::UnitDisc) {
        const double r2 = x.x * x.x + x.y * x.y;
        return std::log(1.0 - r2) / M_PI;
    }
    return 2.0 * square_harmonic_part_neg_laplace(x);
}

bool strictly_inside(const DomainSpec& spec, Point p) {
    if (spec.kind == DomainKind::UnitDisc)
        return p.x * p.x + p.y * p.y < 1.0;
    return p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0;
}

double boundary_distance(const DomainSpec& spec, Point p) {
    if (spec.kind == DomainKind::UnitDisc)
        return 1.0 - std::sqrt(p.x * p.x + p.y * p.y);
    return std::min(std::min(p.x, 1.0 - p.x), std::min(p.y, 1.0 - p.y));
}

}  // namespace

double diagonal_regularization(const DomainSpec& spec, Point x, double mesh) {
    return (std::log(1.0 / mesh) + kKappa0) / M_PI + harmonic_part(spec, x);
}

double conformal_radius(const DomainSpec& spec, Point x) {
    if (!strictly_inside(spec, x))
        throw ConfigError("conformal_radius: point outside the domain");
    if (spec.kind == DomainKind::UnitDisc)
        return 1.0 - (x.x * x.x + x.y * x.y);
    return std::exp(2.0 * M_PI * square_harmonic_part_neg_laplace(x));
}

bool DomainGrid::inside(Point p) const { return strictly_inside(spec, p); }

int DomainGrid::nearest_cell(Point p) const {
    const int nn = nodes_per_axis;
    auto clamp = [&](double v) {
        return std::clamp(static_cast<int>(std::lround((v - origin) / mesh)), 0, nn - 1);
    };
    const int i0 = clamp(p.x), j0 = clamp(p.y);
    if (node_to_point[i0 * nn + j0] >= 0) return node_to_point[i0 * nn + j0];
    for (int ring = 1; ring < nn; ++ring) {
        int best = -1;
        double best_d2 = 0.0;
        for (int di = -ring; di <= ring; ++di) {
            for (int dj = -ring; dj <= ring; ++dj) {
                if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
                const int i = i0 + di, j = j0 + dj;
                if (i < 0 || i >= nn || j < 0 || j >= nn) continue;
                const int idx = node_to_point[i * nn + j];
                if (idx < 0) continue;
                const double d2 = (points[idx].x - p.x) * (points[idx].x - p.x) +
                                  (points[idx].y - p.y) * (points[idx].y - p.y);
                if (best < 0 || d2 < best_d2) {
                    best = idx;
                    best_d2 = d2;
                }
            }
        }
        if (best >= 0) return best;
    }
    throw NumericalError("nearest_cell: empty grid");
}

DomainGrid build_grid(const DomainSpec& spec, int n) {
    spec.validate();
    if (n < 4) throw ConfigError("build_grid: resolution n must be >= 4");
    DomainGrid grid;
    grid.spec = spec;
    grid.n = n;
    const bool disc = spec.kind == DomainKind::UnitDisc;
    grid.origin = disc ? -1.0 : 0.0;
    grid.mesh = disc ? 2.0 / n : 1.0 / n;
    grid.cell_area = grid.mesh * grid.mesh;
    grid.nodes_per_axis = n + 1;
    grid.node_to_point.assign(static_cast<std::size_t>(n + 1) * (n + 1), -1);

    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Point p{grid.origin + i * grid.mesh, grid.origin + j * grid.mesh};
            if (boundary_distance(spec, p) >= 0.5 * grid.mesh) {
                grid.node_to_point[i * (n + 1) + j] =
                    static_cast<std::int32_t>(grid.points.size());
                grid.points.push_back(p);
            }
        }
    }
    if (grid.points.empty())
        throw ConfigError("build_grid: resolution too small, no interior points");

    const auto P = grid.points.size();
    grid.conf_radius.resize(static_cast<Eigen::Index>(P));
    for (std::size_t i = 0; i < P; ++i)
        grid.conf_radius[static_cast<Eigen::Index>(i)] =
            conformal_radius(spec, grid.points[i]);

    grid.green.resize(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
    parallel_for(P, [&](std::size_t i) {
        const Point xi = grid.points[i];
        const auto ei = static_cast<Eigen::Index>(i);
        grid.green(ei, ei) = diagonal_regularization(spec, xi, grid.mesh);
        for (std::size_t j = i + 1; j < P; ++j) {
            const double g = disc ? green_disc(xi, grid.points[j])
                                  : green_square_exact(xi, grid.points[j]);
            grid.green(ei, static_cast<Eigen::Index>(j)) = g;
        }
    });
    // mirror the upper triangle so symmetry holds bitwise
    for (Eigen::Index i = 0; i < grid.green.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) grid.green(i, j) = grid.green(j, i);
    return grid;
}

}  // namespace lqg
