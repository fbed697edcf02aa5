// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "lqg/common.hpp"

namespace lqg {

enum class DomainKind { UnitDisc, UnitSquare };

/// Mean of -log|u| over the unit square cell [-1/2,1/2]^2; closed form
/// (3 + log 2 - pi/2)/2, used for the cell-averaged diagonal of the
/// Green matrix.
inline const double kKappa0 = 0.5 * (3.0 + std::log(2.0) - 0.5 * M_PI);

struct DomainSpec {
    DomainKind kind = DomainKind::UnitDisc;
    // Number of eigenmodes per axis kept by the truncated Green series
    // (square only).
    int series_cutoff = 256;

    void validate() const;
};

/// Discretized planar domain. Points are lattice nodes spaced `mesh`
/// apart inside the bounding box; nodes closer than mesh/2 to the
/// boundary are dropped together with their cells. Immutable after
/// construction and safe to share across threads.
struct DomainGrid {
    DomainSpec spec;
    int n = 0;            // resolution per axis
    double mesh = 0.0;    // lattice spacing
    double cell_area = 0.0;
    double origin = 0.0;  // bounding-box corner coordinate (both axes)
    std::vector<Point> points;
    Vec conf_radius;  // R(x_i)
    Mat green;        // g(x_i, x_j), cell-averaged diagonal

    // Lattice node (i,j) -> retained point index, -1 for dropped nodes.
    std::vector<std::int32_t> node_to_point;
    int nodes_per_axis = 0;

    std::size_t size() const { return points.size(); }
    bool inside(Point p) const;
    /// Index of the retained point whose cell is nearest to p.
    int nearest_cell(Point p) const;
};

double domain_area(const DomainSpec& spec);

/// Dirichlet Green function of standard planar Brownian motion on the
/// unit disc, (1/pi) log |1 - x conj(y)| / |x - y| in complex notation.
double green_disc(Point x, Point y);

/// Same on the unit square via the Dirichlet eigenmode expansion
/// truncated at `cutoff` modes per axis, with the cross-axis sum taken
/// in closed form.
double green_square(Point x, Point y, int cutoff);

/// Fully resummed series (exact to machine precision); this is what
/// grid assembly uses.
double green_square_exact(Point x, Point y);

/// Cell-averaged self-interaction g_ii for a cell of side `mesh`
/// centred at x.
double diagonal_regularization(const DomainSpec& spec, Point x, double mesh);

double conformal_radius(const DomainSpec& spec, Point x);

DomainGrid build_grid(const DomainSpec& spec, int n);

}  // namespace lqg
