// SPDX-License-Identifier: Apache-2.0
#include "lqg/field.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

namespace lqg {

CouplingParams CouplingParams::make(double gamma) {
    if (!(gamma >= 0.0 && gamma < 2.0)) {
        std::ostringstream msg;
        msg << "gamma must lie in [0, 2), got " << gamma;
        throw ConfigError(msg.str());
    }
    CouplingParams p;
    p.gamma = gamma;
    if (gamma > 0.0) p.q_param = 2.0 / gamma + gamma / 2.0;
    p.weyl_const = 1.0 / (M_PI * (2.0 - gamma * gamma / 2.0));
    return p;
}

CovarianceModel build_covariance(const DomainGrid& grid) {
    CovarianceModel model;
    model.cov = M_PI * grid.green;

    static constexpr double kJitterLadder[] = {0.0, 1e-10, 1e-8, 1e-6};
    const auto P = model.cov.rows();
    for (double jitter : kJitterLadder) {
        Mat trial = model.cov;
        trial.diagonal().array() += jitter;
        Eigen::LLT<Eigen::Ref<Mat>> llt(trial);  // decomposes in place
        if (llt.info() == Eigen::Success) {
            model.factor = trial.triangularView<Eigen::Lower>();
            model.jitter_used = jitter;
            return model;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(model.cov, Eigen::EigenvaluesOnly);
    std::ostringstream msg;
    msg << "covariance factorization failed for P=" << P
        << "; most negative eigenvalue estimate " << es.eigenvalues().minCoeff();
    throw NumericalError(msg.str());
}

FieldSample sample_gff(const CovarianceModel& model, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vec z(model.factor.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
    FieldSample s;
    s.seed = seed;
    s.values = model.factor.triangularView<Eigen::Lower>() * z;
    return s;
}

GmcMeasure gmc_weights(const DomainGrid& grid, const FieldSample& field,
                       const CouplingParams& params) {
    const double gamma = params.gamma;
    const double scale =
        grid.cell_area * std::pow(grid.mesh, gamma * gamma / 2.0);
    GmcMeasure m;
    m.gamma = gamma;
    if (gamma == 0.0) {
        m.weights = Vec::Constant(field.values.size(), grid.cell_area);
    } else {
        m.weights = scale * (gamma * field.values.array()).exp();
    }
    m.total = m.weights.sum();
    return m;
}

std::vector<double> ball_mass_profile(const DomainGrid& grid, const GmcMeasure& measure,
                                      const std::vector<double>& radii) {
    const auto P = grid.points.size();
    std::vector<double> out(radii.size(), 0.0);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r2 = radii[k] * radii[k];
        double sup = 0.0;
        for (std::size_t i = 0; i < P; ++i) {
            double mass = 0.0;
            for (std::size_t j = 0; j < P; ++j) {
                const double dx = grid.points[i].x - grid.points[j].x;
                const double dy = grid.points[i].y - grid.points[j].y;
                if (dx * dx + dy * dy <= r2)
                    mass += measure.weights[static_cast<Eigen::Index>(j)];
            }
            sup = std::max(sup, mass);
        }
        out[k] = sup;
    }
    return out;
}

}  // namespace lqg
