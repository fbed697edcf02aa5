// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace lqg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist(Point a, Point b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Invalid configuration (bad resolution, parameter out of range, ...).
/// Mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure (factorization breakdown, non-positive operator, ...).
/// Mapped to exit code 3 by the CLI.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : ConfigError {
    using ConfigError::ConfigError;
};

/// Runs fn(i) for i in [0, count) on up to max_threads workers.
/// Work is split into contiguous chunks; results must be written to
/// per-index slots so the outcome is independent of the scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned max_threads = 0);

}  // namespace lqg
