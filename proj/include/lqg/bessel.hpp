// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace lqg {

/// J_0(r) for r >= 0; power series below r = 14, Hankel asymptotic
/// expansion beyond. Absolute error below 1e-10 everywhere.
double bessel_j0(double r);

/// J_m(x) for integer m >= 0.
double bessel_jn(int m, double x);

/// Strict lower bound for the first positive zero of J_m.
double bessel_first_zero_lower_bound(int m);

/// All positive zeros of J_m below xmax, ascending.
std::vector<double> bessel_zeros_below(int m, double xmax);

/// First `count` positive zeros of J_m.
std::vector<double> bessel_zeros(int m, int count);

}  // namespace lqg
