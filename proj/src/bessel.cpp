// SPDX-License-Identifier: Apache-2.0
#include "lqg/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "lqg/common.hpp"

namespace lqg {

double bessel_j0(double r) {
    if (r < 0.0) throw ConfigError("bessel_j0: negative argument");
    if (r < 14.0) {
        const double q = r * r / 4.0;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 80; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    // Hankel expansion: J0 = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
    double a = 1.0;  // a_k = ((2k-1)!!)^2 / (k! 8^k)
    double p = 1.0, q = 0.0;
    double prev = 1.0;
    for (int k = 1; k <= 20; ++k) {
        a *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k);
        const double t = a / std::pow(r, k);
        if (t > prev) break;  // asymptotic series started diverging
        prev = t;
        const int sign = (k % 4 == 0 || k % 4 == 1) ? 1 : -1;
        if (k % 2 == 1)
            q += sign * t;
        else
            p += sign * t;
        if (t < 1e-17) break;
    }
    const double chi = r - M_PI / 4.0;
    return std::sqrt(2.0 / (M_PI * r)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_jn(int m, double x) {
    if (m < 0) throw ConfigError("bessel_jn: order must be nonnegative");
    if (m == 0) return bessel_j0(x);
    return std::cyl_bessel_j(static_cast<double>(m), x);
}

double bessel_first_zero_lower_bound(int m) {
    // j_{m,1} > m for all m; j_{0,1} > 2.4
    return m == 0 ? 2.4 : static_cast<double>(m);
}

namespace {

double bisect_zero(int m, double lo, double hi) {
    double flo = bessel_jn(m, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_jn(m, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> bessel_zeros_below(int m, double xmax) {
    std::vector<double> zeros;
    // consecutive zeros of J_m are separated by more than pi/2, so a
    // pi/2 scan cannot skip a sign change
    const double step = M_PI / 2.0;
    double x = std::max(bessel_first_zero_lower_bound(m) - step, 1e-3);
    double fx = bessel_jn(m, x);
    while (x < xmax) {
        const double x2 = x + step;
        const double f2 = bessel_jn(m, x2);
        if ((fx < 0.0) != (f2 < 0.0)) {
            const double z = bisect_zero(m, x, x2);
            if (z < xmax) zeros.push_back(z);
        }
        x = x2;
        fx = f2;
    }
    return zeros;
}

std::vector<double> bessel_zeros(int m, int count) {
    std::vector<double> zeros;
    double xmax = bessel_first_zero_lower_bound(m) + (count + 1) * M_PI + 10.0;
    zeros = bessel_zeros_below(m, xmax);
    while (static_cast<int>(zeros.size()) < count) {
        xmax *= 1.5;
        zeros = bessel_zeros_below(m, xmax);
    }
    zeros.resize(static_cast<std::size_t>(count));
    return zeros;
}

}  // namespace lqg
