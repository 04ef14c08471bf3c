// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_QUADRATURE_HPP
#define CESARO_QUADRATURE_HPP

#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>

#include <cmath>
#include <vector>

namespace cesaro {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi], nodes ascending. Newton iteration
/// on the three-term recurrence for P_n, started from the Tricomi estimate.
inline QuadratureRule gauss_legendre(std::size_t n, double lo = -1.0, double hi = 1.0)
{
    if (n == 0) {
        throw error(errc::invalid_argument, "Gauss-Legendre rule needs n >= 1");
    }
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    const auto nd = static_cast<double>(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // i-th largest root
        double x = std::cos(detail::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const auto kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
                break;
            }
        }
        // final derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const auto kd = static_cast<double>(k);
            const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : nd * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        if (2 * i + 1 == n) {
            x = 0.0;
        }
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.nodes[i] = mid - half * x;
        rule.weights[n - 1 - i] = half * w;
        rule.weights[i] = half * w;
    }
    return rule;
}

} // namespace cesaro

#endif
