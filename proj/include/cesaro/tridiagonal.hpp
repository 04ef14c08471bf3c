// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_TRIDIAGONAL_HPP
#define CESARO_TRIDIAGONAL_HPP

// Eigenvalues of real symmetric tridiagonal matrices: bisection on Sturm
// counts (the production path) and implicit-shift QL (the cross-check).
// Also a Householder reduction of dense Hermitian matrices to that form.

#include <cesaro/error.hpp>
#include <cesaro/sequences.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <span>
#include <vector>

namespace cesaro {

/// Symmetric tridiagonal matrix: diag d_1..d_N, off-diagonal e_1..e_{N-1}.
struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> off;

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }
};

namespace detail {

struct gershgorin_interval {
    double lo;
    double hi;
};

inline gershgorin_interval gershgorin(const TridiagonalMatrix& t)
{
    const std::size_t n = t.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) {
            r += std::abs(t.off[i - 1]);
        }
        if (i + 1 < n) {
            r += std::abs(t.off[i]);
        }
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

// Number of eigenvalues strictly less than x (LDL^T inertia). `off2` holds
// the squared off-diagonals; `pivmin` keeps the recurrence away from zero.
inline std::size_t sturm_count(std::span<const double> diag, std::span<const double> off2, double x,
                               double pivmin)
{
    std::size_t count = 0;
    double q = diag[0] - x;
    if (std::abs(q) < pivmin) {
        q = -pivmin;
    }
    if (q < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < diag.size(); ++i) {
        q = diag[i] - x - off2[i - 1] / q;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

inline void check_shape(const TridiagonalMatrix& t)
{
    if (t.diag.empty()) {
        throw error(errc::empty_sequence, "empty tridiagonal matrix");
    }
    if (t.off.size() + 1 != t.diag.size()) {
        throw error(errc::invalid_argument, "off-diagonal must have N-1 entries");
    }
    // zero is allowed: Householder reduction of decoupled blocks produces it
    for (std::size_t k = 0; k < t.off.size(); ++k) {
        if (!(t.off[k] >= 0.0)) {
            throw error(errc::invalid_argument, "off-diagonal entries must be nonnegative", k + 1);
        }
    }
}

} // namespace detail

struct BisectionOptions {
    /// Convergence tolerance relative to max(|lo|, |hi|) of the Gershgorin interval.
    double rel_tol = 1e-13;
    /// Emit a diagnostic when two eigenvalues agree within this (relative) gap.
    bool warn_duplicates = true;
    double duplicate_tol = 1e-12;
};

/// All eigenvalues, ascending, by bisection on Sturm sequence counts.
inline std::vector<double> eig_bisection(const TridiagonalMatrix& t, const BisectionOptions& opt = {})
{
    detail::check_shape(t);
    const std::size_t n = t.size();
    if (n == 1) {
        return {t.diag[0]};
    }
    std::vector<double> off2(n - 1);
    double max_e2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        off2[i] = t.off[i] * t.off[i];
        max_e2 = std::max(max_e2, off2[i]);
    }
    const auto [glo, ghi] = detail::gershgorin(t);
    const double scale = std::max({std::abs(glo), std::abs(ghi), std::numeric_limits<double>::min()});
    const double tol = opt.rel_tol * scale;
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_e2);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    std::vector<double> eig(n);
    // Bracket of the k-th eigenvalue: count(lo) <= k < count(hi).
    std::vector<double> lower(n, glo - tol);
    std::vector<double> upper(n, ghi + tol);
    for (std::size_t k = 0; k < n; ++k) {
        double lo = std::max(lower[k], k > 0 ? eig[k - 1] - tol : lower[k]);
        double hi = upper[k];
        for (int iter = 0; iter < 200; ++iter) {
            if (hi - lo <= tol + 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) {
                break;
            }
            const double mid = 0.5 * (lo + hi);
            const std::size_t c = detail::sturm_count(t.diag, off2, mid, pivmin);
            // eigenvalues [k, c) lie below mid, the rest at or above it
            for (std::size_t j = k; j < c && j < n; ++j) {
                upper[j] = std::min(upper[j], mid);
            }
            for (std::size_t j = std::max(c, k); j < n; ++j) {
                lower[j] = std::max(lower[j], mid);
            }
            if (c > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        eig[k] = 0.5 * (lo + hi);
    }
    std::sort(eig.begin(), eig.end());
    if (opt.warn_duplicates) {
        for (std::size_t k = 1; k < n; ++k) {
            if (eig[k] - eig[k - 1] <= opt.duplicate_tol * scale) {
                std::cerr << "cesaro: warning: near-duplicate eigenvalues at " << eig[k]
                          << " (simple spectrum expected)\n";
                break;
            }
        }
    }
    return eig;
}

/// All eigenvalues, ascending, by the implicit-shift QL iteration.
inline std::vector<double> eig_ql(const TridiagonalMatrix& t)
{
    detail::check_shape(t);
    const std::size_t n = t.size();
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    std::copy(t.off.begin(), t.off.end(), e.begin());
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t max_iter = 30 * n + 30;
    std::size_t total = 0;
    for (std::size_t l = 0; l < n; ++l) {
        while (true) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m == l) {
                break;
            }
            if (++total > max_iter) {
                throw error(errc::no_convergence, "QL iteration did not converge", max_iter);
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

/// Householder reduction of a dense Hermitian matrix to a real symmetric
/// tridiagonal matrix with the same eigenvalues. The complex off-diagonal
/// phases are removed by a diagonal unitary similarity, leaving |e_k|.
inline TridiagonalMatrix hermitian_to_tridiagonal(Matrix a)
{
    const Eigen::Index n = a.rows();
    if (n == 0 || a.cols() != n) {
        throw error(errc::invalid_argument, "square nonempty matrix required");
    }
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
        const Eigen::Index m = n - k - 1;
        Eigen::VectorXcd x = a.block(k + 1, k, m, 1);
        const double xnorm = x.norm();
        if (xnorm == 0.0) {
            continue;
        }
        const complex x0 = x(0);
        const complex phase = std::abs(x0) == 0.0 ? complex(1.0, 0.0) : x0 / std::abs(x0);
        const complex alpha = -phase * xnorm;
        Eigen::VectorXcd v = x;
        v(0) -= alpha;
        const double vnorm = v.norm();
        if (vnorm == 0.0) {
            continue;
        }
        v /= vnorm;
        auto a22 = a.block(k + 1, k + 1, m, m);
        const Eigen::VectorXcd w = a22 * v;
        const complex kappa = v.dot(w);
        Matrix update = -2.0 * v * w.adjoint() - 2.0 * w * v.adjoint() + 4.0 * kappa * v * v.adjoint();
        a22 += update;
        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        a.block(k + 2, k, m - 1, 1).setZero();
        a.block(k, k + 2, 1, m - 1).setZero();
    }
    TridiagonalMatrix t;
    t.diag.resize(static_cast<std::size_t>(n));
    t.off.resize(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        t.diag[static_cast<std::size_t>(i)] = a(i, i).real();
        if (i + 1 < n) {
            t.off[static_cast<std::size_t>(i)] = std::abs(a(i + 1, i));
        }
    }
    return t;
}

} // namespace cesaro

#endif
