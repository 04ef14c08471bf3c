// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_REGULARITY_HPP
#define CESARO_REGULARITY_HPP

// Finite-window diagnostics: root tests, Cesaro-Nevai averages for scalar,
// block and unit-circle recurrences, the arc statistics and the Cesaro
// average of the distance to an isospectral torus. Each returns a
// StatSeries over a ladder of window sizes N.

#include <cesaro/detail/numeric.hpp>
#include <cesaro/distance.hpp>
#include <cesaro/error.hpp>
#include <cesaro/periodic.hpp>
#include <cesaro/sequences.hpp>
#include <cesaro/spectra.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace cesaro {

/// Values of one statistic at strictly increasing window sizes.
struct StatSeries {
    std::string label;
    std::vector<std::size_t> Ns;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return Ns.size(); }
    [[nodiscard]] double last() const { return values.back(); }
};

/// 2^5, ..., 2^13.
inline std::vector<std::size_t> default_ladder()
{
    std::vector<std::size_t> out;
    for (std::size_t k = 5; k <= 13; ++k) {
        out.push_back(std::size_t{1} << k);
    }
    return out;
}

inline std::vector<std::size_t> validate_ladder(const std::vector<std::size_t>& ns)
{
    if (ns.empty()) {
        throw error(errc::empty_sequence, "empty window ladder");
    }
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (ns[k] == 0 || (k > 0 && ns[k] <= ns[k - 1])) {
            throw error(errc::invalid_argument, "window sizes must be positive and strictly increasing", k);
        }
    }
    return ns;
}

inline void write_stats_csv_header(std::ostream& os)
{
    os << "label,N,value\n";
}

inline void write_stats_csv_rows(std::ostream& os, const StatSeries& s)
{
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << s.label << ',' << s.Ns[k] << ',' << detail::format_double(s.values[k]) << '\n';
    }
}

inline void write_stats_csv(std::ostream& os, const std::vector<StatSeries>& all)
{
    write_stats_csv_header(os);
    for (const auto& s : all) {
        write_stats_csv_rows(os, s);
    }
}

namespace detail {

// Cesaro means (1/N) sum_{i < N} term(i) at every N of the ladder.
inline StatSeries cesaro(std::string label, const std::vector<std::size_t>& ns,
                         const std::function<double(std::size_t)>& term, double scale = 1.0)
{
    StatSeries out{std::move(label), validate_ladder(ns), {}};
    compensated_sum s;
    std::size_t i = 0;
    for (std::size_t n : out.Ns) {
        for (; i < n; ++i) {
            s += term(i);
        }
        out.values.push_back(s.value() / (static_cast<double>(n) * scale));
    }
    return out;
}

inline StatSeries exp_series(StatSeries s)
{
    for (double& v : s.values) {
        v = std::exp(v);
    }
    return s;
}

inline void require_positive(double v, std::size_t n)
{
    if (!(v > 0.0)) {
        throw error(errc::non_positive_a, "positive value required", n);
    }
}

} // namespace detail

//------------------------------------------------------------------------------
// Root tests

/// (a_1 ... a_N)^{1/N}, as exp of the mean log.
inline StatSeries root_test(const JacobiParams& j, const std::vector<std::size_t>& ns)
{
    j.require_window(validate_ladder(ns).back(), true);
    return detail::exp_series(detail::cesaro("root_test", ns, [&](std::size_t i) {
        const double a = j.a(i + 1);
        detail::require_positive(a, i + 1);
        return std::log(a);
    }));
}

/// (rho_0 ... rho_{N-1})^{1/N}.
inline StatSeries root_test(const VerblunskyParams& v, const std::vector<std::size_t>& ns)
{
    v.require_window(validate_ladder(ns).back());
    return detail::exp_series(detail::cesaro("root_test", ns, [&](std::size_t i) {
        const double r = v.rho(i);
        detail::require_positive(r, i);
        return std::log(r);
    }));
}

/// (prod_{n <= N} |det A_n|)^{1/(N l)}.
inline StatSeries root_test(const BlockJacobiParams& jb, const std::vector<std::size_t>& ns)
{
    if (jb.A.size() < validate_ladder(ns).back()) {
        throw error(errc::out_of_range, "block parameters shorter than requested window", jb.A.size());
    }
    return detail::exp_series(detail::cesaro(
        "root_test", ns,
        [&](std::size_t i) {
            const double d = std::abs(jb.A[i].determinant());
            if (!(d > 0.0)) {
                throw error(errc::singular_block, "singular A_n in root test", i + 1);
            }
            return std::log(d);
        },
        static_cast<double>(jb.block_size)));
}

//------------------------------------------------------------------------------
// Scalar OPRL statistics

/// (1/N) sum_{n <= N} (|a_n - 1| + |b_n|).
inline StatSeries cn_stat_oprl(const JacobiParams& j, const std::vector<std::size_t>& ns)
{
    j.require_window(validate_ladder(ns).back(), true);
    return detail::cesaro("cn_stat", ns,
                          [&](std::size_t i) { return std::abs(j.a(i + 1) - 1.0) + std::abs(j.b(i + 1)); });
}

/// (1/N) sum_{n <= N} ((a_n - 1)^2 + b_n^2).
inline StatSeries cn_stat_oprl_squared(const JacobiParams& j, const std::vector<std::size_t>& ns)
{
    j.require_window(validate_ladder(ns).back(), true);
    return detail::cesaro("cn_stat_squared", ns, [&](std::size_t i) {
        const double da = j.a(i + 1) - 1.0;
        const double b = j.b(i + 1);
        return da * da + b * b;
    });
}

/// cn_stat over the shifted windows start, ..., start + N - 1.
inline StatSeries cn_stat_oprl_windowed(const JacobiParams& j, std::size_t start, const std::vector<std::size_t>& ns)
{
    if (start == 0) {
        throw error(errc::out_of_range, "parameters are indexed from 1");
    }
    j.require_window(start + validate_ladder(ns).back() - 1, true);
    return detail::cesaro("cn_stat_windowed", ns, [&](std::size_t i) {
        return std::abs(j.a(start + i) - 1.0) + std::abs(j.b(start + i));
    });
}

/// (1/N) [2 sum_{n < N} a_n^2 + sum_{n <= N} b_n^2].
inline StatSeries trace_stat(const JacobiParams& j, const std::vector<std::size_t>& ns)
{
    StatSeries out{"trace_stat", validate_ladder(ns), {}};
    j.require_window(out.Ns.back());
    detail::compensated_sum s;
    std::size_t n = 0;
    for (std::size_t window : out.Ns) {
        for (; n < window; ++n) {
            // site n + 1 adds b_{n+1}^2 and, past the first, 2 a_n^2
            const double b = j.b(n + 1);
            s += b * b;
            if (n > 0) {
                const double a = j.a(n);
                s += 2.0 * a * a;
            }
        }
        out.values.push_back(s.value() / static_cast<double>(window));
    }
    return out;
}

/// (1/(N l)) [2 sum_{n < N} Tr(A_n^* A_n) + sum_{n <= N} Tr(B_n^* B_n)].
inline StatSeries trace_stat(const BlockJacobiParams& jb, const std::vector<std::size_t>& ns)
{
    StatSeries out{"trace_stat", validate_ladder(ns), {}};
    if (jb.B.size() < out.Ns.back() || jb.A.size() + 1 < out.Ns.back()) {
        throw error(errc::out_of_range, "block parameters shorter than requested window");
    }
    for (std::size_t n : out.Ns) {
        out.values.push_back(block_trace_square(jb, n));
    }
    return out;
}

struct Lemma21Stats {
    StatSeries geo_mean;
    StatSeries mean;
    StatSeries mean_square;
    StatSeries mean_sq_dev;
};

/// Geometric mean, mean, mean square and mean squared deviation from 1 of
/// a_1, ..., a_N.
inline Lemma21Stats lemma21_stats(const coefficient_sequence<double>& a, const std::vector<std::size_t>& ns)
{
    const auto n_max = validate_ladder(ns).back();
    const auto v = a.take(n_max);
    for (std::size_t i = 0; i < v.size(); ++i) {
        detail::require_positive(v[i], i + 1);
    }
    return {
        detail::exp_series(detail::cesaro("geo_mean", ns, [&](std::size_t i) { return std::log(v[i]); })),
        detail::cesaro("mean", ns, [&](std::size_t i) { return v[i]; }),
        detail::cesaro("mean_square", ns, [&](std::size_t i) { return v[i] * v[i]; }),
        detail::cesaro("mean_sq_dev", ns, [&](std::size_t i) { return (v[i] - 1.0) * (v[i] - 1.0); }),
    };
}

//------------------------------------------------------------------------------
// Block statistics

struct MatrixCnStats {
    /// (1/N) sum (||A_n - 1|| + ||B_n||); meaningful only for type 1 / type 3.
    StatSeries type_form;
    /// (1/N) sum (||A_n^* A_n - 1|| + ||B_n||); equivalence class invariant.
    StatSeries invariant_form;
};

/// The invariant form alone; accepts general-tagged parameters.
inline StatSeries cn_stat_matrix_invariant(const BlockJacobiParams& jb, const std::vector<std::size_t>& ns)
{
    const auto n_max = validate_ladder(ns).back();
    if (jb.A.size() < n_max || jb.B.size() < n_max) {
        throw error(errc::out_of_range, "block parameters shorter than requested window");
    }
    const auto l = static_cast<Eigen::Index>(jb.block_size);
    const Matrix one = Matrix::Identity(l, l);
    return detail::cesaro("cn_stat_matrix_invariant", ns, [&](std::size_t i) {
        return (jb.A[i].adjoint() * jb.A[i] - one).norm() + jb.B[i].norm();
    });
}

/// Both forms, Hilbert-Schmidt norms throughout.
inline MatrixCnStats cn_stat_matrix(const BlockJacobiParams& jb, const std::vector<std::size_t>& ns)
{
    if (jb.type == BlockType::general) {
        throw error(errc::wrong_type, "type_form needs type 1 or type 3 parameters");
    }
    auto inv = cn_stat_matrix_invariant(jb, ns);
    const auto l = static_cast<Eigen::Index>(jb.block_size);
    const Matrix one = Matrix::Identity(l, l);
    auto typed = detail::cesaro("cn_stat_matrix_type", ns,
                                [&](std::size_t i) { return (jb.A[i] - one).norm() + jb.B[i].norm(); });
    return {std::move(typed), std::move(inv)};
}

//------------------------------------------------------------------------------
// OPUC statistics

/// (1/N) sum_{j < N} |alpha_j|.
inline StatSeries cn_stat_opuc(const VerblunskyParams& v, const std::vector<std::size_t>& ns)
{
    v.require_window(validate_ladder(ns).back());
    return detail::cesaro("cn_stat_opuc", ns, [&](std::size_t i) { return std::abs(v.alpha(i)); });
}

/// min_theta sum_{l=1..k} |alpha_{j+l} - a e^{i theta}|^2
///   = sum |alpha_{j+l}|^2 + k a^2 - 2 a |sum alpha_{j+l}|.
inline double arc_inner_min(const VerblunskyParams& v, std::size_t j, double a, std::size_t k)
{
    double sq = 0.0;
    complex sum(0.0, 0.0);
    for (std::size_t l = 1; l <= k; ++l) {
        const complex z = v.alpha(j + l);
        sq += std::norm(z);
        sum += z;
    }
    return std::max(0.0, sq + static_cast<double>(k) * a * a - 2.0 * a * std::abs(sum));
}

/// The same minimum over theta = 2 pi i / grid, i = 0..grid-1.
inline double arc_inner_min_grid(const VerblunskyParams& v, std::size_t j, double a, std::size_t k,
                                 std::size_t grid = 4096)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid; ++i) {
        const complex w = std::polar(a, 2.0 * detail::pi * static_cast<double>(i) / static_cast<double>(grid));
        double s = 0.0;
        for (std::size_t l = 1; l <= k; ++l) {
            s += std::norm(v.alpha(j + l) - w);
        }
        best = std::min(best, s);
    }
    return best;
}

struct ArcStats {
    /// (1/N) sum_{j < N} (|alpha_j| - a)^2
    StatSeries modulus;
    /// (1/N) sum_{j < N} |alpha_{j+1} - alpha_j|^2
    StatSeries increment;
    /// (1/N) sum_{j < N} arc_inner_min(j)
    StatSeries torus;
};

inline ArcStats arc_stats(const VerblunskyParams& v, double a, std::size_t k, const std::vector<std::size_t>& ns)
{
    if (!(a > 0.0 && a < 1.0)) {
        throw error(errc::invalid_argument, "arc parameter must lie in (0, 1)");
    }
    if (k == 0) {
        throw error(errc::invalid_argument, "need k >= 1");
    }
    v.require_window(validate_ladder(ns).back() + k);
    return {
        detail::cesaro("arc_modulus", ns,
                       [&](std::size_t j) {
                           const double d = std::abs(v.alpha(j)) - a;
                           return d * d;
                       }),
        detail::cesaro("arc_increment", ns, [&](std::size_t j) { return std::norm(v.alpha(j + 1) - v.alpha(j)); }),
        detail::cesaro("arc_torus", ns, [&](std::size_t j) { return arc_inner_min(v, j, a, k); }),
    };
}

//------------------------------------------------------------------------------
// Distance to an isospectral torus

/// (1/N) sum_{m <= N} d_m(J, torus), each term by d_to_torus.
inline StatSeries cn_stat_torus(const JacobiParams& j, const IsospectralTorus& torus,
                                const std::vector<std::size_t>& ns)
{
    const auto grid = torus_grid(torus);
    return detail::cesaro("cn_stat_torus", ns, [&](std::size_t i) { return d_to_torus(j, i + 1, torus, grid); });
}

} // namespace cesaro

#endif
