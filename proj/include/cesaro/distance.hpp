// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_DISTANCE_HPP
#define CESARO_DISTANCE_HPP

#include <cesaro/error.hpp>
#include <cesaro/sequences.hpp>

#include <cmath>
#include <optional>

namespace cesaro {

/// Sup-deviation A of J: declared or recorded bound, else the sup over a
/// finite parameter set. Unknown for unvalidated generators.
inline double known_deviation(const JacobiParams& j)
{
    if (j.recorded_deviation) {
        return *j.recorded_deviation;
    }
    if (j.declared_bound) {
        return *j.declared_bound;
    }
    if (const auto n = j.sites(); n && !j.is_unbounded()) {
        return sup_deviation(j, *n);
    }
    throw error(errc::unbounded_deviation, "d_m needs a known sup-deviation");
}

/// Number of terms K with e^{-K} * bound * e/(e-1) < 1e-12.
inline std::size_t d_m_terms(double bound)
{
    constexpr double tail = 1e-12;
    const double factor = std::exp(1.0) / (std::exp(1.0) - 1.0);
    if (bound * factor < tail) {
        return 1;
    }
    return static_cast<std::size_t>(std::ceil(std::log(bound * factor / tail))) + 1;
}

/// sum_{k < K} e^{-k} (|a_{m+k} - a~_{m+k}| + |b_{m+k} - b~_{m+k}|).
inline double d_m_partial(const JacobiParams& j, const JacobiParams& jt, std::size_t m, std::size_t k_terms)
{
    if (m == 0) {
        throw error(errc::out_of_range, "d_m is indexed from m = 1");
    }
    j.require_window(m + k_terms - 1, true);
    jt.require_window(m + k_terms - 1, true);
    double s = 0.0;
    double w = 1.0;
    const double decay = std::exp(-1.0);
    for (std::size_t k = 0; k < k_terms; ++k) {
        const std::size_t n = m + k;
        s += w * (std::abs(j.a(n) - jt.a(n)) + std::abs(j.b(n) - jt.b(n)));
        w *= decay;
    }
    return s;
}

/// d_m(J, J~), truncated where the geometric tail drops below 1e-12.
inline double d_m(const JacobiParams& j, const JacobiParams& jt, std::size_t m)
{
    return d_m_partial(j, jt, m, d_m_terms(known_deviation(j) + known_deviation(jt)));
}

} // namespace cesaro

#endif
