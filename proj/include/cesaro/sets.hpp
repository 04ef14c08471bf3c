// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_SETS_HPP
#define CESARO_SETS_HPP

#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>

#include <cmath>
#include <utility>
#include <vector>

namespace cesaro {

struct Band {
    double lo;
    double hi;
};

/// Finite gap set: disjoint bands with lo_1 < hi_1 < lo_2 < ... < hi_{l+1}.
struct FiniteGapSet {
    std::vector<Band> bands;

    [[nodiscard]] std::size_t gaps() const noexcept { return bands.empty() ? 0 : bands.size() - 1; }
};

inline FiniteGapSet validate_gap_set(FiniteGapSet s)
{
    if (s.bands.empty()) {
        throw error(errc::empty_sequence, "finite gap set needs at least one band");
    }
    for (std::size_t j = 0; j < s.bands.size(); ++j) {
        if (!(s.bands[j].lo < s.bands[j].hi)) {
            throw error(errc::invalid_argument, "band must have nonempty interior", j);
        }
        if (j > 0 && !(s.bands[j - 1].hi < s.bands[j].lo)) {
            throw error(errc::invalid_argument, "bands must be strictly ordered", j);
        }
    }
    return s;
}

/// The arc {e^{i theta} : pi >= |theta| > 2 arcsin(a)}, 0 < a < 1.
struct CircleArcSet {
    double a;

    [[nodiscard]] double gap_half_angle() const { return 2.0 * std::asin(a); }
};

inline CircleArcSet validate_arc(CircleArcSet s)
{
    if (!(s.a > 0.0 && s.a < 1.0)) {
        throw error(errc::invalid_argument, "arc parameter must lie in (0, 1)");
    }
    return s;
}

} // namespace cesaro

#endif
