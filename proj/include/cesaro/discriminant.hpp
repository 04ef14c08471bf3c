// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_DISCRIMINANT_HPP
#define CESARO_DISCRIMINANT_HPP

// Periodic Jacobi generators, their transfer matrices and discriminants, and
// the band structure Delta^{-1}([-2, 2]).

#include <cesaro/detail/csv.hpp>
#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>
#include <cesaro/polynomial.hpp>
#include <cesaro/sequences.hpp>
#include <cesaro/sets.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

namespace cesaro {

/// One period a_1..a_p > 0, b_1..b_p of a periodic Jacobi matrix.
struct PeriodicJacobi {
    std::vector<double> a;
    std::vector<double> b;

    [[nodiscard]] std::size_t period() const noexcept { return a.size(); }
};

inline PeriodicJacobi validate_periodic(PeriodicJacobi j)
{
    if (j.a.empty()) {
        throw error(errc::empty_sequence, "period must be at least 1");
    }
    if (j.a.size() != j.b.size()) {
        throw error(errc::invalid_argument, "a and b must both have p entries");
    }
    for (std::size_t k = 0; k < j.a.size(); ++k) {
        if (!(j.a[k] > 0.0)) {
            throw error(errc::non_positive_a, "periodic a must be positive", k + 1);
        }
    }
    return j;
}

/// The one-sided sequence J_0 repeating the period forever.
inline JacobiParams periodic_sequence(const PeriodicJacobi& j)
{
    const auto p = validate_periodic(j);
    double dev = 0.0;
    for (std::size_t k = 0; k < p.period(); ++k) {
        dev = std::max(dev, std::abs(p.a[k] - 1.0) + std::abs(p.b[k]));
    }
    auto out = JacobiParams::from_generators([p](std::size_t n) { return p.a[(n - 1) % p.period()]; },
                                             [p](std::size_t n) { return p.b[(n - 1) % p.period()]; }, dev);
    out.recorded_deviation = dev;
    return out;
}

using PolyMatrix = std::array<std::array<Polynomial, 2>, 2>;

/// One-period transfer product T_p ... T_1 with
/// T_n = [[(x - b_n)/a_n, -a_{n-1}/a_n], [1, 0]] and a_0 = a_p.
inline PolyMatrix monodromy(const PeriodicJacobi& j)
{
    const auto p = validate_periodic(j);
    const std::size_t n = p.period();
    PolyMatrix m{{{Polynomial::constant(1.0), Polynomial()}, {Polynomial(), Polynomial::constant(1.0)}}};
    for (std::size_t k = 0; k < n; ++k) {
        const double a = p.a[k];
        const double prev = p.a[(k + n - 1) % n];
        const Polynomial t11 = Polynomial::linear(1.0 / a, p.b[k]);
        const double t12 = -prev / a;
        PolyMatrix next;
        for (int c = 0; c < 2; ++c) {
            next[0][c] = t11 * m[0][c] + t12 * m[1][c];
            next[1][c] = m[0][c];
        }
        m = next;
    }
    return m;
}

/// Delta(x) = Tr(T_p ... T_1); degree p with leading coefficient 1 / prod a.
struct Discriminant {
    Polynomial poly;

    [[nodiscard]] std::size_t period() const noexcept { return static_cast<std::size_t>(poly.degree()); }
    [[nodiscard]] double operator()(double x) const noexcept { return poly(x); }
};

inline Discriminant discriminant(const PeriodicJacobi& j)
{
    const auto m = monodromy(j);
    return {m[0][0] + m[1][1]};
}

namespace detail {

// Real roots of `q`, where q is Delta - 2 or Delta + 2. Companion roots with a
// small imaginary part are accepted as (near-)double real roots when q nearly
// vanishes at their real part; anything else means an invalid generator.
inline std::vector<double> real_roots(const Polynomial& q, double coeff_scale)
{
    std::vector<double> out;
    const Polynomial dq = q.derivative();
    for (const auto& z : q.roots()) {
        double x = z.real();
        if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(x))) {
            const double resid = std::abs(q(x));
            const double tol = 1e-9 * coeff_scale * std::pow(std::max(1.0, std::abs(x)), q.degree());
            if (resid > tol) {
                throw error(errc::complex_roots, "Delta -/+ 2 has a nonreal root");
            }
        } else {
            for (int it = 0; it < 3; ++it) {
                const double d = dq(x);
                if (d == 0.0) {
                    break;
                }
                const double step = q(x) / d;
                if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(x))) {
                    break;
                }
                x -= step;
            }
        }
        out.push_back(x);
    }
    return out;
}

} // namespace detail

/// The p sub-bands of Delta^{-1}([-2, 2]) before closed gaps are merged, each
/// carrying harmonic measure 1/p.
inline std::vector<Band> sub_bands(const Discriminant& d)
{
    const int p = d.poly.degree();
    if (p < 1 || !(d.poly.leading() > 0.0)) {
        throw error(errc::invalid_argument, "discriminant needs degree >= 1 and positive leading coefficient");
    }
    double scale = 0.0;
    for (double c : d.poly.coeffs()) {
        scale = std::max(scale, std::abs(c));
    }
    auto lo = detail::real_roots(d.poly - Polynomial::constant(2.0), scale);
    auto hi = detail::real_roots(d.poly + Polynomial::constant(2.0), scale);
    std::vector<double> all = lo;
    all.insert(all.end(), hi.begin(), hi.end());
    std::sort(all.begin(), all.end());
    std::vector<Band> out;
    for (std::size_t k = 0; k + 1 < all.size(); k += 2) {
        out.push_back({all[k], all[k + 1]});
    }
    return out;
}

/// Closed gaps are those whose edges agree within this relative width.
inline constexpr double closed_gap_tol = 1e-7;

/// Delta^{-1}([-2, 2]) as a finite gap set; closed gaps merge bands.
inline FiniteGapSet bands(const Discriminant& d)
{
    const auto sub = sub_bands(d);
    const double width = sub.back().hi - sub.front().lo;
    FiniteGapSet out;
    for (const auto& b : sub) {
        if (!out.bands.empty() && b.lo - out.bands.back().hi <= closed_gap_tol * width) {
            out.bands.back().hi = b.hi;
        } else {
            out.bands.push_back(b);
        }
    }
    return out;
}

inline bool all_gaps_open(const Discriminant& d)
{
    return bands(d).bands.size() == d.period();
}

/// Max pairwise band-edge difference; infinity when the band counts differ.
inline double band_distance(const FiniteGapSet& x, const FiniteGapSet& y)
{
    if (x.bands.size() != y.bands.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double d = 0.0;
    for (std::size_t k = 0; k < x.bands.size(); ++k) {
        d = std::max({d, std::abs(x.bands[k].lo - y.bands[k].lo), std::abs(x.bands[k].hi - y.bands[k].hi)});
    }
    return d;
}

//------------------------------------------------------------------------------
// CSV

/// `k,coeff` rows, ascending powers k = 0..p.
inline void write_discriminant_csv(std::ostream& os, const Discriminant& d)
{
    os << "k,coeff\n";
    const auto& c = d.poly.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        os << k << ',' << detail::format_double(c[k]) << '\n';
    }
}

inline Discriminant read_discriminant_csv(std::istream& in)
{
    const auto rows = detail::read_csv(in, "k,coeff");
    std::vector<double> c;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (detail::parse_int(rows[r][0], r + 2) != static_cast<long long>(r)) {
            throw error(errc::config_parse, "rows must be numbered 0..p", r + 2);
        }
        c.push_back(detail::parse_double(rows[r][1], r + 2));
    }
    return {Polynomial(std::move(c))};
}

} // namespace cesaro

#endif
