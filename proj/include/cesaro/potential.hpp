// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_POTENTIAL_HPP
#define CESARO_POTENTIAL_HPP

// Equilibrium measures and capacities of intervals, the circular arcs
// Gamma_a and periodic finite gap sets, plus a W1 distance between an
// empirical spectrum and an equilibrium measure.
//
// All three measures are pullbacks of d(phi)/pi on [0, pi]:
//   interval  x = mid + half cos(phi)
//   arc       cos(theta/2) = c cos(phi),  c = sqrt(1 - a^2)
//   periodic  Delta(x) = +-2 cos(phi) on each of the p sub-bands, mass 1/p each
// which is what the quadrature rules and quantile functions below compute.

#include <cesaro/detail/numeric.hpp>
#include <cesaro/discriminant.hpp>
#include <cesaro/error.hpp>
#include <cesaro/quadrature.hpp>
#include <cesaro/sets.hpp>
#include <cesaro/spectra.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <variant>
#include <vector>

namespace cesaro {

class EquilibriumMeasure {
public:
    struct arcsine {
        Band support;
    };
    struct arc {
        CircleArcSet set;
    };
    struct periodic {
        Discriminant disc;
        FiniteGapSet set;
        std::vector<Band> sub_bands;
    };
    using representation = std::variant<arcsine, arc, periodic>;

    /// Gauss points per sub-band in the phi variable.
    static constexpr std::size_t quadrature_points = 64;

    explicit EquilibriumMeasure(representation rep)
        : rep_(std::move(rep))
    {
        build_rule();
    }

    [[nodiscard]] const representation& rep() const noexcept { return rep_; }
    [[nodiscard]] Domain domain() const noexcept
    {
        return std::holds_alternative<arc>(rep_) ? Domain::circle : Domain::line;
    }

    /// Nodes (x, or theta in (-pi, pi]) and weights for moment evaluation.
    [[nodiscard]] const QuadratureRule& rule() const noexcept { return rule_; }

    [[nodiscard]] double mass() const
    {
        detail::compensated_sum s;
        for (double w : rule_.weights) {
            s += w;
        }
        return s.value();
    }

    /// Density with respect to dx on the line or d(theta) on the circle; zero
    /// off the support.
    [[nodiscard]] double density(double x) const
    {
        if (const auto* s = std::get_if<arcsine>(&rep_)) {
            const double mid = 0.5 * (s->support.lo + s->support.hi);
            const double half = 0.5 * (s->support.hi - s->support.lo);
            const double u = (x - mid) / half;
            return std::abs(u) < 1.0 ? 1.0 / (detail::pi * half * std::sqrt(1.0 - u * u)) : 0.0;
        }
        if (const auto* g = std::get_if<arc>(&rep_)) {
            const double s2 = std::sin(0.5 * x);
            const double rad = s2 * s2 - g->set.a * g->set.a;
            return rad > 0.0 ? std::abs(s2) / (2.0 * detail::pi * std::sqrt(rad)) : 0.0;
        }
        const auto& per = std::get<periodic>(rep_);
        const double d = per.disc(x);
        const double rad = (2.0 - d) * (2.0 + d);
        if (!(rad > 0.0)) {
            return 0.0;
        }
        const auto p = static_cast<double>(per.disc.period());
        return std::abs(per.disc.poly.derivative()(x)) / (p * detail::pi * std::sqrt(rad));
    }

    /// Inverse distribution function, t in [0, 1]. On the circle the angle
    /// is returned in [0, 2 pi), i.e. the circle is cut at theta = 0.
    [[nodiscard]] double quantile(double t) const
    {
        t = std::clamp(t, 0.0, 1.0);
        if (const auto* s = std::get_if<arcsine>(&rep_)) {
            const double mid = 0.5 * (s->support.lo + s->support.hi);
            const double half = 0.5 * (s->support.hi - s->support.lo);
            return mid - half * std::cos(detail::pi * t);
        }
        if (const auto* g = std::get_if<arc>(&rep_)) {
            const double c = std::sqrt(1.0 - g->set.a * g->set.a);
            return 2.0 * std::acos(c * std::cos(detail::pi * t));
        }
        const auto& per = std::get<periodic>(rep_);
        const std::size_t p = per.sub_bands.size();
        const double tp = t * static_cast<double>(p);
        const std::size_t j = std::min(static_cast<std::size_t>(tp), p - 1);
        const double s = tp - static_cast<double>(j);
        const Band& b = per.sub_bands[j];
        const double sigma = per.disc(b.lo) > 0.0 ? 1.0 : -1.0;
        const double target = sigma * 2.0 * std::cos(detail::pi * s);
        // sigma * Delta decreases from 2 to -2 across the sub-band
        double lo = b.lo;
        double hi = b.hi;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sigma * (per.disc(mid) - target) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }

private:
    void build_rule()
    {
        const auto gl = gauss_legendre(quadrature_points, 0.0, detail::pi);
        if (const auto* s = std::get_if<arcsine>(&rep_)) {
            const double mid = 0.5 * (s->support.lo + s->support.hi);
            const double half = 0.5 * (s->support.hi - s->support.lo);
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                rule_.nodes.push_back(mid + half * std::cos(gl.nodes[i]));
                rule_.weights.push_back(gl.weights[i] / detail::pi);
            }
        } else if (const auto* g = std::get_if<arc>(&rep_)) {
            const double c = std::sqrt(1.0 - g->set.a * g->set.a);
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                double th = 2.0 * std::acos(c * std::cos(gl.nodes[i]));
                if (th > detail::pi) {
                    th -= 2.0 * detail::pi;
                }
                rule_.nodes.push_back(th);
                rule_.weights.push_back(gl.weights[i] / detail::pi);
            }
        } else {
            const auto& per = std::get<periodic>(rep_);
            const Polynomial dd = per.disc.poly.derivative();
            const auto p = static_cast<double>(per.disc.period());
            for (const auto& b : per.sub_bands) {
                const double mid = 0.5 * (b.lo + b.hi);
                const double half = 0.5 * (b.hi - b.lo);
                for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                    const double x = mid + half * std::cos(gl.nodes[i]);
                    const double d = per.disc(x);
                    const double rad = std::max((2.0 - d) * (2.0 + d), 0.0);
                    const double jac = half * std::sin(gl.nodes[i]);
                    const double w = rad > 0.0 ? std::abs(dd(x)) * jac / (p * detail::pi * std::sqrt(rad)) : 0.0;
                    if (w < 0.0) {
                        throw error(errc::density_negative, "negative equilibrium density", i);
                    }
                    rule_.nodes.push_back(x);
                    rule_.weights.push_back(gl.weights[i] * w);
                }
            }
        }
    }

    representation rep_;
    QuadratureRule rule_;
};

//------------------------------------------------------------------------------
// Construction and capacity

inline EquilibriumMeasure equilibrium_measure(Band interval)
{
    if (!(interval.lo < interval.hi)) {
        throw error(errc::invalid_argument, "interval must have nonempty interior");
    }
    return EquilibriumMeasure(EquilibriumMeasure::arcsine{interval});
}

inline EquilibriumMeasure equilibrium_measure(CircleArcSet set)
{
    return EquilibriumMeasure(EquilibriumMeasure::arc{validate_arc(set)});
}

/// Tolerance for a discriminant's bands to count as the given set.
inline constexpr double band_match_tol = 1e-9;

/// Periodic pullback; the set must be the band set of `disc`.
inline EquilibriumMeasure equilibrium_measure(const FiniteGapSet& set, const Discriminant& disc)
{
    const auto s = validate_gap_set(set);
    const auto own = bands(disc);
    if (band_distance(s, own) > band_match_tol) {
        throw error(errc::band_mismatch, "discriminant bands differ from the given set");
    }
    return EquilibriumMeasure(EquilibriumMeasure::periodic{disc, own, sub_bands(disc)});
}

inline EquilibriumMeasure equilibrium_measure(const Discriminant& disc)
{
    return equilibrium_measure(bands(disc), disc);
}

/// [c - 2r, c + 2r] has capacity r.
inline double capacity(Band interval)
{
    if (!(interval.lo < interval.hi)) {
        throw error(errc::invalid_argument, "interval must have nonempty interior");
    }
    return 0.25 * (interval.hi - interval.lo);
}

/// Capacity of Gamma_a: sqrt(1 - a^2), the limit of (prod rho_j)^{1/N} for
/// the constant Verblunsky sequence alpha = a.
inline double capacity(CircleArcSet set)
{
    const auto s = validate_arc(set);
    return std::sqrt(1.0 - s.a * s.a);
}

/// Single bands only; multi-band sets need their periodic generator.
inline double capacity(const FiniteGapSet& set)
{
    const auto s = validate_gap_set(set);
    if (s.bands.size() != 1) {
        throw error(errc::unsupported, "capacity of a general finite gap set needs a discriminant");
    }
    return capacity(s.bands.front());
}

/// (a_1 ... a_p)^{1/p}, read off the leading coefficient of Delta.
inline double capacity(const FiniteGapSet& set, const Discriminant& disc)
{
    if (band_distance(validate_gap_set(set), bands(disc)) > band_match_tol) {
        throw error(errc::band_mismatch, "discriminant bands differ from the given set");
    }
    return std::pow(disc.poly.leading(), -1.0 / static_cast<double>(disc.period()));
}

inline double capacity(const EquilibriumMeasure& m)
{
    return std::visit(
        [](const auto& r) -> double {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, EquilibriumMeasure::arcsine>) {
                return capacity(r.support);
            } else if constexpr (std::is_same_v<R, EquilibriumMeasure::arc>) {
                return capacity(r.set);
            } else {
                return capacity(r.set, r.disc);
            }
        },
        m.rep());
}

//------------------------------------------------------------------------------
// Moments

inline constexpr int max_eq_moment = 8;

/// int x^k d rho on the line.
inline double eq_moment(const EquilibriumMeasure& m, int k)
{
    if (m.domain() != Domain::line) {
        throw error(errc::domain_mismatch, "real moments need a measure on the line");
    }
    if (k < 0 || k > max_eq_moment) {
        throw error(errc::invalid_argument, "moment order must be in 0..8");
    }
    detail::compensated_sum s;
    const auto& r = m.rule();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        s += r.weights[i] * std::pow(r.nodes[i], k);
    }
    return s.value();
}

/// int e^{i k theta} d rho on the circle.
inline complex eq_moment_circle(const EquilibriumMeasure& m, int k)
{
    if (m.domain() != Domain::circle) {
        throw error(errc::domain_mismatch, "trigonometric moments need a measure on the circle");
    }
    if (k < -max_eq_moment || k > max_eq_moment) {
        throw error(errc::invalid_argument, "moment order must be in -8..8");
    }
    detail::compensated_sum re;
    detail::compensated_sum im;
    const auto& r = m.rule();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        re += r.weights[i] * std::cos(k * r.nodes[i]);
        im += r.weights[i] * std::sin(k * r.nodes[i]);
    }
    return {re.value(), im.value()};
}

/// Mass of `m` on [lo, hi] by the quadrature rule (line only).
inline double eq_mass_on(const EquilibriumMeasure& m, double lo, double hi)
{
    detail::compensated_sum s;
    const auto& r = m.rule();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        if (r.nodes[i] >= lo && r.nodes[i] <= hi) {
            s += r.weights[i];
        }
    }
    return s.value();
}

//------------------------------------------------------------------------------
// Distances

/// The N midpoint quantiles t = (i + 1/2)/N of `ref` as an empirical measure.
inline EmpiricalMeasure quantile_points(const EquilibriumMeasure& ref, std::size_t n)
{
    EmpiricalMeasure out{ref.domain(), {}};
    for (std::size_t i = 0; i < n; ++i) {
        double x = ref.quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
        if (ref.domain() == Domain::circle && x > detail::pi) {
            x -= 2.0 * detail::pi;
        }
        out.points.push_back(x);
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

/// W1 by quantile matching on 10 N midpoints. Circle angles are compared on
/// [0, 2 pi), i.e. after cutting the circle at theta = 0.
inline double w1_distance(const EmpiricalMeasure& emp, const EquilibriumMeasure& ref)
{
    if (emp.domain != ref.domain()) {
        throw error(errc::domain_mismatch, "empirical and reference measures live on different domains");
    }
    if (emp.points.empty()) {
        throw error(errc::empty_sequence, "empty empirical measure");
    }
    std::vector<double> pts = emp.points;
    if (emp.domain == Domain::circle) {
        for (double& x : pts) {
            if (x < 0.0) {
                x += 2.0 * detail::pi;
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    const std::size_t n = pts.size();
    const std::size_t grid = 10 * n;
    detail::compensated_sum s;
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        const std::size_t k = std::min(static_cast<std::size_t>(t * static_cast<double>(n)), n - 1);
        s += std::abs(pts[k] - ref.quantile(t));
    }
    return s.value() / static_cast<double>(grid);
}

//------------------------------------------------------------------------------
// Output

/// Samples the density at `per_band` midpoints of each band (or of the arc):
/// `x,density` on the line, `theta,density` on the circle.
inline void write_density_csv(std::ostream& os, const EquilibriumMeasure& m, std::size_t per_band = 200)
{
    std::vector<Band> pieces;
    if (const auto* s = std::get_if<EquilibriumMeasure::arcsine>(&m.rep())) {
        pieces.push_back(s->support);
    } else if (const auto* g = std::get_if<EquilibriumMeasure::arc>(&m.rep())) {
        const double th0 = g->set.gap_half_angle();
        pieces.push_back({th0, 2.0 * detail::pi - th0});
    } else {
        pieces = std::get<EquilibriumMeasure::periodic>(m.rep()).set.bands;
    }
    os << (m.domain() == Domain::line ? "x,density\n" : "theta,density\n");
    for (const auto& b : pieces) {
        for (std::size_t i = 0; i < per_band; ++i) {
            double x = b.lo + (b.hi - b.lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(per_band);
            if (m.domain() == Domain::circle && x > detail::pi) {
                x -= 2.0 * detail::pi;
            }
            os << detail::format_double(x) << ',' << detail::format_double(m.density(x)) << '\n';
        }
    }
}

} // namespace cesaro

#endif
