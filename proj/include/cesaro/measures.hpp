// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_MEASURES_HPP
#define CESARO_MEASURES_HPP

// Declarative probability measures on the line and on the circle, their
// quadrature discretizations, and the measure -> recurrence procedures:
// Stieltjes for Jacobi parameters, Levinson on trigonometric moments for
// Verblunsky coefficients.

#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>
#include <cesaro/quadrature.hpp>
#include <cesaro/sequences.hpp>
#include <cesaro/tridiagonal.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace cesaro {

enum class DensityKind {
    chebyshev_t,       ///< (4 - x^2)^{-1/2} / pi on [-2, 2], affinely mapped
    chebyshev_u,       ///< (4 - x^2)^{1/2} / (2 pi) on [-2, 2], affinely mapped
    legendre_flat,     ///< constant
    angle_pushforward, ///< w(phi) d phi on [0, pi] pushed forward by x = mid + half cos(phi)
    tabulated,         ///< piecewise polynomial in the local variable x - breakpoint
};

/// One absolutely continuous component. `mass` is its share before global
/// normalization; the density itself is normalized to unit mass.
struct AcPart {
    double lo = -2.0;
    double hi = 2.0;
    DensityKind kind = DensityKind::chebyshev_t;
    double mass = 1.0;
    /// angle_pushforward only.
    std::function<double(double)> angle_weight;
    /// tabulated only: breakpoints lo = t_0 < ... < t_m = hi, and for piece i
    /// ascending coefficients of a polynomial in (x - t_i).
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> piece_coeffs;
};

struct Atom {
    double location = 0.0;
    double mass = 1.0;
};

/// Measure on R: ac parts plus atoms, normalized to total mass 1.
struct LineMeasureSpec {
    std::vector<AcPart> ac_parts;
    std::vector<Atom> atoms;
};

/// Measure on the circle: parts are theta-intervals inside [-pi, pi] with
/// densities w(theta) d theta / 2 pi; atom locations are angles.
struct CircleMeasureSpec {
    std::vector<AcPart> ac_parts;
    std::vector<Atom> atoms;
};

/// Finite measure: strictly ascending nodes (reals or angles) with positive
/// weights summing to 1.
struct DiscreteMeasure {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline double total_mass(const std::vector<AcPart>& parts, const std::vector<Atom>& atoms)
{
    double total = 0.0;
    for (const auto& p : parts) {
        total += p.mass;
    }
    for (const auto& a : atoms) {
        total += a.mass;
    }
    return total;
}

template <class Spec>
Spec normalize_spec(Spec spec)
{
    for (std::size_t i = 0; i < spec.ac_parts.size(); ++i) {
        const auto& p = spec.ac_parts[i];
        if (!(p.mass > 0.0) || !(p.hi > p.lo)) {
            throw error(errc::invalid_argument, "ac part needs positive mass and lo < hi", i);
        }
    }
    for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        if (!(spec.atoms[i].mass > 0.0)) {
            throw error(errc::invalid_argument, "atom masses must be positive", i);
        }
    }
    auto sorted = spec.ac_parts;
    std::sort(sorted.begin(), sorted.end(), [](const AcPart& x, const AcPart& y) { return x.lo < y.lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].lo < sorted[i - 1].hi) {
            throw error(errc::invalid_argument, "ac intervals overlap", i);
        }
    }
    const double total = total_mass(spec.ac_parts, spec.atoms);
    if (!(total > 0.0)) {
        throw error(errc::invalid_argument, "measure has no mass");
    }
    for (auto& p : spec.ac_parts) {
        p.mass /= total;
    }
    for (auto& a : spec.atoms) {
        a.mass /= total;
    }
    return spec;
}

inline double eval_poly(const std::vector<double>& c, double t)
{
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        v = v * t + c[k];
    }
    return v;
}

// Unnormalized (node, weight) pairs for one part; the caller rescales to `mass`.
inline void discretize_part(const AcPart& p, std::size_t n, std::vector<double>& nodes,
                            std::vector<double>& weights)
{
    const double mid = 0.5 * (p.hi + p.lo);
    const double half = 0.5 * (p.hi - p.lo);
    switch (p.kind) {
    case DensityKind::chebyshev_t: {
        const auto rule = gauss_legendre(n, 0.0, pi);
        for (std::size_t i = 0; i < n; ++i) {
            nodes.push_back(mid + half * std::cos(rule.nodes[i]));
            weights.push_back(rule.weights[i]);
        }
        return;
    }
    case DensityKind::chebyshev_u: {
        const auto rule = gauss_legendre(n, 0.0, pi);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = std::sin(rule.nodes[i]);
            nodes.push_back(mid + half * std::cos(rule.nodes[i]));
            weights.push_back(rule.weights[i] * s * s);
        }
        return;
    }
    case DensityKind::legendre_flat: {
        const auto rule = gauss_legendre(n, p.lo, p.hi);
        nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
        weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
        return;
    }
    case DensityKind::angle_pushforward: {
        if (!p.angle_weight) {
            throw error(errc::invalid_argument, "angle_pushforward part needs an angle weight");
        }
        const auto rule = gauss_legendre(n, 0.0, pi);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = p.angle_weight(rule.nodes[i]);
            const double x = mid + half * std::cos(rule.nodes[i]);
            if (w < 0.0) {
                throw error(errc::density_negative, "angle weight negative at x = " + format_double(x));
            }
            nodes.push_back(x);
            weights.push_back(rule.weights[i] * w);
        }
        return;
    }
    case DensityKind::tabulated: {
        const auto& t = p.breakpoints;
        if (t.size() < 2 || p.piece_coeffs.size() + 1 != t.size() || t.front() != p.lo || t.back() != p.hi) {
            throw error(errc::invalid_argument, "tabulated density needs breakpoints lo..hi and one polynomial per piece");
        }
        for (std::size_t piece = 0; piece + 1 < t.size(); ++piece) {
            const auto rule = gauss_legendre(n, t[piece], t[piece + 1]);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = rule.nodes[i];
                const double w = eval_poly(p.piece_coeffs[piece], x - t[piece]);
                if (w < 0.0) {
                    throw error(errc::density_negative, "tabulated density negative at x = " + format_double(x));
                }
                nodes.push_back(x);
                weights.push_back(rule.weights[i] * w);
            }
        }
        return;
    }
    }
}

inline DiscreteMeasure assemble(std::vector<double> nodes, std::vector<double> weights)
{
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return nodes[i] < nodes[j]; });
    DiscreteMeasure m;
    for (std::size_t i : order) {
        if (weights[i] <= 0.0) {
            continue;
        }
        if (!m.nodes.empty() && nodes[i] == m.nodes.back()) {
            m.weights.back() += weights[i];
        } else {
            m.nodes.push_back(nodes[i]);
            m.weights.push_back(weights[i]);
        }
    }
    compensated_sum total;
    for (double w : m.weights) {
        total += w;
    }
    for (double& w : m.weights) {
        w /= total.value();
    }
    return m;
}

template <class Spec>
DiscreteMeasure discretize_spec(const Spec& raw, std::size_t points, bool circle)
{
    if (points < 2) {
        throw error(errc::invalid_argument, "need at least 2 points per interval");
    }
    const Spec spec = normalize_spec(raw);
    std::vector<double> nodes;
    std::vector<double> weights;
    for (const auto& part : spec.ac_parts) {
        std::vector<double> pn;
        std::vector<double> pw;
        discretize_part(part, points, pn, pw);
        compensated_sum s;
        for (double w : pw) {
            s += w;
        }
        if (!(s.value() > 0.0)) {
            throw error(errc::invalid_argument, "ac part density integrates to zero");
        }
        for (std::size_t i = 0; i < pn.size(); ++i) {
            double x = pn[i];
            if (circle) {
                x = std::remainder(x, 2.0 * pi);
                if (x <= -pi) {
                    x += 2.0 * pi;
                }
            }
            nodes.push_back(x);
            weights.push_back(part.mass * pw[i] / s.value());
        }
    }
    for (const auto& a : spec.atoms) {
        double x = a.location;
        if (circle) {
            x = std::remainder(x, 2.0 * pi);
            if (x <= -pi) {
                x += 2.0 * pi;
            }
        }
        nodes.push_back(x);
        weights.push_back(a.mass);
    }
    return assemble(std::move(nodes), std::move(weights));
}

} // namespace detail

//------------------------------------------------------------------------------
// Presets

inline LineMeasureSpec chebyshev_t_measure(double lo = -2.0, double hi = 2.0)
{
    return {{AcPart{lo, hi, DensityKind::chebyshev_t, 1.0, {}, {}, {}}}, {}};
}

inline LineMeasureSpec chebyshev_u_measure(double lo = -2.0, double hi = 2.0)
{
    return {{AcPart{lo, hi, DensityKind::chebyshev_u, 1.0, {}, {}, {}}}, {}};
}

inline LineMeasureSpec legendre_measure(double lo = -2.0, double hi = 2.0)
{
    return {{AcPart{lo, hi, DensityKind::legendre_flat, 1.0, {}, {}, {}}}, {}};
}

inline CircleMeasureSpec uniform_circle_measure()
{
    return {{AcPart{-detail::pi, detail::pi, DensityKind::legendre_flat, 1.0, {}, {}, {}}}, {}};
}

/// Checks the DiscreteMeasure invariants and renormalizes the weights.
inline DiscreteMeasure validate_discrete(DiscreteMeasure m)
{
    if (m.nodes.empty() || m.nodes.size() != m.weights.size()) {
        throw error(errc::invalid_argument, "nodes and weights must be nonempty and aligned");
    }
    detail::compensated_sum total;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0 && !(m.nodes[i] > m.nodes[i - 1])) {
            throw error(errc::invalid_argument, "nodes must be strictly ascending", i);
        }
        if (!(m.weights[i] > 0.0)) {
            throw error(errc::invalid_argument, "weights must be positive", i);
        }
        total += m.weights[i];
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
        throw error(errc::invalid_argument, "weights must sum to 1");
    }
    return m;
}

/// Composite Gauss-Legendre discretization (after the x = mid + half cos(phi)
/// substitution for the Chebyshev kinds); atoms are carried exactly.
inline DiscreteMeasure discretize(const LineMeasureSpec& spec, std::size_t points_per_interval)
{
    return detail::discretize_spec(spec, points_per_interval, false);
}

/// As above on the circle; nodes are angles in (-pi, pi].
inline DiscreteMeasure discretize(const CircleMeasureSpec& spec, std::size_t points_per_interval)
{
    return detail::discretize_spec(spec, points_per_interval, true);
}

/// k-th moment sum_i w_i x_i^k.
inline double moment(const DiscreteMeasure& m, int k)
{
    detail::compensated_sum s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += m.weights[i] * std::pow(m.nodes[i], k);
    }
    return s.value();
}

/// Trigonometric moment c_k = sum_i w_i exp(-i k theta_i).
inline complex trig_moment(const DiscreteMeasure& m, int k)
{
    detail::compensated_sum re;
    detail::compensated_sum im;
    for (std::size_t i = 0; i < m.size(); ++i) {
        re += m.weights[i] * std::cos(k * m.nodes[i]);
        im += -m.weights[i] * std::sin(k * m.nodes[i]);
    }
    return {re.value(), im.value()};
}

//------------------------------------------------------------------------------
// Measure -> Jacobi parameters

/// Stieltjes procedure in the discrete inner product of `m`, with a second
/// Gram-Schmidt pass against the last two polynomials. Returns b_1..b_N and
/// a_1..a_{N-1}. Inner products switch to compensated summation for N > 60.
inline JacobiParams jacobi_from_measure(const DiscreteMeasure& m, std::size_t n)
{
    if (n == 0) {
        throw error(errc::invalid_argument, "need N >= 1");
    }
    const std::size_t np = m.size();
    if (np < n) {
        throw error(errc::breakdown, "measure has fewer nodes than requested coefficients", np);
    }
    const bool compensated = n > 60;
    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        if (compensated) {
            detail::compensated_sum s;
            for (std::size_t i = 0; i < np; ++i) {
                s += m.weights[i] * u[i] * v[i];
            }
            return s.value();
        }
        double s = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            s += m.weights[i] * u[i] * v[i];
        }
        return s;
    };
    double scale = 0.0;
    for (double x : m.nodes) {
        scale = std::max(scale, std::abs(x));
    }
    scale = std::max(scale, 1.0);

    std::vector<double> q_prev(np, 0.0);
    std::vector<double> q(np, 1.0);
    const double q0 = std::sqrt(dot(q, q));
    for (double& v : q) {
        v /= q0;
    }
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> v(np);
    double a_prev = 0.0;
    for (std::size_t step = 1; step <= n; ++step) {
        for (std::size_t i = 0; i < np; ++i) {
            v[i] = m.nodes[i] * q[i];
        }
        double bn = dot(v, q);
        for (std::size_t i = 0; i < np; ++i) {
            v[i] -= bn * q[i] + a_prev * q_prev[i];
        }
        const double c1 = dot(v, q);
        const double c0 = step > 1 ? dot(v, q_prev) : 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            v[i] -= c1 * q[i] + c0 * q_prev[i];
        }
        bn += c1;
        b.push_back(bn);
        if (step == n) {
            break;
        }
        const double a2 = dot(v, v);
        if (!(a2 > 1e-26 * scale * scale)) {
            throw error(errc::breakdown, "a_n^2 <= 0: measure supported on too few points", step);
        }
        const double an = std::sqrt(a2);
        a.push_back(an);
        for (std::size_t i = 0; i < np; ++i) {
            q_prev[i] = q[i];
            q[i] = v[i] / an;
        }
        a_prev = an;
    }
    return JacobiParams::from_vectors(std::move(a), std::move(b));
}

/// N-point Gauss rule of the first N Jacobi parameters: nodes are the
/// eigenvalues of J_N, weights the Christoffel numbers 1 / sum_k p_k(x)^2.
inline DiscreteMeasure gauss_rule(const JacobiParams& p, std::size_t n)
{
    p.require_window(n);
    TridiagonalMatrix t;
    for (std::size_t k = 1; k <= n; ++k) {
        t.diag.push_back(p.b(k));
        if (k < n) {
            t.off.push_back(p.a(k));
        }
    }
    DiscreteMeasure g;
    g.nodes = eig_bisection(t);
    for (double x : g.nodes) {
        double pm1 = 0.0;
        double p0 = 1.0;
        double s = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            const double prev_a = k > 1 ? t.off[k - 2] : 0.0;
            const double p1 = ((x - t.diag[k - 1]) * p0 - prev_a * pm1) / t.off[k - 1];
            pm1 = p0;
            p0 = p1;
            s += p1 * p1;
        }
        g.weights.push_back(1.0 / s);
    }
    return g;
}

//------------------------------------------------------------------------------
// Measure -> Verblunsky coefficients

/// Levinson recursion on the trigonometric moments of a discrete circle
/// measure (nodes are angles). Sign convention: the monic polynomials obey
/// Phi_{n+1}(z) = z Phi_n(z) + conj(alpha_n) Phi_n^*(z), so alpha_n = conj(Phi_{n+1}(0)).
/// With this sign a constant sequence alpha_n = a > 0 has no mass point in
/// the gap of its arc.
inline VerblunskyParams verblunsky_from_measure(const DiscreteMeasure& m, std::size_t n)
{
    if (n == 0) {
        throw error(errc::invalid_argument, "need N >= 1");
    }
    if (m.size() <= n) {
        throw error(errc::moment_ill_conditioned, "measure supported on too few points", m.size());
    }
    std::vector<complex> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        c[k] = trig_moment(m, static_cast<int>(k));
    }
    std::vector<complex> phi{complex(1.0, 0.0)};
    double norm2 = c[0].real();
    std::vector<complex> alpha;
    for (std::size_t step = 0; step < n; ++step) {
        // orthogonality to 1: <1, z Phi_n> + conj(alpha_n) ||Phi_n||^2 = 0,
        // with <1, z^{k+1}> = conj(c_{k+1})
        complex s = 0.0;
        for (std::size_t k = 0; k < phi.size(); ++k) {
            s += phi[k] * std::conj(c[k + 1]);
        }
        const complex alpha_bar = -s / norm2;
        const complex an = std::conj(alpha_bar);
        const double r2 = (1.0 - std::abs(an)) * (1.0 + std::abs(an));
        if (!(r2 > 1e-13)) {
            throw error(errc::moment_ill_conditioned, "Toeplitz minor ratio below 1e-13", step);
        }
        alpha.push_back(an);
        const std::size_t deg = phi.size() - 1;
        std::vector<complex> next(deg + 2, complex(0.0, 0.0));
        for (std::size_t k = 0; k <= deg; ++k) {
            next[k + 1] += phi[k];
            next[k] += alpha_bar * std::conj(phi[deg - k]);
        }
        phi = std::move(next);
        norm2 *= r2;
    }
    return VerblunskyParams::from_vector(std::move(alpha));
}

inline VerblunskyParams verblunsky_from_measure(const CircleMeasureSpec& spec, std::size_t n,
                                                std::size_t points_per_interval = 512)
{
    return verblunsky_from_measure(discretize(spec, points_per_interval), n);
}

//------------------------------------------------------------------------------
// CSV

inline void write_discrete_csv(std::ostream& os, const DiscreteMeasure& m)
{
    os << "node,weight\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        os << detail::format_double(m.nodes[i]) << ',' << detail::format_double(m.weights[i]) << '\n';
    }
}

inline DiscreteMeasure read_discrete_csv(std::istream& in)
{
    const auto rows = detail::read_csv(in, "node,weight");
    DiscreteMeasure m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        m.nodes.push_back(detail::parse_double(rows[r][0], r + 2));
        m.weights.push_back(detail::parse_double(rows[r][1], r + 2));
    }
    return validate_discrete(std::move(m));
}

} // namespace cesaro

#endif
