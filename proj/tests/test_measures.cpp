// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#include "support.hpp"

#include <cesaro/generators.hpp>
#include <cesaro/measures.hpp>
#include <cesaro/spectra.hpp>

#include <Eigen/Dense>

#include <sstream>

using namespace cesaro;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// alpha_0..alpha_{n-1} by solving the Toeplitz normal equations of each
// monic Phi_k directly: <z^j, Phi_k> = 0 for j < k, with
// <z^j, z^l> = int e^{i (l - j) theta} d mu. Then alpha_{k-1} = conj(Phi_k(0)).
std::vector<complex> toeplitz_verblunsky(const DiscreteMeasure& m, std::size_t n)
{
    const auto moment_at = [&](int d) {
        complex s(0.0, 0.0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            s += m.weights[i] * std::polar(1.0, d * m.nodes[i]);
        }
        return s;
    };
    std::vector<complex> out;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        Eigen::MatrixXcd t(kk, kk);
        Eigen::VectorXcd rhs(kk);
        for (Eigen::Index j = 0; j < kk; ++j) {
            for (Eigen::Index l = 0; l < kk; ++l) {
                t(j, l) = moment_at(static_cast<int>(l - j));
            }
            rhs(j) = -moment_at(static_cast<int>(kk - j));
        }
        const Eigen::VectorXcd c = t.fullPivLu().solve(rhs);
        out.push_back(std::conj(c(0)));
    }
    return out;
}

} // namespace

TEST_CASE("discretize carries atoms verbatim")
{
    const LineMeasureSpec spec{{}, {Atom{0.0, 1.0}}};
    const auto d = discretize(spec, 8);
    REQUIRE(d.size() == 1);
    CHECK(d.nodes[0] == 0.0);
    CHECK(d.weights[0] == 1.0);
}

TEST_CASE("second moments of the presets")
{
    CHECK_THAT(moment(discretize(chebyshev_t_measure(), 200), 2), WithinAbs(2.0, 1e-10));
    CHECK_THAT(moment(discretize(legendre_measure(), 200), 2), WithinAbs(4.0 / 3.0, 1e-10));
    // (4 - x^2)^{1/2} / (2 pi): moments are the Catalan numbers 1, 2, 5
    const auto u = discretize(chebyshev_u_measure(), 200);
    CHECK_THAT(moment(u, 2), WithinAbs(1.0, 1e-10));
    CHECK_THAT(moment(u, 4), WithinAbs(2.0, 1e-10));
    CHECK_THAT(moment(u, 6), WithinAbs(5.0, 1e-10));
}

TEST_CASE("discretization is exact on polynomial densities")
{
    // density proportional to 1 + x on [0, 1]: moments 2 (1/(k+1) + 1/(k+2)) / 3;
    // 6 nodes integrate degree k + 1 <= 11 exactly
    LineMeasureSpec spec;
    AcPart part;
    part.lo = 0.0;
    part.hi = 1.0;
    part.kind = DensityKind::tabulated;
    part.breakpoints = {0.0, 1.0};
    part.piece_coeffs = {{1.0, 1.0}};
    spec.ac_parts.push_back(part);
    const auto d = discretize(spec, 6);
    for (int k = 0; k <= 10; ++k) {
        const double exact = 2.0 * (1.0 / (k + 1) + 1.0 / (k + 2)) / 3.0;
        CHECK_THAT(moment(d, k), WithinAbs(exact, 1e-14));
    }
}

TEST_CASE("negative tabulated density is rejected")
{
    LineMeasureSpec spec;
    AcPart part;
    part.lo = 0.0;
    part.hi = 1.0;
    part.kind = DensityKind::tabulated;
    part.breakpoints = {0.0, 1.0};
    part.piece_coeffs = {{1.0, -3.0}};
    spec.ac_parts.push_back(part);
    CHECK_THROWS_MATCHES(discretize(spec, 8), error, has_code(errc::density_negative));
}

TEST_CASE("mixed measure keeps its total mass")
{
    LineMeasureSpec spec = legendre_measure(-1.0, 1.0);
    spec.atoms.push_back(Atom{3.0, 1.0});
    const auto d = validate_discrete(discretize(spec, 20));
    CHECK_THAT(moment(d, 0), WithinAbs(1.0, 1e-14));
    // half the mass at x = 3, the flat half has mean 0
    CHECK_THAT(moment(d, 1), WithinAbs(1.5, 1e-14));
}

TEST_CASE("jacobi_from_measure on the two-point measure")
{
    const DiscreteMeasure m{{-1.0, 1.0}, {0.5, 0.5}};
    const auto p = jacobi_from_measure(m, 2);
    CHECK_THAT(p.b(1), WithinAbs(0.0, 1e-15));
    CHECK_THAT(p.b(2), WithinAbs(0.0, 1e-15));
    CHECK_THAT(p.a(1), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_MATCHES(jacobi_from_measure(m, 3), error, has_code(errc::breakdown));
}

TEST_CASE("jacobi_from_measure on Chebyshev T and Legendre")
{
    const auto t = jacobi_from_measure(discretize(chebyshev_t_measure(), 200), 6);
    CHECK_THAT(t.a(1), WithinAbs(std::sqrt(2.0), 1e-9));
    for (std::size_t n = 2; n <= 5; ++n) {
        CHECK_THAT(t.a(n), WithinAbs(1.0, 1e-9));
    }
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK_THAT(t.b(n), WithinAbs(0.0, 1e-9));
    }
    const auto l = jacobi_from_measure(discretize(legendre_measure(), 200), 5);
    for (std::size_t n = 1; n <= 4; ++n) {
        const double dn = static_cast<double>(n);
        CHECK_THAT(l.a(n), WithinAbs(2.0 * dn / std::sqrt(4.0 * dn * dn - 1.0), 1e-9));
    }
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK_THAT(l.b(n), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("Legendre recurrence stays accurate past 60 coefficients")
{
    const std::size_t n = 80;
    const auto l = jacobi_from_measure(discretize(legendre_measure(), 2 * n + 64), n);
    for (std::size_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        CHECK_THAT(l.a(k), WithinAbs(2.0 * dk / std::sqrt(4.0 * dk * dk - 1.0), 1e-12));
    }
}

TEST_CASE("Gauss reconstruction reproduces the moments")
{
    for (const auto& spec : {chebyshev_t_measure(), legendre_measure(-1.0, 3.0), chebyshev_u_measure(0.0, 1.0)}) {
        const auto d = discretize(spec, 100);
        const std::size_t n = 8;
        const auto g = gauss_rule(jacobi_from_measure(d, n), n);
        for (int k = 0; k < static_cast<int>(2 * n); ++k) {
            const double exact = moment(d, k);
            CHECK_THAT(moment(g, k), WithinAbs(exact, 1e-9 * std::max(1.0, std::abs(exact))));
        }
    }
}

TEST_CASE("affine shift moves b and fixes a")
{
    const auto base = jacobi_from_measure(discretize(legendre_measure(-1.0, 2.0), 64), 10);
    const auto moved = jacobi_from_measure(discretize(legendre_measure(-1.0 + 0.75, 2.0 + 0.75), 64), 10);
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK_THAT(moved.b(n) - base.b(n), WithinAbs(0.75, 1e-12));
        if (n < 10) {
            CHECK_THAT(moved.a(n), WithinAbs(base.a(n), 1e-12));
        }
    }
}

TEST_CASE("verblunsky_from_measure of Lebesgue measure vanishes")
{
    const auto v = verblunsky_from_measure(uniform_circle_measure(), 8);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(std::abs(v.alpha(j)) < 1e-12);
    }
    // rotation invariance survives any rotation of the discretization nodes
    DiscreteMeasure m;
    for (int k = 0; k < 64; ++k) {
        m.nodes.push_back(-detail::pi + 2.0 * detail::pi * (k + 0.3) / 64.0);
        m.weights.push_back(1.0 / 64.0);
    }
    const auto w = verblunsky_from_measure(m, 20);
    for (std::size_t j = 0; j < 20; ++j) {
        CHECK(std::abs(w.alpha(j)) < 1e-12);
    }
}

TEST_CASE("one percent atom at theta = 0 gives real decaying alpha")
{
    CircleMeasureSpec spec = uniform_circle_measure();
    spec.ac_parts[0].mass = 0.99;
    spec.atoms.push_back(Atom{0.0, 0.01});
    const auto d = discretize(spec, 512);
    const std::size_t n = 12;
    const auto v = verblunsky_from_measure(d, n);
    const auto oracle = toeplitz_verblunsky(d, n);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK_THAT(v.alpha(j).real(), WithinAbs(oracle[j].real(), 1e-12));
        CHECK(std::abs(v.alpha(j).imag()) < 1e-14);
        // negative in the Phi_{n+1} = z Phi_n + conj(alpha_n) Phi_n^* convention
        CHECK(v.alpha(j).real() < 0.0);
        CHECK(std::abs(v.alpha(j)) < 1.0);
        if (j > 0) {
            CHECK(std::abs(v.alpha(j)) < std::abs(v.alpha(j - 1)));
        }
    }
}

TEST_CASE("Levinson agrees with the Toeplitz oracle on a non-symmetric measure")
{
    SplitMix64 rng(21);
    DiscreteMeasure m;
    double total = 0.0;
    for (int k = 0; k < 40; ++k) {
        m.nodes.push_back(-detail::pi + 2.0 * detail::pi * (k + rng.uniform()) / 40.0);
        m.weights.push_back(rng.uniform(0.1, 1.0));
        total += m.weights.back();
    }
    for (double& w : m.weights) {
        w /= total;
    }
    const auto v = verblunsky_from_measure(m, 10);
    const auto oracle = toeplitz_verblunsky(m, 10);
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(std::abs(v.alpha(j) - oracle[j]) < 1e-10);
    }
}

TEST_CASE("constant alpha regenerated from its CMV spectral measure")
{
    const auto v = constant_verblunsky(0.5);
    const auto m = cmv_spectral_measure(v, 16);
    const auto w = verblunsky_from_measure(m, 15);
    for (std::size_t j = 0; j < 15; ++j) {
        CHECK(std::abs(w.alpha(j) - complex(0.5, 0.0)) < 1e-6);
    }
}

TEST_CASE("measures too small for the requested coefficients")
{
    const DiscreteMeasure m{{-1.0, 1.0}, {0.5, 0.5}};
    CHECK_THROWS_MATCHES(verblunsky_from_measure(m, 2), error, has_code(errc::moment_ill_conditioned));
}

TEST_CASE("discrete measure CSV round trip")
{
    const auto d = discretize(legendre_measure(), 5);
    std::stringstream s;
    write_discrete_csv(s, d);
    const auto e = read_discrete_csv(s);
    CHECK(e.nodes == d.nodes);
    CHECK(e.weights == d.weights);
}
