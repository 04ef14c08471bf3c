// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#include "support.hpp"

#include <cesaro/generators.hpp>
#include <cesaro/measures.hpp>
#include <cesaro/spectra.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>

using namespace cesaro;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = detail::pi;

// Sorted angles of n equally spaced points, up to a common rotation: the
// gaps between neighbours (cyclically) are all 2 pi / n.
void check_equally_spaced(std::vector<double> th, double tol)
{
    std::sort(th.begin(), th.end());
    const double step = 2.0 * pi / static_cast<double>(th.size());
    for (std::size_t k = 1; k < th.size(); ++k) {
        CHECK_THAT(th[k] - th[k - 1], WithinAbs(step, tol));
    }
    CHECK_THAT(th.front() + 2.0 * pi - th.back(), WithinAbs(step, tol));
}

} // namespace

TEST_CASE("truncate copies the window")
{
    const auto t = truncate(free_jacobi(), 3);
    CHECK(t.diag == std::vector<double>{0, 0, 0});
    CHECK(t.off == std::vector<double>{1, 1});
    const auto p = JacobiParams::from_vectors({std::sqrt(2.0), 1.0}, {0, 0, 0});
    CHECK(truncate(p, 3).off == std::vector<double>{std::sqrt(2.0), 1.0});
    const auto one = truncate(p, 1);
    CHECK(one.diag == std::vector<double>{0.0});
    CHECK(one.off.empty());
}

TEST_CASE("free eigenvalues are 2 cos(k pi / (N + 1))")
{
    const auto e = eig_sym_tridiag(truncate(free_jacobi(), 5));
    for (std::size_t k = 1; k <= 5; ++k) {
        CHECK_THAT(e[5 - k], WithinAbs(2.0 * std::cos(static_cast<double>(k) * pi / 6.0), 1e-12));
    }
    CHECK(eig_sym_tridiag(TridiagonalMatrix{{5.0}, {}}) == std::vector<double>{5.0});
}

TEST_CASE("trace identities for random bounded truncations")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto p = random_jacobi(seed, 200);
        const auto e = eig_sym_tridiag(truncate(p, 200));
        double s1 = 0.0;
        double s2 = 0.0;
        for (double x : e) {
            s1 += x;
            s2 += x * x;
        }
        double b1 = 0.0;
        double q = 0.0;
        for (std::size_t n = 1; n <= 200; ++n) {
            b1 += p.b(n);
            q += p.b(n) * p.b(n) + (n < 200 ? 2.0 * p.a(n) * p.a(n) : 0.0);
        }
        CHECK_THAT(s1, WithinAbs(b1, 1e-8 * std::max(1.0, std::abs(b1))));
        CHECK_THAT(s2, WithinAbs(q, 1e-8 * q));
    }
}

TEST_CASE("eigenvalues of consecutive truncations interlace strictly")
{
    // almost Mathieu at coupling 0.3 has only extended states; random or
    // decaying coefficients produce localized states whose interlacing gaps
    // fall below rounding
    const auto p = JacobiParams::from_generators(
        [](std::size_t) { return 1.0; },
        [](std::size_t n) { return 0.6 * std::cos(2.0 * pi * 0.6180339887498949 * static_cast<double>(n)); });
    const auto lo = eig_sym_tridiag(truncate(p, 30));
    const auto hi = eig_sym_tridiag(truncate(p, 31));
    for (std::size_t k = 0; k < lo.size(); ++k) {
        CHECK(hi[k] < lo[k]);
        CHECK(lo[k] < hi[k + 1]);
    }
}

TEST_CASE("zero counting measures")
{
    const auto p = JacobiParams::from_vectors({1.0}, {0.7, 0.0});
    const auto z = zero_counting(p, 1);
    CHECK(z.points == std::vector<double>{0.7});
    CHECK(z.domain == Domain::line);

    const auto cheb = jacobi_from_measure(discretize(chebyshev_t_measure(), 256), 100);
    const auto zc = zero_counting(cheb, 100);
    double m2 = 0.0;
    for (double x : zc.points) {
        m2 += x * x;
    }
    CHECK_THAT(m2 / 100.0, WithinAbs(2.0, 0.05));
}

TEST_CASE("trace_square examples")
{
    const auto f = trace_square(free_jacobi(), 10);
    CHECK_THAT(f.via_formula, WithinAbs(1.8, 1e-15));
    CHECK_THAT(f.via_eigs, WithinAbs(1.8, 1e-12));
    const auto ones = JacobiParams::from_generators([](std::size_t) { return 1.0; }, [](std::size_t) { return 1.0; });
    const auto t = trace_square(ones, 4);
    CHECK_THAT(t.via_formula, WithinAbs(2.5, 1e-15));
    // dense oracle
    Eigen::Matrix4d m;
    m << 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
    CHECK_THAT(t.via_eigs, WithinAbs(es.eigenvalues().squaredNorm() / 4.0, 1e-12));
    for (std::size_t n : {100, 1000}) {
        CHECK_THAT(trace_square(free_jacobi(), n).via_formula, WithinAbs(2.0 - 2.0 / static_cast<double>(n), 1e-13));
    }
}

TEST_CASE("CMV of alpha = 0 has equally spaced eigenvalues")
{
    const auto v = constant_verblunsky(0.0);
    check_equally_spaced(eig_unitary(cmv(v, 4)).points, 1e-12);
    const auto e8 = eig_unitary(cmv(v, 8));
    CHECK(e8.domain == Domain::circle);
    CHECK(e8.size() == 8);
    check_equally_spaced(e8.points, 1e-12);
}

TEST_CASE("1 x 1 CMV is a unimodular entry")
{
    for (const complex a : {complex(0.0, 0.0), complex(0.3, -0.4), complex(-0.9, 0.0)}) {
        const auto c = cmv(constant_verblunsky(a), 1);
        REQUIRE(c.m.rows() == 1);
        CHECK_THAT(std::abs(c.m(0, 0)), WithinAbs(1.0, 1e-15));
        const auto e = eig_unitary(c);
        CHECK_THAT(e.points[0], WithinAbs(std::arg(c.m(0, 0)), 1e-15));
    }
}

TEST_CASE("CMV assembly is unitary with bandwidth two")
{
    SplitMix64 rng(5);
    std::vector<complex> alpha;
    for (int k = 0; k < 40; ++k) {
        alpha.push_back(std::polar(rng.uniform(0.0, 0.99), rng.uniform(-pi, pi)));
    }
    const auto c = cmv(VerblunskyParams::from_vector(alpha), 40);
    const Matrix id = Matrix::Identity(40, 40);
    CHECK((c.m.adjoint() * c.m - id).norm() < 1e-12);
    for (Eigen::Index i = 0; i < 40; ++i) {
        for (Eigen::Index j = 0; j < 40; ++j) {
            if (std::abs(i - j) > 2) {
                CHECK(c.m(i, j) == complex(0.0, 0.0));
            }
        }
    }
    const auto e = eig_unitary(c);
    CHECK(std::is_sorted(e.points.begin(), e.points.end()));
    CHECK(e.points.front() > -pi);
    CHECK(e.points.back() <= pi);
}

TEST_CASE("CMV of alpha = 0.5 clusters on the arc")
{
    const double edge = 2.0 * std::asin(0.5);
    for (std::size_t n : {64, 256}) {
        for (double th : eig_unitary(cmv(constant_verblunsky(0.5), n)).points) {
            CHECK(std::abs(th) >= edge - 0.1);
        }
    }
    const auto e = eig_unitary(cmv(constant_verblunsky(0.5), 128));
    complex mean(0.0, 0.0);
    for (double th : e.points) {
        mean += std::polar(1.0, th);
    }
    mean /= 128.0;
    CHECK(std::abs(mean - complex(-0.25, 0.0)) < 0.05);
}

TEST_CASE("eig_unitary refuses a non-unitary matrix")
{
    auto c = cmv(constant_verblunsky(0.2), 6);
    c.m(0, 0) *= 1.1;
    CHECK_THROWS_MATCHES(eig_unitary(c), error, has_code(errc::not_unitary));
}

TEST_CASE("block truncations")
{
    // A = 1, B = 0, l = 2, K = 3: two copies of the free 3 x 3 truncation
    const auto free2 = harmonic_block(2, 3, 0.0);
    const auto e = eig_block(free2, 3);
    const auto scalar = eig_sym_tridiag(truncate(free_jacobi(), 3));
    REQUIRE(e.size() == 6);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK_THAT(e[2 * k], WithinAbs(scalar[k], 1e-12));
        CHECK_THAT(e[2 * k + 1], WithinAbs(scalar[k], 1e-12));
    }

    // K = 1: the eigenvalues of B_1
    const auto jb = random_block(3, 3, 4);
    Eigen::SelfAdjointEigenSolver<Matrix> es(jb.B[0], Eigen::EigenvaluesOnly);
    const auto e1 = eig_block(jb, 1);
    for (Eigen::Index k = 0; k < 3; ++k) {
        CHECK_THAT(e1[static_cast<std::size_t>(k)], WithinAbs(es.eigenvalues()(k), 1e-12));
    }
}

TEST_CASE("block trace of squares matches the block formula")
{
    const auto jb = random_block(77, 3, 40, 0.5);
    const auto e = eig_block(jb, 40);
    double s2 = 0.0;
    for (double x : e) {
        s2 += x * x;
    }
    double q = 0.0;
    for (std::size_t k = 0; k < 40; ++k) {
        q += (jb.B[k] * jb.B[k]).trace().real();
        if (k < 39) {
            q += 2.0 * (jb.A[k].adjoint() * jb.A[k]).trace().real();
        }
    }
    CHECK_THAT(s2, WithinAbs(q, 1e-8 * q));
    CHECK_THAT(block_trace_square(jb, 40), WithinAbs(q / 120.0, 1e-12));
}

TEST_CASE("l = 1 block solver agrees with the scalar solver")
{
    const auto p = random_jacobi(31, 50);
    BlockJacobiParams jb;
    jb.block_size = 1;
    for (std::size_t n = 1; n <= 50; ++n) {
        jb.B.push_back(Matrix::Constant(1, 1, p.b(n)));
        if (n < 50) {
            jb.A.push_back(Matrix::Constant(1, 1, p.a(n)));
        }
    }
    const auto e = eig_block(jb, 50);
    const auto s = eig_sym_tridiag(truncate(p, 50));
    for (std::size_t k = 0; k < 50; ++k) {
        CHECK_THAT(e[k], WithinAbs(s[k], 1e-10));
    }
}

TEST_CASE("empirical measure CSV")
{
    std::ostringstream s;
    write_empirical_csv(s, EmpiricalMeasure{Domain::line, {-1.0, 0.5}});
    CHECK(s.str() == "index,point\n1,-1\n2,0.5\n");
}
