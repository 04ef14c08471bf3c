// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#include "support.hpp"

#include <cesaro/generators.hpp>
#include <cesaro/regularity.hpp>

#include <sstream>

using namespace cesaro;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = detail::pi;

double harmonic_number(std::size_t n)
{
    double h = 0.0;
    for (std::size_t k = n; k >= 1; --k) {
        h += 1.0 / static_cast<double>(k);
    }
    return h;
}

void check_decreasing(const StatSeries& s)
{
    for (std::size_t k = 1; k < s.size(); ++k) {
        CHECK(s.values[k] < s.values[k - 1]);
    }
}

} // namespace

TEST_CASE("ladders")
{
    const auto l = default_ladder();
    CHECK(l.front() == 32);
    CHECK(l.back() == 8192);
    CHECK(l.size() == 9);
    CHECK_THROWS_AS(validate_ladder({}), error);
    CHECK_THROWS_AS(validate_ladder({4, 4}), error);
    CHECK_THROWS_AS(validate_ladder({0, 4}), error);
}

TEST_CASE("root test examples")
{
    for (double v : root_test(free_jacobi(), default_ladder()).values) {
        CHECK(v == 1.0);
    }
    CHECK_THAT(root_test(sparse_bump_jacobi(0.5), {1024}).last(), WithinAbs(std::pow(2.0, -10.0 / 1024.0), 1e-14));
    CHECK_THAT(root_test(sparse_bump_jacobi(0.5), {1024}).last(), WithinAbs(0.99325, 5e-6));
    const auto alt = root_test(alternating_a_jacobi(1.0, 0.5), {2, 10, 1000});
    for (double v : alt.values) {
        CHECK_THAT(v, WithinAbs(std::sqrt(0.5), 1e-14));
    }
    CHECK_THAT(root_test(constant_verblunsky(0.6), {100}).last(), WithinAbs(0.8, 1e-14));
    for (double v : root_test(harmonic_block(2, 40, 0.0), {10, 39}).values) {
        CHECK_THAT(v, WithinAbs(1.0, 1e-15));
    }
}

TEST_CASE("log-space root test equals the direct product")
{
    const auto j = random_jacobi(17, 100);
    const auto r = root_test(j, {1, 10, 50, 100});
    for (std::size_t k = 0; k < r.size(); ++k) {
        double prod = 1.0;
        for (std::size_t n = 1; n <= r.Ns[k]; ++n) {
            prod *= j.a(n);
        }
        CHECK_THAT(r.values[k], WithinAbs(std::pow(prod, 1.0 / static_cast<double>(r.Ns[k])), 1e-12));
    }
    const auto jb = random_block(18, 2, 40);
    const auto rb = root_test(jb, {5, 39});
    for (std::size_t k = 0; k < rb.size(); ++k) {
        double prod = 1.0;
        for (std::size_t n = 0; n < rb.Ns[k]; ++n) {
            prod *= std::abs(jb.A[n].determinant());
        }
        CHECK_THAT(rb.values[k], WithinAbs(std::pow(prod, 1.0 / (2.0 * static_cast<double>(rb.Ns[k]))), 1e-12));
    }
    SplitMix64 rng(19);
    std::vector<complex> alpha;
    for (int k = 0; k < 60; ++k) {
        alpha.push_back(std::polar(rng.uniform(0.0, 0.9), rng.uniform(-pi, pi)));
    }
    const auto v = VerblunskyParams::from_vector(alpha);
    double prod = 1.0;
    for (std::size_t k = 0; k < 60; ++k) {
        prod *= std::sqrt(1.0 - std::norm(alpha[k]));
    }
    CHECK_THAT(root_test(v, {60}).last(), WithinAbs(std::pow(prod, 1.0 / 60.0), 1e-12));
}

TEST_CASE("root test refuses non-positive a")
{
    const auto j = JacobiParams::from_vectors({1.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
    const auto e = capture_error([&] { (void)root_test(j, {3}); });
    CHECK(e.code() == errc::non_positive_a);
    CHECK(e.index() == std::optional<std::size_t>{2});
}

TEST_CASE("cn_stat examples")
{
    for (double v : cn_stat_oprl(free_jacobi(), default_ladder()).values) {
        CHECK(v == 0.0);
    }
    CHECK_THAT(cn_stat_oprl(sparse_bump_jacobi(0.5), {1024}).last(), WithinAbs(10.0 * 0.5 / 1024.0, 1e-15));
    CHECK_THAT(cn_stat_oprl(harmonic_b_jacobi(1.0), {100}).last(), WithinAbs(harmonic_number(100) / 100.0, 1e-15));
    CHECK_THAT(cn_stat_oprl(harmonic_b_jacobi(1.0), {100}).last(), WithinAbs(0.05187, 1e-5));
    CHECK_THAT(cn_stat_oprl_squared(sparse_bump_jacobi(0.5), {1024}).last(), WithinAbs(10.0 * 0.25 / 1024.0, 1e-15));
    // windows starting past the first bump
    CHECK_THAT(cn_stat_oprl_windowed(sparse_bump_jacobi(0.5), 5, {3, 4}).values[1], WithinAbs(0.5 / 4.0, 1e-15));
    CHECK(cn_stat_oprl_windowed(sparse_bump_jacobi(0.5), 5, {3}).last() == 0.0);
    CHECK_THROWS_AS(cn_stat_oprl_windowed(free_jacobi(), 0, {3}), error);
}

TEST_CASE("cn_stat vanishes exactly on free windows")
{
    const auto q = JacobiParams::from_vectors({1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0.25, 0});
    const auto s = cn_stat_oprl(q, {1, 2, 4, 5, 6});
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[2] == 0.0);
    CHECK(s.values[3] > 0.0);
    CHECK(s.values[4] > 0.0);
}

TEST_CASE("Schwarz bridge holds in every window")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto j = random_jacobi(seed, 300, 0.7, 1.2, 0.4);
        const std::vector<std::size_t> ns{1, 7, 50, 299};
        const auto cn = cn_stat_oprl(j, ns);
        const auto ms = cn_stat_oprl_squared(j, ns);
        const double a = sup_deviation(j, 300);
        for (std::size_t k = 0; k < ns.size(); ++k) {
            CHECK(cn.values[k] * cn.values[k] <= 2.0 * ms.values[k] * (1.0 + 1e-12));
            CHECK(ms.values[k] <= a * cn.values[k] * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("lemma21_stats examples")
{
    const auto one = lemma21_stats(free_jacobi().a, {10});
    CHECK(one.geo_mean.last() == 1.0);
    CHECK(one.mean.last() == 1.0);
    CHECK(one.mean_square.last() == 1.0);
    CHECK(one.mean_sq_dev.last() == 0.0);

    const auto alt = lemma21_stats(alternating_a_jacobi(1.1, 0.9).a, {2, 100, 1000});
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK_THAT(alt.mean.values[k], WithinAbs(1.0, 1e-14));
        CHECK_THAT(alt.mean_square.values[k], WithinAbs(1.01, 1e-14));
        CHECK_THAT(alt.mean_sq_dev.values[k], WithinAbs(0.01, 1e-14));
        CHECK_THAT(alt.geo_mean.values[k], WithinAbs(std::sqrt(0.99), 1e-14));
    }
    CHECK_THAT(lemma21_stats(sparse_bump_jacobi(0.5).a, {1024}).mean_sq_dev.last(),
               WithinAbs(10.0 * 0.25 / 1024.0, 1e-15));
}

TEST_CASE("lemma21_stats identity and concavity")
{
    const auto j = random_jacobi(23, 500);
    const auto s = lemma21_stats(j.a, {1, 10, 100, 500});
    for (std::size_t k = 0; k < s.mean.size(); ++k) {
        CHECK_THAT(s.mean_sq_dev.values[k], WithinAbs(s.mean_square.values[k] - 2.0 * s.mean.values[k] + 1.0, 1e-12));
        CHECK(s.geo_mean.values[k] <= s.mean.values[k] * (1.0 + 1e-14));
        CHECK(s.mean.values[k] * s.mean.values[k] <= s.mean_square.values[k] * (1.0 + 1e-14));
    }
}

TEST_CASE("trace_stat examples")
{
    CHECK_THAT(trace_stat(free_jacobi(), {10}).last(), WithinAbs(1.8, 1e-15));
    const auto t = trace_stat(free_jacobi(), default_ladder());
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK_THAT(t.values[k], WithinAbs(2.0 - 2.0 / static_cast<double>(t.Ns[k]), 1e-14));
        if (k > 0) {
            CHECK(t.values[k] > t.values[k - 1]);
        }
    }
    const auto tb = trace_stat(harmonic_block(2, 200, 0.0), {10, 100, 200});
    for (std::size_t k = 0; k < tb.size(); ++k) {
        CHECK_THAT(tb.values[k], WithinAbs(2.0 - 2.0 / static_cast<double>(tb.Ns[k]), 1e-14));
    }
    // b = 0.5, a = 1: (N b^2 + 2 (N - 1)) / N
    const auto p = JacobiParams::from_generators([](std::size_t) { return 1.0; }, [](std::size_t) { return 0.5; });
    CHECK_THAT(trace_stat(p, {4}).last(), WithinAbs((4 * 0.25 + 6.0) / 4.0, 1e-15));
}

TEST_CASE("trace_stat matches the mean square of the truncation eigenvalues")
{
    const auto j = random_jacobi(29, 150);
    for (std::size_t n : {20, 150}) {
        double s = 0.0;
        for (double x : eig_sym_tridiag(truncate(j, n))) {
            s += x * x;
        }
        CHECK_THAT(trace_stat(j, {n}).last(), WithinAbs(s / static_cast<double>(n), 1e-11));
    }
}

TEST_CASE("cn_stat_matrix examples")
{
    const auto free2 = harmonic_block(2, 120, 0.0);
    const auto f = cn_stat_matrix(free2, {100});
    CHECK(f.type_form.last() == 0.0);
    CHECK(f.invariant_form.last() == 0.0);

    BlockJacobiParams jb;
    jb.block_size = 2;
    jb.type = BlockType::type3;
    for (std::size_t n = 1; n <= 100; ++n) {
        Matrix b = Matrix::Zero(2, 2);
        b(0, 0) = 1.0 / static_cast<double>(n);
        jb.B.push_back(b);
        jb.A.push_back(Matrix::Identity(2, 2));
    }
    const auto h = cn_stat_matrix(jb, {100});
    CHECK_THAT(h.invariant_form.last(), WithinAbs(harmonic_number(100) / 100.0, 1e-15));
    CHECK_THAT(h.type_form.last(), WithinAbs(harmonic_number(100) / 100.0, 1e-15));

    // invariant_form survives any unitary chain; type_form in general does not
    jb.B.push_back(Matrix::Zero(2, 2));
    const auto chain = random_chain(30, 2, 101);
    auto moved = apply_equivalence(jb, chain);
    CHECK_THAT(cn_stat_matrix_invariant(moved, {100}).last(), WithinAbs(h.invariant_form.last(), 1e-12));
    moved.type = BlockType::general;
    CHECK_THROWS_MATCHES(cn_stat_matrix(moved, {100}), error, has_code(errc::wrong_type));
}

TEST_CASE("cn_stat_matrix invariance for random parameters")
{
    const auto jb = random_block(31, 3, 60);
    auto padded = jb;
    padded.A.push_back(Matrix::Identity(3, 3));
    const auto base = cn_stat_matrix_invariant(padded, {10, 59});
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto moved = apply_equivalence(padded, random_chain(seed, 3, 61));
        const auto s = cn_stat_matrix_invariant(moved, {10, 59});
        for (std::size_t k = 0; k < s.size(); ++k) {
            CHECK_THAT(s.values[k], WithinAbs(base.values[k], 1e-12));
        }
    }
}

TEST_CASE("cn_stat_opuc examples")
{
    CHECK(cn_stat_opuc(constant_verblunsky(0.0), {100}).last() == 0.0);
    CHECK_THAT(cn_stat_opuc(sparse_bump_verblunsky(0.5), {4096}).last(), WithinAbs(12.0 * 0.5 / 4096.0, 1e-16));
    CHECK_THAT(cn_stat_opuc(sparse_bump_verblunsky(0.5), {4096}).last(), WithinAbs(0.00146, 5e-6));
    CHECK_THAT(cn_stat_opuc(harmonic_verblunsky(0.0, 1.0), {100}).last(),
               WithinAbs((harmonic_number(101) - 1.0) / 100.0, 1e-15));
}

TEST_CASE("arc statistics vanish on constant alpha")
{
    const complex alpha = std::polar(0.5, pi / 3.0);
    const auto s = arc_stats(constant_verblunsky(alpha), 0.5, 2, {16, 256, 2000});
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(s.modulus.values[k] <= 1e-30);
        CHECK(s.increment.values[k] == 0.0);
        CHECK(s.torus.values[k] <= 1e-15);
    }
}

TEST_CASE("arc statistics of the alternating sequence")
{
    // alpha_j = a (-1)^j, k = 2: |alpha_{j+1} - alpha_j|^2 = 4 a^2 and the
    // inner minimum 2 a^2 + 2 a^2 - 2 a |alpha_{j+1} + alpha_{j+2}| = 4 a^2
    for (double a : {0.3, 0.5}) {
        const auto s = arc_stats(alternating_verblunsky(a), a, 2, {10, 100});
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK_THAT(s.modulus.values[k], WithinAbs(0.0, 1e-16));
            CHECK_THAT(s.increment.values[k], WithinAbs(4.0 * a * a, 1e-15));
            CHECK_THAT(s.torus.values[k], WithinAbs(4.0 * a * a, 1e-15));
        }
    }
}

TEST_CASE("closed-form inner minimum matches the theta grid")
{
    SplitMix64 rng(41);
    std::vector<complex> alpha;
    for (int k = 0; k < 200; ++k) {
        alpha.push_back(std::polar(rng.uniform(0.0, 0.9), rng.uniform(-pi, pi)));
    }
    const auto v = VerblunskyParams::from_vector(alpha);
    const double h = pi / 4096.0;
    for (std::size_t j = 0; j < 150; j += 7) {
        for (std::size_t k : {1, 3, 8}) {
            const double closed = arc_inner_min(v, j, 0.5, k);
            const double grid = arc_inner_min_grid(v, j, 0.5, k);
            CHECK(closed <= grid + 1e-14);
            // the grid misses the optimal phase by at most h
            CHECK(grid - closed <= 0.5 * static_cast<double>(k) * h * h + 1e-14);
        }
    }
}

TEST_CASE("arc statistics of a decaying perturbation decrease")
{
    const auto v = harmonic_verblunsky(std::polar(0.5, pi / 3.0), 1.0);
    const auto s = arc_stats(v, 0.5, 2, {250, 500, 1000, 2000});
    for (const auto* series : {&s.modulus, &s.increment, &s.torus}) {
        CHECK(series->last() <= 0.01);
        check_decreasing(*series);
    }
}

TEST_CASE("arc_stats argument checks")
{
    CHECK_THROWS_AS(arc_stats(constant_verblunsky(0.5), 1.0, 2, {10}), error);
    CHECK_THROWS_AS(arc_stats(constant_verblunsky(0.5), 0.5, 0, {10}), error);
}

TEST_CASE("cn_stat_torus examples")
{
    const PeriodicJacobi j0{{1.0, 0.5}, {0.0, 0.0}};
    const IsospectralTorus torus(j0);
    for (double v : cn_stat_torus(periodic_sequence(j0), torus, {8, 32}).values) {
        CHECK(v <= 1e-8);
    }
    const auto h = cn_stat_torus(periodic_harmonic_jacobi(j0, 1.0), torus, {16, 32, 64, 128});
    check_decreasing(h);
    // each bump of size 1 adds at most sum_k e^{-k} = e / (e - 1) < 1.6
    const auto b = cn_stat_torus(periodic_bump_jacobi(j0, 1.0), torus, {1024});
    CHECK(b.last() <= 1.6 * 10.0 / 1024.0 * (1.0 + 1e-9));
    CHECK(b.last() > 0.0);
}

TEST_CASE("stats CSV")
{
    std::ostringstream s;
    write_stats_csv(s, {StatSeries{"x", {1, 2}, {0.5, 0.25}}, StatSeries{"y", {4}, {3.0}}});
    CHECK(s.str() == "label,N,value\nx,1,0.5\nx,2,0.25\ny,4,3\n");
}
