// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#include "support.hpp"

#include <cesaro/polynomial.hpp>
#include <cesaro/sets.hpp>

#include <algorithm>

using namespace cesaro;
using Catch::Matchers::WithinAbs;

TEST_CASE("polynomial evaluation and trimming")
{
    const Polynomial p({1.0, -3.0, 2.0});
    CHECK(p.degree() == 2);
    CHECK(p(0.0) == 1.0);
    CHECK(p(1.0) == 0.0);
    CHECK(p(0.5) == 0.0);
    CHECK(Polynomial({1.0, 2.0, 0.0, 0.0}).degree() == 1);
    CHECK(Polynomial().degree() == -1);
    CHECK(Polynomial().leading() == 0.0);
    CHECK(p.coeff(7) == 0.0);
}

TEST_CASE("polynomial arithmetic")
{
    const auto x = Polynomial::linear(1.0, 0.0);
    const auto p = x * x - Polynomial::constant(1.0);
    CHECK(p.coeffs() == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK((p + Polynomial::constant(1.0)).coeffs() == std::vector<double>{0.0, 0.0, 1.0});
    // cancelling leading terms drop the degree
    CHECK((p - x * x).degree() == 0);
    CHECK((2.0 * p).coeffs() == std::vector<double>{-2.0, 0.0, 2.0});
    CHECK((p * Polynomial()).degree() == -1);
    CHECK(Polynomial::linear(2.0, 3.0).coeffs() == std::vector<double>{-6.0, 2.0});
}

TEST_CASE("product evaluates as the product of values")
{
    const Polynomial p({0.3, -1.2, 0.5, 2.0});
    const Polynomial q({-0.7, 0.0, 1.1});
    for (double x : {-2.0, -0.3, 0.0, 0.9, 1.7}) {
        CHECK_THAT((p * q)(x), WithinAbs(p(x) * q(x), 1e-13));
        CHECK_THAT((p + q)(x), WithinAbs(p(x) + q(x), 1e-14));
    }
}

TEST_CASE("derivative")
{
    const Polynomial p({5.0, 1.0, -3.0, 4.0});
    CHECK(p.derivative().coeffs() == std::vector<double>{1.0, -6.0, 12.0});
    CHECK(Polynomial::constant(4.0).derivative().degree() == -1);
    // central difference oracle
    for (double x : {-1.0, 0.25, 2.0}) {
        const double h = 1e-5;
        CHECK_THAT(p.derivative()(x), WithinAbs((p(x + h) - p(x - h)) / (2.0 * h), 1e-7));
    }
}

TEST_CASE("companion roots")
{
    // (x - 1)(x + 2)(x - 0.5)
    const auto p = Polynomial::linear(1.0, 1.0) * Polynomial::linear(1.0, -2.0) * Polynomial::linear(3.0, 0.5);
    auto r = p.roots();
    REQUIRE(r.size() == 3);
    std::sort(r.begin(), r.end(), [](auto u, auto v) { return u.real() < v.real(); });
    CHECK_THAT(r[0].real(), WithinAbs(-2.0, 1e-12));
    CHECK_THAT(r[1].real(), WithinAbs(0.5, 1e-12));
    CHECK_THAT(r[2].real(), WithinAbs(1.0, 1e-12));
    for (const auto& z : r) {
        CHECK(std::abs(z.imag()) < 1e-12);
    }
    // x^2 + 1
    const auto c = Polynomial({1.0, 0.0, 1.0}).roots();
    REQUIRE(c.size() == 2);
    for (const auto& z : c) {
        CHECK_THAT(std::abs(z), WithinAbs(1.0, 1e-14));
        CHECK_THAT(z.real(), WithinAbs(0.0, 1e-14));
    }
    CHECK(Polynomial::constant(3.0).roots().empty());
}

TEST_CASE("finite gap and arc set validation")
{
    CHECK(validate_gap_set(FiniteGapSet{{{-2.0, -1.0}, {1.0, 2.0}}}).gaps() == 1);
    CHECK_THROWS_MATCHES(validate_gap_set(FiniteGapSet{}), error, has_code(errc::empty_sequence));
    const auto e = capture_error([] { (void)validate_gap_set(FiniteGapSet{{{-2.0, 0.5}, {0.0, 2.0}}}); });
    CHECK(e.code() == errc::invalid_argument);
    CHECK_THROWS_AS(validate_gap_set(FiniteGapSet{{{1.0, 1.0}}}), error);
    CHECK_THAT(validate_arc(CircleArcSet{0.5}).gap_half_angle(), WithinAbs(detail::pi / 3.0, 1e-15));
    CHECK_THROWS_AS(validate_arc(CircleArcSet{1.0}), error);
    CHECK_THROWS_AS(validate_arc(CircleArcSet{0.0}), error);
}
