// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_POLYNOMIAL_HPP
#define CESARO_POLYNOMIAL_HPP

#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace cesaro {

/// Real polynomial, ascending coefficients. Trailing zeros are trimmed so
/// `degree()` is exact.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs)
        : c_(std::move(coeffs))
    {
        trim();
    }

    static Polynomial constant(double v) { return Polynomial({v}); }
    /// (x - root) scaled by `lead`.
    static Polynomial linear(double lead, double root) { return Polynomial({-lead * root, lead}); }

    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return c_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }
    [[nodiscard]] double coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0.0; }

    [[nodiscard]] double operator()(double x) const noexcept
    {
        double v = 0.0;
        for (std::size_t k = c_.size(); k-- > 0;) {
            v = v * x + c_[k];
        }
        return v;
    }

    [[nodiscard]] Polynomial derivative() const
    {
        if (c_.size() <= 1) {
            return {};
        }
        std::vector<double> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) {
            d[k - 1] = static_cast<double>(k) * c_[k];
        }
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q)
    {
        std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
        for (std::size_t k = 0; k < r.size(); ++k) {
            r[k] = p.coeff(k) + q.coeff(k);
        }
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-1.0) * q; }

    friend Polynomial operator*(double s, const Polynomial& p)
    {
        std::vector<double> r = p.c_;
        for (double& v : r) {
            v *= s;
        }
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q)
    {
        if (p.c_.empty() || q.c_.empty()) {
            return {};
        }
        std::vector<double> r(p.c_.size() + q.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            for (std::size_t j = 0; j < q.c_.size(); ++j) {
                r[i + j] += p.c_[i] * q.c_[j];
            }
        }
        return Polynomial(std::move(r));
    }

    /// Roots as eigenvalues of the companion matrix.
    [[nodiscard]] std::vector<std::complex<double>> roots() const
    {
        const int n = degree();
        if (n < 1) {
            return {};
        }
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) {
            comp(i, i - 1) = 1.0;
        }
        for (int i = 0; i < n; ++i) {
            comp(i, n - 1) = -c_[static_cast<std::size_t>(i)] / leading();
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        std::vector<std::complex<double>> out;
        for (int i = 0; i < n; ++i) {
            out.push_back(es.eigenvalues()(i));
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0.0) {
            c_.pop_back();
        }
    }

    std::vector<double> c_;
};

} // namespace cesaro

#endif
