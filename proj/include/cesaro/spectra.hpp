// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_SPECTRA_HPP
#define CESARO_SPECTRA_HPP

// Finite truncations (tridiagonal, block tridiagonal, CMV), their
// eigenvalues, zero-counting measures and trace functionals.

#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>
#include <cesaro/measures.hpp>
#include <cesaro/sequences.hpp>
#include <cesaro/tridiagonal.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace cesaro {

enum class Domain { line, circle };

/// Equal-weight point masses: sorted reals, or angles in (-pi, pi].
struct EmpiricalMeasure {
    Domain domain = Domain::line;
    std::vector<double> points;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

/// J_{N;F}: diag b_1..b_N, off-diagonal a_1..a_{N-1}.
inline TridiagonalMatrix truncate(const JacobiParams& p, std::size_t n)
{
    if (n == 0) {
        throw error(errc::invalid_argument, "truncation size must be positive");
    }
    p.require_window(n);
    TridiagonalMatrix t;
    t.diag.reserve(n);
    t.off.reserve(n - 1);
    for (std::size_t k = 1; k <= n; ++k) {
        t.diag.push_back(p.b(k));
        if (k < n) {
            t.off.push_back(p.a(k));
        }
    }
    return t;
}

/// Ascending eigenvalues by Sturm bisection (zeros of p_N).
inline std::vector<double> eig_sym_tridiag(const TridiagonalMatrix& t)
{
    return eig_bisection(t);
}

inline EmpiricalMeasure zero_counting(const JacobiParams& p, std::size_t n)
{
    return {Domain::line, eig_sym_tridiag(truncate(p, n))};
}

struct TraceSquare {
    double via_formula;
    double via_eigs;
};

/// (1/N) Tr(J_{N;F}^2), once from the entries and once from the eigenvalues.
inline TraceSquare trace_square(const JacobiParams& p, std::size_t n)
{
    const auto t = truncate(p, n);
    detail::compensated_sum f;
    for (std::size_t k = 0; k < n; ++k) {
        f += t.diag[k] * t.diag[k];
        if (k + 1 < n) {
            f += 2.0 * t.off[k] * t.off[k];
        }
    }
    detail::compensated_sum e;
    for (double x : eig_sym_tridiag(t)) {
        e += x * x;
    }
    const auto nd = static_cast<double>(n);
    return {f.value() / nd, e.value() / nd};
}

//------------------------------------------------------------------------------
// CMV

struct CmvMatrix {
    Matrix m;
    /// Unimodular boundary parameter that replaced alpha_{N-1}.
    complex boundary;
};

/// Boundary convention: alpha_{N-1} is replaced by its phase
/// beta = alpha_{N-1} / |alpha_{N-1}| (beta = 1 when alpha_{N-1} = 0), so the
/// eigenvalues are the zeros of the paraorthogonal z Phi_{N-1} + conj(beta) Phi_{N-1}^*.
inline complex cmv_boundary(const VerblunskyParams& v, std::size_t n)
{
    const complex last = v.alpha(n - 1);
    return std::abs(last) == 0.0 ? complex(1.0, 0.0) : last / std::abs(last);
}

/// N x N truncated CMV matrix C = L M with Theta_j = [[-conj(a_j), rho_j], [rho_j, a_j]]
/// (the sign convention of verblunsky_from_measure);
/// L = Theta_0 + Theta_2 + ..., M = 1 + Theta_1 + Theta_3 + ...
inline CmvMatrix cmv(const VerblunskyParams& v, std::size_t n)
{
    if (n == 0) {
        throw error(errc::invalid_argument, "CMV size must be positive");
    }
    v.require_window(n);
    const complex beta = cmv_boundary(v, n);
    const auto nn = static_cast<Eigen::Index>(n);
    Matrix l = Matrix::Zero(nn, nn);
    Matrix m = Matrix::Zero(nn, nn);
    m(0, 0) = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix& target = j % 2 == 0 ? l : m;
        const auto i = static_cast<Eigen::Index>(j);
        if (j + 1 == n) {
            target(i, i) = -std::conj(beta);
            break;
        }
        const complex a = v.alpha(j);
        const double r = v.rho(j);
        target(i, i) = -std::conj(a);
        target(i, i + 1) = r;
        target(i + 1, i) = r;
        target(i + 1, i + 1) = a;
    }
    return {l * m, beta};
}

/// Angles of the eigenvalues of a unitary matrix, sorted in (-pi, pi],
/// via Hessenberg reduction and shifted QR.
inline EmpiricalMeasure eig_unitary(const CmvMatrix& c, double unitary_tol = 1e-10)
{
    const auto n = c.m.rows();
    if (n == 0 || c.m.cols() != n) {
        throw error(errc::invalid_argument, "square nonempty matrix required");
    }
    if ((c.m.adjoint() * c.m - Matrix::Identity(n, n)).norm() > unitary_tol * std::sqrt(static_cast<double>(n))) {
        throw error(errc::not_unitary, "matrix is not unitary within tolerance");
    }
    Eigen::ComplexEigenSolver<Matrix> es(c.m, false);
    if (es.info() != Eigen::Success) {
        throw error(errc::no_convergence, "complex Schur iteration failed");
    }
    EmpiricalMeasure out{Domain::circle, {}};
    for (Eigen::Index i = 0; i < n; ++i) {
        const complex z = es.eigenvalues()(i);
        if (std::abs(std::abs(z) - 1.0) > 1e-9) {
            throw error(errc::no_convergence, "eigenvalue off the unit circle", static_cast<std::size_t>(i));
        }
        double th = std::arg(z);
        if (th <= -detail::pi) {
            th += 2.0 * detail::pi;
        }
        out.points.push_back(th);
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

/// Spectral measure of the N x N CMV truncation at the first basis vector:
/// the eigenvalue angles with Christoffel weights 1 / sum_{k<N} |phi_k(z)|^2.
/// Its first N-1 Verblunsky coefficients are alpha_0..alpha_{N-2}.
inline DiscreteMeasure cmv_spectral_measure(const VerblunskyParams& v, std::size_t n)
{
    const auto angles = eig_unitary(cmv(v, n));
    DiscreteMeasure out;
    for (double th : angles.points) {
        const complex z = std::polar(1.0, th);
        complex phi(1.0, 0.0);
        complex phis(1.0, 0.0);
        double s = 1.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const complex a = v.alpha(k);
            const double r = v.rho(k);
            const complex next = (z * phi + std::conj(a) * phis) / r;
            const complex nexts = (phis + a * z * phi) / r;
            phi = next;
            phis = nexts;
            s += std::norm(phi);
        }
        out.nodes.push_back(th);
        out.weights.push_back(1.0 / s);
    }
    detail::compensated_sum total;
    for (double w : out.weights) {
        total += w;
    }
    for (double& w : out.weights) {
        w /= total.value();
    }
    return out;
}

//------------------------------------------------------------------------------
// Block truncations

/// Ascending eigenvalues of the K*l x K*l Hermitian block truncation, via
/// Householder tridiagonalization and Sturm bisection.
inline std::vector<double> eig_block(const BlockJacobiParams& jb, std::size_t k_blocks)
{
    if (k_blocks == 0) {
        throw error(errc::invalid_argument, "need K >= 1");
    }
    BisectionOptions opt;
    opt.warn_duplicates = false;
    return eig_bisection(hermitian_to_tridiagonal(to_dense(jb, k_blocks)), opt);
}

/// Block analog of trace_square: (1/(K l)) [2 sum_{n<K} Tr(A_n^* A_n) + sum_{n<=K} Tr(B_n^* B_n)].
inline double block_trace_square(const BlockJacobiParams& jb, std::size_t k_blocks)
{
    detail::compensated_sum s;
    for (std::size_t k = 0; k < k_blocks; ++k) {
        s += jb.B[k].squaredNorm();
        if (k + 1 < k_blocks) {
            s += 2.0 * jb.A[k].squaredNorm();
        }
    }
    return s.value() / static_cast<double>(k_blocks * jb.block_size);
}

//------------------------------------------------------------------------------
// Output

inline void write_empirical_csv(std::ostream& os, const EmpiricalMeasure& m)
{
    os << "index,point\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        os << i + 1 << ',' << detail::format_double(m.points[i]) << '\n';
    }
}

/// Dense text dump for debugging: one row per line, "re+imi" entries.
inline void dump_dense(std::ostream& os, const Matrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const complex z = m(i, j);
            os << (j ? " " : "") << detail::format_double(z.real()) << (z.imag() < 0 ? "" : "+")
               << detail::format_double(z.imag()) << 'i';
        }
        os << '\n';
    }
}

} // namespace cesaro

#endif
