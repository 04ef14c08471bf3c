// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_PERIODIC_HPP
#define CESARO_PERIODIC_HPP

// The block Jacobi matrix Delta_{J_0}(J), type 1 / type 3 normalization of
// block parameters, the isospectral torus of a periodic generator and the
// distance from a Jacobi matrix to that torus.

#include <cesaro/detail/numeric.hpp>
#include <cesaro/discriminant.hpp>
#include <cesaro/distance.hpp>
#include <cesaro/error.hpp>
#include <cesaro/sequences.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

namespace cesaro {

//------------------------------------------------------------------------------
// Delta_{J_0}(J)

namespace detail {

// Real symmetric band matrix, entries (i, j) with |i - j| <= w.
class band_matrix {
public:
    band_matrix(std::size_t n, std::size_t w)
        : n_(n)
        , w_(w)
        , v_(n * (2 * w + 1), 0.0)
    {
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bandwidth() const noexcept { return w_; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        const auto d = static_cast<long long>(j) - static_cast<long long>(i);
        if (d < -static_cast<long long>(w_) || d > static_cast<long long>(w_)) {
            return 0.0;
        }
        return v_[i * (2 * w_ + 1) + static_cast<std::size_t>(d + static_cast<long long>(w_))];
    }

    double& at(std::size_t i, std::size_t j) noexcept { return v_[i * (2 * w_ + 1) + (j + w_ - i)]; }

private:
    std::size_t n_;
    std::size_t w_;
    std::vector<double> v_;
};

// R J + c I for tridiagonal J (diag d, off e); bandwidth grows by one.
inline band_matrix horner_step(const band_matrix& r, const std::vector<double>& d, const std::vector<double>& e,
                               double c)
{
    const std::size_t n = r.size();
    const std::size_t w = r.bandwidth() + 1;
    band_matrix out(n, w);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t jlo = i >= w ? i - w : 0;
        const std::size_t jhi = std::min(n - 1, i + w);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            double s = r(i, j) * d[j];
            if (j > 0) {
                s += r(i, j - 1) * e[j - 1];
            }
            if (j + 1 < n) {
                s += r(i, j + 1) * e[j];
            }
            if (i == j) {
                s += c;
            }
            out.at(i, j) = s;
        }
    }
    return out;
}

} // namespace detail

/// Tolerance of the type 3 verification of Delta_{J_0}(J).
inline constexpr double delta_structure_tol = 1e-10;

/// Delta(J) evaluated on a (K+3)p-site truncation by Horner's rule on band
/// storage, cut into p x p blocks B_1..B_{K+1} and A_1..A_K. Rows up to
/// (K+1)p are unaffected by the truncation edge since Delta has degree p.
inline BlockJacobiParams delta_of_J(const PeriodicJacobi& j0, const JacobiParams& j, std::size_t k_blocks)
{
    const auto d = discriminant(j0);
    const std::size_t p = d.period();
    if (k_blocks == 0) {
        throw error(errc::invalid_argument, "need K >= 1");
    }
    const std::size_t n = (k_blocks + 3) * p;
    if (!j.has_window(n)) {
        throw error(errc::bandwidth_exceeded, "J too short for the requested number of blocks", n);
    }
    std::vector<double> diag(n);
    std::vector<double> off(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        diag[k] = j.b(k + 1);
        if (k + 1 < n) {
            off[k] = j.a(k + 1);
        }
    }
    detail::band_matrix r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        r.at(i, i) = d.poly.leading();
    }
    for (std::size_t k = p; k-- > 0;) {
        r = detail::horner_step(r, diag, off, d.poly.coeff(k));
    }

    BlockJacobiParams out;
    out.block_size = p;
    const auto l = static_cast<Eigen::Index>(p);
    for (std::size_t k = 0; k <= k_blocks; ++k) {
        Matrix b(l, l);
        Matrix a(l, l);
        for (std::size_t s = 0; s < p; ++s) {
            for (std::size_t t = 0; t < p; ++t) {
                b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = r(k * p + s, k * p + t);
                a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = r(k * p + s, (k + 1) * p + t);
            }
        }
        out.B.push_back(b);
        if (k < k_blocks) {
            if (!detail::is_type3_block(a, delta_structure_tol)) {
                throw error(errc::not_type3, "Delta(J) off-diagonal block is not lower triangular", k + 1);
            }
            out.A.push_back(a);
        }
    }
    out.type = BlockType::type3;
    return out;
}

/// Diagonal entries of A_1, A_2, ... in site order; for Delta_{J_0}(J) these
/// are (a_j ... a_{j+p-1}) / (a_{0,1} ... a_{0,p}).
inline std::vector<double> block_diagonal_products(const BlockJacobiParams& jb)
{
    std::vector<double> out;
    for (const auto& a : jb.A) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out.push_back(a(i, i).real());
        }
    }
    return out;
}

//------------------------------------------------------------------------------
// Normalization of block parameters

struct NormalizedBlocks {
    BlockJacobiParams params;
    /// The realizing chain: params = apply_equivalence(input, chain).
    UnitaryChain chain;
};

namespace detail {

inline bool is_exact_identity(const Matrix& u)
{
    return u == Matrix::Identity(u.rows(), u.cols());
}

// Shared driver: picks u_{j+1} from M = u_j^* A_j so that M u_{j+1} has the
// target structure; keeps u_{j+1} = 1 while the input already has it.
template <class Factor>
NormalizedBlocks normalize_blocks(const BlockJacobiParams& jb, BlockType target, const BlockTolerances& tol,
                                  Factor factor)
{
    const auto v = validate_block(jb, tol);
    const auto l = static_cast<Eigen::Index>(v.block_size);
    UnitaryChain chain;
    chain.u.push_back(Matrix::Identity(l, l));
    const auto structured = [&](const Matrix& a) {
        return target == BlockType::type3 ? is_type3_block(a, tol.structure) : is_type1_block(a, tol.structure);
    };
    for (std::size_t k = 0; k < v.A.size(); ++k) {
        if (smallest_singular_ratio(v.A[k]) <= tol.singular_rel) {
            throw error(errc::singular_block, "A_j is numerically singular", k + 1);
        }
        const Matrix& u = chain.u.back();
        if (is_exact_identity(u) && structured(v.A[k])) {
            chain.u.push_back(Matrix::Identity(l, l));
            continue;
        }
        chain.u.push_back(factor(Matrix(u.adjoint() * v.A[k])));
    }
    while (chain.u.size() < v.B.size()) {
        chain.u.push_back(chain.u.back());
    }
    NormalizedBlocks out{apply_equivalence(v, chain), chain};
    // exact structure: zero fill and real diagonals
    for (auto& a : out.params.A) {
        if (target == BlockType::type3) {
            for (Eigen::Index i = 0; i < l; ++i) {
                a(i, i) = a(i, i).real();
                for (Eigen::Index j = i + 1; j < l; ++j) {
                    a(i, j) = 0.0;
                }
            }
        } else {
            a = 0.5 * (a + a.adjoint()).eval();
        }
    }
    for (auto& b : out.params.B) {
        b = 0.5 * (b + b.adjoint()).eval();
    }
    out.params.type = target;
    return out;
}

} // namespace detail

/// Type 3 representative: lower triangular A~_j with positive diagonal, via
/// the LQ factorization u_j^* A_j = L Q (computed as QR of the adjoint).
inline NormalizedBlocks normalize_type3(const BlockJacobiParams& jb, const BlockTolerances& tol = {})
{
    return detail::normalize_blocks(jb, BlockType::type3, tol, [](const Matrix& m) {
        Eigen::HouseholderQR<Matrix> qr(m.adjoint());
        Matrix q = qr.householderQ();
        const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            const complex d = r(i, i);
            if (std::abs(d) > 0.0) {
                q.col(i) *= d / std::abs(d);
            }
        }
        return q;
    });
}

/// Hadamard: det(A) <= prod diag(A) for positive definite A.
inline bool hadamard_holds(const Matrix& a, double slack = 1e-12)
{
    const double det = a.determinant().real();
    double prod = 1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        prod *= a(i, i).real();
    }
    return det <= prod + slack * std::max(1.0, std::abs(prod));
}

/// Type 1 representative: positive definite A~_j, the polar factor of
/// u_j^* A_j = P W (from the SVD U S V^*: P = U S U^*, u_{j+1} = V U^*).
inline NormalizedBlocks normalize_type1(const BlockJacobiParams& jb, const BlockTolerances& tol = {})
{
    auto out = detail::normalize_blocks(jb, BlockType::type1, tol, [](const Matrix& m) {
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return Matrix(svd.matrixV() * svd.matrixU().adjoint());
    });
    for (std::size_t k = 0; k < out.params.A.size(); ++k) {
        if (!hadamard_holds(out.params.A[k])) {
            throw error(errc::wrong_type, "type 1 block violates the Hadamard inequality", k + 1);
        }
    }
    return out;
}

//------------------------------------------------------------------------------
// Isospectral torus

/// A periodic generator on the torus and its coordinates in [0, 2 pi)^{p-1}.
struct TorusPoint {
    PeriodicJacobi j;
    std::vector<double> theta;
};

namespace detail {

inline double wrap_angle(double t)
{
    t = std::fmod(t, 2.0 * pi);
    return t < 0.0 ? t + 2.0 * pi : t;
}

// Representative of t in (-pi, pi].
inline double centered_angle(double t)
{
    t = wrap_angle(t);
    return t > pi ? t - 2.0 * pi : t;
}

inline double coeff_mismatch(const Discriminant& x, const Discriminant& y)
{
    double m = 0.0;
    const std::size_t n = std::max(x.poly.coeffs().size(), y.poly.coeffs().size());
    for (std::size_t k = 0; k < n; ++k) {
        m = std::max(m, std::abs(x.poly.coeff(k) - y.poly.coeff(k)));
    }
    return m;
}

} // namespace detail

/// Periodic members of the isospectral torus of a generator J_0 with all
/// gaps open. Coordinates are relative to J_0, so theta = 0 is J_0.
///
/// p = 1: the single point. p = 2: closed form; with S = b_1 + b_2,
/// P = a_1 a_2 and D^2 = S^2/4 + a_1^2 + a_2^2 - b_1 b_2 - 2P fixed by Delta,
/// b_{1,2} = S/2 +- D sin(phi), a_1 - a_2 = D cos(phi).
/// p >= 3: Gauss-Newton continuation in (a, b) on the coefficients of Delta
/// plus the Dirichlet data mu_j = c_j - h_j cos(phi_j) in gap j (center c_j,
/// half width h_j), with sheet sign(sin(phi_j)) fixing the sign of
/// (M_11 - M_22)(mu_j) = +-sqrt(Delta(mu_j)^2 - 4).
class IsospectralTorus {
public:
    explicit IsospectralTorus(const PeriodicJacobi& j0)
        : anchor_(validate_periodic(j0))
        , disc_(discriminant(anchor_))
        , set_(bands(disc_))
    {
        init();
    }

    /// Anchored at the canonical point b_1 = b_2, a_1 >= a_2 (p <= 2 only).
    explicit IsospectralTorus(const Discriminant& d)
        : disc_(d)
        , set_(bands(d))
    {
        const std::size_t p = d.period();
        if (p == 1) {
            anchor_ = {{1.0 / d.poly.leading()}, {-d.poly.coeff(0) / d.poly.leading()}};
        } else if (p == 2) {
            const double pp = 1.0 / d.poly.leading();
            const double s = -d.poly.coeff(1) * pp;
            const double q = d.poly.coeff(0) * pp;
            const double dd = std::sqrt(std::max(0.0, s * s / 4.0 - q - 2.0 * pp));
            const double sum = std::sqrt(dd * dd + 4.0 * pp);
            anchor_ = {{0.5 * (sum + dd), 0.5 * (sum - dd)}, {0.5 * s, 0.5 * s}};
        } else {
            throw error(errc::unsupported, "tori with p >= 3 need a generator to continue from");
        }
        init();
    }

    [[nodiscard]] std::size_t period() const noexcept { return disc_.period(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return period() - 1; }
    [[nodiscard]] const Discriminant& disc() const noexcept { return disc_; }
    [[nodiscard]] const FiniteGapSet& set() const noexcept { return set_; }
    [[nodiscard]] const PeriodicJacobi& anchor() const noexcept { return anchor_; }

    [[nodiscard]] TorusPoint point(std::span<const double> theta) const
    {
        return point_from(theta, {anchor_, std::vector<double>(dimension(), 0.0)});
    }

    /// As point(), continuing from a nearby known point (p >= 3).
    [[nodiscard]] TorusPoint point_from(std::span<const double> theta, const TorusPoint& seed) const
    {
        if (theta.size() != dimension()) {
            throw error(errc::invalid_argument, "torus coordinates must have p - 1 entries");
        }
        std::vector<double> th(theta.begin(), theta.end());
        for (double& t : th) {
            t = detail::wrap_angle(t);
        }
        const std::size_t p = period();
        if (p == 1) {
            return {anchor_, {}};
        }
        if (p == 2) {
            return {closed_form(th[0] + phi_ref_[0]), th};
        }
        return {continue_to(seed, th), th};
    }

private:
    void init()
    {
        const std::size_t p = period();
        if (p >= 2 && set_.bands.size() != p) {
            throw error(errc::gap_closed, "torus degenerates: Delta has a closed gap");
        }
        for (std::size_t k = 0; k + 1 < set_.bands.size(); ++k) {
            gaps_.push_back({set_.bands[k].hi, set_.bands[k + 1].lo});
        }
        coeff_scale_ = 0.0;
        for (double c : disc_.poly.coeffs()) {
            coeff_scale_ = std::max(coeff_scale_, std::abs(c));
        }
        if (p == 2) {
            const double pp = anchor_.a[0] * anchor_.a[1];
            const double s = anchor_.b[0] + anchor_.b[1];
            const double q = anchor_.b[0] * anchor_.b[1] - anchor_.a[0] * anchor_.a[0] - anchor_.a[1] * anchor_.a[1];
            d2_ = s * s / 4.0 - q - 2.0 * pp;
            s_ = s;
            p_ = pp;
            if (!(d2_ > 0.0)) {
                throw error(errc::gap_closed, "torus degenerates: Delta has a closed gap");
            }
            phi_ref_ = {std::atan2(0.5 * (anchor_.b[0] - anchor_.b[1]), anchor_.a[0] - anchor_.a[1])};
        } else if (p >= 3) {
            phi_ref_ = dirichlet_angles(anchor_);
        }
    }

    [[nodiscard]] PeriodicJacobi closed_form(double phi) const
    {
        const double d = std::sqrt(d2_);
        const double delta = d * std::sin(phi);
        const double diff = d * std::cos(phi);
        const double sum = std::sqrt(diff * diff + 4.0 * p_);
        return {{0.5 * (sum + diff), 0.5 * (sum - diff)}, {0.5 * s_ + delta, 0.5 * s_ - delta}};
    }

    // Angles phi_j of the Dirichlet data of `j`; roots of M_21 are sorted and
    // matched to the gaps in order.
    [[nodiscard]] std::vector<double> dirichlet_angles(const PeriodicJacobi& j) const
    {
        const auto m = monodromy(j);
        std::vector<double> mu;
        for (const auto& z : m[1][0].roots()) {
            mu.push_back(z.real());
        }
        std::sort(mu.begin(), mu.end());
        std::vector<double> out;
        for (std::size_t g = 0; g < gaps_.size(); ++g) {
            const double c = 0.5 * (gaps_[g].lo + gaps_[g].hi);
            const double h = 0.5 * (gaps_[g].hi - gaps_[g].lo);
            double phi = std::acos(std::clamp((c - mu[g]) / h, -1.0, 1.0));
            if ((m[0][0](mu[g]) - m[1][1](mu[g])) < 0.0) {
                phi = 2.0 * detail::pi - phi;
            }
            out.push_back(phi);
        }
        return out;
    }

    [[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& x, const std::vector<double>& phi) const
    {
        const std::size_t p = period();
        const std::size_t neq = (p + 1) + 2 * gaps_.size();
        PeriodicJacobi j{std::vector<double>(p), std::vector<double>(p)};
        for (std::size_t k = 0; k < p; ++k) {
            j.a[k] = x(static_cast<Eigen::Index>(k));
            j.b[k] = x(static_cast<Eigen::Index>(p + k));
            if (!(j.a[k] > 0.0)) {
                return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(neq), 1e10);
            }
        }
        const auto m = monodromy(j);
        const Polynomial delta = m[0][0] + m[1][1];
        Eigen::VectorXd r(static_cast<Eigen::Index>(neq));
        Eigen::Index i = 0;
        for (std::size_t k = 0; k <= p; ++k) {
            r(i++) = delta.coeff(k) - disc_.poly.coeff(k);
        }
        for (std::size_t g = 0; g < gaps_.size(); ++g) {
            const double c = 0.5 * (gaps_[g].lo + gaps_[g].hi);
            const double h = 0.5 * (gaps_[g].hi - gaps_[g].lo);
            const double mu = c - h * std::cos(phi[g]);
            const double dv = disc_(mu);
            const double root = std::sqrt(std::max(0.0, (dv - 2.0) * (dv + 2.0)));
            const double sheet = std::sin(phi[g]) >= 0.0 ? 1.0 : -1.0;
            r(i++) = m[1][0](mu);
            r(i++) = (m[0][0](mu) - m[1][1](mu)) - sheet * root;
        }
        return r;
    }

    // Gauss-Newton with a central-difference Jacobian; true on convergence.
    bool newton(Eigen::VectorXd& x, const std::vector<double>& phi, double& last) const
    {
        const double tol = 1e-13 * std::max(1.0, coeff_scale_);
        Eigen::VectorXd r = residual(x, phi);
        last = r.lpNorm<Eigen::Infinity>();
        for (int it = 0; it < 40 && last > tol; ++it) {
            Eigen::MatrixXd jac(r.size(), x.size());
            for (Eigen::Index k = 0; k < x.size(); ++k) {
                const double h = 1e-6 * std::max(1.0, std::abs(x(k)));
                Eigen::VectorXd xp = x;
                Eigen::VectorXd xm = x;
                xp(k) += h;
                xm(k) -= h;
                jac.col(k) = (residual(xp, phi) - residual(xm, phi)) / (2.0 * h);
            }
            const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
            // backtracking keeps a > 0 and the residual decreasing
            double lambda = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 30; ++bt) {
                const Eigen::VectorXd xn = x + lambda * step;
                const Eigen::VectorXd rn = residual(xn, phi);
                const double nn = rn.lpNorm<Eigen::Infinity>();
                if (nn < last) {
                    x = xn;
                    r = rn;
                    last = nn;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!accepted) {
                break;
            }
        }
        return last <= 1e-11 * std::max(1.0, coeff_scale_);
    }

    [[nodiscard]] PeriodicJacobi continue_to(const TorusPoint& seed, const std::vector<double>& theta) const
    {
        const std::size_t p = period();
        const std::size_t dim = dimension();
        if (seed.theta.size() != dim || seed.j.period() != p) {
            throw error(errc::invalid_argument, "seed is not a point of this torus");
        }
        std::vector<double> diff(dim);
        double span = 0.0;
        for (std::size_t g = 0; g < dim; ++g) {
            diff[g] = detail::centered_angle(theta[g] - seed.theta[g]);
            span = std::max(span, std::abs(diff[g]));
        }
        Eigen::VectorXd x(static_cast<Eigen::Index>(2 * p));
        for (std::size_t k = 0; k < p; ++k) {
            x(static_cast<Eigen::Index>(k)) = seed.j.a[k];
            x(static_cast<Eigen::Index>(p + k)) = seed.j.b[k];
        }
        // fraction of the path covered so far, and the current step
        double done = 0.0;
        double step = std::min(1.0, 0.2 / std::max(span, 1e-300));
        double last = 0.0;
        int failures = 0;
        if (span == 0.0) {
            step = 1.0;
        }
        while (done < 1.0) {
            const double next = std::min(1.0, done + step);
            std::vector<double> phi(dim);
            for (std::size_t g = 0; g < dim; ++g) {
                phi[g] = seed.theta[g] + phi_ref_[g] + next * diff[g];
            }
            Eigen::VectorXd trial = x;
            if (newton(trial, phi, last)) {
                x = trial;
                done = next;
                step = std::min(2.0 * step, 1.0);
            } else {
                step *= 0.5;
                if (++failures > 40 || step < 1e-8) {
                    std::ostringstream msg;
                    msg << "torus continuation diverged, residual " << last;
                    throw error(errc::continuation_diverged, msg.str());
                }
            }
        }
        PeriodicJacobi out{std::vector<double>(p), std::vector<double>(p)};
        for (std::size_t k = 0; k < p; ++k) {
            out.a[k] = x(static_cast<Eigen::Index>(k));
            out.b[k] = x(static_cast<Eigen::Index>(p + k));
        }
        if (detail::coeff_mismatch(discriminant(out), disc_) > 1e-11 * std::max(1.0, coeff_scale_)) {
            throw error(errc::continuation_diverged, "torus point misses the reference discriminant");
        }
        return out;
    }

    PeriodicJacobi anchor_;
    Discriminant disc_;
    FiniteGapSet set_;
    std::vector<Band> gaps_;
    std::vector<double> phi_ref_;
    double coeff_scale_ = 1.0;
    // p = 2 invariants
    double d2_ = 0.0;
    double s_ = 0.0;
    double p_ = 0.0;
};

inline TorusPoint torus_point(const IsospectralTorus& torus, std::span<const double> theta)
{
    return torus.point(theta);
}

/// Torus points on the product grid theta_g = 2 pi i_g / n, swept so that
/// consecutive points are neighbours (each continuation is one short step).
struct TorusGrid {
    std::size_t per_axis = 0;
    std::vector<TorusPoint> points;
};

inline constexpr std::size_t max_torus_period = 3;

inline TorusGrid torus_grid(const IsospectralTorus& torus, std::size_t per_axis = 64)
{
    const std::size_t dim = torus.dimension();
    if (torus.period() > max_torus_period) {
        throw error(errc::dimension_too_large, "distance to the torus is limited to p <= 3", torus.period());
    }
    TorusGrid grid{per_axis, {}};
    const double h = 2.0 * detail::pi / static_cast<double>(per_axis);
    if (dim == 0) {
        grid.points.push_back(torus.point({}));
        return grid;
    }
    if (dim == 1) {
        for (std::size_t i = 0; i < per_axis; ++i) {
            const double th = h * static_cast<double>(i);
            grid.points.push_back(torus.point(std::span<const double>(&th, 1)));
        }
        return grid;
    }
    // dim == 2, serpentine in the second coordinate
    grid.points.resize(per_axis * per_axis);
    TorusPoint prev = torus.point(std::vector<double>{0.0, 0.0});
    for (std::size_t i = 0; i < per_axis; ++i) {
        for (std::size_t s = 0; s < per_axis; ++s) {
            const std::size_t k = i % 2 == 0 ? s : per_axis - 1 - s;
            const std::vector<double> th{h * static_cast<double>(i), h * static_cast<double>(k)};
            prev = torus.point_from(th, prev);
            grid.points[i * per_axis + k] = prev;
        }
    }
    return grid;
}

namespace detail {

inline double periodic_deviation(const PeriodicJacobi& j)
{
    double dev = 0.0;
    for (std::size_t k = 0; k < j.period(); ++k) {
        dev = std::max(dev, std::abs(j.a[k] - 1.0) + std::abs(j.b[k]));
    }
    return dev;
}

inline double d_m_periodic(const JacobiParams& j, std::size_t m, const PeriodicJacobi& t, std::size_t k_terms)
{
    const std::size_t p = t.period();
    double s = 0.0;
    double w = 1.0;
    const double decay = std::exp(-1.0);
    for (std::size_t k = 0; k < k_terms; ++k) {
        const std::size_t n = m + k;
        const std::size_t r = (n - 1) % p;
        s += w * (std::abs(j.a(n) - t.a[r]) + std::abs(j.b(n) - t.b[r]));
        w *= decay;
    }
    return s;
}

} // namespace detail

/// Pattern search stops once the step falls below this.
inline constexpr double torus_descent_step = 1e-10;

/// inf over the torus of d_m(J, J~): best grid point, then a compass search
/// over the nonzero directions in {-1, 0, 1}^{p-1} with step halving. Diagonal
/// moves matter: d_m has kinks along which pure coordinate descent stalls.
/// The result is an upper bound for the infimum.
inline double d_to_torus(const JacobiParams& j, std::size_t m, const IsospectralTorus& torus, const TorusGrid& grid)
{
    if (m == 0) {
        throw error(errc::out_of_range, "d_m is indexed from m = 1");
    }
    double tdev = 0.0;
    for (const auto& pt : grid.points) {
        tdev = std::max(tdev, detail::periodic_deviation(pt.j));
    }
    // torus points away from the grid can deviate slightly more
    const std::size_t k_terms = d_m_terms(known_deviation(j) + 2.0 * tdev + 1.0);
    j.require_window(m + k_terms - 1, true);

    std::size_t best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.points.size(); ++k) {
        const double v = detail::d_m_periodic(j, m, grid.points[k].j, k_terms);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    const std::size_t dim = torus.dimension();
    if (dim == 0) {
        return best;
    }
    // directions: every nonzero vector in {-1, 0, 1}^dim
    std::vector<std::vector<double>> dirs;
    std::size_t total = 1;
    for (std::size_t g = 0; g < dim; ++g) {
        total *= 3;
    }
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<double> d(dim);
        std::size_t c = code;
        bool nonzero = false;
        for (std::size_t g = 0; g < dim; ++g) {
            d[g] = static_cast<double>(c % 3) - 1.0;
            nonzero = nonzero || d[g] != 0.0;
            c /= 3;
        }
        if (nonzero) {
            dirs.push_back(d);
        }
    }
    TorusPoint cur = grid.points[best_k];
    double h = detail::pi / static_cast<double>(grid.per_axis);
    for (int iter = 0; iter < 100000 && h >= torus_descent_step; ++iter) {
        bool moved = false;
        for (const auto& d : dirs) {
            std::vector<double> th = cur.theta;
            for (std::size_t g = 0; g < dim; ++g) {
                th[g] += h * d[g];
            }
            const TorusPoint cand = torus.point_from(th, cur);
            const double v = detail::d_m_periodic(j, m, cand.j, k_terms);
            if (v < best) {
                best = v;
                cur = cand;
                moved = true;
                break;
            }
        }
        if (!moved) {
            h *= 0.5;
        }
    }
    return best;
}

inline double d_to_torus(const JacobiParams& j, std::size_t m, const IsospectralTorus& torus)
{
    return d_to_torus(j, m, torus, torus_grid(torus));
}

//------------------------------------------------------------------------------
// CSV

/// `theta_1..theta_{p-1},a_1..a_p,b_1..b_p`, one row per point.
inline void write_torus_samples_csv(std::ostream& os, const std::vector<TorusPoint>& pts, std::size_t p)
{
    std::vector<std::string> head;
    for (std::size_t k = 1; k < p; ++k) {
        head.push_back("theta_" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= p; ++k) {
        head.push_back("a_" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= p; ++k) {
        head.push_back("b_" + std::to_string(k));
    }
    for (std::size_t k = 0; k < head.size(); ++k) {
        os << (k ? "," : "") << head[k];
    }
    os << '\n';
    for (const auto& pt : pts) {
        bool first = true;
        const auto put = [&](double v) {
            os << (first ? "" : ",") << detail::format_double(v);
            first = false;
        };
        for (double t : pt.theta) {
            put(t);
        }
        for (double a : pt.j.a) {
            put(a);
        }
        for (double b : pt.j.b) {
            put(b);
        }
        os << '\n';
    }
}

} // namespace cesaro

#endif
