// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_SEQUENCES_HPP
#define CESARO_SEQUENCES_HPP

// Recurrence-coefficient sequences: scalar Jacobi parameters {a_n, b_n}
// (indexed from 1), Verblunsky coefficients {alpha_j} (indexed from 0),
// block Jacobi parameters {A_n, B_n} and the unitary chains that relate
// equivalent block parameter sets.

#include <cesaro/detail/csv.hpp>
#include <cesaro/detail/numeric.hpp>
#include <cesaro/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cesaro {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// An immutable coefficient sequence with a fixed first index. Either a
/// finite array or a pure index -> value generator (unbounded). Copies share
/// storage.
template <class T>
class coefficient_sequence {
public:
    using value_type = T;
    using generator_type = std::function<T(std::size_t)>;

    coefficient_sequence() = default;

    static coefficient_sequence finite(std::vector<T> values, std::size_t first_index)
    {
        coefficient_sequence s;
        s.values_ = std::make_shared<const std::vector<T>>(std::move(values));
        s.first_ = first_index;
        return s;
    }

    static coefficient_sequence generated(generator_type gen, std::size_t first_index)
    {
        coefficient_sequence s;
        s.gen_ = std::move(gen);
        s.first_ = first_index;
        return s;
    }

    [[nodiscard]] std::size_t first_index() const noexcept { return first_; }
    [[nodiscard]] bool is_generated() const noexcept { return static_cast<bool>(gen_); }

    /// Number of stored terms; nullopt for generator-backed sequences.
    [[nodiscard]] std::optional<std::size_t> count() const noexcept
    {
        if (gen_) {
            return std::nullopt;
        }
        return values_ ? values_->size() : 0;
    }

    [[nodiscard]] bool has(std::size_t n) const noexcept
    {
        if (n < first_) {
            return false;
        }
        if (gen_) {
            return true;
        }
        return values_ && n - first_ < values_->size();
    }

    /// Term at index n.
    T operator()(std::size_t n) const
    {
        if (!has(n)) {
            throw error(errc::out_of_range, "sequence index not available", n);
        }
        if (gen_) {
            return gen_(n);
        }
        return (*values_)[n - first_];
    }

    /// The first `n` terms.
    [[nodiscard]] std::vector<T> take(std::size_t n) const
    {
        std::vector<T> out;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back((*this)(first_ + k));
        }
        return out;
    }

private:
    std::shared_ptr<const std::vector<T>> values_;
    generator_type gen_;
    std::size_t first_ = 0;
};

//------------------------------------------------------------------------------
// Scalar Jacobi parameters

/// Jacobi parameters a_n > 0 (off-diagonal) and b_n (diagonal), n >= 1.
///
/// A finite N-site parameter set may carry N or N-1 off-diagonal terms; the
/// N-1 form is exactly the data of an N x N truncation.
struct JacobiParams {
    coefficient_sequence<double> a;
    coefficient_sequence<double> b;
    /// Declared bound on sup_n (|a_n - 1| + |b_n|) for generator-backed input.
    std::optional<double> declared_bound;
    /// sup-deviation A recorded by validate_jacobi.
    std::optional<double> recorded_deviation;

    static JacobiParams from_vectors(std::vector<double> a, std::vector<double> b)
    {
        JacobiParams p;
        p.a = coefficient_sequence<double>::finite(std::move(a), 1);
        p.b = coefficient_sequence<double>::finite(std::move(b), 1);
        return p;
    }

    static JacobiParams from_generators(std::function<double(std::size_t)> a,
                                        std::function<double(std::size_t)> b,
                                        std::optional<double> bound = std::nullopt)
    {
        JacobiParams p;
        p.a = coefficient_sequence<double>::generated(std::move(a), 1);
        p.b = coefficient_sequence<double>::generated(std::move(b), 1);
        p.declared_bound = bound;
        return p;
    }

    /// Number of sites with a diagonal entry; nullopt when unbounded.
    [[nodiscard]] std::optional<std::size_t> sites() const { return b.count(); }

    [[nodiscard]] bool is_unbounded() const { return a.is_generated() && b.is_generated(); }

    /// True when b_1..b_N and a_1..a_{N-1} (plus a_N if `need_last_a`) exist.
    [[nodiscard]] bool has_window(std::size_t n, bool need_last_a = false) const
    {
        if (n == 0) {
            return false;
        }
        return b.has(n) && (n == 1 || a.has(n - 1)) && (!need_last_a || a.has(n));
    }

    void require_window(std::size_t n, bool need_last_a = false) const
    {
        if (!has_window(n, need_last_a)) {
            throw error(errc::out_of_range, "Jacobi parameters shorter than requested window", n);
        }
    }
};

/// |a_n - 1| + |b_n|, omitting the a-term when a_n does not exist.
inline double site_deviation(const JacobiParams& p, std::size_t n)
{
    double d = std::abs(p.b(n));
    if (p.a.has(n)) {
        d += std::abs(p.a(n) - 1.0);
    }
    return d;
}

/// max_{n <= N} (|a_n - 1| + |b_n|).
inline double sup_deviation(const JacobiParams& p, std::size_t n)
{
    p.require_window(n);
    double best = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        best = std::max(best, site_deviation(p, k));
    }
    return best;
}

/// Checks a_n > 0 everywhere (over `generator_window` sites for generators)
/// and, if `bound` is given, that the sup-deviation does not exceed it.
/// Returns a copy with recorded_deviation set.
inline JacobiParams validate_jacobi(const JacobiParams& p, std::optional<double> bound = std::nullopt,
                                    std::size_t generator_window = 4096)
{
    std::size_t n_sites = 0;
    std::size_t n_a = 0;
    if (p.is_unbounded()) {
        n_sites = generator_window;
        n_a = generator_window;
    } else {
        if (!p.a.count() || !p.b.count()) {
            throw error(errc::invalid_argument, "mixed finite and generator-backed sequences");
        }
        n_sites = *p.b.count();
        n_a = *p.a.count();
        if (n_sites == 0) {
            throw error(errc::empty_sequence, "no diagonal entries");
        }
        if (n_a + 1 < n_sites) {
            throw error(errc::invalid_argument, "need at least N-1 off-diagonal entries for N sites");
        }
    }
    for (std::size_t n = 1; n <= n_a; ++n) {
        if (!(p.a(n) > 0.0)) {
            throw error(errc::non_positive_a, "a_n must be positive", n);
        }
    }
    JacobiParams out = p;
    out.recorded_deviation = sup_deviation(p, n_sites);
    const auto limit = bound ? bound : p.declared_bound;
    if (limit && *out.recorded_deviation > *limit) {
        throw error(errc::unbounded_deviation, "sup-deviation exceeds declared bound");
    }
    return out;
}

/// <phi_n, J phi_n> for the normalized indicator of the first n sites:
/// (1/n) (sum_{j<=n} b_j + 2 sum_{j<n} a_j).
inline double rayleigh_cesaro(const JacobiParams& p, std::size_t n)
{
    if (n == 0) {
        throw error(errc::invalid_argument, "window must be positive");
    }
    p.require_window(n);
    detail::compensated_sum sb;
    detail::compensated_sum sa;
    for (std::size_t j = 1; j <= n; ++j) {
        sb += p.b(j);
        if (j < n) {
            sa += p.a(j);
        }
    }
    return (sb.value() + 2.0 * sa.value()) / static_cast<double>(n);
}

//------------------------------------------------------------------------------
// Verblunsky coefficients

/// Verblunsky coefficients alpha_j, j >= 0, with |alpha_j| < 1.
struct VerblunskyParams {
    coefficient_sequence<complex> alpha;

    static VerblunskyParams from_vector(std::vector<complex> alpha)
    {
        return {coefficient_sequence<complex>::finite(std::move(alpha), 0)};
    }

    static VerblunskyParams from_generator(std::function<complex(std::size_t)> alpha)
    {
        return {coefficient_sequence<complex>::generated(std::move(alpha), 0)};
    }

    /// rho_j = (1 - |alpha_j|^2)^{1/2}, evaluated as sqrt((1-|a|)(1+|a|)).
    [[nodiscard]] double rho(std::size_t j) const
    {
        const double m = std::abs(alpha(j));
        return std::sqrt((1.0 - m) * (1.0 + m));
    }

    [[nodiscard]] std::optional<std::size_t> count() const { return alpha.count(); }

    void require_window(std::size_t n) const
    {
        if (n > 0 && !alpha.has(n - 1)) {
            throw error(errc::out_of_range, "Verblunsky sequence shorter than requested window", n);
        }
    }
};

inline VerblunskyParams validate_verblunsky(const VerblunskyParams& v, std::size_t generator_window = 4096)
{
    const std::size_t n = v.count().value_or(generator_window);
    if (n == 0) {
        throw error(errc::empty_sequence, "no Verblunsky coefficients");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!(std::abs(v.alpha(j)) < 1.0)) {
            throw error(errc::not_unit_disk, "|alpha_j| must be < 1", j);
        }
    }
    return v;
}

//------------------------------------------------------------------------------
// Block Jacobi parameters

enum class BlockType { general, type1, type3 };

inline const char* block_type_name(BlockType t)
{
    switch (t) {
    case BlockType::general: return "general";
    case BlockType::type1: return "type1";
    case BlockType::type3: return "type3";
    }
    return "?";
}

/// l x l block Jacobi parameters. B holds B_1..B_K, A holds A_1..A_{K'}
/// with K' >= K - 1.
struct BlockJacobiParams {
    std::size_t block_size = 1;
    std::vector<Matrix> A;
    std::vector<Matrix> B;
    BlockType type = BlockType::general;
};

struct BlockTolerances {
    /// A_j is nonsingular if sigma_min > singular_rel * sigma_max.
    double singular_rel = 1e-12;
    double hermitian = 1e-12;
    /// Zero fill above the diagonal for type 3; relative to ||A_j||.
    double structure = 1e-12;
};

namespace detail {

inline double smallest_singular_ratio(const Matrix& m)
{
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) {
        return 0.0;
    }
    return s(s.size() - 1) / s(0);
}

inline bool is_type3_block(const Matrix& a, double tol)
{
    const double scale = std::max(1.0, a.norm());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const complex d = a(i, i);
        if (!(d.real() > 0.0) || std::abs(d.imag()) > tol * scale) {
            return false;
        }
        for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
            if (std::abs(a(i, j)) > tol * scale) {
                return false;
            }
        }
    }
    return true;
}

inline bool is_type1_block(const Matrix& a, double tol)
{
    const double scale = std::max(1.0, a.norm());
    if ((a - a.adjoint()).norm() > tol * scale) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    return es.eigenvalues().minCoeff() > 0.0;
}

} // namespace detail

/// Checks shapes, nonsingular A_j, Hermitian B_j and the structure implied by
/// the type tag. Returns the input unchanged when valid.
inline BlockJacobiParams validate_block(const BlockJacobiParams& jb, const BlockTolerances& tol = {})
{
    const auto l = static_cast<Eigen::Index>(jb.block_size);
    if (jb.block_size == 0 || jb.B.empty()) {
        throw error(errc::empty_sequence, "block Jacobi parameters need l >= 1 and at least one B");
    }
    if (jb.A.size() + 1 < jb.B.size()) {
        throw error(errc::invalid_argument, "need at least K-1 off-diagonal blocks for K diagonal blocks");
    }
    for (std::size_t k = 0; k < jb.B.size(); ++k) {
        const auto& b = jb.B[k];
        if (b.rows() != l || b.cols() != l) {
            throw error(errc::invalid_argument, "B block has wrong shape", k + 1);
        }
        if ((b - b.adjoint()).norm() > tol.hermitian * std::max(1.0, b.norm())) {
            throw error(errc::not_hermitian, "B block is not Hermitian", k + 1);
        }
    }
    for (std::size_t k = 0; k < jb.A.size(); ++k) {
        const auto& a = jb.A[k];
        if (a.rows() != l || a.cols() != l) {
            throw error(errc::invalid_argument, "A block has wrong shape", k + 1);
        }
        if (!(detail::smallest_singular_ratio(a) > tol.singular_rel)) {
            throw error(errc::singular_block, "A block is singular", k + 1);
        }
        if (jb.type == BlockType::type1 && !detail::is_type1_block(a, tol.structure)) {
            throw error(errc::wrong_type, "A block is not positive definite", k + 1);
        }
        if (jb.type == BlockType::type3 && !detail::is_type3_block(a, tol.structure)) {
            throw error(errc::wrong_type, "A block is not lower triangular with positive diagonal", k + 1);
        }
    }
    return jb;
}

/// Dense K*l x K*l truncation built from B_1..B_K and A_1..A_{K-1}.
inline Matrix to_dense(const BlockJacobiParams& jb, std::size_t k_blocks)
{
    if (k_blocks == 0 || k_blocks > jb.B.size() || k_blocks > jb.A.size() + 1) {
        throw error(errc::out_of_range, "block window not available", k_blocks);
    }
    const auto l = static_cast<Eigen::Index>(jb.block_size);
    const auto n = static_cast<Eigen::Index>(k_blocks) * l;
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < k_blocks; ++k) {
        const auto off = static_cast<Eigen::Index>(k) * l;
        m.block(off, off, l, l) = jb.B[k];
        if (k + 1 < k_blocks) {
            m.block(off, off + l, l, l) = jb.A[k];
            m.block(off + l, off, l, l) = jb.A[k].adjoint();
        }
    }
    return m;
}

/// Inverse of to_dense: reads the diagonal and super-diagonal blocks.
inline BlockJacobiParams from_dense(const Matrix& m, std::size_t block_size, BlockType type)
{
    const auto l = static_cast<Eigen::Index>(block_size);
    if (block_size == 0 || m.rows() != m.cols() || m.rows() % l != 0) {
        throw error(errc::invalid_argument, "dense matrix is not a whole number of blocks");
    }
    const auto k_blocks = static_cast<std::size_t>(m.rows() / l);
    BlockJacobiParams jb;
    jb.block_size = block_size;
    jb.type = type;
    for (std::size_t k = 0; k < k_blocks; ++k) {
        const auto off = static_cast<Eigen::Index>(k) * l;
        jb.B.emplace_back(m.block(off, off, l, l));
        if (k + 1 < k_blocks) {
            jb.A.emplace_back(m.block(off, off + l, l, l));
        }
    }
    return jb;
}

/// u_1 = identity, u_2, u_3, ... realizing B~_j = u_j^* B_j u_j and
/// A~_j = u_j^* A_j u_{j+1}. Stored 0-based: u[0] is u_1.
struct UnitaryChain {
    std::vector<Matrix> u;
};

inline UnitaryChain validate_chain(const UnitaryChain& c, double tol = 1e-12)
{
    if (c.u.empty()) {
        throw error(errc::empty_sequence, "empty unitary chain");
    }
    const auto l = c.u.front().rows();
    if (c.u.front() != Matrix::Identity(l, l)) {
        throw error(errc::not_unitary, "u_1 must be exactly the identity", 1);
    }
    for (std::size_t j = 0; j < c.u.size(); ++j) {
        const auto& u = c.u[j];
        if (u.rows() != l || u.cols() != l || (u.adjoint() * u - Matrix::Identity(l, l)).norm() > tol) {
            throw error(errc::not_unitary, "chain element is not unitary", j + 1);
        }
    }
    return c;
}

/// Equivalent parameters per u. The chain must cover u_1..u_{max(K, K'+1)}.
inline BlockJacobiParams apply_equivalence(const BlockJacobiParams& jb, const UnitaryChain& c)
{
    if (c.u.size() < std::max(jb.B.size(), jb.A.size() + 1)) {
        throw error(errc::out_of_range, "unitary chain too short", c.u.size());
    }
    BlockJacobiParams out;
    out.block_size = jb.block_size;
    out.type = BlockType::general;
    for (std::size_t j = 0; j < jb.B.size(); ++j) {
        out.B.emplace_back(c.u[j].adjoint() * jb.B[j] * c.u[j]);
    }
    for (std::size_t j = 0; j < jb.A.size(); ++j) {
        out.A.emplace_back(c.u[j].adjoint() * jb.A[j] * c.u[j + 1]);
    }
    return out;
}

/// Undoes apply_equivalence: B_j = u_j B~_j u_j^*, A_j = u_j A~_j u_{j+1}^*.
inline BlockJacobiParams undo_equivalence(const BlockJacobiParams& jb, const UnitaryChain& c)
{
    if (c.u.size() < std::max(jb.B.size(), jb.A.size() + 1)) {
        throw error(errc::out_of_range, "unitary chain too short", c.u.size());
    }
    BlockJacobiParams out;
    out.block_size = jb.block_size;
    out.type = BlockType::general;
    for (std::size_t j = 0; j < jb.B.size(); ++j) {
        out.B.emplace_back(c.u[j] * jb.B[j] * c.u[j].adjoint());
    }
    for (std::size_t j = 0; j < jb.A.size(); ++j) {
        out.A.emplace_back(c.u[j] * jb.A[j] * c.u[j + 1].adjoint());
    }
    return out;
}

//------------------------------------------------------------------------------
// CSV

/// `n,a,b` rows for n = 1..N. A missing a_N is written as an empty field.
inline void write_jacobi_csv(std::ostream& os, const JacobiParams& p, std::size_t n)
{
    p.require_window(n);
    os << "n,a,b\n";
    for (std::size_t k = 1; k <= n; ++k) {
        os << k << ',' << (p.a.has(k) ? detail::format_double(p.a(k)) : std::string()) << ','
           << detail::format_double(p.b(k)) << '\n';
    }
}

inline JacobiParams read_jacobi_csv(std::istream& in)
{
    const auto rows = detail::read_csv(in, "n,a,b");
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (detail::parse_int(rows[r][0], r + 2) != static_cast<long long>(r + 1)) {
            throw error(errc::config_parse, "rows must be numbered 1..N", r + 2);
        }
        if (!rows[r][1].empty()) {
            if (a.size() != r) {
                throw error(errc::config_parse, "only the last a may be omitted", r + 2);
            }
            a.push_back(detail::parse_double(rows[r][1], r + 2));
        }
        b.push_back(detail::parse_double(rows[r][2], r + 2));
    }
    return JacobiParams::from_vectors(std::move(a), std::move(b));
}

/// `j,re_alpha,im_alpha` rows for j = 0..N-1.
inline void write_verblunsky_csv(std::ostream& os, const VerblunskyParams& v, std::size_t n)
{
    v.require_window(n);
    os << "j,re_alpha,im_alpha\n";
    for (std::size_t j = 0; j < n; ++j) {
        const complex z = v.alpha(j);
        os << j << ',' << detail::format_double(z.real()) << ',' << detail::format_double(z.imag()) << '\n';
    }
}

inline VerblunskyParams read_verblunsky_csv(std::istream& in)
{
    const auto rows = detail::read_csv(in, "j,re_alpha,im_alpha");
    std::vector<complex> alpha;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (detail::parse_int(rows[r][0], r + 2) != static_cast<long long>(r)) {
            throw error(errc::config_parse, "rows must be numbered 0..N-1", r + 2);
        }
        alpha.emplace_back(detail::parse_double(rows[r][1], r + 2), detail::parse_double(rows[r][2], r + 2));
    }
    return VerblunskyParams::from_vector(std::move(alpha));
}

/// `k,kind,i,j,re,im`: every entry of every block, row-major, 1-based.
inline void write_block_csv(std::ostream& os, const BlockJacobiParams& jb)
{
    os << "k,kind,i,j,re,im\n";
    const auto l = static_cast<Eigen::Index>(jb.block_size);
    auto emit = [&](const std::vector<Matrix>& blocks, char kind) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            for (Eigen::Index i = 0; i < l; ++i) {
                for (Eigen::Index j = 0; j < l; ++j) {
                    os << k + 1 << ',' << kind << ',' << i + 1 << ',' << j + 1 << ','
                       << detail::format_double(blocks[k](i, j).real()) << ','
                       << detail::format_double(blocks[k](i, j).imag()) << '\n';
                }
            }
        }
    };
    emit(jb.A, 'A');
    emit(jb.B, 'B');
}

inline BlockJacobiParams read_block_csv(std::istream& in, BlockType type = BlockType::general)
{
    const auto rows = detail::read_csv(in, "k,kind,i,j,re,im");
    long long l = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        l = std::max({l, detail::parse_int(rows[r][2], r + 2), detail::parse_int(rows[r][3], r + 2)});
    }
    if (l <= 0) {
        throw error(errc::config_parse, "no block entries");
    }
    BlockJacobiParams jb;
    jb.block_size = static_cast<std::size_t>(l);
    jb.type = type;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto line = r + 2;
        const long long k = detail::parse_int(rows[r][0], line);
        const long long i = detail::parse_int(rows[r][2], line);
        const long long j = detail::parse_int(rows[r][3], line);
        if (k <= 0 || i <= 0 || j <= 0) {
            throw error(errc::config_parse, "indices are 1-based", line);
        }
        if (rows[r][1] != "A" && rows[r][1] != "B") {
            throw error(errc::config_parse, "kind must be A or B", line);
        }
        auto& blocks = rows[r][1] == "A" ? jb.A : jb.B;
        while (blocks.size() < static_cast<std::size_t>(k)) {
            blocks.push_back(Matrix::Zero(l, l));
        }
        blocks[static_cast<std::size_t>(k - 1)](i - 1, j - 1) =
            complex(detail::parse_double(rows[r][4], line), detail::parse_double(rows[r][5], line));
    }
    return jb;
}

} // namespace cesaro

#endif
