// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_GENERATORS_HPP
#define CESARO_GENERATORS_HPP

// Coefficient families used by the scenarios and tests, and the seeded
// random inputs.

#include <cesaro/detail/numeric.hpp>
#include <cesaro/discriminant.hpp>
#include <cesaro/error.hpp>
#include <cesaro/sequences.hpp>

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <vector>

namespace cesaro {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9e3779b97f4a7c15, then
/// two xor-shift-multiply rounds. Portable and fully specified by the seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept
        : state_(seed)
    {
    }

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// True for n = 2^k with k >= min_exponent.
inline bool is_power_of_two_index(std::size_t n, unsigned min_exponent)
{
    return n != 0 && (n & (n - 1)) == 0 && n >= (std::size_t{1} << min_exponent);
}

//------------------------------------------------------------------------------
// Jacobi

inline JacobiParams free_jacobi()
{
    auto p = JacobiParams::from_generators([](std::size_t) { return 1.0; }, [](std::size_t) { return 0.0; }, 0.0);
    p.recorded_deviation = 0.0;
    return p;
}

/// a_n = value at n = 2^k (k >= min_exponent), else 1; b = 0.
inline JacobiParams sparse_bump_jacobi(double value = 0.5, unsigned min_exponent = 1)
{
    if (!(value > 0.0)) {
        throw error(errc::non_positive_a, "bump value must be positive");
    }
    const double dev = std::abs(value - 1.0);
    auto p = JacobiParams::from_generators(
        [=](std::size_t n) { return is_power_of_two_index(n, min_exponent) ? value : 1.0; },
        [](std::size_t) { return 0.0; }, dev);
    p.recorded_deviation = dev;
    return p;
}

/// a = 1, b_n = scale / n.
inline JacobiParams harmonic_b_jacobi(double scale = 1.0)
{
    auto p = JacobiParams::from_generators([](std::size_t) { return 1.0; },
                                           [=](std::size_t n) { return scale / static_cast<double>(n); },
                                           std::abs(scale));
    p.recorded_deviation = std::abs(scale);
    return p;
}

/// a alternating first, second, first, ...; b = 0.
inline JacobiParams alternating_a_jacobi(double first, double second)
{
    const double dev = std::max(std::abs(first - 1.0), std::abs(second - 1.0));
    auto p = JacobiParams::from_generators([=](std::size_t n) { return n % 2 == 1 ? first : second; },
                                           [](std::size_t) { return 0.0; }, dev);
    p.recorded_deviation = dev;
    return p;
}

/// a_n = 1 + c / n, b_n = d / sqrt(n): a_n -> 1, b_n -> 0 slowly.
inline JacobiParams slow_decay_jacobi(double c, double d)
{
    const double dev = std::abs(c) + std::abs(d);
    auto p = JacobiParams::from_generators([=](std::size_t n) { return 1.0 + c / static_cast<double>(n); },
                                           [=](std::size_t n) { return d / std::sqrt(static_cast<double>(n)); },
                                           dev);
    p.recorded_deviation = dev;
    return p;
}

/// J_0 repeated, plus b_n += scale / n.
inline JacobiParams periodic_harmonic_jacobi(const PeriodicJacobi& j0, double scale)
{
    const auto p0 = validate_periodic(j0);
    double dev = 0.0;
    for (std::size_t k = 0; k < p0.period(); ++k) {
        dev = std::max(dev, std::abs(p0.a[k] - 1.0) + std::abs(p0.b[k]));
    }
    dev += std::abs(scale);
    auto p = JacobiParams::from_generators(
        [p0](std::size_t n) { return p0.a[(n - 1) % p0.period()]; },
        [p0, scale](std::size_t n) { return p0.b[(n - 1) % p0.period()] + scale / static_cast<double>(n); }, dev);
    p.recorded_deviation = dev;
    return p;
}

/// J_0 repeated, plus b_n += value at n = 2^k (k >= min_exponent).
inline JacobiParams periodic_bump_jacobi(const PeriodicJacobi& j0, double value, unsigned min_exponent = 1)
{
    const auto p0 = validate_periodic(j0);
    double dev = 0.0;
    for (std::size_t k = 0; k < p0.period(); ++k) {
        dev = std::max(dev, std::abs(p0.a[k] - 1.0) + std::abs(p0.b[k]));
    }
    dev += std::abs(value);
    auto p = JacobiParams::from_generators([p0](std::size_t n) { return p0.a[(n - 1) % p0.period()]; },
                                           [p0, value, min_exponent](std::size_t n) {
                                               return p0.b[(n - 1) % p0.period()] +
                                                      (is_power_of_two_index(n, min_exponent) ? value : 0.0);
                                           },
                                           dev);
    p.recorded_deviation = dev;
    return p;
}

/// n sites with a_n uniform in [a_lo, a_hi] and b_n uniform in [-b_max, b_max];
/// draws alternate a_1, b_1, a_2, b_2, ...
inline JacobiParams random_jacobi(std::uint64_t seed, std::size_t n, double a_lo = 0.5, double a_hi = 1.5,
                                  double b_max = 1.0)
{
    SplitMix64 rng(seed);
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t k = 0; k < n; ++k) {
        a.push_back(rng.uniform(a_lo, a_hi));
        b.push_back(rng.uniform(-b_max, b_max));
    }
    return validate_jacobi(JacobiParams::from_vectors(std::move(a), std::move(b)));
}

//------------------------------------------------------------------------------
// Verblunsky

inline VerblunskyParams constant_verblunsky(complex alpha)
{
    return VerblunskyParams::from_generator([=](std::size_t) { return alpha; });
}

/// alpha_j = value at j = 2^k (k >= min_exponent), else 0.
inline VerblunskyParams sparse_bump_verblunsky(complex value = 0.5, unsigned min_exponent = 0)
{
    return VerblunskyParams::from_generator(
        [=](std::size_t j) { return is_power_of_two_index(j, min_exponent) ? value : complex(0.0, 0.0); });
}

/// alpha_j = base + scale / (j + 2).
inline VerblunskyParams harmonic_verblunsky(complex base, double scale)
{
    return VerblunskyParams::from_generator(
        [=](std::size_t j) { return base + scale / (static_cast<double>(j) + 2.0); });
}

/// alpha_j = a (-1)^j.
inline VerblunskyParams alternating_verblunsky(double a)
{
    return VerblunskyParams::from_generator([=](std::size_t j) { return complex(j % 2 == 0 ? a : -a, 0.0); });
}

//------------------------------------------------------------------------------
// Block

/// K blocks with A = 1, B_n = diag(scale/n, 0, ..., 0).
inline BlockJacobiParams harmonic_block(std::size_t l, std::size_t k_blocks, double scale = 1.0)
{
    const auto ll = static_cast<Eigen::Index>(l);
    BlockJacobiParams jb;
    jb.block_size = l;
    jb.type = BlockType::type3;
    for (std::size_t n = 1; n <= k_blocks; ++n) {
        Matrix b = Matrix::Zero(ll, ll);
        b(0, 0) = scale / static_cast<double>(n);
        jb.B.push_back(b);
        jb.A.push_back(Matrix::Identity(ll, ll));
    }
    return jb;
}

/// Haar-like unitary: QR of a matrix with uniform entries in the unit square,
/// phases of R's diagonal moved into Q.
inline Matrix random_unitary(SplitMix64& rng, std::size_t l)
{
    const auto ll = static_cast<Eigen::Index>(l);
    Matrix m(ll, ll);
    for (Eigen::Index i = 0; i < ll; ++i) {
        for (Eigen::Index j = 0; j < ll; ++j) {
            m(i, j) = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    for (Eigen::Index i = 0; i < ll; ++i) {
        const complex d = qr.matrixQR()(i, i);
        if (std::abs(d) > 0.0) {
            q.col(i) *= d / std::abs(d);
        }
    }
    return q;
}

/// u_1 = 1 followed by `count - 1` random unitaries.
inline UnitaryChain random_chain(std::uint64_t seed, std::size_t l, std::size_t count)
{
    SplitMix64 rng(seed);
    UnitaryChain c;
    const auto ll = static_cast<Eigen::Index>(l);
    c.u.push_back(Matrix::Identity(ll, ll));
    for (std::size_t k = 1; k < count; ++k) {
        c.u.push_back(random_unitary(rng, l));
    }
    return c;
}

/// General-tagged block parameters: A_n = 1 + perturbation (entries uniform
/// in the unit square, scaled by `spread`), Hermitian B_n of the same size.
/// `positive` makes every A_n positive definite instead (type 1 input).
inline BlockJacobiParams random_block(std::uint64_t seed, std::size_t l, std::size_t k_blocks, double spread = 0.3,
                                      bool positive = false)
{
    SplitMix64 rng(seed);
    const auto ll = static_cast<Eigen::Index>(l);
    const auto entry = [&] { return spread * complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)); };
    BlockJacobiParams jb;
    jb.block_size = l;
    jb.type = positive ? BlockType::type1 : BlockType::general;
    for (std::size_t n = 0; n < k_blocks; ++n) {
        Matrix b(ll, ll);
        for (Eigen::Index i = 0; i < ll; ++i) {
            for (Eigen::Index j = 0; j < ll; ++j) {
                b(i, j) = entry();
            }
        }
        jb.B.push_back(0.5 * (b + b.adjoint()));
        if (n + 1 < k_blocks) {
            Matrix a(ll, ll);
            for (Eigen::Index i = 0; i < ll; ++i) {
                for (Eigen::Index j = 0; j < ll; ++j) {
                    a(i, j) = entry();
                }
            }
            if (positive) {
                a = Matrix::Identity(ll, ll) + a * a.adjoint();
            } else {
                a += Matrix::Identity(ll, ll);
            }
            jb.A.push_back(a);
        }
    }
    return validate_block(jb);
}

} // namespace cesaro

#endif
