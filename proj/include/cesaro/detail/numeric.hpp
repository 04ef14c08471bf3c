// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_DETAIL_NUMERIC_HPP
#define CESARO_DETAIL_NUMERIC_HPP

#include <cmath>
#include <charconv>
#include <numbers>
#include <string>

namespace cesaro::detail {

inline constexpr double pi = std::numbers::pi;

// Neumaier's variant of Kahan summation.
class compensated_sum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    compensated_sum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Shortest round-trippable text for a double; used by every CSV writer so
// repeated runs are byte-identical.
inline std::string format_double(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace cesaro::detail

#endif
