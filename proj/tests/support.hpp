// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_TESTS_SUPPORT_HPP
#define CESARO_TESTS_SUPPORT_HPP

// Helpers shared by the unit tests.

#include <cesaro/error.hpp>

#include <catch_amalgamated.hpp>

#include <string>

/// Runs `f`, which must throw cesaro::error, and returns the error.
template <class F>
cesaro::error capture_error(F&& f)
{
    try {
        f();
    } catch (const cesaro::error& e) {
        return e;
    }
    FAIL("expected cesaro::error");
    throw;
}

class HasCode : public Catch::Matchers::MatcherBase<cesaro::error> {
public:
    explicit HasCode(cesaro::errc code)
        : code_(code)
    {
    }
    bool match(const cesaro::error& e) const override { return e.code() == code_; }
    std::string describe() const override { return std::string("has code ") + cesaro::errc_name(code_); }

private:
    cesaro::errc code_;
};

inline HasCode has_code(cesaro::errc code)
{
    return HasCode(code);
}

#endif
