// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_DETAIL_CSV_HPP
#define CESARO_DETAIL_CSV_HPP

#include <cesaro/error.hpp>

#include <cstdlib>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace cesaro::detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string> split_fields(std::string_view line, char sep = ',')
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline double parse_double(const std::string& s, std::size_t line_no)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw error(errc::config_parse, "not a number: '" + s + "'", line_no);
    }
    return v;
}

inline long long parse_int(const std::string& s, std::size_t line_no)
{
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw error(errc::config_parse, "not an integer: '" + s + "'", line_no);
    }
    return v;
}

// Reads all non-empty rows, checking the header matches `expected` exactly.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in, std::string_view expected)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            break;
        }
    }
    if (trim(line) != expected) {
        throw error(errc::config_parse, "expected header '" + std::string(expected) + "'", line_no);
    }
    const auto width = split_fields(expected).size();
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != width) {
            throw error(errc::config_parse, "wrong field count", line_no);
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

} // namespace cesaro::detail

#endif
