// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_ERROR_HPP
#define CESARO_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cesaro {

enum class errc {
    empty_sequence,
    out_of_range,
    non_positive_a,
    unbounded_deviation,
    not_unit_disk,
    singular_block,
    not_hermitian,
    wrong_type,
    not_unitary,
    density_negative,
    breakdown,
    moment_ill_conditioned,
    no_convergence,
    band_mismatch,
    unsupported,
    domain_mismatch,
    complex_roots,
    bandwidth_exceeded,
    not_type3,
    continuation_diverged,
    gap_closed,
    dimension_too_large,
    invalid_argument,
    config_parse,
};

inline const char* errc_name(errc code) noexcept
{
    switch (code) {
    case errc::empty_sequence: return "EmptySequence";
    case errc::out_of_range: return "OutOfRange";
    case errc::non_positive_a: return "NonPositiveA";
    case errc::unbounded_deviation: return "UnboundedDeviation";
    case errc::not_unit_disk: return "NotUnitDisk";
    case errc::singular_block: return "SingularBlock";
    case errc::not_hermitian: return "NotHermitian";
    case errc::wrong_type: return "WrongType";
    case errc::not_unitary: return "NotUnitary";
    case errc::density_negative: return "DensityNegative";
    case errc::breakdown: return "BreakdownAtStep";
    case errc::moment_ill_conditioned: return "MomentIllConditioned";
    case errc::no_convergence: return "NoConvergence";
    case errc::band_mismatch: return "BandMismatch";
    case errc::unsupported: return "Unsupported";
    case errc::domain_mismatch: return "DomainMismatch";
    case errc::complex_roots: return "ComplexRoots";
    case errc::bandwidth_exceeded: return "BandwidthExceeded";
    case errc::not_type3: return "NotType3";
    case errc::continuation_diverged: return "ContinuationDiverged";
    case errc::gap_closed: return "GapClosed";
    case errc::dimension_too_large: return "DimensionTooLarge";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::config_parse: return "ConfigParse";
    }
    return "Unknown";
}

/// Every failure raised by the library. `index()` carries the offending
/// sequence index, quadrature node, step or config line when one exists.
class error : public std::runtime_error {
public:
    error(errc code, std::string what, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what)
        , code_(code)
        , index_(index)
    {
    }

    [[nodiscard]] errc code() const noexcept { return code_; }
    [[nodiscard]] std::optional<std::size_t> index() const noexcept { return index_; }

private:
    errc code_;
    std::optional<std::size_t> index_;
};

} // namespace cesaro

#endif
