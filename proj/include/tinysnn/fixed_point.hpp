// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tinysnn/rng.hpp"

namespace tinysnn {

/// A fixed-point grid: signedness plus integer/fractional bit counts.
///
/// The representable values are { n * 2^-frac_bits } clipped to
/// [min_val, max_val] with max_val = 2^int_bits - 2^-frac_bits and
/// min_val = -2^int_bits (signed) or 0 (unsigned). Total storage width is
/// (sign bit) + int_bits + frac_bits.
struct FixedPointFormat {
    bool is_signed = false;
    int int_bits = 0;
    int frac_bits = 0;

    int total_bits() const { return (is_signed ? 1 : 0) + int_bits + frac_bits; }

    /// Throws std::invalid_argument if the format is unusable (zero width,
    /// negative bit counts, or wider than the 62-bit artifact limit).
    void validate() const;

    bool operator==(const FixedPointFormat&) const = default;
};

struct FormatRange {
    double min_val = 0.0;
    double max_val = 0.0;
    double ulp = 0.0; // grid step, 2^-frac_bits
};

FormatRange format_range(const FixedPointFormat& fmt);

enum class RoundingMode {
    Truncate,  // floor toward -inf, as in two's-complement hardware truncation
    Nearest,   // round to nearest, ties away from zero
    Stochastic // round up with probability equal to the fractional remainder
};

/// Maps x onto fmt's grid with the given rounding; saturates after rounding.
/// Stochastic mode consumes exactly one draw from rng per call and requires
/// rng != nullptr. Throws std::invalid_argument for non-finite x.
double quantize_value(double x, const FixedPointFormat& fmt, RoundingMode mode, Rng* rng = nullptr);

/// Elementwise quantize_value over a buffer. Stochastic draws are consumed
/// in element order, one per element. Element errors carry the offending
/// index in the message.
void quantize_tensor_inplace(std::span<double> values, const FixedPointFormat& fmt,
                             RoundingMode mode, Rng* rng = nullptr);

std::vector<double> quantize_tensor(std::span<const double> values, const FixedPointFormat& fmt,
                                    RoundingMode mode, Rng* rng = nullptr);

// --- notation used in configs, reports and model files ---------------------
//
// Fixed formats print as  q<s|u><int_bits>.<frac_bits>   (e.g. qs3.4, qu0.8);
// the unquantized reference prints as  fp32.

std::string to_string(const FixedPointFormat& fmt);
std::string to_string(RoundingMode mode);

FixedPointFormat parse_format(std::string_view text);
RoundingMode parse_rounding(std::string_view text);

/// "fp32" -> nullopt, anything else must parse as a fixed format.
std::optional<FixedPointFormat> parse_format_tag(std::string_view text);
std::string format_tag_to_string(const std::optional<FixedPointFormat>& fmt);

} // namespace tinysnn
