// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/fixed_point.hpp"

#include <cmath>
#include <stdexcept>

namespace tinysnn {

void FixedPointFormat::validate() const
{
    if (int_bits < 0 || frac_bits < 0) {
        throw std::invalid_argument("fixed-point format: negative bit count");
    }
    if (total_bits() < 1) {
        throw std::invalid_argument("fixed-point format: total width must be >= 1");
    }
    if (int_bits + frac_bits > 62) {
        throw std::invalid_argument("fixed-point format: width beyond 62 bits unsupported");
    }
}

FormatRange format_range(const FixedPointFormat& fmt)
{
    fmt.validate();
    FormatRange r;
    r.ulp = std::ldexp(1.0, -fmt.frac_bits);
    r.max_val = std::ldexp(1.0, fmt.int_bits) - r.ulp;
    r.min_val = fmt.is_signed ? -std::ldexp(1.0, fmt.int_bits) : 0.0;
    return r;
}

double quantize_value(double x, const FixedPointFormat& fmt, RoundingMode mode, Rng* rng)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("quantize_value: non-finite input");
    }
    if (mode == RoundingMode::Stochastic && rng == nullptr) {
        throw std::invalid_argument("quantize_value: Stochastic rounding requires an rng");
    }
    const FormatRange r = format_range(fmt);

    // Pre-clamp one ulp outside the range so scaling cannot overflow; the
    // rounding decision is unaffected for every in-range grid neighbourhood
    // and saturation still applies after rounding.
    double xc = x;
    if (xc > r.max_val + r.ulp) {
        xc = r.max_val + r.ulp;
    } else if (xc < r.min_val - r.ulp) {
        xc = r.min_val - r.ulp;
    }

    const double scaled = xc / r.ulp;
    double n = 0.0;
    switch (mode) {
    case RoundingMode::Truncate:
        n = std::floor(scaled);
        break;
    case RoundingMode::Nearest:
        n = std::round(scaled); // ties away from zero
        break;
    case RoundingMode::Stochastic: {
        const double lo = std::floor(scaled);
        const double frac = scaled - lo;
        n = lo + (rng->uniform() < frac ? 1.0 : 0.0);
        break;
    }
    }

    const double n_min = r.min_val / r.ulp;
    const double n_max = r.max_val / r.ulp;
    if (n < n_min) {
        n = n_min;
    } else if (n > n_max) {
        n = n_max;
    }
    return n * r.ulp;
}

void quantize_tensor_inplace(std::span<double> values, const FixedPointFormat& fmt,
                             RoundingMode mode, Rng* rng)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        try {
            values[i] = quantize_value(values[i], fmt, mode, rng);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("quantize_tensor: element " + std::to_string(i) + ": "
                                        + e.what());
        }
    }
}

std::vector<double> quantize_tensor(std::span<const double> values, const FixedPointFormat& fmt,
                                    RoundingMode mode, Rng* rng)
{
    std::vector<double> out(values.begin(), values.end());
    quantize_tensor_inplace(out, fmt, mode, rng);
    return out;
}

std::string to_string(const FixedPointFormat& fmt)
{
    return std::string("q") + (fmt.is_signed ? "s" : "u") + std::to_string(fmt.int_bits) + "."
           + std::to_string(fmt.frac_bits);
}

std::string to_string(RoundingMode mode)
{
    switch (mode) {
    case RoundingMode::Truncate:
        return "truncate";
    case RoundingMode::Nearest:
        return "nearest";
    case RoundingMode::Stochastic:
        return "stochastic";
    }
    return "?";
}

namespace {

[[noreturn]] void bad_format(std::string_view text)
{
    throw std::invalid_argument("bad fixed-point format \"" + std::string(text)
                                + "\" (expected q<s|u><int_bits>.<frac_bits>, e.g. qs3.4)");
}

} // namespace

FixedPointFormat parse_format(std::string_view text)
{
    if (text.size() < 4 || text[0] != 'q' || (text[1] != 's' && text[1] != 'u')) {
        bad_format(text);
    }
    FixedPointFormat fmt;
    fmt.is_signed = text[1] == 's';
    const auto dot = text.find('.', 2);
    if (dot == std::string_view::npos || dot == 2 || dot + 1 == text.size()) {
        bad_format(text);
    }
    const auto digits = [&](std::string_view part) -> int {
        int value = 0;
        if (part.empty() || part.size() > 2) {
            bad_format(text);
        }
        for (char c : part) {
            if (c < '0' || c > '9') {
                bad_format(text);
            }
            value = value * 10 + (c - '0');
        }
        return value;
    };
    fmt.int_bits = digits(text.substr(2, dot - 2));
    fmt.frac_bits = digits(text.substr(dot + 1));
    fmt.validate();
    return fmt;
}

RoundingMode parse_rounding(std::string_view text)
{
    if (text == "truncate") {
        return RoundingMode::Truncate;
    }
    if (text == "nearest") {
        return RoundingMode::Nearest;
    }
    if (text == "stochastic") {
        return RoundingMode::Stochastic;
    }
    throw std::invalid_argument("bad rounding mode \"" + std::string(text)
                                + "\" (expected truncate|nearest|stochastic)");
}

std::optional<FixedPointFormat> parse_format_tag(std::string_view text)
{
    if (text == "fp32") {
        return std::nullopt;
    }
    return parse_format(text);
}

std::string format_tag_to_string(const std::optional<FixedPointFormat>& fmt)
{
    return fmt ? to_string(*fmt) : "fp32";
}

} // namespace tinysnn
