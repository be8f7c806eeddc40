// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "tinysnn/fixed_point.hpp"

using namespace tinysnn;

namespace {

const FixedPointFormat kSigned34{true, 3, 4};

std::vector<FixedPointFormat> small_format_grid()
{
    std::vector<FixedPointFormat> formats;
    for (bool is_signed : {false, true}) {
        for (int int_bits : {0, 1, 3}) {
            for (int frac_bits : {0, 2, 4, 8}) {
                const FixedPointFormat fmt{is_signed, int_bits, frac_bits};
                if (fmt.total_bits() >= 1) {
                    formats.push_back(fmt);
                }
            }
        }
    }
    return formats;
}

} // namespace

TEST_CASE("format_range on the documented formats")
{
    const FormatRange degenerate = format_range(FixedPointFormat{true, 0, 0});
    CHECK(degenerate.min_val == -1.0);
    CHECK(degenerate.max_val == 0.0);
    CHECK(degenerate.ulp == 1.0);

    const FormatRange byte = format_range(FixedPointFormat{false, 8, 0});
    CHECK(byte.min_val == 0.0);
    CHECK(byte.max_val == 255.0);
    CHECK(byte.ulp == 1.0);

    const FormatRange s34 = format_range(kSigned34);
    CHECK(s34.min_val == -8.0);
    CHECK(s34.max_val == 7.9375);
    CHECK(s34.ulp == 0.0625);
}

TEST_CASE("format validation")
{
    CHECK_THROWS_AS(format_range(FixedPointFormat{false, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(format_range(FixedPointFormat{true, -1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(format_range(FixedPointFormat{false, 40, 40}), std::invalid_argument);
    CHECK(FixedPointFormat{true, 0, 0}.total_bits() == 1);
}

TEST_CASE("quantize_value on the documented points")
{
    for (auto mode : {RoundingMode::Truncate, RoundingMode::Nearest}) {
        CHECK(quantize_value(0.0, kSigned34, mode) == 0.0);
    }
    Rng rng(7);
    CHECK(quantize_value(0.0, kSigned34, RoundingMode::Stochastic, &rng) == 0.0);

    CHECK(quantize_value(0.3, kSigned34, RoundingMode::Truncate) == 0.25);
    CHECK(quantize_value(0.3, kSigned34, RoundingMode::Nearest) == 0.3125);
}

TEST_CASE("truncation is floor toward -inf, nearest ties go away from zero")
{
    CHECK(quantize_value(-0.3, kSigned34, RoundingMode::Truncate) == -0.3125);
    // 0.28125 = 4.5 ulp: tie, away from zero
    CHECK(quantize_value(0.28125, kSigned34, RoundingMode::Nearest) == 0.3125);
    CHECK(quantize_value(-0.28125, kSigned34, RoundingMode::Nearest) == -0.3125);
}

TEST_CASE("saturation applies after rounding")
{
    CHECK(quantize_value(10.0, kSigned34, RoundingMode::Truncate) == 7.9375);
    CHECK(quantize_value(-10.0, kSigned34, RoundingMode::Truncate) == -8.0);
    CHECK(quantize_value(1e300, kSigned34, RoundingMode::Nearest) == 7.9375);
    CHECK(quantize_value(0.5, FixedPointFormat{false, 0, 2}, RoundingMode::Nearest) == 0.5);
    CHECK(quantize_value(2.0, FixedPointFormat{false, 0, 2}, RoundingMode::Nearest) == 0.75);
}

TEST_CASE("quantize_value error paths")
{
    CHECK_THROWS_AS(quantize_value(std::nan(""), kSigned34, RoundingMode::Truncate),
                    std::invalid_argument);
    CHECK_THROWS_AS(quantize_value(INFINITY, kSigned34, RoundingMode::Nearest),
                    std::invalid_argument);
    CHECK_THROWS_AS(quantize_value(0.3, kSigned34, RoundingMode::Stochastic, nullptr),
                    std::invalid_argument);
}

TEST_CASE("stochastic rounding sample mean tracks the input")
{
    // 0.3 sits 0.8 of the way between 0.25 and 0.3125 on the qs3.4 grid.
    const double p = 0.8;
    const double ulp = 0.0625;
    const int n = 100000;
    Rng rng(20260810);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double q = quantize_value(0.3, kSigned34, RoundingMode::Stochastic, &rng);
        CHECK((q == 0.25 || q == 0.3125));
        sum += q;
    }
    const double mean = sum / n;
    const double sigma = std::sqrt(p * (1 - p)) * ulp / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(mean - 0.3) < 3 * sigma);
}

TEST_CASE("identical seeds give identical stochastic sequences")
{
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i) {
        const double x = -2.0 + 0.004 * i;
        CHECK(quantize_value(x, kSigned34, RoundingMode::Stochastic, &a)
              == quantize_value(x, kSigned34, RoundingMode::Stochastic, &b));
    }
}

TEST_CASE("deterministic modes: idempotence, error bounds, monotonicity")
{
    Rng rng(31);
    for (const FixedPointFormat& fmt : small_format_grid()) {
        const FormatRange r = format_range(fmt);
        double prev_x = 0.0;
        double prev_trunc = 0.0, prev_near = 0.0;
        bool have_prev = false;
        for (int i = 0; i < 400; ++i) {
            const double x = (rng.uniform() * 2.0 - 1.0) * (r.max_val + 2.0);
            const double t = quantize_value(x, fmt, RoundingMode::Truncate);
            const double q = quantize_value(x, fmt, RoundingMode::Nearest);

            CHECK(quantize_value(t, fmt, RoundingMode::Truncate) == t);
            CHECK(quantize_value(q, fmt, RoundingMode::Nearest) == q);
            CHECK(t >= r.min_val);
            CHECK(t <= r.max_val);

            if (x >= r.min_val && x <= r.max_val) {
                CHECK(std::fabs(x - t) < r.ulp);
                CHECK(std::fabs(x - q) <= r.ulp / 2);
            }
            if (have_prev) {
                const bool increasing = x >= prev_x;
                if (increasing) {
                    CHECK(t >= prev_trunc);
                    CHECK(q >= prev_near);
                } else {
                    CHECK(t <= prev_trunc);
                    CHECK(q <= prev_near);
                }
            }
            prev_x = x;
            prev_trunc = t;
            prev_near = q;
            have_prev = true;
        }
    }
}

TEST_CASE("stochastic error bound inside the range")
{
    Rng value_rng(5);
    Rng draw_rng(6);
    const FormatRange r = format_range(kSigned34);
    for (int i = 0; i < 2000; ++i) {
        const double x = (value_rng.uniform() * 2.0 - 1.0) * 7.9;
        const double q = quantize_value(x, kSigned34, RoundingMode::Stochastic, &draw_rng);
        CHECK(std::fabs(x - q) < r.ulp);
    }
}

TEST_CASE("quantize_tensor matches elementwise quantize_value")
{
    CHECK(quantize_tensor({}, kSigned34, RoundingMode::Truncate).empty());

    const std::vector<double> grid_points{0.25, -0.25};
    CHECK(quantize_tensor(grid_points, kSigned34, RoundingMode::Nearest) == grid_points);

    const std::vector<double> saturating{10.0};
    CHECK(quantize_tensor(saturating, kSigned34, RoundingMode::Truncate)
          == std::vector<double>{7.9375});

    Rng tensor_rng(123), scalar_rng(123);
    std::vector<double> values;
    for (int i = 0; i < 64; ++i) {
        values.push_back(-9.0 + 0.3 * i);
    }
    const std::vector<double> quantized =
        quantize_tensor(values, kSigned34, RoundingMode::Stochastic, &tensor_rng);
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(quantized[i]
              == quantize_value(values[i], kSigned34, RoundingMode::Stochastic, &scalar_rng));
    }
}

TEST_CASE("quantize_tensor reports the failing element")
{
    std::vector<double> values{0.0, 1.0, std::nan("")};
    CHECK_THROWS_WITH_AS(quantize_tensor_inplace(values, kSigned34, RoundingMode::Truncate),
                         doctest::Contains("element 2"), std::invalid_argument);
}

TEST_CASE("q-notation round trip")
{
    CHECK(to_string(kSigned34) == "qs3.4");
    CHECK(parse_format("qs3.4") == kSigned34);
    CHECK(parse_format("qu0.8") == FixedPointFormat{false, 0, 8});
    CHECK(format_tag_to_string(std::nullopt) == "fp32");
    CHECK(!parse_format_tag("fp32").has_value());
    CHECK(parse_format_tag("qu1.7") == FixedPointFormat{false, 1, 7});

    for (const char* bad : {"q3.4", "qs3", "qs.4", "qs3.", "s3.4", "qsx.4", "qs3.4.5", ""}) {
        CHECK_THROWS_AS(parse_format(bad), std::invalid_argument);
    }
    CHECK_THROWS_AS(parse_rounding("round"), std::invalid_argument);
    CHECK(parse_rounding("stochastic") == RoundingMode::Stochastic);
    CHECK(to_string(RoundingMode::Nearest) == "nearest");
}
