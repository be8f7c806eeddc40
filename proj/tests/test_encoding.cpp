// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "tinysnn/encoding.hpp"

using namespace tinysnn;

TEST_CASE("all-zero image produces no spikes")
{
    Rng rng(1);
    const std::vector<double> image(784, 0.0);
    const SpikeTrain train = poisson_encode(image, 250, 0.06375, rng);
    CHECK(train.num_inputs == 784);
    CHECK(train.num_steps == 250);
    CHECK(train.total_spikes() == 0);
}

TEST_CASE("full intensity at unit rate spikes every step")
{
    Rng rng(2);
    const std::vector<double> image(16, 1.0);
    const SpikeTrain train = poisson_encode(image, 50, 1.0, rng);
    CHECK(train.total_spikes() == 16 * 50);
}

TEST_CASE("binomial mean oracle at the default rate")
{
    // intensity 1.0, rate 0.06375, 250 steps: binomial mean 15.9375 per
    // encoding; the empirical mean over 1000 encodings must land within 3
    // standard errors.
    const double p = 0.06375;
    const int steps = 250;
    const int runs = 1000;
    const std::vector<double> image(1, 1.0);
    double total = 0.0;
    for (int r = 0; r < runs; ++r) {
        Rng rng(derive_seed(42, "encode-oracle", static_cast<std::uint64_t>(r)));
        total += static_cast<double>(poisson_encode(image, steps, p, rng).total_spikes());
    }
    const double mean = total / runs;
    const double expected = steps * p;
    const double sigma = std::sqrt(steps * p * (1 - p)) / std::sqrt(static_cast<double>(runs));
    CHECK(std::fabs(mean - expected) < 3 * sigma);
}

TEST_CASE("same seed, same raster")
{
    const std::vector<double> image{0.1, 0.9, 0.4, 0.0, 1.0};
    Rng a(77), b(77);
    const SpikeTrain ta = poisson_encode(image, 100, 0.5, a);
    const SpikeTrain tb = poisson_encode(image, 100, 0.5, b);
    CHECK(ta.spikes == tb.spikes);
}

TEST_CASE("spike count is monotone in intensity under common random numbers")
{
    // Same support and same seed: the per-(t, i) uniform draws line up, so a
    // dimmer image can never out-spike a brighter one anywhere.
    std::vector<double> dim(32), bright(32);
    Rng init(5);
    for (std::size_t i = 0; i < dim.size(); ++i) {
        dim[i] = 0.05 + 0.4 * init.uniform();
        bright[i] = dim[i] + 0.3;
    }
    Rng a(0), b(0);
    const SpikeTrain td = poisson_encode(dim, 200, 0.8, a);
    const SpikeTrain tb2 = poisson_encode(bright, 200, 0.8, b);
    for (std::size_t t = 0; t < 200; ++t) {
        for (std::size_t i = 0; i < dim.size(); ++i) {
            CHECK(td.spike(i, t) <= tb2.spike(i, t));
        }
    }
}

TEST_CASE("intensity and rate validation")
{
    Rng rng(3);
    const std::vector<double> bad{0.5, 1.5};
    CHECK_THROWS_WITH_AS(poisson_encode(bad, 10, 0.5, rng), doctest::Contains("pixel 1"),
                         std::invalid_argument);
    const std::vector<double> negative{-0.1};
    CHECK_THROWS_AS(poisson_encode(negative, 10, 0.5, rng), std::invalid_argument);
    const std::vector<double> ok{0.5};
    CHECK_THROWS_AS(poisson_encode(ok, 10, 1.5, rng), std::invalid_argument);
}

TEST_CASE("normalize_pixels divides by 255")
{
    const std::vector<std::uint8_t> bytes{0, 51, 255};
    const std::vector<double> result = normalize_pixels(bytes);
    CHECK(result[0] == 0.0);
    CHECK(result[1] == doctest::Approx(0.2));
    CHECK(result[2] == 1.0);
}
