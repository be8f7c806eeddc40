// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/encoding.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tinysnn {

std::uint64_t SpikeTrain::total_spikes() const
{
    return std::accumulate(spikes.begin(), spikes.end(), std::uint64_t{0});
}

SpikeTrain poisson_encode(std::span<const double> image, std::size_t num_steps, double rate_scale,
                          Rng& rng)
{
    if (rate_scale < 0.0 || rate_scale > 1.0) {
        throw std::invalid_argument("poisson_encode: rate_scale must be in [0, 1], got "
                                    + std::to_string(rate_scale));
    }
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (!(image[i] >= 0.0 && image[i] <= 1.0)) {
            throw std::invalid_argument("poisson_encode: intensity out of [0, 1] at pixel "
                                        + std::to_string(i));
        }
    }
    SpikeTrain train(image.size(), num_steps);
    for (std::size_t t = 0; t < num_steps; ++t) {
        std::uint8_t* row = train.spikes.data() + t * train.num_inputs;
        for (std::size_t i = 0; i < image.size(); ++i) {
            const double p = image[i] * rate_scale;
            if (p > 0.0) {
                row[i] = rng.uniform() < p ? 1 : 0;
            }
        }
    }
    return train;
}

std::vector<double> normalize_pixels(std::span<const std::uint8_t> bytes)
{
    std::vector<double> out(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        out[i] = static_cast<double>(bytes[i]) / 255.0;
    }
    return out;
}

} // namespace tinysnn
