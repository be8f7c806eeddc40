// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tinysnn/rng.hpp"

namespace tinysnn {

/// Binary input-spike raster over a presentation window.
struct SpikeTrain {
    std::size_t num_inputs = 0;
    std::size_t num_steps = 0;
    std::vector<std::uint8_t> spikes; // stored step-major: [t * num_inputs + i]

    SpikeTrain() = default;
    SpikeTrain(std::size_t inputs, std::size_t steps)
        : num_inputs(inputs), num_steps(steps), spikes(inputs * steps, 0)
    {
    }

    std::uint8_t spike(std::size_t input, std::size_t t) const
    {
        return spikes[t * num_inputs + input];
    }
    void set_spike(std::size_t input, std::size_t t, bool v)
    {
        spikes[t * num_inputs + input] = v ? 1 : 0;
    }
    std::span<const std::uint8_t> step(std::size_t t) const
    {
        return {spikes.data() + t * num_inputs, num_inputs};
    }
    std::uint64_t total_spikes() const;
};

/// Rate coding: each raster entry is an independent Bernoulli draw with
/// p = intensity * rate_scale (a per-timestep approximation of a Poisson
/// process). Draws are consumed in (t, ascending input) order; zero-intensity
/// pixels consume no draws. Throws std::invalid_argument (with the pixel
/// index) for intensities outside [0, 1], and for rate_scale outside [0, 1].
SpikeTrain poisson_encode(std::span<const double> image, std::size_t num_steps, double rate_scale,
                          Rng& rng);

/// Byte image -> intensities in [0, 1] (divide by 255).
std::vector<double> normalize_pixels(std::span<const std::uint8_t> bytes);

} // namespace tinysnn
