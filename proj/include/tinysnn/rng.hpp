// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tinysnn {

/// Deterministic random source. Every random draw in the library flows
/// through an explicitly seeded instance of this class; independent streams
/// for sub-tasks (per-sample encodings, stochastic rounding, ...) are derived
/// with derive_seed() so that results never depend on execution order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), rejection-sampled so the result does not
    /// depend on the platform's std::uniform_int_distribution.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 gen_;
};

/// Hashes (base seed, stream name, index) into a fresh seed. Distinct stream
/// names give statistically independent sequences from one master seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index = 0);

} // namespace tinysnn
