// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tinysnn/learning.hpp"
#include "tinysnn/metrics.hpp"
#include "tinysnn/network.hpp"
#include "tinysnn/quant.hpp"

namespace tinysnn {

/// One precision level of the exploration grid: aligned formats for the
/// weight, membrane and threshold groups.
struct PrecisionLevel {
    std::optional<FixedPointFormat> weights;
    std::optional<FixedPointFormat> v_mem;
    std::optional<FixedPointFormat> v_thresh;
};

/// Everything an experiment run needs; parsed from a flat key = value file.
/// All randomness is derived from `seed` (no wall-clock seeding anywhere).
struct ExperimentConfig {
    // dataset
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;
    std::string dataset_name = "mnist";
    int num_classes = 10;

    // topology
    std::size_t num_inputs = 784;
    std::size_t num_excitatory = 100;

    // encoding
    std::size_t num_steps = 250;
    double rate_scale = 0.06375;

    LayerParams layer;
    LearnConfig learn;
    std::string rule = "enhanced"; // enhanced | pairwise
    bool normalize = true;
    double norm_target_sum = 78.4;
    double w_init_max = 0.3;

    // exploration grid
    std::vector<QuantScheme> schemes{QuantScheme::PTQ, QuantScheme::ITQ};
    std::vector<RoundingMode> roundings{RoundingMode::Truncate, RoundingMode::Nearest,
                                        RoundingMode::Stochastic};
    std::vector<PrecisionLevel> levels; // see default_levels()
    std::vector<QuantGroups> groups{QuantGroups::QW, QuantGroups::QWN};

    // selection
    std::vector<double> mu_list{0.0, 0.01, 0.05, 0.1, 0.5};
    std::optional<std::uint64_t> mem_budget_bits;
    std::optional<double> energy_budget_j;

    EnergyCoefficients energy_coeffs;

    // seeds and desk-scale sample limits
    std::uint64_t seed = 12345;
    std::size_t train_samples = 5000;
    std::size_t test_samples = 1000;
    std::size_t label_samples = 5000;
    std::size_t calib_samples = 200;

    /// The 4/6/8/16-bit levels used when the config does not override them.
    static std::vector<PrecisionLevel> default_levels();

    void validate() const;
};

/// Strict flat key = value parser: '#' comments, quoted or bare values,
/// comma-separated lists. Unknown keys are errors, as are missing dataset
/// paths. Every other key falls back to the documented default.
ExperimentConfig parse_config(const std::string& path);

/// Same parser over an already-loaded buffer (used by tests).
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// The documented key table for --help.
std::string config_key_reference();

} // namespace tinysnn
