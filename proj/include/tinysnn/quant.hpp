// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tinysnn/evaluation.hpp"
#include "tinysnn/fixed_point.hpp"
#include "tinysnn/learning.hpp"
#include "tinysnn/network.hpp"

namespace tinysnn {

/// Produces the i-th training/calibration spike train.
using SampleSource = std::function<SpikeTrain(std::size_t index)>;

enum class QuantScheme { PTQ, ITQ };

QuantScheme parse_scheme(std::string_view text);
std::string to_string(QuantScheme scheme);

/// Which parameter groups a configuration quantizes: weights only (qW) or
/// weights plus both neuron parameters, membrane and threshold (qWN).
enum class QuantGroups { QW, QWN };

QuantGroups parse_groups(std::string_view text);
std::string to_string(QuantGroups groups);

struct QuantConfig {
    QuantScheme scheme = QuantScheme::PTQ;
    RoundingMode rounding = RoundingMode::Truncate;
    QuantGroups groups = QuantGroups::QW;
    std::optional<FixedPointFormat> weights;  // nullopt = fp32
    std::optional<FixedPointFormat> v_mem;
    std::optional<FixedPointFormat> v_thresh;

    bool is_identity() const { return !weights && !v_mem && !v_thresh; }

    /// qW carries no neuron-parameter formats; qWN carries both.
    void validate() const;
};

struct GroupRange {
    double min_val = 0.0;
    double max_val = 0.0;
    int recommended_int_bits = 0; // ceil(log2(max(|min|,|max|) + 1)), floored at 0
};

struct RangeReport {
    GroupRange weights;  // static: stored values
    GroupRange v_mem;    // dynamic: observed per step during inference
    GroupRange v_thresh; // dynamic: effective threshold (base + theta) per step
};

/// Runs frozen-theta inference over the calibration samples and records the
/// value range of each quantizable group. Throws on an empty calibration set.
RangeReport observe_ranges(NetworkModel& model, const SampleSource& samples,
                           std::size_t num_samples);

enum class ParamGroup { Weights, VMem, VThresh };

/// For each candidate fractional width: quantize just `group` (PTQ with the
/// given rounding, on a scratch copy), measure accuracy on the eval set with
/// the caller's label map, restore. Returns one (frac_bits, accuracy) row per
/// candidate, in input order.
std::vector<std::pair<int, double>> sweep_fractional_bits(
    const NetworkModel& model, const NeuronLabelMap& labels, const LabeledSampleSource& eval_set,
    std::size_t num_eval, ParamGroup group, bool is_signed, int int_bits,
    const std::vector<int>& candidate_frac_bits, RoundingMode rounding, Rng* rng = nullptr);

/// Post-training quantization: returns a copy of the model with the enabled
/// groups on their grids and tagged; the input model is never mutated.
/// Group constants (v_rest/v_reset for the membrane group, v_thresh_base and
/// theta_inc for the threshold group) are rounded to nearest on their group
/// grid. rng is required only for stochastic rounding.
NetworkModel apply_ptq(const NetworkModel& model, const QuantConfig& config, Rng* rng = nullptr);

struct TrainerOptions {
    bool normalize = true;          // rescale each neuron's input column per sample
    double norm_target_sum = 78.4;
};

struct TrainStats {
    OpCounts ops;
    std::uint64_t input_spikes = 0;
    std::uint64_t output_spikes = 0;
    std::uint32_t weight_updates = 0; // window-update events across all samples
};

/// One epoch of the window-based learning loop. With a non-identity
/// quant config (scheme ITQ) the enabled groups are re-quantized after every
/// weight update and after per-sample normalization; membrane and threshold
/// quantization runs per step inside the simulation core via the format tags.
/// With an all-fp32 config this is exactly plain training. The seed drives
/// the stochastic-rounding stream only; sample encodings belong to `samples`.
NetworkModel train_itq(const NetworkModel& initial, const SampleSource& samples,
                       std::size_t num_samples, const LearnConfig& learn,
                       const QuantConfig& quant, const TrainerOptions& opts, std::uint64_t seed,
                       TrainStats* stats = nullptr);

} // namespace tinysnn
