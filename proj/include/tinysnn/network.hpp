// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tinysnn/encoding.hpp"
#include "tinysnn/fixed_point.hpp"
#include "tinysnn/metrics.hpp"
#include "tinysnn/rng.hpp"

namespace tinysnn {

/// Per-layer constants of the excitatory LIF population. Time constants are
/// in timesteps, potentials are dimensionless.
struct LayerParams {
    double v_rest = 0.0;
    double v_reset = 0.0;
    double v_thresh_base = 0.5;
    double tau_mem = 100.0;
    double theta_inc = 0.05;  // adaptive-threshold increment per spike
    double tau_theta = 1e5;   // adaptive-threshold decay constant
    int t_refrac = 5;         // refractory length in timesteps
    double w_inh = 0.1;       // direct lateral inhibition magnitude

    void validate() const;
};

struct NeuronDynamicState {
    double v_mem = 0.0;
    double theta = 0.0;      // adaptive threshold offset, >= 0
    int refrac_remaining = 0;
};

/// Per-parameter-group quantization formats; nullopt means the group is kept
/// at the fp32 reference.
struct FormatTags {
    std::optional<FixedPointFormat> weights;
    std::optional<FixedPointFormat> v_mem;
    std::optional<FixedPointFormat> v_thresh;
};

/// Input->excitatory weight matrix plus per-neuron dynamic state. There is no
/// inhibitory population anywhere in the model; competition is realized by
/// direct subtractive inhibition between excitatory neurons.
class NetworkModel {
public:
    NetworkModel() = default;
    NetworkModel(std::size_t num_inputs, std::size_t num_excitatory, LayerParams params,
                 double w_max = 1.0);

    /// Weights drawn uniformly from [0, w_init_max]; draw order is
    /// input-major, so identical seeds give identical matrices.
    static NetworkModel random_init(std::size_t num_inputs, std::size_t num_excitatory,
                                    LayerParams params, double w_max, double w_init_max,
                                    Rng& rng);

    std::size_t num_inputs() const { return num_inputs_; }
    std::size_t num_excitatory() const { return num_excitatory_; }

    double weight(std::size_t input, std::size_t neuron) const
    {
        return weights_[input * num_excitatory_ + neuron];
    }
    void set_weight(std::size_t input, std::size_t neuron, double w)
    {
        weights_[input * num_excitatory_ + neuron] = w;
    }
    std::span<double> weights() { return weights_; }
    std::span<const double> weights() const { return weights_; }
    std::span<double> weight_row(std::size_t input)
    {
        return {weights_.data() + input * num_excitatory_, num_excitatory_};
    }
    std::span<const double> weight_row(std::size_t input) const
    {
        return {weights_.data() + input * num_excitatory_, num_excitatory_};
    }

    std::vector<NeuronDynamicState>& neurons() { return neurons_; }
    const std::vector<NeuronDynamicState>& neurons() const { return neurons_; }

    LayerParams& layer_params() { return params_; }
    const LayerParams& layer_params() const { return params_; }

    FormatTags& format_tags() { return tags_; }
    const FormatTags& format_tags() const { return tags_; }

    double w_max() const { return w_max_; }
    void set_w_max(double w) { w_max_ = w; }

private:
    std::size_t num_inputs_ = 0;
    std::size_t num_excitatory_ = 0;
    std::vector<double> weights_; // input-major: [input * num_excitatory + neuron]
    std::vector<NeuronDynamicState> neurons_;
    LayerParams params_;
    FormatTags tags_;
    double w_max_ = 1.0;
};

/// Receives per-step events from present_sample and performs weight updates
/// at window boundaries. update_period() == 0 disables window scheduling
/// (per-step rules handle everything in on_step).
class LearningHook {
public:
    virtual ~LearningHook() = default;
    virtual std::size_t update_period() const = 0;
    virtual void on_presentation_start(NetworkModel& model) = 0;
    virtual void on_step(NetworkModel& model, std::span<const std::uint8_t> input_spikes,
                         std::span<const std::uint8_t> output_spikes) = 0;
    virtual void on_update(NetworkModel& model) = 0;
};

/// Advances the layer one timestep. Per neuron, in order: refractory
/// decrement or leak+integrate, threshold decay, fire test (reset, theta
/// increment, refractory arm), then direct lateral inhibition of the
/// non-firing neurons (floored at v_reset) once all firings are known, and
/// finally per-step truncation onto the v_mem grid when that group is
/// quantized. With adapt_theta false the threshold offset is left untouched
/// (inference freeze). Returns the output spike vector.
std::vector<std::uint8_t> step_layer(NetworkModel& model,
                                     std::span<const std::uint8_t> input_spikes, OpCounts& ops,
                                     bool adapt_theta = true);

/// In-place variant; `fired` must be sized num_excitatory.
void step_layer_into(NetworkModel& model, std::span<const std::uint8_t> input_spikes,
                     std::span<std::uint8_t> fired, OpCounts& ops, bool adapt_theta = true);

/// Presents one sample: resets dynamic state (theta persists), runs every
/// timestep, drives the learning hook per step and at update times (every
/// hook->update_period() steps and at presentation end), and returns the
/// per-neuron output spike counts.
std::vector<std::uint32_t> present_sample(NetworkModel& model, const SpikeTrain& train,
                                          LearningHook* hook, OpCounts& ops,
                                          bool adapt_theta = true);

/// v_mem back to v_rest, refractory counters cleared; theta untouched.
void reset_dynamic_state(NetworkModel& model);

} // namespace tinysnn
