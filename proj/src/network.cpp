// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/network.hpp"

#include <stdexcept>

namespace tinysnn {

void LayerParams::validate() const
{
    if (tau_mem <= 0.0 || tau_theta <= 0.0) {
        throw std::invalid_argument("layer params: time constants must be positive");
    }
    if (w_inh < 0.0) {
        throw std::invalid_argument("layer params: w_inh must be non-negative");
    }
    if (v_reset > v_thresh_base) {
        throw std::invalid_argument("layer params: v_reset must not exceed v_thresh_base");
    }
    if (t_refrac < 0) {
        throw std::invalid_argument("layer params: t_refrac must be non-negative");
    }
}

NetworkModel::NetworkModel(std::size_t num_inputs, std::size_t num_excitatory, LayerParams params,
                           double w_max)
    : num_inputs_(num_inputs),
      num_excitatory_(num_excitatory),
      weights_(num_inputs * num_excitatory, 0.0),
      neurons_(num_excitatory),
      params_(params),
      w_max_(w_max)
{
    params_.validate();
    for (auto& n : neurons_) {
        n.v_mem = params_.v_rest;
    }
}

NetworkModel NetworkModel::random_init(std::size_t num_inputs, std::size_t num_excitatory,
                                       LayerParams params, double w_max, double w_init_max,
                                       Rng& rng)
{
    NetworkModel model(num_inputs, num_excitatory, params, w_max);
    for (double& w : model.weights_) {
        w = rng.uniform() * w_init_max;
    }
    return model;
}

void step_layer_into(NetworkModel& model, std::span<const std::uint8_t> input_spikes,
                     std::span<std::uint8_t> fired, OpCounts& ops, bool adapt_theta)
{
    const std::size_t n_in = model.num_inputs();
    const std::size_t n_exc = model.num_excitatory();
    if (input_spikes.size() != n_in) {
        throw std::invalid_argument("step_layer: input vector length "
                                    + std::to_string(input_spikes.size()) + " != num_inputs "
                                    + std::to_string(n_in));
    }
    if (fired.size() != n_exc) {
        throw std::invalid_argument("step_layer: output buffer size mismatch");
    }
    const LayerParams& p = model.layer_params();
    auto& neurons = model.neurons();

    // Summed synaptic drive per neuron for this step's input spikes; applied
    // below only to non-refractory neurons.
    static thread_local std::vector<double> drive;
    drive.assign(n_exc, 0.0);
    std::size_t n_input_spikes = 0;
    for (std::size_t i = 0; i < n_in; ++i) {
        if (input_spikes[i]) {
            ++n_input_spikes;
            const std::span<const double> row = model.weight_row(i);
            for (std::size_t j = 0; j < n_exc; ++j) {
                drive[j] += row[j];
            }
        }
    }

    const double theta_decay = 1.0 - 1.0 / p.tau_theta;
    const std::optional<FixedPointFormat>& vth_fmt = model.format_tags().v_thresh;
    const std::optional<FixedPointFormat>& vmem_fmt = model.format_tags().v_mem;

    std::size_t n_integrating = 0;
    std::size_t n_fired = 0;
    for (std::size_t j = 0; j < n_exc; ++j) {
        NeuronDynamicState& n = neurons[j];
        if (n.refrac_remaining > 0) {
            --n.refrac_remaining;
        } else {
            ++n_integrating;
            n.v_mem += (p.v_rest - n.v_mem) / p.tau_mem + drive[j];
        }
        if (adapt_theta) {
            n.theta *= theta_decay;
            if (vth_fmt) {
                // Nearest keeps the slow homeostatic offset stable; truncation
                // would bleed off one ulp per step.
                n.theta = quantize_value(n.theta, *vth_fmt, RoundingMode::Nearest);
            }
        }
        if (n.v_mem >= p.v_thresh_base + n.theta) {
            fired[j] = 1;
            ++n_fired;
            n.v_mem = p.v_reset;
            if (adapt_theta) {
                n.theta += p.theta_inc;
            }
            n.refrac_remaining = p.t_refrac;
        } else {
            fired[j] = 0;
        }
    }
    ops.synaptic_accumulates += static_cast<std::uint64_t>(n_input_spikes) * n_integrating;
    ops.neuron_updates += n_exc;

    if (n_fired > 0 && p.w_inh > 0.0) {
        const double suppression = static_cast<double>(n_fired) * p.w_inh;
        for (std::size_t j = 0; j < n_exc; ++j) {
            if (!fired[j]) {
                NeuronDynamicState& n = neurons[j];
                n.v_mem -= suppression;
                if (n.v_mem < p.v_reset) {
                    n.v_mem = p.v_reset;
                }
            }
        }
        ops.inhibition_events += static_cast<std::uint64_t>(n_fired) * (n_exc - n_fired);
    }

    if (vmem_fmt) {
        for (auto& n : neurons) {
            n.v_mem = quantize_value(n.v_mem, *vmem_fmt, RoundingMode::Truncate);
        }
    }
}

std::vector<std::uint8_t> step_layer(NetworkModel& model,
                                     std::span<const std::uint8_t> input_spikes, OpCounts& ops,
                                     bool adapt_theta)
{
    std::vector<std::uint8_t> fired(model.num_excitatory(), 0);
    step_layer_into(model, input_spikes, fired, ops, adapt_theta);
    return fired;
}

std::vector<std::uint32_t> present_sample(NetworkModel& model, const SpikeTrain& train,
                                          LearningHook* hook, OpCounts& ops, bool adapt_theta)
{
    if (train.num_inputs != model.num_inputs()) {
        throw std::invalid_argument("present_sample: spike train has "
                                    + std::to_string(train.num_inputs) + " inputs, model expects "
                                    + std::to_string(model.num_inputs()));
    }
    reset_dynamic_state(model);

    const std::size_t n_exc = model.num_excitatory();
    std::vector<std::uint32_t> counts(n_exc, 0);
    std::vector<std::uint8_t> fired(n_exc, 0);

    const std::size_t period = hook ? hook->update_period() : 0;
    std::size_t steps_since_update = 0;
    if (hook) {
        hook->on_presentation_start(model);
    }
    for (std::size_t t = 0; t < train.num_steps; ++t) {
        const std::span<const std::uint8_t> in = train.step(t);
        step_layer_into(model, in, fired, ops, adapt_theta);
        for (std::size_t j = 0; j < n_exc; ++j) {
            counts[j] += fired[j];
        }
        if (hook) {
            hook->on_step(model, in, fired);
            if (period > 0 && ++steps_since_update == period) {
                hook->on_update(model);
                steps_since_update = 0;
            }
        }
    }
    if (hook && period > 0 && steps_since_update > 0) {
        hook->on_update(model); // partial window at presentation end
    }
    return counts;
}

void reset_dynamic_state(NetworkModel& model)
{
    const LayerParams& p = model.layer_params();
    double v0 = p.v_rest;
    if (model.format_tags().v_mem) {
        v0 = quantize_value(v0, *model.format_tags().v_mem, RoundingMode::Truncate);
    }
    for (auto& n : model.neurons()) {
        n.v_mem = v0;
        n.refrac_remaining = 0;
    }
}

} // namespace tinysnn
