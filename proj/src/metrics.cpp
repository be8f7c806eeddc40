// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "tinysnn/network.hpp"

namespace tinysnn {

std::uint64_t memory_footprint(const ParameterInventory& inv)
{
    std::uint64_t bits = inv.num_weights * static_cast<std::uint64_t>(inv.weight_bits);
    for (const auto& p : inv.neuron_params) {
        bits += p.count * static_cast<std::uint64_t>(p.bits);
    }
    return bits;
}

double normalized_memory(std::uint64_t m_q, std::uint64_t m_0)
{
    if (m_0 == 0) {
        throw std::invalid_argument("normalized_memory: reference size is zero");
    }
    return static_cast<double>(m_q) / static_cast<double>(m_0);
}

ParameterInventory baseline_inventory(std::size_t num_inputs, std::size_t num_excitatory,
                                      int bits)
{
    if (num_inputs == 0 || num_excitatory == 0) {
        throw std::invalid_argument("baseline_inventory: counts must be positive");
    }
    const std::uint64_t e = num_excitatory;
    ParameterInventory inv;
    // input->exc, exc->inh one-to-one, inh->exc all-but-self
    inv.num_weights = static_cast<std::uint64_t>(num_inputs) * e + e + e * (e - 1);
    inv.weight_bits = bits;
    inv.neuron_params = {
        {"v_mem", 2 * e, bits}, // excitatory + inhibitory membrane potentials
        {"theta", 2 * e, bits},
    };
    return inv;
}

double energy_estimate(const EnergyModel& model, const OpCounts& ops, const OpBitwidths& bits)
{
    if (model.mode != EnergyMode::OpCount) {
        throw std::invalid_argument("energy_estimate: op counts supplied to a TimePower model");
    }
    const auto scaled = [](std::uint64_t count, double coeff, int b) {
        return static_cast<double>(count) * coeff * (static_cast<double>(b) / 32.0);
    };
    return scaled(ops.synaptic_accumulates, model.coeffs.synaptic_j, bits.synaptic)
           + scaled(ops.neuron_updates, model.coeffs.neuron_j, bits.neuron)
           + scaled(ops.learning_updates, model.coeffs.learning_j, bits.learning)
           + scaled(ops.inhibition_events, model.coeffs.inhibition_j, bits.inhibition);
}

double energy_estimate(const EnergyModel& model, double elapsed_seconds)
{
    if (model.mode != EnergyMode::TimePower) {
        throw std::invalid_argument("energy_estimate: elapsed time supplied to an OpCount model");
    }
    if (elapsed_seconds < 0.0) {
        throw std::invalid_argument("energy_estimate: negative elapsed time");
    }
    return elapsed_seconds * model.power_watts;
}

namespace {

/// Smallest fractional width (up to cap) at which v sits exactly on the grid.
int minimal_frac_bits(double v, int cap)
{
    for (int f = 0; f <= cap; ++f) {
        const double scaled = std::ldexp(v, f);
        if (scaled == std::floor(scaled)) {
            return f;
        }
    }
    return cap;
}

/// Width of one group constant: the group's sign and integer bits plus the
/// minimal fractional width that represents the value exactly.
int constant_bits(double v, const std::optional<FixedPointFormat>& group_fmt)
{
    if (!group_fmt) {
        return 32;
    }
    return (group_fmt->is_signed ? 1 : 0) + group_fmt->int_bits
           + minimal_frac_bits(v, group_fmt->frac_bits);
}

} // namespace

ParameterInventory model_inventory(const NetworkModel& model)
{
    const FormatTags& tags = model.format_tags();
    const LayerParams& p = model.layer_params();
    const std::uint64_t e = model.num_excitatory();

    ParameterInventory inv;
    inv.num_weights = static_cast<std::uint64_t>(model.num_inputs()) * e;
    inv.weight_bits = tags.weights ? tags.weights->total_bits() : 32;
    inv.neuron_params = {
        {"v_mem", e, tags.v_mem ? tags.v_mem->total_bits() : 32},
        {"theta", e, tags.v_thresh ? tags.v_thresh->total_bits() : 32},
        {"v_rest", 1, constant_bits(p.v_rest, tags.v_mem)},
        {"v_reset", 1, constant_bits(p.v_reset, tags.v_mem)},
        {"v_thresh_base", 1, constant_bits(p.v_thresh_base, tags.v_thresh)},
        {"theta_inc", 1, constant_bits(p.theta_inc, tags.v_thresh)},
        {"tau_mem", 1, 32},
        {"tau_theta", 1, 32},
        {"t_refrac", 1, 32},
        {"w_inh", 1, 32},
    };
    return inv;
}

OpBitwidths op_bitwidths(const NetworkModel& model)
{
    const FormatTags& tags = model.format_tags();
    OpBitwidths bits;
    bits.synaptic = tags.weights ? tags.weights->total_bits() : 32;
    bits.learning = bits.synaptic;
    bits.neuron = tags.v_mem ? tags.v_mem->total_bits() : 32;
    bits.inhibition = bits.neuron;
    return bits;
}

OpCounts baseline_op_estimate(const OpCounts& tiny, std::size_t num_inputs,
                              std::size_t num_excitatory, std::uint64_t input_spikes,
                              std::uint64_t output_spikes, bool training)
{
    OpCounts base;
    // Twice the neuron updates: the inhibitory layer mirrors the excitatory one.
    base.neuron_updates = tiny.neuron_updates * 2;
    // Every excitatory spike crosses exc->inh once and fans back out to the
    // E-1 other excitatory neurons through its inhibitory partner.
    base.synaptic_accumulates =
        tiny.synaptic_accumulates + output_spikes * static_cast<std::uint64_t>(num_excitatory);
    // Pair-wise learning touches a weight on every pre-synaptic spike (one
    // column) and every post-synaptic spike (one row); the window-based rule
    // replaces all of that with tiny.learning_updates.
    base.learning_updates =
        training ? input_spikes * static_cast<std::uint64_t>(num_excitatory)
                       + output_spikes * static_cast<std::uint64_t>(num_inputs)
                 : 0;
    base.inhibition_events = 0; // competition flows through the inhibitory layer instead
    return base;
}

} // namespace tinysnn
