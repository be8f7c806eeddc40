// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tinysnn {

/// Operation tallies accumulated by the simulation core and learning rules.
/// Counts are additive across runs.
struct OpCounts {
    std::uint64_t synaptic_accumulates = 0; // (input spike, integrating neuron) pairs
    std::uint64_t neuron_updates = 0;       // per-neuron per-timestep state updates
    std::uint64_t learning_updates = 0;     // individual weight modifications
    std::uint64_t inhibition_events = 0;    // (firing, suppressed neuron) pairs

    OpCounts& operator+=(const OpCounts& o)
    {
        synaptic_accumulates += o.synaptic_accumulates;
        neuron_updates += o.neuron_updates;
        learning_updates += o.learning_updates;
        inhibition_events += o.inhibition_events;
        return *this;
    }
    std::uint64_t total() const
    {
        return synaptic_accumulates + neuron_updates + learning_updates + inhibition_events;
    }
    bool operator==(const OpCounts&) const = default;
};

struct NeuronParamEntry {
    std::string name;
    std::uint64_t count = 0; // number of stored values
    int bits = 32;           // storage width per value
};

/// Everything a model stores, for the closed-form memory model.
struct ParameterInventory {
    std::uint64_t num_weights = 0;
    int weight_bits = 32;
    std::vector<NeuronParamEntry> neuron_params;
};

/// Total stored bits: Nw*Bw + sum_k Nn_k*Bn_k. Exact integer arithmetic.
std::uint64_t memory_footprint(const ParameterInventory& inv);

/// M_q / M_0. Throws std::invalid_argument when m_0 == 0.
double normalized_memory(std::uint64_t m_q, std::uint64_t m_0);

/// Inventory of the pre-reduction topology that pairs every excitatory
/// neuron with an inhibitory one (exc->inh one-to-one, inh->exc all-but-self).
/// Used only for ratio reporting, never simulated.
ParameterInventory baseline_inventory(std::size_t num_inputs, std::size_t num_excitatory,
                                      int bits);

// --- energy model -----------------------------------------------------------
//
// OpCount mode prices each op class with a per-op coefficient, scaled
// linearly by the bitwidth of the operand group it touches (bits/32).
// Linear bit scaling is a declared modeling assumption, not hardware truth.
// TimePower mode is wall-clock seconds times operational watts.

enum class EnergyMode { OpCount, TimePower };

struct EnergyCoefficients {
    double synaptic_j = 1e-9;
    double neuron_j = 1e-9;
    double learning_j = 1e-9;
    double inhibition_j = 1e-9;
};

/// Storage widths of the operand group each op class touches.
struct OpBitwidths {
    int synaptic = 32;   // weights
    int neuron = 32;     // v_mem
    int learning = 32;   // weights
    int inhibition = 32; // v_mem
};

struct EnergyModel {
    EnergyMode mode = EnergyMode::OpCount;
    EnergyCoefficients coeffs;
    double power_watts = 0.0;
};

/// OpCount-mode estimate; throws std::invalid_argument if model.mode is not
/// OpCount.
double energy_estimate(const EnergyModel& model, const OpCounts& ops, const OpBitwidths& bits);

/// TimePower-mode estimate; throws std::invalid_argument if model.mode is not
/// TimePower.
double energy_estimate(const EnergyModel& model, double elapsed_seconds);

/// Projects a recorded tinySNN run onto the pre-reduction baseline design:
/// a mirrored inhibitory layer (updated every step, spiking whenever its
/// excitatory partner does) and the per-timestep pair-wise learning rule
/// (weight work on every pre- and post-synaptic spike). Used for the
/// training/inference energy ratios.
OpCounts baseline_op_estimate(const OpCounts& tiny, std::size_t num_inputs,
                              std::size_t num_excitatory, std::uint64_t input_spikes,
                              std::uint64_t output_spikes, bool training);

class NetworkModel;

/// Enumerates everything the given model stores: the weight matrix, the two
/// per-neuron parameters (v_mem and theta, the stored part of v_thresh), the
/// group constants at their minimal exact fractional width when the group is
/// quantized, and the four dynamics constants kept at fp32.
ParameterInventory model_inventory(const NetworkModel& model);

/// Operand widths for the energy model, read off the model's format tags.
OpBitwidths op_bitwidths(const NetworkModel& model);

} // namespace tinysnn
