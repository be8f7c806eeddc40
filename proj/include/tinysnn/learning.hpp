// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tinysnn/metrics.hpp"
#include "tinysnn/network.hpp"

namespace tinysnn {

/// Presynaptic traces, one per input. Exponential decay, set to one on spike.
struct TraceState {
    std::vector<double> x_pre;
    double tau_pre = 20.0;

    TraceState() = default;
    TraceState(std::size_t num_inputs, double tau);
};

/// Decays every trace by exp(-1/tau_pre), then sets the traces of spiking
/// inputs to one.
void update_traces(TraceState& traces, std::span<const std::uint8_t> input_spikes);

struct LearnConfig {
    double eta_post = 0.01;         // learning rate
    double w_m = 1.0;               // maximum weight value
    std::uint32_t n_th = 10;        // postsynaptic-spike threshold for k
    std::size_t update_period = 250; // timesteps between window updates
    bool trace_set_to_one = true;   // on spike: x_pre = 1 (else additive, capped at 1)
    double tau_pre = 20.0;
    double x_tar = 0.4;             // target trace, pair-wise rule only

    void validate() const;
};

/// Per-neuron postsynaptic spike counts within the current presentation and
/// their running maximum.
struct SpikeStats {
    std::vector<std::uint32_t> counts;
    std::uint32_t max_n = 0;

    void reset(std::size_t num_neurons);
    void record(std::span<const std::uint8_t> output_spikes);
};

/// k = ceil(maxN / n_th). Throws std::invalid_argument when n_th == 0.
std::uint32_t compute_k(std::uint32_t max_n, std::uint32_t n_th);

/// Window update: w += k * eta_post * x_pre * (w_m - w) for every neuron that
/// spiked in the window; the others are untouched. Asserts the stability
/// bound k * eta_post <= 1 so weights stay in [0, w_m].
void enhanced_stdp_update(NetworkModel& model, const TraceState& traces, const SpikeStats& stats,
                          std::span<const std::uint8_t> window_spiked, const LearnConfig& cfg,
                          OpCounts* ops = nullptr);

/// Per-timestep pair-wise rule (comparison baseline): on a postsynaptic
/// spike, w += eta_post * (x_pre - x_tar) * (w_m - w), clamped to [0, w_m].
void pairwise_stdp_update(NetworkModel& model, const TraceState& traces,
                          std::span<const std::uint8_t> post_spikes, const LearnConfig& cfg,
                          OpCounts* ops = nullptr);

/// Rescales each neuron's incoming-weight column so it sums to target_sum;
/// zero columns stay zero. Values are capped at the model's w_max afterwards.
void normalize_input_weights(NetworkModel& model, double target_sum);

/// LearningHook wiring for the window-based rule. Traces and spike statistics
/// reset at presentation start; window membership resets after each update,
/// spike counts (and so maxN) accumulate over the whole presentation.
class EnhancedStdpHook : public LearningHook {
public:
    EnhancedStdpHook(LearnConfig cfg, std::size_t num_inputs, std::size_t num_neurons,
                     OpCounts* ops = nullptr);

    std::size_t update_period() const override { return cfg_.update_period; }
    void on_presentation_start(NetworkModel& model) override;
    void on_step(NetworkModel& model, std::span<const std::uint8_t> input_spikes,
                 std::span<const std::uint8_t> output_spikes) override;
    void on_update(NetworkModel& model) override;

    const SpikeStats& stats() const { return stats_; }
    const TraceState& traces() const { return traces_; }
    std::uint32_t updates_performed() const { return updates_performed_; }

protected:
    LearnConfig cfg_;
    TraceState traces_;
    SpikeStats stats_;
    std::vector<std::uint8_t> window_spiked_;
    OpCounts* ops_ = nullptr;
    std::uint32_t updates_performed_ = 0;
};

/// Per-step pair-wise baseline as a hook (update_period 0: no windows).
class PairwiseStdpHook : public LearningHook {
public:
    PairwiseStdpHook(LearnConfig cfg, std::size_t num_inputs, OpCounts* ops = nullptr);

    std::size_t update_period() const override { return 0; }
    void on_presentation_start(NetworkModel& model) override;
    void on_step(NetworkModel& model, std::span<const std::uint8_t> input_spikes,
                 std::span<const std::uint8_t> output_spikes) override;
    void on_update(NetworkModel&) override {}

private:
    LearnConfig cfg_;
    TraceState traces_;
    OpCounts* ops_ = nullptr;
};

} // namespace tinysnn
