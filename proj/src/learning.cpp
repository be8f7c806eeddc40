// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/learning.hpp"

#include <cmath>
#include <stdexcept>

namespace tinysnn {

TraceState::TraceState(std::size_t num_inputs, double tau) : x_pre(num_inputs, 0.0), tau_pre(tau)
{
    if (tau <= 0.0) {
        throw std::invalid_argument("trace state: tau_pre must be positive");
    }
}

void update_traces(TraceState& traces, std::span<const std::uint8_t> input_spikes)
{
    if (input_spikes.size() != traces.x_pre.size()) {
        throw std::invalid_argument("update_traces: spike vector length mismatch");
    }
    const double decay = std::exp(-1.0 / traces.tau_pre);
    for (double& x : traces.x_pre) {
        x *= decay;
    }
    for (std::size_t i = 0; i < input_spikes.size(); ++i) {
        if (input_spikes[i]) {
            traces.x_pre[i] = 1.0;
        }
    }
}

void LearnConfig::validate() const
{
    if (eta_post <= 0.0) {
        throw std::invalid_argument("learn config: eta_post must be positive");
    }
    if (w_m <= 0.0) {
        throw std::invalid_argument("learn config: w_m must be positive");
    }
    if (n_th < 1) {
        throw std::invalid_argument("learn config: n_th must be >= 1");
    }
    if (update_period < 1) {
        throw std::invalid_argument("learn config: update_period must be >= 1");
    }
    if (tau_pre <= 0.0) {
        throw std::invalid_argument("learn config: tau_pre must be positive");
    }
}

void SpikeStats::reset(std::size_t num_neurons)
{
    counts.assign(num_neurons, 0);
    max_n = 0;
}

void SpikeStats::record(std::span<const std::uint8_t> output_spikes)
{
    if (output_spikes.size() != counts.size()) {
        throw std::invalid_argument("spike stats: output vector length mismatch");
    }
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (output_spikes[j]) {
            ++counts[j];
            if (counts[j] > max_n) {
                max_n = counts[j];
            }
        }
    }
}

std::uint32_t compute_k(std::uint32_t max_n, std::uint32_t n_th)
{
    if (n_th == 0) {
        throw std::invalid_argument("compute_k: n_th must be >= 1");
    }
    return (max_n + n_th - 1) / n_th;
}

void enhanced_stdp_update(NetworkModel& model, const TraceState& traces, const SpikeStats& stats,
                          std::span<const std::uint8_t> window_spiked, const LearnConfig& cfg,
                          OpCounts* ops)
{
    const std::size_t n_in = model.num_inputs();
    const std::size_t n_exc = model.num_excitatory();
    if (traces.x_pre.size() != n_in || window_spiked.size() != n_exc) {
        throw std::invalid_argument("enhanced_stdp_update: dimension mismatch");
    }
    const std::uint32_t k = compute_k(stats.max_n, cfg.n_th);
    if (k == 0) {
        return; // no postsynaptic spikes yet, nothing to potentiate
    }
    if (static_cast<double>(k) * cfg.eta_post > 1.0) {
        throw std::runtime_error("enhanced_stdp_update: stability bound violated, k*eta_post = "
                                 + std::to_string(k * cfg.eta_post) + " > 1");
    }

    std::vector<std::uint32_t> active;
    active.reserve(n_exc);
    for (std::size_t j = 0; j < n_exc; ++j) {
        if (window_spiked[j]) {
            active.push_back(static_cast<std::uint32_t>(j));
        }
    }
    if (active.empty()) {
        return;
    }

    const double k_eta = static_cast<double>(k) * cfg.eta_post;
    for (std::size_t i = 0; i < n_in; ++i) {
        const double rate = k_eta * traces.x_pre[i];
        if (rate == 0.0) {
            continue;
        }
        const std::span<double> row = model.weight_row(i);
        for (std::uint32_t j : active) {
            double w = row[j] + rate * (cfg.w_m - row[j]);
            if (w > cfg.w_m) {
                w = cfg.w_m;
            } else if (w < 0.0) {
                w = 0.0;
            }
            row[j] = w;
        }
    }
    if (ops) {
        ops->learning_updates += static_cast<std::uint64_t>(active.size()) * n_in;
    }
}

void pairwise_stdp_update(NetworkModel& model, const TraceState& traces,
                          std::span<const std::uint8_t> post_spikes, const LearnConfig& cfg,
                          OpCounts* ops)
{
    const std::size_t n_in = model.num_inputs();
    const std::size_t n_exc = model.num_excitatory();
    if (traces.x_pre.size() != n_in || post_spikes.size() != n_exc) {
        throw std::invalid_argument("pairwise_stdp_update: dimension mismatch");
    }
    std::vector<std::uint32_t> active;
    for (std::size_t j = 0; j < n_exc; ++j) {
        if (post_spikes[j]) {
            active.push_back(static_cast<std::uint32_t>(j));
        }
    }
    if (active.empty()) {
        return;
    }
    for (std::size_t i = 0; i < n_in; ++i) {
        const double factor = cfg.eta_post * (traces.x_pre[i] - cfg.x_tar);
        const std::span<double> row = model.weight_row(i);
        for (std::uint32_t j : active) {
            double w = row[j] + factor * (cfg.w_m - row[j]);
            if (w > cfg.w_m) {
                w = cfg.w_m;
            } else if (w < 0.0) {
                w = 0.0;
            }
            row[j] = w;
        }
    }
    if (ops) {
        ops->learning_updates += static_cast<std::uint64_t>(active.size()) * n_in;
    }
}

void normalize_input_weights(NetworkModel& model, double target_sum)
{
    if (target_sum <= 0.0) {
        throw std::invalid_argument("normalize_input_weights: target_sum must be positive");
    }
    const std::size_t n_in = model.num_inputs();
    const std::size_t n_exc = model.num_excitatory();
    std::vector<double> sums(n_exc, 0.0);
    for (std::size_t i = 0; i < n_in; ++i) {
        const std::span<const double> row = model.weight_row(i);
        for (std::size_t j = 0; j < n_exc; ++j) {
            sums[j] += row[j];
        }
    }
    std::vector<double> scale(n_exc, 1.0);
    for (std::size_t j = 0; j < n_exc; ++j) {
        scale[j] = sums[j] > 0.0 ? target_sum / sums[j] : 1.0;
    }
    const double w_cap = model.w_max();
    for (std::size_t i = 0; i < n_in; ++i) {
        const std::span<double> row = model.weight_row(i);
        for (std::size_t j = 0; j < n_exc; ++j) {
            double w = row[j] * scale[j];
            if (w > w_cap) {
                w = w_cap;
            }
            row[j] = w;
        }
    }
}

EnhancedStdpHook::EnhancedStdpHook(LearnConfig cfg, std::size_t num_inputs,
                                   std::size_t num_neurons, OpCounts* ops)
    : cfg_(cfg), traces_(num_inputs, cfg.tau_pre), ops_(ops)
{
    cfg_.validate();
    stats_.reset(num_neurons);
    window_spiked_.assign(num_neurons, 0);
}

void EnhancedStdpHook::on_presentation_start(NetworkModel& model)
{
    std::fill(traces_.x_pre.begin(), traces_.x_pre.end(), 0.0);
    stats_.reset(model.num_excitatory());
    window_spiked_.assign(model.num_excitatory(), 0);
}

void EnhancedStdpHook::on_step(NetworkModel&, std::span<const std::uint8_t> input_spikes,
                               std::span<const std::uint8_t> output_spikes)
{
    update_traces(traces_, input_spikes);
    stats_.record(output_spikes);
    for (std::size_t j = 0; j < output_spikes.size(); ++j) {
        if (output_spikes[j]) {
            window_spiked_[j] = 1;
        }
    }
}

void EnhancedStdpHook::on_update(NetworkModel& model)
{
    enhanced_stdp_update(model, traces_, stats_, window_spiked_, cfg_, ops_);
    ++updates_performed_;
    std::fill(window_spiked_.begin(), window_spiked_.end(), 0);
}

PairwiseStdpHook::PairwiseStdpHook(LearnConfig cfg, std::size_t num_inputs, OpCounts* ops)
    : cfg_(cfg), traces_(num_inputs, cfg.tau_pre), ops_(ops)
{
    cfg_.validate();
}

void PairwiseStdpHook::on_presentation_start(NetworkModel&)
{
    std::fill(traces_.x_pre.begin(), traces_.x_pre.end(), 0.0);
}

void PairwiseStdpHook::on_step(NetworkModel& model, std::span<const std::uint8_t> input_spikes,
                               std::span<const std::uint8_t> output_spikes)
{
    update_traces(traces_, input_spikes);
    pairwise_stdp_update(model, traces_, output_spikes, cfg_, ops_);
}

} // namespace tinysnn
