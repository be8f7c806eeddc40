// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/quant.hpp"

#include <cmath>
#include <stdexcept>

namespace tinysnn {

QuantScheme parse_scheme(std::string_view text)
{
    if (text == "ptq") {
        return QuantScheme::PTQ;
    }
    if (text == "itq") {
        return QuantScheme::ITQ;
    }
    throw std::invalid_argument("bad quantization scheme \"" + std::string(text)
                                + "\" (expected ptq|itq)");
}

std::string to_string(QuantScheme scheme)
{
    return scheme == QuantScheme::PTQ ? "ptq" : "itq";
}

QuantGroups parse_groups(std::string_view text)
{
    if (text == "qw") {
        return QuantGroups::QW;
    }
    if (text == "qwn") {
        return QuantGroups::QWN;
    }
    throw std::invalid_argument("bad group tag \"" + std::string(text) + "\" (expected qw|qwn)");
}

std::string to_string(QuantGroups groups)
{
    return groups == QuantGroups::QW ? "qw" : "qwn";
}

void QuantConfig::validate() const
{
    if (groups == QuantGroups::QW && (v_mem || v_thresh)) {
        throw std::invalid_argument("quant config: qW must not carry neuron-parameter formats");
    }
    if (groups == QuantGroups::QWN && (!v_mem || !v_thresh)) {
        throw std::invalid_argument("quant config: qWN needs formats for v_mem and v_thresh");
    }
    if (weights) {
        weights->validate();
    }
    if (v_mem) {
        v_mem->validate();
    }
    if (v_thresh) {
        v_thresh->validate();
    }
}

namespace {

int recommended_int_bits(double min_val, double max_val)
{
    const double m = std::max(std::fabs(min_val), std::fabs(max_val));
    int bits = 0;
    while (std::ldexp(1.0, bits) < m + 1.0 && bits < 62) {
        ++bits;
    }
    return bits;
}

void widen(GroupRange& r, double v)
{
    if (v < r.min_val) {
        r.min_val = v;
    }
    if (v > r.max_val) {
        r.max_val = v;
    }
}

void finalize(GroupRange& r)
{
    r.recommended_int_bits = recommended_int_bits(r.min_val, r.max_val);
}

/// Nearest-rounds a group constant onto the grid. A constant that is exactly
/// representable at some fractional width up to the group's is left alone by
/// construction.
double quantize_constant(double v, const FixedPointFormat& fmt)
{
    return quantize_value(v, fmt, RoundingMode::Nearest);
}

void quantize_group_inplace(NetworkModel& model, ParamGroup group, const FixedPointFormat& fmt,
                            RoundingMode rounding, Rng* rng)
{
    switch (group) {
    case ParamGroup::Weights:
        quantize_tensor_inplace(model.weights(), fmt, rounding, rng);
        model.format_tags().weights = fmt;
        break;
    case ParamGroup::VMem: {
        for (auto& n : model.neurons()) {
            n.v_mem = quantize_value(n.v_mem, fmt, rounding, rng);
        }
        LayerParams& p = model.layer_params();
        p.v_rest = quantize_constant(p.v_rest, fmt);
        p.v_reset = quantize_constant(p.v_reset, fmt);
        model.format_tags().v_mem = fmt;
        break;
    }
    case ParamGroup::VThresh: {
        for (auto& n : model.neurons()) {
            n.theta = quantize_value(n.theta, fmt, rounding, rng);
        }
        LayerParams& p = model.layer_params();
        p.v_thresh_base = quantize_constant(p.v_thresh_base, fmt);
        p.theta_inc = quantize_constant(p.theta_inc, fmt);
        model.format_tags().v_thresh = fmt;
        break;
    }
    }
}

void apply_config_inplace(NetworkModel& model, const QuantConfig& config, Rng* rng)
{
    if (config.rounding == RoundingMode::Stochastic && !config.is_identity() && rng == nullptr) {
        throw std::invalid_argument("quantization: stochastic rounding requires an rng");
    }
    if (config.weights) {
        quantize_group_inplace(model, ParamGroup::Weights, *config.weights, config.rounding, rng);
    }
    if (config.v_mem) {
        quantize_group_inplace(model, ParamGroup::VMem, *config.v_mem, config.rounding, rng);
    }
    if (config.v_thresh) {
        quantize_group_inplace(model, ParamGroup::VThresh, *config.v_thresh, config.rounding,
                               rng);
    }
}

} // namespace

RangeReport observe_ranges(NetworkModel& model, const SampleSource& samples,
                           std::size_t num_samples)
{
    if (num_samples == 0) {
        throw std::invalid_argument("observe_ranges: empty calibration set");
    }
    RangeReport report;

    const std::span<const double> w = model.weights();
    report.weights.min_val = report.weights.max_val = w.empty() ? 0.0 : w[0];
    for (double v : w) {
        widen(report.weights, v);
    }

    const LayerParams& p = model.layer_params();
    report.v_mem.min_val = report.v_mem.max_val = p.v_rest;
    report.v_thresh.min_val = report.v_thresh.max_val =
        model.neurons().empty() ? p.v_thresh_base : p.v_thresh_base + model.neurons()[0].theta;

    OpCounts ops;
    for (std::size_t s = 0; s < num_samples; ++s) {
        const SpikeTrain train = samples(s);
        if (train.num_inputs != model.num_inputs()) {
            throw std::invalid_argument("observe_ranges: sample dimension mismatch");
        }
        reset_dynamic_state(model);
        std::vector<std::uint8_t> fired(model.num_excitatory(), 0);
        for (std::size_t t = 0; t < train.num_steps; ++t) {
            step_layer_into(model, train.step(t), fired, ops, /*adapt_theta=*/false);
            for (const auto& n : model.neurons()) {
                widen(report.v_mem, n.v_mem);
                widen(report.v_thresh, p.v_thresh_base + n.theta);
            }
        }
    }
    finalize(report.weights);
    finalize(report.v_mem);
    finalize(report.v_thresh);
    return report;
}

std::vector<std::pair<int, double>> sweep_fractional_bits(
    const NetworkModel& model, const NeuronLabelMap& labels, const LabeledSampleSource& eval_set,
    std::size_t num_eval, ParamGroup group, bool is_signed, int int_bits,
    const std::vector<int>& candidate_frac_bits, RoundingMode rounding, Rng* rng)
{
    if (candidate_frac_bits.empty()) {
        throw std::invalid_argument("sweep_fractional_bits: no candidates");
    }
    std::vector<std::pair<int, double>> table;
    table.reserve(candidate_frac_bits.size());
    for (int frac : candidate_frac_bits) {
        const FixedPointFormat fmt{is_signed, int_bits, frac};
        fmt.validate();
        NetworkModel scratch = model; // the input model is restored by construction
        quantize_group_inplace(scratch, group, fmt, rounding, rng);
        const double acc = evaluate_accuracy(scratch, labels, eval_set, num_eval);
        table.emplace_back(frac, acc);
    }
    return table;
}

NetworkModel apply_ptq(const NetworkModel& model, const QuantConfig& config, Rng* rng)
{
    if (config.scheme != QuantScheme::PTQ) {
        throw std::invalid_argument("apply_ptq: config scheme is not PTQ");
    }
    config.validate();
    NetworkModel out = model;
    apply_config_inplace(out, config, rng);
    return out;
}

namespace {

/// Window rule plus quantize-after-update: updates are computed at full
/// precision from quantized operands, then snapped back onto the weight grid.
class ItqStdpHook final : public EnhancedStdpHook {
public:
    ItqStdpHook(LearnConfig cfg, std::size_t num_inputs, std::size_t num_neurons,
                std::optional<FixedPointFormat> wfmt, RoundingMode rounding, Rng* rng,
                OpCounts* ops)
        : EnhancedStdpHook(cfg, num_inputs, num_neurons, ops),
          wfmt_(wfmt),
          rounding_(rounding),
          rng_(rng)
    {
    }

    void on_update(NetworkModel& model) override
    {
        EnhancedStdpHook::on_update(model);
        if (wfmt_) {
            quantize_tensor_inplace(model.weights(), *wfmt_, rounding_, rng_);
        }
    }

private:
    std::optional<FixedPointFormat> wfmt_;
    RoundingMode rounding_;
    Rng* rng_;
};

} // namespace

NetworkModel train_itq(const NetworkModel& initial, const SampleSource& samples,
                       std::size_t num_samples, const LearnConfig& learn,
                       const QuantConfig& quant, const TrainerOptions& opts, std::uint64_t seed,
                       TrainStats* stats)
{
    if (quant.scheme != QuantScheme::ITQ) {
        throw std::invalid_argument("train_itq: config scheme is not ITQ");
    }
    learn.validate();
    quant.validate();

    NetworkModel model = initial;
    model.set_w_max(learn.w_m);
    Rng rounding_rng(derive_seed(seed, "itq-rounding"));
    Rng* rng = quant.rounding == RoundingMode::Stochastic ? &rounding_rng : nullptr;
    apply_config_inplace(model, quant, rng);

    TrainStats local;
    TrainStats& st = stats ? *stats : local;
    ItqStdpHook hook(learn, model.num_inputs(), model.num_excitatory(), quant.weights,
                     quant.rounding, rng, &st.ops);

    for (std::size_t s = 0; s < num_samples; ++s) {
        const SpikeTrain train = samples(s);
        st.input_spikes += train.total_spikes();
        const std::vector<std::uint32_t> counts = present_sample(model, train, &hook, st.ops);
        for (std::uint32_t c : counts) {
            st.output_spikes += c;
        }
        if (opts.normalize) {
            normalize_input_weights(model, opts.norm_target_sum);
            if (quant.weights) {
                quantize_tensor_inplace(model.weights(), *quant.weights, quant.rounding, rng);
            }
        }
    }
    st.weight_updates = hook.updates_performed();
    return model;
}

} // namespace tinysnn
