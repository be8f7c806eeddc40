// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/evaluation.hpp"

#include <stdexcept>
#include <string>

namespace tinysnn {

NeuronLabelMap assign_neuron_labels(NetworkModel& model, const LabeledSampleSource& samples,
                                    std::size_t num_samples, int num_classes, OpCounts* ops)
{
    if (num_samples == 0) {
        throw std::invalid_argument("assign_neuron_labels: no samples");
    }
    if (num_classes < 1) {
        throw std::invalid_argument("assign_neuron_labels: num_classes must be >= 1");
    }
    const std::size_t n_exc = model.num_excitatory();
    std::vector<double> totals(n_exc * num_classes, 0.0);
    std::vector<std::uint64_t> class_counts(num_classes, 0);

    OpCounts local;
    OpCounts& counter = ops ? *ops : local;
    for (std::size_t s = 0; s < num_samples; ++s) {
        auto [train, cls] = samples(s);
        if (cls < 0 || cls >= num_classes) {
            throw std::invalid_argument("assign_neuron_labels: class " + std::to_string(cls)
                                        + " out of range at sample " + std::to_string(s));
        }
        ++class_counts[cls];
        const std::vector<std::uint32_t> counts =
            present_sample(model, train, nullptr, counter, /*adapt_theta=*/false);
        for (std::size_t j = 0; j < n_exc; ++j) {
            totals[j * num_classes + cls] += counts[j];
        }
    }
    for (int c = 0; c < num_classes; ++c) {
        if (class_counts[c] == 0) {
            throw std::invalid_argument("assign_neuron_labels: class " + std::to_string(c)
                                        + " has no samples");
        }
    }

    NeuronLabelMap map;
    map.num_classes = num_classes;
    map.labels.assign(n_exc, 0);
    map.mean_response.assign(n_exc * num_classes, 0.0);
    map.silent.assign(n_exc, 0);
    for (std::size_t j = 0; j < n_exc; ++j) {
        int best = 0;
        double best_mean = -1.0;
        double activity = 0.0;
        for (int c = 0; c < num_classes; ++c) {
            const double mean = totals[j * num_classes + c] / class_counts[c];
            map.mean_response[j * num_classes + c] = mean;
            activity += totals[j * num_classes + c];
            if (mean > best_mean) {
                best_mean = mean;
                best = c;
            }
        }
        map.labels[j] = best;
        map.silent[j] = activity == 0.0 ? 1 : 0;
    }
    return map;
}

Classification classify_sample(const NeuronLabelMap& labels,
                               std::span<const std::uint32_t> spike_counts)
{
    if (spike_counts.size() != labels.labels.size()) {
        throw std::invalid_argument("classify_sample: count vector length mismatch");
    }
    const int num_classes = labels.num_classes;
    std::vector<double> sums(num_classes, 0.0);
    std::vector<std::uint32_t> members(num_classes, 0);
    for (std::size_t j = 0; j < spike_counts.size(); ++j) {
        sums[labels.labels[j]] += spike_counts[j];
        ++members[labels.labels[j]];
    }
    int best = 0;
    double best_mean = -1.0;
    for (int c = 0; c < num_classes; ++c) {
        const double mean = members[c] > 0 ? sums[c] / members[c] : 0.0;
        if (mean > best_mean) {
            best_mean = mean;
            best = c;
        }
    }
    Classification result;
    result.predicted = best;
    result.flagged = best_mean <= 0.0;
    return result;
}

double evaluate_accuracy(NetworkModel& model, const NeuronLabelMap& labels,
                         const LabeledSampleSource& samples, std::size_t num_samples,
                         OpCounts* ops)
{
    if (num_samples == 0) {
        throw std::invalid_argument("evaluate_accuracy: empty test set");
    }
    OpCounts local;
    OpCounts& counter = ops ? *ops : local;
    std::size_t correct = 0;
    for (std::size_t s = 0; s < num_samples; ++s) {
        auto [train, cls] = samples(s);
        const std::vector<std::uint32_t> counts =
            present_sample(model, train, nullptr, counter, /*adapt_theta=*/false);
        if (classify_sample(labels, counts).predicted == cls) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(num_samples);
}

} // namespace tinysnn
