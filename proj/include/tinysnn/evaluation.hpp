// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tinysnn/encoding.hpp"
#include "tinysnn/metrics.hpp"
#include "tinysnn/network.hpp"

namespace tinysnn {

/// Produces the i-th labeled sample of a split. Lets callers stream encodings
/// instead of materializing thousands of rasters.
using LabeledSampleSource = std::function<std::pair<SpikeTrain, int>(std::size_t index)>;

struct NeuronLabelMap {
    int num_classes = 0;
    std::vector<int> labels;             // per neuron
    std::vector<double> mean_response;   // [neuron * num_classes + class]
    std::vector<std::uint8_t> silent;    // neurons that never spiked during labeling

    double response(std::size_t neuron, int cls) const
    {
        return mean_response[neuron * num_classes + cls];
    }
};

/// Labels each neuron with the class whose samples drive it hardest (argmax
/// of the mean spike count, ties to the lower class index). Learning is off
/// and theta is frozen throughout. Throws if some class has no samples.
NeuronLabelMap assign_neuron_labels(NetworkModel& model, const LabeledSampleSource& samples,
                                    std::size_t num_samples, int num_classes,
                                    OpCounts* ops = nullptr);

struct Classification {
    int predicted = 0;
    bool flagged = false; // all-zero counts (or empty winning group): tie-broken blind guess
};

/// Predicted class = argmax over classes of the mean spike count of the
/// neurons labeled with that class; ties to the lower class index.
Classification classify_sample(const NeuronLabelMap& labels,
                               std::span<const std::uint32_t> spike_counts);

/// Fraction of samples whose prediction matches the true class. Learning off,
/// theta frozen. Throws on an empty test set.
double evaluate_accuracy(NetworkModel& model, const NeuronLabelMap& labels,
                         const LabeledSampleSource& samples, std::size_t num_samples,
                         OpCounts* ops = nullptr);

} // namespace tinysnn
