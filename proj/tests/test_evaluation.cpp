// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "tinysnn/evaluation.hpp"

using namespace tinysnn;

namespace {

// Two inputs, two neurons, diagonal weights: input i drives neuron i over
// threshold, so class separation is perfect by construction.
NetworkModel diagonal_model()
{
    LayerParams p;
    p.v_thresh_base = 0.5;
    p.w_inh = 0.0;
    p.t_refrac = 0;
    NetworkModel model(2, 2, p);
    model.set_weight(0, 0, 1.0);
    model.set_weight(1, 1, 1.0);
    return model;
}

SpikeTrain pulse_train(std::size_t input, std::size_t num_inputs, std::size_t steps,
                       std::size_t every)
{
    SpikeTrain train(num_inputs, steps);
    for (std::size_t t = 0; t < steps; t += every) {
        train.set_spike(input, t, true);
    }
    return train;
}

LabeledSampleSource diagonal_source()
{
    return [](std::size_t index) {
        const int cls = static_cast<int>(index % 2);
        return std::make_pair(pulse_train(static_cast<std::size_t>(cls), 2, 20, 2), cls);
    };
}

NeuronLabelMap hand_label_map(std::vector<int> labels, int num_classes)
{
    NeuronLabelMap map;
    map.num_classes = num_classes;
    map.labels = std::move(labels);
    map.mean_response.assign(map.labels.size() * num_classes, 0.0);
    map.silent.assign(map.labels.size(), 0);
    return map;
}

} // namespace

TEST_CASE("labels follow the strongest class response")
{
    NetworkModel model = diagonal_model();
    const NeuronLabelMap map = assign_neuron_labels(model, diagonal_source(), 8, 2);
    CHECK(map.labels == std::vector<int>{0, 1});
    CHECK(map.silent == std::vector<std::uint8_t>{0, 0});
    CHECK(map.response(0, 0) > map.response(0, 1));
}

TEST_CASE("a silent neuron is labeled class 0 and flagged")
{
    NetworkModel model = diagonal_model();
    model.set_weight(1, 1, 0.0); // neuron 1 now has no drive
    const NeuronLabelMap map = assign_neuron_labels(model, diagonal_source(), 8, 2);
    CHECK(map.labels[1] == 0);
    CHECK(map.silent[1] == 1);
}

TEST_CASE("labeling requires every class to appear")
{
    NetworkModel model = diagonal_model();
    const auto only_class_zero = [](std::size_t) {
        return std::make_pair(pulse_train(0, 2, 20, 2), 0);
    };
    CHECK_THROWS_WITH_AS(assign_neuron_labels(model, only_class_zero, 4, 2),
                         doctest::Contains("class 1"), std::invalid_argument);
    CHECK_THROWS_AS(assign_neuron_labels(model, diagonal_source(), 0, 2), std::invalid_argument);
}

TEST_CASE("labeling leaves the model untouched (learning provably off)")
{
    NetworkModel model = diagonal_model();
    model.neurons()[0].theta = 0.2;
    const std::vector<double> weights_before(model.weights().begin(), model.weights().end());
    const double theta_before = model.neurons()[0].theta;
    assign_neuron_labels(model, diagonal_source(), 8, 2);
    CHECK(std::vector<double>(model.weights().begin(), model.weights().end()) == weights_before);
    CHECK(model.neurons()[0].theta == theta_before);
}

TEST_CASE("classify_sample: documented cases")
{
    SUBCASE("counts concentrated on one label group")
    {
        const NeuronLabelMap map = hand_label_map({2, 2, 0}, 3);
        const std::vector<std::uint32_t> counts{0, 9, 0};
        CHECK(classify_sample(map, counts).predicted == 2);
    }
    SUBCASE("exact tie goes to the lower class")
    {
        const NeuronLabelMap map = hand_label_map({0, 1}, 2);
        const std::vector<std::uint32_t> counts{5, 5};
        const Classification c = classify_sample(map, counts);
        CHECK(c.predicted == 0);
        CHECK(!c.flagged);
    }
    SUBCASE("group means, not sums")
    {
        const NeuronLabelMap map = hand_label_map({0, 0, 1}, 2);
        const std::vector<std::uint32_t> counts{2, 4, 5};
        CHECK(classify_sample(map, counts).predicted == 1); // mean 3 vs 5
    }
    SUBCASE("all-zero counts are flagged and default to class 0")
    {
        const NeuronLabelMap map = hand_label_map({1, 1}, 2);
        const std::vector<std::uint32_t> counts{0, 0};
        const Classification c = classify_sample(map, counts);
        CHECK(c.predicted == 0);
        CHECK(c.flagged);
    }
    SUBCASE("scale invariance")
    {
        const NeuronLabelMap map = hand_label_map({0, 1, 1}, 2);
        const std::vector<std::uint32_t> counts{3, 1, 4};
        const std::vector<std::uint32_t> scaled{30, 10, 40};
        CHECK(classify_sample(map, counts).predicted
              == classify_sample(map, scaled).predicted);
    }
    SUBCASE("length mismatch")
    {
        const NeuronLabelMap map = hand_label_map({0, 1}, 2);
        const std::vector<std::uint32_t> counts{1};
        CHECK_THROWS_AS(classify_sample(map, counts), std::invalid_argument);
    }
}

TEST_CASE("accuracy counts correct fractions")
{
    NetworkModel model = diagonal_model();
    const NeuronLabelMap map = assign_neuron_labels(model, diagonal_source(), 8, 2);

    SUBCASE("perfectly separable samples score 1.0")
    {
        CHECK(evaluate_accuracy(model, map, diagonal_source(), 12) == 1.0);
    }
    SUBCASE("one mislabeled sample out of four scores 0.75")
    {
        const auto three_quarters = [](std::size_t index) {
            const int cls = static_cast<int>(index % 2);
            if (index == 3) {
                return std::make_pair(pulse_train(0, 2, 20, 2), 1); // wrong label on purpose
            }
            return std::make_pair(pulse_train(static_cast<std::size_t>(cls), 2, 20, 2), cls);
        };
        CHECK(evaluate_accuracy(model, map, three_quarters, 4) == 0.75);
    }
    SUBCASE("empty test set is an error")
    {
        CHECK_THROWS_AS(evaluate_accuracy(model, map, diagonal_source(), 0),
                        std::invalid_argument);
    }
}

TEST_CASE("accuracy is invariant under a consistent neuron permutation")
{
    NetworkModel model = diagonal_model();
    const NeuronLabelMap map = assign_neuron_labels(model, diagonal_source(), 8, 2);
    const double base_acc = evaluate_accuracy(model, map, diagonal_source(), 10);

    //

    // Swap the two neurons everywhere: weights, state, labels.
    NetworkModel swapped = diagonal_model();
    swapped.set_weight(0, 0, model.weight(0, 1));
    swapped.set_weight(0, 1, model.weight(0, 0));
    swapped.set_weight(1, 0, model.weight(1, 1));
    swapped.set_weight(1, 1, model.weight(1, 0));
    NeuronLabelMap swapped_map = map;
    std::swap(swapped_map.labels[0], swapped_map.labels[1]);
    CHECK(evaluate_accuracy(swapped, swapped_map, diagonal_source(), 10) == base_acc);
}
