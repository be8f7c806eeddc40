// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "tinysnn/learning.hpp"

using namespace tinysnn;

namespace {

NetworkModel flat_model(std::size_t n_in, std::size_t n_exc, double w)
{
    LayerParams p;
    p.v_thresh_base = 0.5;
    NetworkModel model(n_in, n_exc, p);
    for (std::size_t i = 0; i < n_in; ++i) {
        for (std::size_t j = 0; j < n_exc; ++j) {
            model.set_weight(i, j, w);
        }
    }
    return model;
}

} // namespace

TEST_CASE("traces: fixed point at zero, set-to-one on spike, exponential decay")
{
    TraceState traces(3, 20.0);
    const std::vector<std::uint8_t> silent{0, 0, 0};
    update_traces(traces, silent);
    CHECK(traces.x_pre == std::vector<double>{0.0, 0.0, 0.0});

    traces.x_pre = {0.4, 0.9, 0.0};
    const std::vector<std::uint8_t> spike_mid{0, 1, 0};
    update_traces(traces, spike_mid);
    CHECK(traces.x_pre[1] == 1.0);

    TraceState decaying(1, 20.0);
    decaying.x_pre[0] = 1.0;
    const std::vector<std::uint8_t> one_silent{0};
    for (int t = 0; t < 20; ++t) {
        update_traces(decaying, one_silent);
    }
    CHECK(decaying.x_pre[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(update_traces(traces, std::vector<std::uint8_t>{0}), std::invalid_argument);
}

TEST_CASE("compute_k is the ceiling of maxN over n_th")
{
    CHECK(compute_k(0, 5) == 0);
    CHECK(compute_k(5, 5) == 1);
    CHECK(compute_k(7, 5) == 2);
    CHECK(compute_k(10, 5) == 2);
    CHECK(compute_k(11, 5) == 3);
    CHECK_THROWS_AS(compute_k(3, 0), std::invalid_argument);
}

TEST_CASE("enhanced update: documented values")
{
    LearnConfig cfg;
    cfg.eta_post = 0.01;
    cfg.w_m = 1.0;
    cfg.n_th = 5;

    SpikeStats stats;
    stats.reset(1);
    stats.max_n = 10; // k = 2
    TraceState traces(1, 20.0);
    const std::vector<std::uint8_t> active{1};

    SUBCASE("saturated weight stays put")
    {
        NetworkModel model = flat_model(1, 1, 1.0);
        enhanced_stdp_update(model, traces, stats, active, cfg);
        CHECK(model.weight(0, 0) == 1.0);
    }
    SUBCASE("zero trace leaves weights unchanged")
    {
        NetworkModel model = flat_model(1, 1, 0.2);
        traces.x_pre[0] = 0.0;
        enhanced_stdp_update(model, traces, stats, active, cfg);
        CHECK(model.weight(0, 0) == 0.2);
    }
    SUBCASE("k=2, eta=0.01, x=0.5, w=0.2 -> 0.208")
    {
        NetworkModel model = flat_model(1, 1, 0.2);
        traces.x_pre[0] = 0.5;
        enhanced_stdp_update(model, traces, stats, active, cfg);
        CHECK(model.weight(0, 0) == doctest::Approx(0.208).epsilon(1e-14));
    }
    SUBCASE("neurons outside the window are untouched")
    {
        NetworkModel model = flat_model(1, 2, 0.2);
        traces.x_pre[0] = 0.5;
        stats.reset(2);
        stats.max_n = 10;
        const std::vector<std::uint8_t> only_first{1, 0};
        enhanced_stdp_update(model, traces, stats, only_first, cfg);
        CHECK(model.weight(0, 0) > 0.2);
        CHECK(model.weight(0, 1) == 0.2);
    }
}

TEST_CASE("enhanced update asserts the stability bound")
{
    LearnConfig cfg;
    cfg.eta_post = 0.3;
    cfg.n_th = 1;
    NetworkModel model = flat_model(1, 1, 0.2);
    TraceState traces(1, 20.0);
    traces.x_pre[0] = 1.0;
    SpikeStats stats;
    stats.reset(1);
    stats.max_n = 4; // k = 4, k*eta = 1.2 > 1
    const std::vector<std::uint8_t> active{1};
    CHECK_THROWS_AS(enhanced_stdp_update(model, traces, stats, active, cfg), std::runtime_error);
}

TEST_CASE("enhanced update never decreases weights and keeps them in range")
{
    LearnConfig cfg;
    cfg.eta_post = 0.05;
    cfg.n_th = 2;
    NetworkModel model = flat_model(4, 3, 0.0);
    Rng rng(17);
    for (double& w : model.weights()) {
        w = rng.uniform();
    }
    TraceState traces(4, 20.0);
    SpikeStats stats;
    stats.reset(3);

    for (int round = 0; round < 200; ++round) {
        std::vector<std::uint8_t> in(4), out(3);
        for (auto& s : in) {
            s = rng.uniform() < 0.3;
        }
        for (auto& s : out) {
            s = rng.uniform() < 0.3;
        }
        update_traces(traces, in);
        stats.record(out);
        const std::vector<double> before(model.weights().begin(), model.weights().end());
        enhanced_stdp_update(model, traces, stats, out, cfg);
        for (std::size_t idx = 0; idx < before.size(); ++idx) {
            CHECK(model.weights()[idx] >= before[idx]);
            CHECK(model.weights()[idx] <= cfg.w_m);
        }
    }
}

TEST_CASE("maxN is non-decreasing within a presentation, so k is too")
{
    SpikeStats stats;
    stats.reset(2);
    std::uint32_t prev_max = 0;
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::uint8_t> out(2);
        out[0] = rng.uniform() < 0.4;
        out[1] = rng.uniform() < 0.2;
        stats.record(out);
        CHECK(stats.max_n >= prev_max);
        CHECK(compute_k(stats.max_n, 5) >= compute_k(prev_max, 5));
        prev_max = stats.max_n;
    }
}

TEST_CASE("pairwise update: documented values")
{
    LearnConfig cfg;
    cfg.eta_post = 0.01;
    cfg.x_tar = 0.4;
    TraceState traces(1, 20.0);
    NetworkModel model = flat_model(1, 1, 0.5);

    SUBCASE("no postsynaptic spikes: unchanged")
    {
        traces.x_pre[0] = 0.9;
        pairwise_stdp_update(model, traces, std::vector<std::uint8_t>{0}, cfg);
        CHECK(model.weight(0, 0) == 0.5);
    }
    SUBCASE("x_pre at the target trace is an equilibrium")
    {
        traces.x_pre[0] = 0.4;
        pairwise_stdp_update(model, traces, std::vector<std::uint8_t>{1}, cfg);
        CHECK(model.weight(0, 0) == 0.5);
    }
    SUBCASE("x_pre=1 potentiates by eta*(1-x_tar)*(w_m-w)")
    {
        traces.x_pre[0] = 1.0;
        pairwise_stdp_update(model, traces, std::vector<std::uint8_t>{1}, cfg);
        CHECK(model.weight(0, 0) == 0.503);
    }
    SUBCASE("weights stay inside [0, w_m] under random sequences")
    {
        Rng rng(9);
        for (int t = 0; t < 500; ++t) {
            traces.x_pre[0] = rng.uniform();
            pairwise_stdp_update(model, traces, std::vector<std::uint8_t>{1}, cfg);
            CHECK(model.weight(0, 0) >= 0.0);
            CHECK(model.weight(0, 0) <= cfg.w_m);
        }
    }
}

TEST_CASE("normalize_input_weights")
{
    SUBCASE("column already at the target is unchanged")
    {
        NetworkModel model = flat_model(2, 1, 0.4); // sum 0.8
        normalize_input_weights(model, 0.8);
        CHECK(model.weight(0, 0) == 0.4);
        CHECK(model.weight(1, 0) == 0.4);
    }
    SUBCASE("proportional scaling")
    {
        NetworkModel model = flat_model(2, 1, 0.2);
        normalize_input_weights(model, 0.8);
        CHECK(model.weight(0, 0) == doctest::Approx(0.4));
        CHECK(model.weight(1, 0) == doctest::Approx(0.4));
    }
    SUBCASE("zero column stays zero")
    {
        NetworkModel model = flat_model(2, 1, 0.0);
        normalize_input_weights(model, 0.8);
        CHECK(model.weight(0, 0) == 0.0);
        CHECK(model.weight(1, 0) == 0.0);
    }
    SUBCASE("scaling caps at w_max")
    {
        NetworkModel model = flat_model(2, 1, 0.0);
        model.set_weight(0, 0, 0.9);
        model.set_weight(1, 0, 0.1);
        normalize_input_weights(model, 2.0); // would scale 0.9 to 1.8
        CHECK(model.weight(0, 0) == 1.0);
    }
    SUBCASE("target must be positive")
    {
        NetworkModel model = flat_model(2, 1, 0.1);
        CHECK_THROWS_AS(normalize_input_weights(model, 0.0), std::invalid_argument);
    }
}

TEST_CASE("exactly ceil(T / period) window updates per presentation")
{
    LayerParams p;
    p.v_thresh_base = 0.2;
    p.w_inh = 0.0;
    NetworkModel model(1, 1, p);
    model.set_weight(0, 0, 0.5);

    const auto run = [&](std::size_t steps, std::size_t period) {
        LearnConfig cfg;
        cfg.update_period = period;
        cfg.eta_post = 0.01;
        EnhancedStdpHook hook(cfg, 1, 1);
        SpikeTrain train(1, steps);
        for (std::size_t t = 0; t < steps; t += 3) {
            train.set_spike(0, t, true);
        }
        OpCounts ops;
        present_sample(model, train, &hook, ops);
        return hook.updates_performed();
    };

    CHECK(run(250, 250) == 1);
    CHECK(run(250, 100) == 3);
    CHECK(run(250, 50) == 5);
    CHECK(run(10, 25) == 1);
    CHECK(run(0, 25) == 0);
}
