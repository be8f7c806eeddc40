// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/experiment.hpp"

#include <atomic>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace tinysnn {

SpikeTrain encode_dataset_sample(const Dataset& ds, std::size_t index,
                                 const ExperimentConfig& cfg, std::string_view stream)
{
    if (index >= ds.num_images) {
        throw std::out_of_range("encode_dataset_sample: index " + std::to_string(index)
                                + " out of range (dataset has " + std::to_string(ds.num_images)
                                + " images)");
    }
    if (ds.image_size() != cfg.num_inputs) {
        throw std::invalid_argument("encode_dataset_sample: dataset image size "
                                    + std::to_string(ds.image_size()) + " != num_inputs "
                                    + std::to_string(cfg.num_inputs));
    }
    Rng rng(derive_seed(cfg.seed, stream, index));
    const std::vector<double> intensities = normalize_pixels(ds.image(index));
    return poisson_encode(intensities, cfg.num_steps, cfg.rate_scale, rng);
}

SampleSource make_sample_source(const Dataset& ds, const ExperimentConfig& cfg,
                                std::string_view stream)
{
    const std::string s(stream);
    return [&ds, &cfg, s](std::size_t index) { return encode_dataset_sample(ds, index, cfg, s); };
}

LabeledSampleSource make_labeled_source(const Dataset& ds, const ExperimentConfig& cfg,
                                        std::string_view stream)
{
    const std::string s(stream);
    return [&ds, &cfg, s](std::size_t index) {
        return std::make_pair(encode_dataset_sample(ds, index, cfg, s),
                              static_cast<int>(ds.labels[index]));
    };
}

QuantConfig make_quant_config(QuantScheme scheme, RoundingMode rounding,
                              const PrecisionLevel& level, QuantGroups groups)
{
    QuantConfig qc;
    qc.scheme = scheme;
    qc.rounding = rounding;
    qc.groups = groups;
    qc.weights = level.weights;
    if (groups == QuantGroups::QWN) {
        qc.v_mem = level.v_mem;
        qc.v_thresh = level.v_thresh;
    }
    qc.validate();
    return qc;
}

TrainOutcome train_pipeline(const ExperimentConfig& cfg, const Dataset& train_ds,
                            const QuantConfig& quant)
{
    if (cfg.train_samples > train_ds.num_images) {
        throw std::invalid_argument("train_pipeline: train_samples "
                                    + std::to_string(cfg.train_samples) + " exceeds dataset size "
                                    + std::to_string(train_ds.num_images));
    }
    Rng init_rng(derive_seed(cfg.seed, "weight-init"));
    NetworkModel initial = NetworkModel::random_init(cfg.num_inputs, cfg.num_excitatory,
                                                     cfg.layer, cfg.learn.w_m, cfg.w_init_max,
                                                     init_rng);
    TrainOutcome out{std::move(initial), {}};
    const SampleSource source = make_sample_source(train_ds, cfg, "train-enc");
    TrainerOptions opts;
    opts.normalize = cfg.normalize;
    opts.norm_target_sum = cfg.norm_target_sum;

    if (cfg.rule == "pairwise") {
        // Comparison baseline rule; runs per step with no window scheduling.
        NetworkModel model = out.model;
        model.set_w_max(cfg.learn.w_m);
        PairwiseStdpHook hook(cfg.learn, model.num_inputs(), &out.stats.ops);
        for (std::size_t s = 0; s < cfg.train_samples; ++s) {
            const SpikeTrain train = source(s);
            out.stats.input_spikes += train.total_spikes();
            const auto counts = present_sample(model, train, &hook, out.stats.ops);
            for (std::uint32_t c : counts) {
                out.stats.output_spikes += c;
            }
            if (opts.normalize) {
                normalize_input_weights(model, opts.norm_target_sum);
            }
        }
        out.model = std::move(model);
        return out;
    }

    out.model = train_itq(out.model, source, cfg.train_samples, cfg.learn, quant, opts, cfg.seed,
                          &out.stats);
    return out;
}

EvalOutcome eval_pipeline(NetworkModel& model, const ExperimentConfig& cfg,
                          const Dataset& train_ds, const Dataset& test_ds)
{
    if (cfg.label_samples > train_ds.num_images) {
        throw std::invalid_argument("eval_pipeline: label_samples exceeds training set size");
    }
    if (cfg.test_samples > test_ds.num_images) {
        throw std::invalid_argument("eval_pipeline: test_samples exceeds test set size");
    }
    EvalOutcome out;
    const LabeledSampleSource label_source = make_labeled_source(train_ds, cfg, "label-enc");
    out.labels = assign_neuron_labels(model, label_source, cfg.label_samples, cfg.num_classes);
    const LabeledSampleSource test_source = make_labeled_source(test_ds, cfg, "test-enc");
    out.accuracy =
        evaluate_accuracy(model, out.labels, test_source, cfg.test_samples, &out.test_ops);
    return out;
}

CandidateReport make_candidate_report(const ExperimentConfig& cfg, const NetworkModel& model,
                                      const QuantConfig& quant, double accuracy,
                                      const TrainStats& train_stats, const OpCounts& test_ops,
                                      double mu)
{
    CandidateReport row;
    row.dataset = cfg.dataset_name;
    row.scheme = quant.scheme;
    row.rounding = quant.rounding;
    row.wfmt = quant.weights;
    row.vmemfmt = quant.v_mem;
    row.vthfmt = quant.v_thresh;
    row.acc = accuracy;

    row.mem_bits = memory_footprint(model_inventory(model));
    NetworkModel reference_shape(model.num_inputs(), model.num_excitatory(),
                                 model.layer_params(), model.w_max());
    row.mem_bits_0 = memory_footprint(model_inventory(reference_shape));
    row.mem_norm = normalized_memory(row.mem_bits, row.mem_bits_0);

    EnergyModel em;
    em.mode = EnergyMode::OpCount;
    em.coeffs = cfg.energy_coeffs;
    const OpBitwidths bits = op_bitwidths(model);
    // PTQ candidates inherit the fp32 training run; ITQ candidates paid for
    // training at their own operand widths.
    const OpBitwidths train_bits = quant.scheme == QuantScheme::PTQ ? OpBitwidths{} : bits;
    row.energy_train_j = energy_estimate(em, train_stats.ops, train_bits);
    row.energy_infer_j = energy_estimate(em, test_ops, bits);

    row.mu = mu;
    row.reward = reward(row.acc, row.mem_bits, row.mem_bits_0, mu);
    row.selected = false;
    return row;
}

namespace {

std::string candidate_key(const std::string& dataset, QuantScheme scheme, RoundingMode rounding,
                          const std::optional<FixedPointFormat>& w,
                          const std::optional<FixedPointFormat>& vm,
                          const std::optional<FixedPointFormat>& vt)
{
    return dataset + '|' + to_string(scheme) + '|' + to_string(rounding) + '|'
           + format_tag_to_string(w) + '|' + format_tag_to_string(vm) + '|'
           + format_tag_to_string(vt);
}

struct GridEntry {
    QuantScheme scheme;
    RoundingMode rounding;
    PrecisionLevel level;
    QuantGroups groups;
};

} // namespace

std::vector<CandidateReport> run_sweep(const ExperimentConfig& cfg, const Dataset& train_ds,
                                       const Dataset& test_ds,
                                       const std::vector<CandidateReport>& existing, int jobs,
                                       std::ostream* log)
{
    std::vector<GridEntry> grid;
    for (QuantScheme scheme : cfg.schemes) {
        for (RoundingMode rounding : cfg.roundings) {
            for (const PrecisionLevel& level : cfg.levels) {
                for (QuantGroups groups : cfg.groups) {
                    grid.push_back({scheme, rounding, level, groups});
                }
            }
        }
    }

    // The fp32 reference model is shared by every PTQ candidate.
    const double mu0 = cfg.mu_list.empty() ? 0.0 : cfg.mu_list.front();
    QuantConfig identity;
    identity.scheme = QuantScheme::ITQ;
    const TrainOutcome base = train_pipeline(cfg, train_ds, identity);
    if (log) {
        *log << "sweep: base fp32 model trained (" << cfg.train_samples << " samples, "
             << base.stats.output_spikes << " output spikes)\n";
    }

    std::vector<CandidateReport> rows(grid.size());
    std::vector<std::uint8_t> reused(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const QuantConfig qc = make_quant_config(grid[i].scheme, grid[i].rounding, grid[i].level,
                                                 grid[i].groups);
        const std::string key = candidate_key(cfg.dataset_name, qc.scheme, qc.rounding,
                                              qc.weights, qc.v_mem, qc.v_thresh);
        for (const CandidateReport& old : existing) {
            if (candidate_key(old.dataset, old.scheme, old.rounding, old.wfmt, old.vmemfmt,
                              old.vthfmt)
                == key) {
                rows[i] = old;
                reused[i] = 1;
                break;
            }
        }
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<std::size_t> failures{0};
    std::string first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= grid.size()) {
                return;
            }
            if (reused[i]) {
                continue;
            }
            try {
                const GridEntry& g = grid[i];
                const QuantConfig qc = make_quant_config(g.scheme, g.rounding, g.level, g.groups);
                NetworkModel candidate;
                TrainStats train_stats;
                if (qc.scheme == QuantScheme::PTQ) {
                    Rng ptq_rng(derive_seed(cfg.seed, "ptq-rounding", i));
                    candidate = apply_ptq(base.model, qc, &ptq_rng);
                    train_stats = base.stats;
                } else {
                    TrainOutcome outcome = train_pipeline(cfg, train_ds, qc);
                    candidate = std::move(outcome.model);
                    train_stats = outcome.stats;
                }
                EvalOutcome eval = eval_pipeline(candidate, cfg, train_ds, test_ds);
                rows[i] = make_candidate_report(cfg, candidate, qc, eval.accuracy, train_stats,
                                                eval.test_ops, mu0);
                if (log) {
                    static std::mutex log_mutex;
                    std::lock_guard<std::mutex> lock(log_mutex);
                    *log << "sweep: " << to_string(qc.scheme) << ' ' << to_string(qc.rounding)
                         << " w=" << format_tag_to_string(qc.weights)
                         << " vmem=" << format_tag_to_string(qc.v_mem)
                         << " vth=" << format_tag_to_string(qc.v_thresh) << " acc=" << rows[i].acc
                         << '\n';
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (failures.fetch_add(1) == 0) {
                    first_error = e.what();
                }
            }
        }
    };

    const int n_threads = std::max(1, jobs);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failures.load() > 0) {
        throw std::runtime_error("sweep: " + std::to_string(failures.load())
                                 + " candidate(s) failed; first error: " + first_error);
    }
    return rows;
}

std::size_t apply_selection(std::vector<CandidateReport>& rows, double mu,
                            const SelectionConstraints& constraints)
{
    const std::size_t winner = select_model(rows, mu, constraints);
    for (auto& row : rows) {
        row.mu = mu;
        row.reward = reward(row.acc, row.mem_bits, row.mem_bits_0, mu);
        row.selected = false;
    }
    rows[winner].selected = true;
    return winner;
}

} // namespace tinysnn
