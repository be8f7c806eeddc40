// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "cli_app.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string_view>

#include <CLI11.hpp>

#include "tinysnn/experiment.hpp"

namespace tinysnn::cli {

namespace {

int log_threshold()
{
    const char* env = std::getenv("TINYSNN_LOG");
    if (env == nullptr) {
        return 1;
    }
    const std::string_view v(env);
    if (v == "error") {
        return 0;
    }
    if (v == "debug") {
        return 2;
    }
    return 1; // info
}

struct Log {
    std::ostream& err;
    void info(const std::string& msg) const
    {
        if (log_threshold() >= 1) {
            err << "[tinysnn] " << msg << "\n";
        }
    }
    void debug(const std::string& msg) const
    {
        if (log_threshold() >= 2) {
            err << "[tinysnn] " << msg << "\n";
        }
    }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Dataset load_train(const ExperimentConfig& cfg)
{
    Dataset ds = load_idx(cfg.train_images, cfg.train_labels);
    ds.name = cfg.dataset_name;
    return ds;
}

Dataset load_test(const ExperimentConfig& cfg)
{
    Dataset ds = load_idx(cfg.test_images, cfg.test_labels);
    ds.name = cfg.dataset_name;
    return ds;
}

std::string lineage(const ExperimentConfig& cfg, const std::string& stage)
{
    return "seed=" + std::to_string(cfg.seed) + ":train_samples="
           + std::to_string(cfg.train_samples) + ":" + stage;
}

QuantConfig quant_from_flags(QuantScheme scheme, const std::string& wfmt,
                             const std::string& vmemfmt, const std::string& vthfmt,
                             const std::string& rounding)
{
    QuantConfig qc;
    qc.scheme = scheme;
    qc.rounding = parse_rounding(rounding);
    qc.weights = parse_format_tag(wfmt);
    qc.v_mem = parse_format_tag(vmemfmt);
    qc.v_thresh = parse_format_tag(vthfmt);
    if (qc.v_mem.has_value() != qc.v_thresh.has_value()) {
        throw std::invalid_argument(
            "neuron-parameter quantization needs both --vmemfmt and --vthfmt (or neither)");
    }
    qc.groups = qc.v_mem ? QuantGroups::QWN : QuantGroups::QW;
    qc.validate();
    return qc;
}

std::string describe(const CandidateReport& row)
{
    return to_string(row.scheme) + " " + to_string(row.rounding) + " w="
           + format_tag_to_string(row.wfmt) + " vmem=" + format_tag_to_string(row.vmemfmt)
           + " vth=" + format_tag_to_string(row.vthfmt) + " acc=" + fmt(row.acc)
           + " mem_norm=" + fmt(row.mem_norm) + " reward=" + fmt(row.reward);
}

int cmd_train(const std::string& config_path, const std::string& out_path, std::ostream& out,
              const Log& log)
{
    const ExperimentConfig cfg = parse_config(config_path);
    const Dataset train_ds = load_train(cfg);
    log.info("training " + cfg.rule + " fp32 model on " + std::to_string(cfg.train_samples)
             + " samples of " + cfg.dataset_name);
    QuantConfig identity;
    identity.scheme = QuantScheme::ITQ;
    const TrainOutcome outcome = train_pipeline(cfg, train_ds, identity);
    save_model(outcome.model, out_path, lineage(cfg, "rule=" + cfg.rule));
    out << "trained model written to " << out_path << "\n";
    out << "input_spikes " << outcome.stats.input_spikes << " output_spikes "
        << outcome.stats.output_spikes << " weight_updates " << outcome.stats.weight_updates
        << "\n";
    return 0;
}

int cmd_eval(const std::string& config_path, const std::string& model_path, std::ostream& out,
             const Log& log)
{
    const ExperimentConfig cfg = parse_config(config_path);
    const Dataset train_ds = load_train(cfg);
    const Dataset test_ds = load_test(cfg);
    LoadedModel loaded = load_model(model_path);
    log.info("labeling on " + std::to_string(cfg.label_samples) + " samples, evaluating on "
             + std::to_string(cfg.test_samples));
    const EvalOutcome eval = eval_pipeline(loaded.model, cfg, train_ds, test_ds);
    std::size_t silent = 0;
    for (const auto flag : eval.labels.silent) {
        silent += flag;
    }
    out << "accuracy " << fmt(eval.accuracy) << "\n";
    log.info("silent neurons: " + std::to_string(silent) + "/"
             + std::to_string(eval.labels.labels.size()));
    return 0;
}

int cmd_ptq(const std::string& config_path, const std::string& model_path,
            const std::string& out_path, const std::string& wfmt, const std::string& vmemfmt,
            const std::string& vthfmt, const std::string& rounding, std::ostream& out,
            const Log& log)
{
    const ExperimentConfig cfg = parse_config(config_path);
    LoadedModel loaded = load_model(model_path);
    const QuantConfig qc =
        quant_from_flags(QuantScheme::PTQ, wfmt, vmemfmt, vthfmt, rounding);
    Rng rng(derive_seed(cfg.seed, "ptq-rounding"));
    const NetworkModel quantized = apply_ptq(loaded.model, qc, &rng);
    save_model(quantized, out_path,
               loaded.seed_lineage + ":ptq(" + format_tag_to_string(qc.weights) + ","
                   + format_tag_to_string(qc.v_mem) + "," + format_tag_to_string(qc.v_thresh)
                   + "," + to_string(qc.rounding) + ")");
    log.debug("ptq applied");
    out << "quantized model written to " << out_path << "\n";
    return 0;
}

int cmd_itq(const std::string& config_path, const std::string& out_path, const std::string& wfmt,
            const std::string& vmemfmt, const std::string& vthfmt, const std::string& rounding,
            std::ostream& out, const Log& log)
{
    const ExperimentConfig cfg = parse_config(config_path);
    const Dataset train_ds = load_train(cfg);
    const QuantConfig qc =
        quant_from_flags(QuantScheme::ITQ, wfmt, vmemfmt, vthfmt, rounding);
    log.info("in-training quantization on " + std::to_string(cfg.train_samples) + " samples");
    const TrainOutcome outcome = train_pipeline(cfg, train_ds, qc);
    save_model(outcome.model, out_path,
               lineage(cfg, "itq(" + format_tag_to_string(qc.weights) + ","
                                + format_tag_to_string(qc.v_mem) + ","
                                + format_tag_to_string(qc.v_thresh) + ","
                                + to_string(qc.rounding) + ")"));
    out << "quantized model written to " << out_path << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& report_path, int jobs,
              std::ostream& out, const Log& log)
{
    const ExperimentConfig cfg = parse_config(config_path);
    const Dataset train_ds = load_train(cfg);
    const Dataset test_ds = load_test(cfg);
    std::vector<CandidateReport> existing;
    if (std::ifstream probe(report_path); probe.good()) {
        existing = read_report(report_path);
        log.info("resuming sweep: " + std::to_string(existing.size()) + " rows already present");
    }
    std::ostream* log_stream = log_threshold() >= 1 ? &std::cerr : nullptr;
    const std::vector<CandidateReport> rows =
        run_sweep(cfg, train_ds, test_ds, existing, jobs, log_stream);
    write_report(rows, report_path);
    out << "report with " << rows.size() << " candidate rows written to " << report_path << "\n";
    return 0;
}

int cmd_select(const std::string& report_path, double mu, const std::string& out_path,
               std::optional<std::uint64_t> mem_budget, std::optional<double> energy_budget,
               std::ostream& out, const Log& log)
{
    std::vector<CandidateReport> rows = read_report(report_path);
    SelectionConstraints constraints;
    constraints.mem_budget_bits = mem_budget;
    constraints.energy_budget_j = energy_budget;
    const std::size_t winner = apply_selection(rows, mu, constraints);
    const std::string target = out_path.empty() ? report_path : out_path;
    write_report(rows, target);
    log.debug("selection written to " + target);
    out << "selected: " << describe(rows[winner]) << "\n";
    return 0;
}

int cmd_encode_demo(const std::string& config_path, std::size_t index, const std::string& split,
                    bool full, std::ostream& out)
{
    const ExperimentConfig cfg = parse_config(config_path);
    const Dataset ds = split == "test" ? load_test(cfg) : load_train(cfg);
    const SpikeTrain train =
        encode_dataset_sample(ds, index, cfg, split == "test" ? "test-enc" : "train-enc");

    out << "sample " << index << " of " << split << " split, label "
        << static_cast<int>(ds.labels[index]) << ", " << train.total_spikes() << " spikes over "
        << train.num_steps << " steps\n";

    // Per-pixel spike counts as ASCII art (28x28 inputs only).
    if (ds.rows == 28 && ds.cols == 28) {
        std::vector<std::uint32_t> counts(train.num_inputs, 0);
        std::uint32_t max_count = 1;
        for (std::size_t t = 0; t < train.num_steps; ++t) {
            for (std::size_t i = 0; i < train.num_inputs; ++i) {
                counts[i] += train.spike(i, t);
                max_count = std::max(max_count, counts[i]);
            }
        }
        static const char shades[] = " .:-=+*#%@";
        for (std::size_t r = 0; r < 28; ++r) {
            for (std::size_t c = 0; c < 28; ++c) {
                const std::size_t level = counts[r * 28 + c] * 9 / max_count;
                out << shades[level];
            }
            out << "\n";
        }
    }
    if (full) {
        for (std::size_t t = 0; t < train.num_steps; ++t) {
            out << "t " << t << ":";
            for (std::size_t i = 0; i < train.num_inputs; ++i) {
                if (train.spike(i, t)) {
                    out << ' ' << i;
                }
            }
            out << "\n";
        }
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"tinysnn: STDP spiking-network training, fixed-point quantization "
                 "exploration and model selection"};
    app.require_subcommand(1);
    app.footer(config_key_reference());
    const Log log{err};

    std::string config_path, model_path, out_path, report_path;
    std::string wfmt = "fp32", vmemfmt = "fp32", vthfmt = "fp32", rounding = "truncate";
    std::string split = "train";
    double mu = 0.0;
    int jobs = 1;
    std::size_t index = 0;
    bool full = false;
    std::optional<std::uint64_t> mem_budget;
    std::optional<double> energy_budget;

    CLI::App* train = app.add_subcommand("train", "train the fp32 reference model and save it");
    train->add_option("--config", config_path, "experiment config file")->required();
    train->add_option("--out", out_path, "output model file")->required();

    CLI::App* eval = app.add_subcommand("eval", "measure accuracy of a saved model");
    eval->add_option("--config", config_path, "experiment config file")->required();
    eval->add_option("--model", model_path, "model file")->required();

    CLI::App* ptq = app.add_subcommand("ptq", "post-training quantization of a saved model");
    ptq->add_option("--config", config_path, "experiment config file")->required();
    ptq->add_option("--model", model_path, "trained model file")->required();
    ptq->add_option("--out", out_path, "output model file")->required();
    ptq->add_option("--wfmt", wfmt, "weight format (q-notation or fp32)");
    ptq->add_option("--vmemfmt", vmemfmt, "membrane format");
    ptq->add_option("--vthfmt", vthfmt, "threshold format");
    ptq->add_option("--rounding", rounding, "truncate|nearest|stochastic");

    CLI::App* itq = app.add_subcommand("itq", "train with in-training quantization");
    itq->add_option("--config", config_path, "experiment config file")->required();
    itq->add_option("--out", out_path, "output model file")->required();
    itq->add_option("--wfmt", wfmt, "weight format (q-notation or fp32)");
    itq->add_option("--vmemfmt", vmemfmt, "membrane format");
    itq->add_option("--vthfmt", vthfmt, "threshold format");
    itq->add_option("--rounding", rounding, "truncate|nearest|stochastic");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "run the scheme x rounding x precision x group grid into a CSV report");
    sweep->add_option("--config", config_path, "experiment config file")->required();
    sweep->add_option("--report", report_path, "CSV report path (resumed if present)")
        ->required();
    sweep->add_option("--jobs", jobs, "parallel candidates")->check(CLI::PositiveNumber);

    CLI::App* select = app.add_subcommand(
        "select", "apply the reward function to a report and mark the chosen row");
    select->add_option("--report", report_path, "CSV report from sweep")->required();
    select->add_option("--mu", mu, "trade-off coefficient (non-negative)")->required();
    select->add_option("--mem-budget-bits", mem_budget, "hard memory budget");
    select->add_option("--energy-budget-j", energy_budget, "hard inference-energy budget");
    select->add_option("--out", out_path, "write the marked report here instead of in place");

    CLI::App* demo = app.add_subcommand("encode-demo", "dump a spike raster for inspection");
    demo->add_option("--config", config_path, "experiment config file")->required();
    demo->add_option("--index", index, "sample index");
    demo->add_option("--split", split, "train|test")->check(CLI::IsMember({"train", "test"}));
    demo->add_flag("--full", full, "also print every timestep's spiking inputs");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (train->parsed()) {
            return cmd_train(config_path, out_path, out, log);
        }
        if (eval->parsed()) {
            return cmd_eval(config_path, model_path, out, log);
        }
        if (ptq->parsed()) {
            return cmd_ptq(config_path, model_path, out_path, wfmt, vmemfmt, vthfmt, rounding,
                           out, log);
        }
        if (itq->parsed()) {
            return cmd_itq(config_path, out_path, wfmt, vmemfmt, vthfmt, rounding, out, log);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, report_path, jobs, out, log);
        }
        if (select->parsed()) {
            return cmd_select(report_path, mu, out_path, mem_budget, energy_budget, out, log);
        }
        if (demo->parsed()) {
            return cmd_encode_demo(config_path, index, split, full, out);
        }
    } catch (const NoFeasibleModelError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 1;
}

int run_main(int argc, char** argv)
{
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace tinysnn::cli
