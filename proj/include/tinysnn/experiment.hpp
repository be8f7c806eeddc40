// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string_view>

#include "tinysnn/config.hpp"
#include "tinysnn/data_io.hpp"
#include "tinysnn/evaluation.hpp"
#include "tinysnn/quant.hpp"
#include "tinysnn/selection.hpp"

namespace tinysnn {

/// Encodes one dataset image with a seed derived from (config seed, stream,
/// index); the same triple always yields the same raster, independent of
/// execution order.
SpikeTrain encode_dataset_sample(const Dataset& ds, std::size_t index,
                                 const ExperimentConfig& cfg, std::string_view stream);

SampleSource make_sample_source(const Dataset& ds, const ExperimentConfig& cfg,
                                std::string_view stream);

LabeledSampleSource make_labeled_source(const Dataset& ds, const ExperimentConfig& cfg,
                                        std::string_view stream);

QuantConfig make_quant_config(QuantScheme scheme, RoundingMode rounding,
                              const PrecisionLevel& level, QuantGroups groups);

struct TrainOutcome {
    NetworkModel model;
    TrainStats stats;
};

/// Random init (seeded) plus one epoch over the first train_samples images.
/// An all-fp32 quant config gives the plain fp32 reference model.
TrainOutcome train_pipeline(const ExperimentConfig& cfg, const Dataset& train_ds,
                            const QuantConfig& quant);

struct EvalOutcome {
    double accuracy = 0.0;
    NeuronLabelMap labels;
    OpCounts test_ops; // test pass only; basis for the inference energy figure
};

/// Labels neurons on the first label_samples training images, then measures
/// accuracy on the first test_samples test images. Learning off, theta frozen.
EvalOutcome eval_pipeline(NetworkModel& model, const ExperimentConfig& cfg,
                          const Dataset& train_ds, const Dataset& test_ds);

/// Builds one report row for a trained+evaluated candidate.
CandidateReport make_candidate_report(const ExperimentConfig& cfg, const NetworkModel& model,
                                      const QuantConfig& quant, double accuracy,
                                      const TrainStats& train_stats, const OpCounts& test_ops,
                                      double mu);

/// Runs the config's scheme x rounding x level x group grid. Rows present in
/// `existing` (matched by dataset/scheme/rounding/format tuple) are reused
/// verbatim; missing ones are computed, `jobs` candidates at a time. Row
/// order is the deterministic grid order regardless of schedule.
std::vector<CandidateReport> run_sweep(const ExperimentConfig& cfg, const Dataset& train_ds,
                                       const Dataset& test_ds,
                                       const std::vector<CandidateReport>& existing, int jobs,
                                       std::ostream* log);

/// Recomputes mu/reward on every row and marks exactly the selected one.
/// Returns the winning index (throws NoFeasibleModelError like select_model).
std::size_t apply_selection(std::vector<CandidateReport>& rows, double mu,
                            const SelectionConstraints& constraints);

} // namespace tinysnn
