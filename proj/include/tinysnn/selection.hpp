// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinysnn/fixed_point.hpp"
#include "tinysnn/quant.hpp"

namespace tinysnn {

/// One explored configuration with its measured accuracy and modeled costs.
struct CandidateReport {
    std::string dataset;
    QuantScheme scheme = QuantScheme::PTQ;
    RoundingMode rounding = RoundingMode::Truncate;
    std::optional<FixedPointFormat> wfmt; // nullopt = fp32
    std::optional<FixedPointFormat> vmemfmt;
    std::optional<FixedPointFormat> vthfmt;
    double acc = 0.0;              // accuracy in [0, 1]
    std::uint64_t mem_bits = 0;    // M_q
    std::uint64_t mem_bits_0 = 0;  // M_0, fp32 reference of the same topology
    double mem_norm = 0.0;         // M_q / M_0
    double energy_train_j = 0.0;
    double energy_infer_j = 0.0;
    double mu = 0.0;
    double reward = 0.0;
    bool selected = false;
};

/// R = acc_q - mu * M_q / M_0. Throws for mu < 0 or M_0 == 0.
double reward(double acc_q, std::uint64_t m_q, std::uint64_t m_0, double mu);

struct SelectionConstraints {
    std::optional<std::uint64_t> mem_budget_bits;   // M_q must not exceed this
    std::optional<double> energy_budget_j;          // inference energy must not exceed this
};

class NoFeasibleModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Drops candidates that violate a budget, recomputes R with the given mu for
/// the survivors and returns the index of the maximum. Ties break toward the
/// smaller M_q, then the smaller inference energy, then the earlier input
/// position. Throws NoFeasibleModelError (naming the binding constraint) when
/// nothing survives, and std::invalid_argument on an empty candidate list.
std::size_t select_model(std::span<const CandidateReport> candidates, double mu,
                         const SelectionConstraints& constraints = {});

} // namespace tinysnn
