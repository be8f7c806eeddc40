// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/selection.hpp"

#include <algorithm>
#include <limits>

namespace tinysnn {

double reward(double acc_q, std::uint64_t m_q, std::uint64_t m_0, double mu)
{
    if (mu < 0.0) {
        throw std::invalid_argument("reward: mu must be a non-negative real number");
    }
    if (m_0 == 0) {
        throw std::invalid_argument("reward: reference size M_0 is zero");
    }
    return acc_q - mu * (static_cast<double>(m_q) / static_cast<double>(m_0));
}

std::size_t select_model(std::span<const CandidateReport> candidates, double mu,
                         const SelectionConstraints& constraints)
{
    if (candidates.empty()) {
        throw std::invalid_argument("select_model: no candidates");
    }
    if (mu < 0.0) {
        throw std::invalid_argument("select_model: mu must be a non-negative real number");
    }

    bool any_feasible = false;
    std::size_t best = 0;
    double best_reward = -std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const CandidateReport& c = candidates[i];
        if (constraints.mem_budget_bits && c.mem_bits > *constraints.mem_budget_bits) {
            continue;
        }
        if (constraints.energy_budget_j && c.energy_infer_j > *constraints.energy_budget_j) {
            continue;
        }
        const double r = reward(c.acc, c.mem_bits, c.mem_bits_0, mu);
        bool better = false;
        if (!any_feasible || r > best_reward) {
            better = true;
        } else if (r == best_reward) {
            const CandidateReport& b = candidates[best];
            if (c.mem_bits < b.mem_bits
                || (c.mem_bits == b.mem_bits && c.energy_infer_j < b.energy_infer_j)) {
                better = true;
            }
        }
        if (better) {
            best = i;
            best_reward = r;
            any_feasible = true;
        }
    }

    if (!any_feasible) {
        // Name the tightest violated constraint: the one whose bound is
        // furthest below the best candidate on that axis.
        std::uint64_t min_mem = std::numeric_limits<std::uint64_t>::max();
        double min_energy = std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) {
            min_mem = std::min(min_mem, c.mem_bits);
            min_energy = std::min(min_energy, c.energy_infer_j);
        }
        std::string msg = "no feasible model:";
        if (constraints.mem_budget_bits && min_mem > *constraints.mem_budget_bits) {
            msg += " memory budget " + std::to_string(*constraints.mem_budget_bits)
                   + " bits below smallest candidate " + std::to_string(min_mem) + " bits;";
        }
        if (constraints.energy_budget_j && min_energy > *constraints.energy_budget_j) {
            msg += " energy budget " + std::to_string(*constraints.energy_budget_j)
                   + " J below smallest candidate " + std::to_string(min_energy) + " J;";
        }
        if (msg == "no feasible model:") {
            msg += " budgets jointly exclude every candidate";
        }
        throw NoFeasibleModelError(msg);
    }
    return best;
}

} // namespace tinysnn
