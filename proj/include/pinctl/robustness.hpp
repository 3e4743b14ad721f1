#pragma once

#include "pinctl/dynamics.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/strategies.hpp"

#include <cstdint>
#include <vector>

namespace pinctl {

/// Marks round(ratio * |pins|) distinct pinned nodes as failed, chosen
/// uniformly. Deterministic per (pins, ratio, seed).
FailureMask apply_failures(const PinSet& pins, double ratio, std::uint64_t seed);

/// lambda_1 of the grounded view in which only the surviving pins are
/// removed; failed pins rejoin the unpinned set. All pins failed on a
/// connected graph yields 0 (the full Laplacian).
double effective_lambda1(const Graph& g, const PinSet& pins, const FailureMask& mask);

struct RobustnessRow {
    node_t k = 0;
    double failure_ratio = 0.0;
    double lambda1_mean = 0.0;
    double lambda1_std = 0.0;
    int trials = 0;
};

struct RobustnessCurve {
    Strategy strategy;
    std::vector<RobustnessRow> rows;
};

/// For each budget in k_list: selects pins once (budgets are prefixes of one
/// deterministic trace), then draws `trials` independent failure masks and
/// aggregates the effective lambda_1. Trials use the sub-streams
/// (seed, "failures", k, trial).
RobustnessCurve robustness_curve(const Graph& g, Strategy strategy,
                                 const std::vector<node_t>& k_list, double ratio,
                                 int trials, std::uint64_t seed);

/// Same aggregation against a precomputed trace (avoids re-running the
/// strategy when several ratios share it).
RobustnessCurve robustness_curve_from_trace(const Graph& g, const SelectionTrace& trace,
                                            const std::vector<node_t>& k_list, double ratio,
                                            int trials, std::uint64_t seed);

} // namespace pinctl
