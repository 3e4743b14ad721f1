#include "pinctl/robustness.hpp"

#include "pinctl/errors.hpp"
#include "pinctl/parallel.hpp"
#include "pinctl/rng.hpp"
#include "pinctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pinctl {

FailureMask apply_failures(const PinSet& pins, double ratio, std::uint64_t seed) {
    if (ratio < 0.0 || ratio > 1.0) throw Error("failure ratio must be in [0, 1]");
    const std::size_t n = pins.members.size();
    const auto failures =
        static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));

    FailureMask mask;
    mask.beta.assign(n, 0);
    if (failures == 0) return mask;

    // Partial Fisher-Yates over the pin positions.
    RandomStream rng(derive_seed(seed, "failures.draw"));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < failures; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(idx[i], idx[j]);
        mask.beta[idx[i]] = 1;
    }
    return mask;
}

double effective_lambda1(const Graph& g, const PinSet& pins, const FailureMask& mask) {
    if (mask.beta.size() != pins.members.size()) {
        throw Error("effective_lambda1: mask length does not match pin set");
    }
    PinSet surviving;
    surviving.origin = pins.origin;
    for (std::size_t i = 0; i < pins.members.size(); ++i) {
        if (mask.beta[i] == 0) surviving.members.push_back(pins.members[i]);
    }
    if (surviving.members.size() == pins.members.size()) {
        return smallest_eigenpair(GroundedView(g, pins)).lambda1;
    }
    if (static_cast<node_t>(surviving.members.size()) == g.node_count()) {
        throw Error("effective_lambda1: all nodes pinned");
    }
    return smallest_eigenpair(GroundedView(g, surviving)).lambda1;
}

RobustnessCurve robustness_curve_from_trace(const Graph& g, const SelectionTrace& trace,
                                            const std::vector<node_t>& k_list, double ratio,
                                            int trials, std::uint64_t seed) {
    if (trials < 1) throw Error("robustness_curve: trials must be >= 1");
    RobustnessCurve curve;
    curve.strategy = trace.strategy;
    for (node_t k : k_list) {
        if (k < 1 || static_cast<std::size_t>(k) > trace.steps.size()) {
            throw Error("robustness_curve: budget outside the computed trace");
        }
        const PinSet pins = trace.prefix(k).pins();
        std::vector<double> lambda(trials);
        parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
            const FailureMask mask =
                apply_failures(pins, ratio, derive_seed(seed, "failures", k, t));
            lambda[t] = effective_lambda1(g, pins, mask);
        });
        RobustnessRow row;
        row.k = k;
        row.failure_ratio = ratio;
        row.trials = trials;
        row.lambda1_mean =
            std::accumulate(lambda.begin(), lambda.end(), 0.0) / static_cast<double>(trials);
        if (trials > 1) {
            double ss = 0.0;
            for (double v : lambda) ss += (v - row.lambda1_mean) * (v - row.lambda1_mean);
            row.lambda1_std = std::sqrt(ss / static_cast<double>(trials - 1));
        }
        curve.rows.push_back(row);
    }
    return curve;
}

RobustnessCurve robustness_curve(const Graph& g, Strategy strategy,
                                 const std::vector<node_t>& k_list, double ratio,
                                 int trials, std::uint64_t seed) {
    if (k_list.empty()) throw Error("robustness_curve: empty budget list");
    const node_t k_max = *std::max_element(k_list.begin(), k_list.end());
    const SelectionTrace trace = select(g, strategy, k_max);
    return robustness_curve_from_trace(g, trace, k_list, ratio, trials, seed);
}

} // namespace pinctl
