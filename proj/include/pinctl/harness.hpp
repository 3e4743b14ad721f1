#pragma once

#include "pinctl/config.hpp"
#include "pinctl/dynamics.hpp"
#include "pinctl/generators.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/strategies.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pinctl {

/// One experiment matrix: network source, strategy roster, budgets, failure
/// grid, dynamics parameters, seeds, output directory.
struct ExperimentConfig {
    GenSpec gen;                      // used when network_path is empty
    std::string network_path;
    std::string network_name;         // derived from the source if empty

    std::vector<Strategy> strategies{Strategy::Degree, Strategy::Betweenness,
                                     Strategy::BFG, Strategy::PBO};

    /// Budget grid entries: values >= 1 are absolute counts, values in (0, 1)
    /// are fractions of N. Empty means k_points evenly spaced budgets up to
    /// k_max_fraction * N.
    std::vector<double> k_grid_raw;
    int k_points = 30;
    double k_max_fraction = 0.3;

    std::vector<double> failure_ratios{0.0, 0.1, 0.2, 0.3};
    int failure_trials = 30;

    DynamicsConfig dynamics;
    int sim_trials = 10;
    double sim_failure_ratio = 0.0;
    double sim_k = 0.1;               // absolute or fraction, as above

    std::vector<std::int64_t> bench_sizes{710, 1000, 1415, 2000, 2830};
    double bench_er_p = 0.1;
    double bench_k_fraction = 0.1;
    std::int64_t bench_bfg_n = 1000;
    std::int64_t bench_bfg_k = 100;

    std::uint64_t seed = 1;
    std::string outdir = "out";

    static ExperimentConfig from_config(const Config& cfg);
};

/// Fraction-or-absolute budget resolution: raw < 1 means round(raw * N),
/// otherwise the count itself; clamped to [1, N-1].
node_t resolve_budget(double raw, node_t n);

std::vector<node_t> resolve_k_grid(const ExperimentConfig& cfg, node_t n);

/// Materializes the configured network (generator or edge-list file) and its
/// display name.
Graph load_network(const ExperimentConfig& cfg, std::string* name_out = nullptr);

/// lambda_1-vs-k curves for every configured strategy, plus per-network
/// selection timing and, when both PBO and BFG ran, a gap report.
/// Returns the written file paths.
std::vector<std::string> run_curve_experiment(const ExperimentConfig& cfg);

/// Selection wall-times across network sizes, the fitted log-log scaling
/// exponent of PBO time vs M, and the BFG/PBO speedup at the configured size.
std::vector<std::string> run_timing_benchmark(const ExperimentConfig& cfg);

/// Mean/std of the effective lambda_1 under random pin failures over the
/// budget grid, for every strategy and failure ratio.
std::vector<std::string> run_robustness_experiment(const ExperimentConfig& cfg);

/// Coupled-oscillator sync times per strategy at one budget; trials share
/// initial conditions across strategies (paired seeds).
std::vector<std::string> run_simulation_experiment(const ExperimentConfig& cfg);

/// Curve + robustness sweeps over user-supplied edge-list files; reports the
/// lambda_1 plateau per (network, strategy). Missing files are reported
/// together in one error before any work starts.
std::vector<std::string> run_real_network_suite(const std::vector<std::string>& paths,
                                                const ExperimentConfig& cfg);

} // namespace pinctl
