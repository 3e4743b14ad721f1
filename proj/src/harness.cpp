#include "pinctl/harness.hpp"

#include "pinctl/csv.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/robustness.hpp"
#include "pinctl/rng.hpp"
#include "pinctl/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>

namespace pinctl {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string out_path(const ExperimentConfig& cfg, const std::string& file) {
    fs::create_directories(cfg.outdir);
    return (fs::path(cfg.outdir) / file).string();
}

double trace_total_ms(const SelectionTrace& trace) {
    double total = 0.0;
    for (const auto& s : trace.steps) total += s.elapsed_ms;
    return total;
}

std::string sync_time_field(const TrajectorySummary& s) {
    return s.sync_time ? fmt_double(*s.sync_time)
                       : fmt_double(std::numeric_limits<double>::infinity());
}

} // namespace

ExperimentConfig ExperimentConfig::from_config(const Config& c) {
    ExperimentConfig e;

    e.network_path = c.get("network.path", "");
    if (e.network_path.empty()) {
        e.gen.model = model_from_name(c.get("network.model", "er"));
        e.gen.n = static_cast<node_t>(c.get_int("network.n", 1000));
        e.gen.ba_m = static_cast<node_t>(c.get_int("network.ba_m", 3));
        e.gen.er_p = c.get_double("network.er_p", 0.1);
        e.gen.ws_k = static_cast<node_t>(c.get_int("network.ws_k", 10));
        e.gen.ws_p = c.get_double("network.ws_p", 0.1);
        e.gen.require_connected = c.get_bool("network.connected", false);
    }
    e.network_name = c.get("network.name", "");

    if (c.has("selection.strategies")) {
        e.strategies.clear();
        for (const auto& s : c.get_list("selection.strategies")) {
            e.strategies.push_back(strategy_from_name(s));
        }
    }
    e.k_grid_raw = c.get_double_list("selection.k_grid");
    e.k_points = static_cast<int>(c.get_int("selection.k_points", e.k_points));
    e.k_max_fraction = c.get_double("selection.k_max_fraction", e.k_max_fraction);

    if (c.has("robustness.ratios")) e.failure_ratios = c.get_double_list("robustness.ratios");
    e.failure_trials = static_cast<int>(c.get_int("robustness.trials", e.failure_trials));

    e.dynamics.c = c.get_double("dynamics.c", e.dynamics.c);
    e.dynamics.gain = c.get_double("dynamics.gain", e.dynamics.gain);
    e.dynamics.chen.p1 = c.get_double("dynamics.p1", e.dynamics.chen.p1);
    e.dynamics.chen.p2 = c.get_double("dynamics.p2", e.dynamics.chen.p2);
    e.dynamics.chen.p3 = c.get_double("dynamics.p3", e.dynamics.chen.p3);
    e.dynamics.variant =
        chen_variant_from_name(c.get("dynamics.chen_variant", chen_variant_name(e.dynamics.variant)));
    e.dynamics.dt = c.get_double("dynamics.dt", e.dynamics.dt);
    e.dynamics.t_max = c.get_double("dynamics.t_max", e.dynamics.t_max);
    e.dynamics.eps = c.get_double("dynamics.eps", e.dynamics.eps);
    e.dynamics.init_box = c.get_double("dynamics.init_box", e.dynamics.init_box);
    e.sim_trials = static_cast<int>(c.get_int("simulate.trials", e.sim_trials));
    e.sim_failure_ratio = c.get_double("simulate.failure_ratio", e.sim_failure_ratio);
    e.sim_k = c.get_double("simulate.k", e.sim_k);

    if (c.has("bench.sizes")) {
        e.bench_sizes.clear();
        for (double v : c.get_double_list("bench.sizes")) {
            e.bench_sizes.push_back(static_cast<std::int64_t>(v));
        }
    }
    e.bench_er_p = c.get_double("bench.er_p", e.bench_er_p);
    e.bench_k_fraction = c.get_double("bench.k_fraction", e.bench_k_fraction);
    e.bench_bfg_n = c.get_int("bench.bfg_n", e.bench_bfg_n);
    e.bench_bfg_k = c.get_int("bench.bfg_k", e.bench_bfg_k);

    e.seed = c.get_u64("run.seed", e.seed);
    e.outdir = c.get("run.outdir", e.outdir);
    return e;
}

node_t resolve_budget(double raw, node_t n) {
    double k = raw < 1.0 ? std::floor(raw * static_cast<double>(n) + 0.5) : std::floor(raw);
    k = std::clamp(k, 1.0, static_cast<double>(n - 1));
    return static_cast<node_t>(k);
}

std::vector<node_t> resolve_k_grid(const ExperimentConfig& cfg, node_t n) {
    std::vector<node_t> grid;
    if (!cfg.k_grid_raw.empty()) {
        for (double raw : cfg.k_grid_raw) grid.push_back(resolve_budget(raw, n));
    } else {
        const node_t k_max = resolve_budget(cfg.k_max_fraction, n);
        const int points = std::max(1, cfg.k_points);
        for (int i = 1; i <= points; ++i) {
            grid.push_back(resolve_budget(
                std::max(1.0, std::floor(static_cast<double>(i) * k_max / points + 0.5)), n));
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

Graph load_network(const ExperimentConfig& cfg, std::string* name_out) {
    if (!cfg.network_path.empty()) {
        if (!fs::exists(cfg.network_path)) {
            throw Error("network file not found: " + cfg.network_path);
        }
        LoadResult r = load_edge_list_file(cfg.network_path);
        if (name_out) {
            *name_out = cfg.network_name.empty() ? fs::path(cfg.network_path).stem().string()
                                                 : cfg.network_name;
        }
        return std::move(r.graph);
    }
    GenSpec spec = cfg.gen;
    spec.seed = derive_seed(cfg.seed, "generator");
    Graph g = generate(spec);
    if (name_out) *name_out = cfg.network_name.empty() ? spec.describe() : cfg.network_name;
    return g;
}

namespace {

/// Runs every configured strategy to its grid maximum, once.
std::map<Strategy, SelectionTrace> run_strategies(const Graph& g,
                                                  const std::vector<Strategy>& strategies,
                                                  node_t k_max) {
    std::map<Strategy, SelectionTrace> traces;
    for (Strategy s : strategies) traces.emplace(s, select(g, s, k_max));
    return traces;
}

} // namespace

std::vector<std::string> run_curve_experiment(const ExperimentConfig& cfg) {
    std::string name;
    const Graph g = load_network(cfg, &name);
    const std::vector<node_t> grid = resolve_k_grid(cfg, g.node_count());
    const node_t k_max = grid.back();

    const auto traces = run_strategies(g, cfg.strategies, k_max);

    std::vector<std::string> written;
    for (const auto& [s, trace] : traces) {
        Csv csv(out_path(cfg, "curve_" + name + "_" + strategy_name(s) + ".csv"),
                "strategy,k,lambda1");
        for (node_t k : grid) {
            csv.row(strategy_name(s), k, trace.steps[k - 1].lambda1);
        }
        csv.close();
        written.push_back(csv.path());
    }

    {
        Csv csv(out_path(cfg, "timing_" + name + ".csv"), "strategy,n,m,k,selection_ms");
        for (const auto& [s, trace] : traces) {
            csv.row(strategy_name(s), g.node_count(), g.edge_count(), k_max,
                    trace_total_ms(trace));
        }
        csv.close();
        written.push_back(csv.path());
    }

    if (traces.contains(Strategy::PBO) && traces.contains(Strategy::BFG)) {
        const auto& pbo = traces.at(Strategy::PBO);
        const auto& bfg = traces.at(Strategy::BFG);
        Csv csv(out_path(cfg, "gap_" + name + ".csv"), "k,lambda1_bfg,lambda1_pbo,gap");
        for (node_t k : grid) {
            const double lb = bfg.steps[k - 1].lambda1;
            const double lp = pbo.steps[k - 1].lambda1;
            csv.row(k, lb, lp, lp - lb);
        }
        csv.close();
        written.push_back(csv.path());
    }
    return written;
}

std::vector<std::string> run_robustness_experiment(const ExperimentConfig& cfg) {
    std::string name;
    const Graph g = load_network(cfg, &name);
    const std::vector<node_t> grid = resolve_k_grid(cfg, g.node_count());
    const auto traces = run_strategies(g, cfg.strategies, grid.back());

    Csv csv(out_path(cfg, "robustness_" + name + ".csv"),
            "strategy,k,failure_ratio,lambda1_mean,lambda1_std,trials");
    for (const auto& [s, trace] : traces) {
        for (double ratio : cfg.failure_ratios) {
            const RobustnessCurve curve = robustness_curve_from_trace(
                g, trace, grid, ratio, cfg.failure_trials, cfg.seed);
            for (const auto& row : curve.rows) {
                csv.row(strategy_name(s), row.k, row.failure_ratio, row.lambda1_mean,
                        row.lambda1_std, row.trials);
            }
        }
    }
    csv.close();
    return {csv.path()};
}

std::vector<std::string> run_simulation_experiment(const ExperimentConfig& cfg) {
    std::string name;
    const Graph g = load_network(cfg, &name);
    const node_t k = resolve_budget(cfg.sim_k, g.node_count());
    const double ratio = cfg.sim_failure_ratio;

    Csv csv(out_path(cfg, "sim_" + name + ".csv"),
            "strategy,k,seed,failure_ratio,sync_time,final_error,lambda1");
    for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
        const Strategy s = cfg.strategies[si];
        const SelectionTrace trace = select(g, s, k);
        const PinSet pins = trace.pins();
        for (int trial = 0; trial < cfg.sim_trials; ++trial) {
            // Initial conditions are paired across strategies: the stream
            // depends on the trial only.
            DynamicsConfig dyn = cfg.dynamics;
            dyn.seed = derive_seed(cfg.seed, "sim.init", trial);
            const FailureMask mask =
                ratio > 0.0
                    ? apply_failures(pins, ratio, derive_seed(cfg.seed, "sim.fail", si, trial))
                    : FailureMask::none(pins.size());
            const TrajectorySummary sum = simulate(g, pins, dyn, mask);
            const double lambda = ratio > 0.0 ? effective_lambda1(g, pins, mask)
                                              : trace.steps.back().lambda1;
            csv.row(strategy_name(s), k, dyn.seed, ratio, sync_time_field(sum),
                    sum.final_error, lambda);
        }
    }
    csv.close();
    return {csv.path()};
}

std::vector<std::string> run_timing_benchmark(const ExperimentConfig& cfg) {
    if (cfg.bench_sizes.size() < 3) {
        throw Error("timing benchmark needs at least 3 network sizes");
    }

    struct Measurement {
        Strategy strategy;
        node_t n;
        std::int64_t m;
        node_t k;
        double ms;
    };
    std::vector<Measurement> rows;

    SelectOptions timing_opts;
    timing_opts.with_trace_lambda = false; // centrality selection cost only

    auto time_selection = [&](const Graph& g, Strategy s, node_t k, bool warmup) -> double {
        const SelectOptions& opts =
            (s == Strategy::Degree || s == Strategy::Betweenness) ? timing_opts : SelectOptions{};
        if (warmup) (void)select(g, s, k, opts);
        const auto t0 = Clock::now();
        (void)select(g, s, k, opts);
        return ms_since(t0);
    };

    std::vector<double> log_m, log_t; // PBO size sweep, for the scaling fit
    for (std::int64_t size : cfg.bench_sizes) {
        const Graph g = gen_er(static_cast<node_t>(size), cfg.bench_er_p,
                               derive_seed(cfg.seed, "bench.net", size));
        const node_t k = resolve_budget(cfg.bench_k_fraction, g.node_count());
        for (Strategy s : {Strategy::Degree, Strategy::Betweenness, Strategy::PBO}) {
            const double ms = time_selection(g, s, k, /*warmup=*/true);
            rows.push_back({s, g.node_count(), g.edge_count(), k, ms});
            if (s == Strategy::PBO) {
                log_m.push_back(std::log(static_cast<double>(g.edge_count())));
                log_t.push_back(std::log(std::max(ms, 1e-6)));
            }
        }
    }

    // BFG/PBO head-to-head at the configured size; BFG runs are long, no
    // warm-up pass.
    double bfg_ms = 0.0, pbo_ms = 0.0;
    {
        const Graph g = gen_er(static_cast<node_t>(cfg.bench_bfg_n), cfg.bench_er_p,
                               derive_seed(cfg.seed, "bench.net", cfg.bench_bfg_n));
        const node_t k = static_cast<node_t>(cfg.bench_bfg_k);
        pbo_ms = time_selection(g, Strategy::PBO, k, /*warmup=*/true);
        bfg_ms = time_selection(g, Strategy::BFG, k, /*warmup=*/false);
        rows.push_back({Strategy::PBO, g.node_count(), g.edge_count(), k, pbo_ms});
        rows.push_back({Strategy::BFG, g.node_count(), g.edge_count(), k, bfg_ms});
    }

    std::vector<std::string> written;
    {
        Csv csv(out_path(cfg, "bench_times.csv"), "strategy,n,m,k,selection_ms");
        for (const auto& r : rows) {
            csv.row(strategy_name(r.strategy), r.n, r.m, r.k, r.ms);
        }
        csv.close();
        written.push_back(csv.path());
    }

    // log-log fit of PBO selection time against M over the size sweep
    double exponent = 0.0;
    if (log_m.size() >= 2) {
        const double mx = std::accumulate(log_m.begin(), log_m.end(), 0.0) / log_m.size();
        const double my = std::accumulate(log_t.begin(), log_t.end(), 0.0) / log_t.size();
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < log_m.size(); ++i) {
            num += (log_m[i] - mx) * (log_t[i] - my);
            den += (log_m[i] - mx) * (log_m[i] - mx);
        }
        exponent = num / den;
    }

    {
        Csv csv(out_path(cfg, "bench_summary.csv"), "metric,value");
        csv.row("pbo_time_vs_m_exponent", exponent);
        csv.row("bfg_pbo_speedup", bfg_ms / std::max(pbo_ms, 1e-9));
        csv.row("bfg_ms", bfg_ms);
        csv.row("pbo_ms", pbo_ms);
        csv.close();
        written.push_back(csv.path());
    }
    return written;
}

std::vector<std::string> run_real_network_suite(const std::vector<std::string>& paths,
                                                const ExperimentConfig& cfg) {
    if (paths.empty()) throw Error("real network suite: no dataset files given");
    std::string missing;
    for (const auto& p : paths) {
        if (!fs::exists(p)) missing += (missing.empty() ? "" : ", ") + p;
    }
    if (!missing.empty()) throw Error("missing dataset files: " + missing);

    std::vector<std::string> written;
    Csv summary(out_path(cfg, "real_summary.csv"),
                "network,n,m,min_degree,max_degree,strategy,k_max,lambda1_plateau");

    for (const auto& path : paths) {
        ExperimentConfig sub = cfg;
        sub.network_path = path;
        sub.network_name = fs::path(path).stem().string();

        std::string name;
        const Graph g = load_network(sub, &name);
        const std::vector<node_t> grid = resolve_k_grid(sub, g.node_count());
        const auto traces = run_strategies(g, sub.strategies, grid.back());

        for (const auto& [s, trace] : traces) {
            Csv csv(out_path(cfg, "curve_" + name + "_" + strategy_name(s) + ".csv"),
                    "strategy,k,lambda1");
            for (node_t k : grid) csv.row(strategy_name(s), k, trace.steps[k - 1].lambda1);
            csv.close();
            written.push_back(csv.path());
            summary.row(name, g.node_count(), g.edge_count(), g.min_degree(), g.max_degree(),
                        strategy_name(s), grid.back(), trace.steps[grid.back() - 1].lambda1);
        }

        Csv rob(out_path(cfg, "robustness_" + name + ".csv"),
                "strategy,k,failure_ratio,lambda1_mean,lambda1_std,trials");
        for (const auto& [s, trace] : traces) {
            for (double ratio : sub.failure_ratios) {
                if (ratio <= 0.0) continue;
                const RobustnessCurve curve = robustness_curve_from_trace(
                    g, trace, grid, ratio, sub.failure_trials, sub.seed);
                for (const auto& row : curve.rows) {
                    rob.row(strategy_name(s), row.k, row.failure_ratio, row.lambda1_mean,
                            row.lambda1_std, row.trials);
                }
            }
        }
        rob.close();
        written.push_back(rob.path());
    }
    summary.close();
    written.push_back(summary.path());
    return written;
}

} // namespace pinctl
