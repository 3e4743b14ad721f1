// pinctl: pinning-control workbench CLI.
//
// Subcommands: generate, select, curve, simulate, robustness, bench.
// Each takes --config plus flag overrides; all randomness derives from --seed.
// Exit code 0 on success, nonzero with a diagnostic on stderr otherwise.

#include <CLI11.hpp>

#include "pinctl/csv.hpp"
#include "pinctl/errors.hpp"
#include "pinctl/generators.hpp"
#include "pinctl/harness.hpp"
#include "pinctl/kernels.hpp"
#include "pinctl/robustness.hpp"
#include "pinctl/rng.hpp"
#include "pinctl/spectral.hpp"
#include "pinctl/strategies.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace pinctl;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides; // key=value
    std::optional<std::uint64_t> seed;
    std::optional<std::string> outdir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Experiment config file");
    cmd->add_option("--set", args.overrides,
                    "Override a config entry, e.g. --set dynamics.c=20");
    cmd->add_option("--seed", args.seed, "Root seed (overrides run.seed)");
    cmd->add_option("--out", args.outdir, "Output directory (overrides run.outdir)");
}

Config build_config(const CommonArgs& args) {
    Config cfg;
    if (!args.config_path.empty()) cfg = Config::load(args.config_path);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("--set expects key=value, got: " + kv);
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (args.seed) cfg.set("run.seed", std::to_string(*args.seed));
    if (args.outdir) cfg.set("run.outdir", *args.outdir);
    return cfg;
}

void report_written(const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << "wrote " << f << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"pinning-control workbench: driver-node selection, "
                 "synchronizability curves, oscillator simulation"};
    app.require_subcommand(1);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic network edge list");
    std::string gen_model = "er";
    GenSpec gen_spec;
    std::string gen_out = "network.edges";
    std::uint64_t gen_seed = 1;
    gen_cmd->add_option("--model", gen_model, "ba | er | ws")->capture_default_str();
    gen_cmd->add_option("--n", gen_spec.n, "Node count")->required();
    gen_cmd->add_option("--ba-m", gen_spec.ba_m, "BA attachment count")->capture_default_str();
    gen_cmd->add_option("--er-p", gen_spec.er_p, "ER edge probability")->capture_default_str();
    gen_cmd->add_option("--ws-k", gen_spec.ws_k, "WS ring degree (even)")->capture_default_str();
    gen_cmd->add_option("--ws-p", gen_spec.ws_p, "WS rewiring probability")->capture_default_str();
    gen_cmd->add_flag("--connected", gen_spec.require_connected,
                      "Retry (up to 100x) until connected");
    gen_cmd->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Output edge-list file")->capture_default_str();

    // select
    auto* sel_cmd = app.add_subcommand("select", "Run one pinning strategy, emit its trace");
    CommonArgs sel_common;
    add_common(sel_cmd, sel_common);
    std::string sel_strategy = "pbo";
    double sel_k = 0.1;
    std::string sel_out = "trace.csv";
    sel_cmd->add_option("--strategy", sel_strategy, "degree | betweenness | bfg | pbo")
        ->capture_default_str();
    sel_cmd->add_option("--k", sel_k, "Budget: count (>=1) or fraction of N (<1)")
        ->capture_default_str();
    sel_cmd->add_option("--trace-out", sel_out, "Trace CSV path")->capture_default_str();
    std::string sel_file;
    sel_cmd->add_option("--file", sel_file, "Edge-list file (instead of a generator)");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "lambda_1-vs-k curves for all strategies");
    CommonArgs curve_common;
    add_common(curve_cmd, curve_common);
    std::vector<std::string> real_paths;
    curve_cmd->add_option("--real", real_paths,
                          "Run the real-network suite over these edge-list files");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Coupled-oscillator sync-time experiment");
    CommonArgs sim_common;
    add_common(sim_cmd, sim_common);

    // robustness
    auto* rob_cmd = app.add_subcommand("robustness", "Effective lambda_1 under pin failures");
    CommonArgs rob_common;
    add_common(rob_cmd, rob_common);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Selection timing across network sizes");
    CommonArgs bench_common;
    add_common(bench_cmd, bench_common);

    CLI11_PARSE(app, argc, argv);

    if (gen_cmd->parsed()) {
        gen_spec.model = model_from_name(gen_model);
        gen_spec.seed = gen_seed;
        gen_spec.validate();
        const Graph g = generate(gen_spec);
        write_edge_list_file(g, gen_out);
        std::cout << "generated " << gen_spec.describe() << ": N=" << g.node_count()
                  << " M=" << g.edge_count() << " degree=[" << g.min_degree() << ","
                  << g.max_degree() << "] -> " << gen_out << '\n';
        return 0;
    }

    if (sel_cmd->parsed()) {
        Config cfg = build_config(sel_common);
        if (!sel_file.empty()) cfg.set("network.path", sel_file);
        ExperimentConfig exp = ExperimentConfig::from_config(cfg);
        std::string name;
        const Graph g = load_network(exp, &name);
        const node_t k = resolve_budget(sel_k, g.node_count());
        const SelectionTrace trace = select(g, strategy_from_name(sel_strategy), k);

        Csv csv(sel_out, "strategy,step,node_label,lambda1,score,elapsed_ms");
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const auto& s = trace.steps[i];
            csv.row(strategy_name(trace.strategy), i + 1, g.label(s.node), s.lambda1,
                    s.score, s.elapsed_ms);
        }
        csv.close();
        std::cout << name << " " << sel_strategy << " k=" << k
                  << " lambda1=" << fmt_double(trace.steps.back().lambda1) << " -> "
                  << sel_out << '\n';
        return 0;
    }

    if (curve_cmd->parsed()) {
        const ExperimentConfig exp = ExperimentConfig::from_config(build_config(curve_common));
        report_written(real_paths.empty() ? run_curve_experiment(exp)
                                          : run_real_network_suite(real_paths, exp));
        return 0;
    }

    if (sim_cmd->parsed()) {
        const ExperimentConfig exp = ExperimentConfig::from_config(build_config(sim_common));
        report_written(run_simulation_experiment(exp));
        return 0;
    }

    if (rob_cmd->parsed()) {
        const ExperimentConfig exp = ExperimentConfig::from_config(build_config(rob_common));
        report_written(run_robustness_experiment(exp));
        return 0;
    }

    if (bench_cmd->parsed()) {
        const ExperimentConfig exp = ExperimentConfig::from_config(build_config(bench_common));
        report_written(run_timing_benchmark(exp));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "pinctl: error: " << e.what() << '\n';
        return 1;
    }
}
