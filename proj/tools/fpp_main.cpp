// Command-line front end: reproducible flooding / diameter / pair / explore /
// couple-check experiments plus the closed-form constants, CSV or JSON out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpp/fpp.hpp"

namespace {

struct CliOptions {
    fpp::ExperimentConfig cfg;
    std::string out_file;
    std::string dump_graph_file;
};

void add_common_options(CLI::App* cmd, CliOptions& opt, bool needs_n) {
    cmd->add_option("--d", opt.cfg.d, "vertex degree (>= 3)")->capture_default_str();
    auto* n_opt = cmd->add_option("--n", opt.cfg.n_grid, "graph size; repeat for a grid");
    if (needs_n) n_opt->required();
    cmd->add_option("--trials", opt.cfg.trials, "trials per n")->capture_default_str();
    cmd->add_option("--seed", opt.cfg.master_seed, "64-bit master seed")->capture_default_str();
    cmd->add_option("--simple-mode", opt.cfg.simple_mode,
                    "reject: uniform simple graph; multigraph: raw configuration model")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, fpp::SimpleMode>{{"reject", fpp::SimpleMode::reject},
                                                   {"multigraph", fpp::SimpleMode::multigraph}}))
        ->default_str("reject");
    cmd->add_option("--output", opt.cfg.output, "csv or json")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, fpp::OutputFormat>{{"csv", fpp::OutputFormat::csv},
                                                     {"json", fpp::OutputFormat::json}}))
        ->default_str("csv");
    cmd->add_option("--out-file", opt.out_file, "write records here instead of stdout");
    cmd->add_option("--all-pairs-cap", opt.cfg.all_pairs_cap,
                    "largest n allowed in diameter mode")
        ->capture_default_str();
    cmd->add_option("--max-attempts", opt.cfg.max_attempts, "simple-graph rejection budget")
        ->capture_default_str();
    cmd->add_option("--threads", opt.cfg.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    cmd->add_flag("--timing", opt.cfg.timing,
                  "record real wall_ms per trial (makes output bytes run-dependent)");
}

// Records go to --out-file or stdout; the summary table goes to stderr.
template <typename WriteFn>
int with_output(const CliOptions& opt, WriteFn&& write) {
    if (opt.out_file.empty()) {
        write(std::cout);
        return 0;
    }
    std::ofstream out(opt.out_file, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << opt.out_file << " for writing\n";
        return 1;
    }
    write(out);
    return 0;
}

void maybe_dump_graph(const CliOptions& opt) {
    if (opt.dump_graph_file.empty()) return;
    const std::int64_t n = opt.cfg.n_grid.front();
    const std::uint64_t seed = fpp::derive_seed(opt.cfg.master_seed, static_cast<std::uint64_t>(n), 0);
    auto rng = fpp::make_rng(seed);
    fpp::RegularMultigraph g =
        opt.cfg.simple_mode == fpp::SimpleMode::reject
            ? fpp::sample_simple(static_cast<fpp::Vertex>(n), opt.cfg.d, rng, opt.cfg.max_attempts).graph
            : fpp::sample_pairing(static_cast<fpp::Vertex>(n), opt.cfg.d, rng);
    const fpp::WeightedGraph wg = fpp::assign_weights(std::move(g), rng);
    std::ofstream out(opt.dump_graph_file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + opt.dump_graph_file + " for writing");
    fpp::dump_edge_list(out, wg.graph, seed, &wg.weights);
}

int run_records_mode(const CliOptions& opt) {
    const fpp::RunResult result = fpp::run(opt.cfg);
    maybe_dump_graph(opt);
    const int rc = with_output(opt, [&](std::ostream& os) {
        if (opt.cfg.output == fpp::OutputFormat::csv)
            fpp::write_csv(os, opt.cfg, result.records);
        else
            fpp::write_json(os, result.records);
    });
    if (rc != 0) return rc;
    fpp::print_summary(std::cerr, result.summary);
    if (result.disconnected_resamples > 0)
        std::cerr << "note: resampled " << result.disconnected_resamples
                  << " disconnected graph(s)\n";
    if (result.couple_check_dropped > 0)
        std::cerr << "note: dropped " << result.couple_check_dropped
                  << " exploration run(s) that died before k\n";
    return 0;
}

int run_explore_mode(const CliOptions& opt) {
    const std::vector<fpp::ExploreTrial> trials = fpp::run_explore(opt.cfg);
    return with_output(opt, [&](std::ostream& os) {
        if (opt.cfg.output == fpp::OutputFormat::csv)
            fpp::write_trace_export(os, opt.cfg, trials);
        else
            fpp::write_trace_json(os, trials);
    });
}

int run_constants_mode(const CliOptions& opt) {
    const fpp::ThresholdConstants c = fpp::theory_constants(opt.cfg.d);
    nlohmann::ordered_json j{{"d", c.d},
                             {"gamma", c.gamma},
                             {"alpha_star", c.alpha_star},
                             {"alpha_hat", c.alpha_hat},
                             {"flood_weight_const", c.flood_weight_const},
                             {"diam_weight_const", c.diam_weight_const}};
    return with_output(opt, [&](std::ostream& os) { os << j.dump(1) << '\n'; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"first passage percolation experiments on random d-regular graphs"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* flood = app.add_subcommand("flood", "max hops and weighted eccentricity from vertex 0");
    add_common_options(flood, opt, true);
    flood->add_option("--dump-graph", opt.dump_graph_file,
                      "also dump the first trial's weighted edge list to this file");

    auto* diameter = app.add_subcommand("diameter", "hop and weighted diameter over all pairs");
    add_common_options(diameter, opt, true);

    auto* pair = app.add_subcommand("pair", "hops and distance between vertex 0 and a uniform vertex");
    add_common_options(pair, opt, true);
    pair->add_option("--dump-graph", opt.dump_graph_file,
                     "also dump the first trial's weighted edge list to this file");

    auto* explore = app.add_subcommand("explore", "continuous-time ball exploration traces");
    add_common_options(explore, opt, true);
    explore->add_option("--k-max", opt.cfg.k_max, "steps per trace (default n-1)");

    auto* couple = app.add_subcommand(
        "couple-check", "TV distance between exploration hopcounts and the Bernoulli-sum sampler");
    add_common_options(couple, opt, true);
    couple->add_option("--k", opt.cfg.k_list, "hopcount stages to compare; repeatable")
        ->capture_default_str();

    auto* constants = app.add_subcommand("constants", "closed-form constants for a degree");
    constants->add_option("--d", opt.cfg.d, "vertex degree (>= 3)")->capture_default_str();
    constants->add_option("--out-file", opt.out_file, "write the JSON object here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (flood->parsed()) opt.cfg.mode = fpp::Mode::flood;
        if (diameter->parsed()) opt.cfg.mode = fpp::Mode::diameter;
        if (pair->parsed()) opt.cfg.mode = fpp::Mode::pair;
        if (explore->parsed()) opt.cfg.mode = fpp::Mode::explore;
        if (couple->parsed()) opt.cfg.mode = fpp::Mode::couple_check;
        if (constants->parsed()) return run_constants_mode(opt);
        if (explore->parsed()) return run_explore_mode(opt);
        return run_records_mode(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
