#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fpp/constants.hpp"
#include "fpp/exploration.hpp"
#include "fpp/graph.hpp"
#include "fpp/shortest_path.hpp"
#include "fpp/weights.hpp"

namespace fpp {

// Experiment drivers. Every trial draws from a private stream seeded by
// derive_seed(master_seed, n, trial), so runs are reproducible and
// independent of worker scheduling; records are merged in trial order.
//
// The `constants` CLI subcommand delegates straight to theory_constants and
// prints one JSON object, so it does not go through run().

enum class Mode { flood, diameter, pair, explore, couple_check, constants };
enum class SimpleMode { reject, multigraph };
enum class OutputFormat { csv, json };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::flood: return "flood";
        case Mode::diameter: return "diameter";
        case Mode::pair: return "pair";
        case Mode::explore: return "explore";
        case Mode::couple_check: return "couple-check";
        case Mode::constants: return "constants";
    }
    return "?";
}

inline const char* to_string(SimpleMode m) {
    return m == SimpleMode::reject ? "reject" : "multigraph";
}

struct ExperimentConfig {
    Mode mode = Mode::flood;
    std::int32_t d = 3;
    std::vector<std::int64_t> n_grid;
    std::int32_t trials = 1;
    std::uint64_t master_seed = 1;
    SimpleMode simple_mode = SimpleMode::reject;
    OutputFormat output = OutputFormat::csv;
    std::int64_t all_pairs_cap = 20000;
    std::int32_t max_attempts = 1000;                  // simple-graph rejection budget
    std::int64_t k_max = -1;                           // explore: -1 means n - 1
    std::vector<std::int64_t> k_list = {10, 30, 50};   // couple-check stages
    std::int32_t threads = 0;                          // 0 = hardware concurrency
    bool timing = false;  // real wall_ms values; off keeps output byte-stable
};

// One statistic of one trial; a trial emits several records.
struct TrialRecord {
    Mode mode = Mode::flood;
    std::int32_t d = 0;
    std::int64_t n = 0;
    std::int32_t trial = 0;
    std::uint64_t seed = 0;
    std::string stat_name;
    double stat_value = 0.0;
    double normalized = 0.0;   // stat / ln n; ratio and tv stats are already
                               // dimensionless and carried through unchanged
    double theory_const = 0.0;
    double wall_ms = 0.0;
};

struct SummaryRow {
    Mode mode = Mode::flood;
    std::int32_t d = 0;
    std::int64_t n = 0;
    std::string stat_name;
    std::int64_t count = 0;
    double mean = 0.0;    // of normalized values
    double stddev = 0.0;  // sample std; undefined for count < 2
    bool stddev_defined = false;
    double stderror = 0.0;
    double min = 0.0;
    double max = 0.0;
    double theory = 0.0;
    double gap = 0.0;  // mean - theory
};

struct RunResult {
    std::vector<TrialRecord> records;
    std::vector<SummaryRow> summary;
    std::int64_t disconnected_resamples = 0;  // connectivity is w.h.p. only
    std::int64_t couple_check_dropped = 0;    // traces too short for some k
};

namespace detail {

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.d < 3) throw std::invalid_argument("config: d must be >= 3");
    if (cfg.n_grid.empty()) throw std::invalid_argument("config: empty n grid");
    for (const std::int64_t n : cfg.n_grid) {
        if (n < 4) throw std::invalid_argument("config: n must be >= 4");
        if ((n * cfg.d) % 2 != 0)
            throw std::invalid_argument("config: n*d must be even, got n=" + std::to_string(n));
    }
}

// Sample until connected (disconnection is a rare finite-n event); the
// rejection stream simply continues, so the result is seed-deterministic.
template <typename Rng>
RegularMultigraph sample_connected(const ExperimentConfig& cfg, std::int64_t n, Rng& rng,
                                   std::atomic<std::int64_t>& resamples) {
    for (;;) {
        RegularMultigraph g =
            cfg.simple_mode == SimpleMode::reject
                ? sample_simple(static_cast<Vertex>(n), cfg.d, rng, cfg.max_attempts).graph
                : sample_pairing(static_cast<Vertex>(n), cfg.d, rng);
        if (is_connected(g)) return g;
        resamples.fetch_add(1, std::memory_order_relaxed);
    }
}

struct StatDef {
    std::string name;
    double value;
    double theory;
    bool log_normalized;  // false: dimensionless, carried through as-is
};

inline void emit(std::vector<TrialRecord>& out, const ExperimentConfig& cfg, std::int64_t n,
                 std::int32_t trial, std::uint64_t seed, const std::vector<StatDef>& stats,
                 double wall_ms) {
    const double log_n = std::log(static_cast<double>(n));
    for (const StatDef& s : stats) {
        TrialRecord r;
        r.mode = cfg.mode;
        r.d = cfg.d;
        r.n = n;
        r.trial = trial;
        r.seed = seed;
        r.stat_name = s.name;
        r.stat_value = s.value;
        r.normalized = s.log_normalized ? s.value / log_n : s.value;
        r.theory_const = s.theory;
        r.wall_ms = cfg.timing ? wall_ms : 0.0;
        out.push_back(std::move(r));
    }
}

inline std::int32_t worker_count(const ExperimentConfig& cfg, std::size_t tasks) {
    std::int32_t t = cfg.threads > 0 ? cfg.threads
                                     : static_cast<std::int32_t>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    return static_cast<std::int32_t>(std::min<std::size_t>(static_cast<std::size_t>(t), tasks));
}

template <typename Task>
void run_parallel(const ExperimentConfig& cfg, std::size_t task_count, Task&& task) {
    const std::int32_t workers = worker_count(cfg, task_count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < task_count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::int32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= task_count) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(task_count);
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline double tv_distance(const std::map<std::int32_t, std::int64_t>& a, std::int64_t na,
                          const std::map<std::int32_t, std::int64_t>& b, std::int64_t nb) {
    double tv = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        double pa = 0.0, pb = 0.0;
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            pa = static_cast<double>((ia++)->second) / static_cast<double>(na);
        } else if (ia == a.end() || ib->first < ia->first) {
            pb = static_cast<double>((ib++)->second) / static_cast<double>(nb);
        } else {
            pa = static_cast<double>((ia++)->second) / static_cast<double>(na);
            pb = static_cast<double>((ib++)->second) / static_cast<double>(nb);
        }
        tv += std::abs(pa - pb);
    }
    return 0.5 * tv;
}

}  // namespace detail

// Group records by (d, n, stat) in first-appearance order and reduce the
// normalized values.
inline std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    std::vector<SummaryRow> rows;
    std::map<std::tuple<std::int32_t, std::int64_t, std::string>, std::size_t> index;
    std::vector<std::vector<double>> samples;
    for (const TrialRecord& r : records) {
        const auto key = std::make_tuple(r.d, r.n, r.stat_name);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, rows.size()).first;
            SummaryRow row;
            row.mode = r.mode;
            row.d = r.d;
            row.n = r.n;
            row.stat_name = r.stat_name;
            row.theory = r.theory_const;
            rows.push_back(std::move(row));
            samples.emplace_back();
        }
        samples[it->second].push_back(r.normalized);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SummaryRow& row = rows[i];
        const std::vector<double>& xs = samples[i];
        row.count = static_cast<std::int64_t>(xs.size());
        double sum = 0.0;
        row.min = xs.front();
        row.max = xs.front();
        for (const double x : xs) {
            sum += x;
            row.min = std::min(row.min, x);
            row.max = std::max(row.max, x);
        }
        row.mean = sum / static_cast<double>(xs.size());
        if (xs.size() >= 2) {
            double ss = 0.0;
            for (const double x : xs) ss += (x - row.mean) * (x - row.mean);
            row.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
            row.stddev_defined = true;
            row.stderror = row.stddev / std::sqrt(static_cast<double>(xs.size()));
        }
        row.gap = row.mean - row.theory;
    }
    return rows;
}

// Run the flood, diameter, pair or couple-check experiment of the config.
inline RunResult run(const ExperimentConfig& cfg) {
    detail::validate(cfg);
    RunResult result;
    std::atomic<std::int64_t> resamples{0};
    std::atomic<std::int64_t> dropped{0};

    if (cfg.mode == Mode::flood || cfg.mode == Mode::diameter || cfg.mode == Mode::pair) {
        const ThresholdConstants theory = theory_constants(cfg.d);
        const std::size_t per_n = static_cast<std::size_t>(cfg.trials);
        const std::size_t task_count = cfg.n_grid.size() * per_n;
        std::vector<std::vector<TrialRecord>> slots(task_count);

        detail::run_parallel(cfg, task_count, [&](std::size_t task) {
            const std::int64_t n = cfg.n_grid[task / per_n];
            const auto trial = static_cast<std::int32_t>(task % per_n);
            const std::uint64_t seed =
                derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(trial));
            auto rng = make_rng(seed);
            const auto started = std::chrono::steady_clock::now();

            RegularMultigraph g = detail::sample_connected(cfg, n, rng, resamples);
            const WeightedGraph wg = assign_weights(std::move(g), rng);

            std::vector<detail::StatDef> stats;
            if (cfg.mode == Mode::flood) {
                const FloodStats f = flood_stats(wg, 0);
                stats = {{"max_hops", static_cast<double>(f.max_hops), theory.alpha_star, true},
                         {"weighted_ecc", f.weighted_ecc, theory.flood_weight_const, true},
                         {"len_weight_ratio", static_cast<double>(f.max_hops) / f.weighted_ecc,
                          theory.alpha_star / theory.flood_weight_const, false}};
            } else if (cfg.mode == Mode::diameter) {
                const DiameterStats ds = hop_diameter(wg, cfg.all_pairs_cap);
                stats = {
                    {"hop_diameter", static_cast<double>(ds.hop_diameter), theory.alpha_hat, true},
                    {"weighted_diameter", ds.weighted_diameter, theory.diam_weight_const, true},
                    {"max_hops_from_source", static_cast<double>(ds.source0.max_hops),
                     theory.alpha_star, true},
                    {"weighted_ecc", ds.source0.weighted_ecc, theory.flood_weight_const, true}};
            } else {
                const auto v = static_cast<Vertex>(1 + uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
                const PairStats p = pair_stats(wg, 0, v);
                stats = {{"pair_hops", static_cast<double>(p.hops), theory.gamma, true},
                         {"pair_dist", p.dist, 1.0 / (cfg.d - 2), true},
                         {"len_weight_ratio", static_cast<double>(p.hops) / p.dist,
                          static_cast<double>(cfg.d - 1), false}};
            }
            const double wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                    .count();
            detail::emit(slots[task], cfg, n, trial, seed, stats, wall_ms);
        });

        for (std::vector<TrialRecord>& slot : slots)
            for (TrialRecord& r : slot) result.records.push_back(std::move(r));
    } else if (cfg.mode == Mode::couple_check) {
        std::int64_t k_top = 0;
        for (const std::int64_t k : cfg.k_list) {
            if (k < 1) throw std::invalid_argument("couple-check: k must be >= 1");
            k_top = std::max(k_top, k);
        }
        for (const std::int64_t n : cfg.n_grid) {
            if (k_top > n - 1) throw std::invalid_argument("couple-check: k exceeds n-1");
            // Side A: hopcounts straight from the exploration. Side B: the
            // Bernoulli-sum sampler fed with independent exploration traces.
            std::vector<std::map<std::int32_t, std::int64_t>> hist_a(cfg.k_list.size()),
                hist_b(cfg.k_list.size());
            std::vector<std::int64_t> count_a(cfg.k_list.size(), 0), count_b(cfg.k_list.size(), 0);
            for (std::int32_t trial = 0; trial < 2 * cfg.trials; ++trial) {
                const std::uint64_t seed =
                    derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(trial));
                auto rng = make_rng(seed);
                const ExplorationTrace trace = explore(n, cfg.d, rng, k_top);
                const bool side_a = trial < cfg.trials;
                for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
                    const std::int64_t k = cfg.k_list[i];
                    if (trace.steps() < static_cast<std::size_t>(k)) {
                        dropped.fetch_add(1, std::memory_order_relaxed);
                        continue;
                    }
                    if (side_a) {
                        ++hist_a[i][trace.hops[static_cast<std::size_t>(k)]];
                        ++count_a[i];
                    } else {
                        bool usable = true;
                        for (std::int64_t j = 1; j < k && usable; ++j)
                            usable = trace.boundary[static_cast<std::size_t>(j)] >= cfg.d - 1;
                        if (!usable) {
                            dropped.fetch_add(1, std::memory_order_relaxed);
                            continue;
                        }
                        ++hist_b[i][coupled_hopcount_sample(cfg.d, k, trace.boundary, rng)];
                        ++count_b[i];
                    }
                }
            }
            for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
                if (count_a[i] == 0 || count_b[i] == 0)
                    throw std::runtime_error("couple-check: all traces died before k");
                detail::StatDef s{"tv_hops_k" + std::to_string(cfg.k_list[i]),
                                  detail::tv_distance(hist_a[i], count_a[i], hist_b[i], count_b[i]),
                                  0.0, false};
                detail::emit(result.records, cfg, n, 0,
                             derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n), 0), {s},
                             0.0);
            }
        }
    } else {
        throw std::invalid_argument("run: mode " + std::string(to_string(cfg.mode)) +
                                    " is not a record-producing experiment");
    }

    result.disconnected_resamples = resamples.load();
    result.couple_check_dropped = dropped.load();
    result.summary = summarize(result.records);
    return result;
}

// Explore mode: one trace per (n, trial).
struct ExploreTrial {
    std::int64_t n = 0;
    std::int32_t trial = 0;
    std::uint64_t seed = 0;
    ExplorationTrace trace;
};

inline std::vector<ExploreTrial> run_explore(const ExperimentConfig& cfg) {
    detail::validate(cfg);
    std::vector<ExploreTrial> out;
    for (const std::int64_t n : cfg.n_grid) {
        const std::int64_t k_max = cfg.k_max < 0 ? n - 1 : cfg.k_max;
        if (k_max > n - 1) throw std::invalid_argument("explore: k_max above n-1");
        for (std::int32_t trial = 0; trial < cfg.trials; ++trial) {
            ExploreTrial t;
            t.n = n;
            t.trial = trial;
            t.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(trial));
            auto rng = make_rng(t.seed);
            t.trace = explore(n, cfg.d, rng, k_max);
            out.push_back(std::move(t));
        }
    }
    return out;
}

// ---- output writers ----

inline void write_config_comment(std::ostream& os, const ExperimentConfig& cfg) {
    os << "# fpp-regular v1\n";
    os << "# mode=" << to_string(cfg.mode) << " d=" << cfg.d << " trials=" << cfg.trials
       << " seed=" << cfg.master_seed << " simple-mode=" << to_string(cfg.simple_mode) << "\n";
}

inline void write_csv(std::ostream& os, const ExperimentConfig& cfg,
                      const std::vector<TrialRecord>& records) {
    write_config_comment(os, cfg);
    os << "mode,d,n,trial,seed,stat_name,stat_value,normalized,theory_const,wall_ms\n";
    char buf[160];
    for (const TrialRecord& r : records) {
        os << to_string(r.mode) << ',' << r.d << ',' << r.n << ',' << r.trial << ',' << r.seed
           << ',' << r.stat_name << ',';
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.stat_value, r.normalized,
                      r.theory_const, r.wall_ms);
        os << buf;
    }
}

inline void write_json(std::ostream& os, const std::vector<TrialRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const TrialRecord& r : records) {
        arr.push_back({{"mode", to_string(r.mode)},
                       {"d", r.d},
                       {"n", r.n},
                       {"trial", r.trial},
                       {"seed", r.seed},
                       {"stat_name", r.stat_name},
                       {"stat_value", r.stat_value},
                       {"normalized", r.normalized},
                       {"theory_const", r.theory_const},
                       {"wall_ms", r.wall_ms}});
    }
    os << arr.dump(1) << '\n';
}

inline void write_trace_json(std::ostream& os, const std::vector<ExploreTrial>& trials) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ExploreTrial& t : trials) {
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < t.trace.times.size(); ++k) {
            steps.push_back({{"k", k},
                             {"T_k", t.trace.times[k]},
                             {"S_k", t.trace.boundary[k]},
                             {"X_k", t.trace.excess[k]},
                             {"H_k", t.trace.hops[k]}});
        }
        arr.push_back(
            {{"n", t.n}, {"trial", t.trial}, {"seed", t.seed}, {"steps", std::move(steps)}});
    }
    os << arr.dump(1) << '\n';
}

inline void write_trace_export(std::ostream& os, const ExperimentConfig& cfg,
                               const std::vector<ExploreTrial>& trials) {
    write_config_comment(os, cfg);
    os << "k,T_k,S_k,X_k,H_k\n";
    for (const ExploreTrial& t : trials) {
        os << "# n=" << t.n << " trial=" << t.trial << " seed=" << t.seed << "\n";
        write_trace_csv(os, t.trace, false);
    }
}

inline void print_summary(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "mode        d  n         stat                  count mean         std          "
          "stderr       min          max          theory       gap\n";
    char buf[256];
    for (const SummaryRow& r : rows) {
        char std_txt[32];
        char se_txt[32];
        if (r.stddev_defined) {
            std::snprintf(std_txt, sizeof(std_txt), "%-12.6g", r.stddev);
            std::snprintf(se_txt, sizeof(se_txt), "%-12.6g", r.stderror);
        } else {
            std::snprintf(std_txt, sizeof(std_txt), "%-12s", "null");
            std::snprintf(se_txt, sizeof(se_txt), "%-12s", "null");
        }
        std::snprintf(buf, sizeof(buf), "%-11s %-2d %-9lld %-21s %-5lld %-12.6g %s %s %-12.6g %-12.6g %-12.6g %-.6g\n",
                      to_string(r.mode), r.d, static_cast<long long>(r.n), r.stat_name.c_str(),
                      static_cast<long long>(r.count), r.mean, std_txt, se_txt, r.min, r.max,
                      r.theory, r.gap);
        os << buf;
    }
}

}  // namespace fpp
