#include "treebench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "treebench/rng.hpp"
#include "treebench/tree.hpp"

namespace treebench {

const char* const kCsvHeader = "env,variant,budget,episode,seed,return,steps,mean_plan_ms";

uint64_t derive_seed(uint64_t base_seed, Variant variant, int budget, int episode) {
    uint64_t h = hash_combine(base_seed, hash_str(variant_name(variant)));
    h = hash_combine(h, static_cast<uint64_t>(budget));
    h = hash_combine(h, static_cast<uint64_t>(episode));
    return h;
}

EpisodeResult run_episode(const Environment& env, const SearchConfig& config, int step_cap, uint64_t seed,
                          std::string* trace_sink) {
    if (step_cap < 0) throw ContractViolation("run_episode: step_cap must be >= 0");

    EpisodeResult res;
    res.env = env.name();
    res.variant = variant_name(config.variant);
    res.budget = config.trace_budget;
    res.seed = seed;

    StateVector state = env.reset(seed);
    double plan_seconds = 0.0;
    int calls = 0;

    for (int step = 0; step < step_cap; ++step) {
        SearchConfig cfg = config;
        cfg.seed = hash_combine(seed, static_cast<uint64_t>(step));
        if (cfg.rollout_depth < 0) cfg.rollout_depth = std::min(step_cap - step, 100);

        const auto t0 = std::chrono::steady_clock::now();
        SearchTree tree(state, env.num_actions());
        SearchResult sr = run_search(env, state, cfg, trace_sink ? &tree : nullptr);
        const auto t1 = std::chrono::steady_clock::now();
        plan_seconds += std::chrono::duration<double>(t1 - t0).count();
        ++calls;

        if (trace_sink) {
            *trace_sink += "# env=" + res.env + " variant=" + res.variant + " budget=" +
                           std::to_string(res.budget) + " seed=" + std::to_string(seed) + " step=" +
                           std::to_string(step) + "\n";
            *trace_sink += tree.dump();
        }

        const StepOutcome out = env.step(state, sr.recommended);
        res.total_return += out.reward;
        res.steps += 1;
        if (out.terminal) break;
        state = out.next_state;
    }

    res.mean_plan_ms = calls ? plan_seconds * 1000.0 / calls : 0.0;
    return res;
}

std::vector<EpisodeResult> run_experiment(const ExperimentConfig& config, const Environment& env) {
    if (config.episodes < 0) throw ContractViolation("run_experiment: episodes must be >= 0");

    struct Cell {
        Variant variant;
        int budget;
        int episode;
    };
    std::vector<Cell> cells;
    for (Variant v : config.variants)
        for (int b : config.budgets)
            for (int e = 0; e < config.episodes; ++e) cells.push_back({v, b, e});

    std::vector<EpisodeResult> rows(cells.size());
    std::vector<std::string> dumps(config.dump_trees ? cells.size() : 0);

    auto run_cell = [&](size_t i) {
        const Cell& cell = cells[i];
        SearchConfig sc;
        sc.variant = cell.variant;
        sc.trace_budget = cell.budget;
        sc.c = config.c;
        sc.gamma = config.gamma;
        sc.eta = config.eta.value_or(env.default_loop_threshold());
        sc.rollout_depth = config.rollout_depth.value_or(-1);
        sc.early_stop = config.early_stop;
        sc.loop_value_mode = config.loop_value_mode;
        sc.value_bound = config.value_bound;
        sc.recommend = config.recommend;
        const uint64_t seed = derive_seed(config.base_seed, cell.variant, cell.budget, cell.episode);
        EpisodeResult r = run_episode(env, sc, config.step_cap, seed,
                                      config.dump_trees ? &dumps[i] : nullptr);
        r.episode = cell.episode;
        rows[i] = std::move(r);
    };

    const int threads = std::max(1, config.threads);
    if (threads == 1 || cells.size() <= 1) {
        for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const int n = std::min<int>(threads, static_cast<int>(cells.size()));
        pool.reserve(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= cells.size()) return;
                    run_cell(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    if (!config.out_path.empty()) {
        const OutputPaths paths = derive_output_paths(config.out_path);
        write_file(paths.rows, format_csv(rows));
        const auto agg = aggregate_results(rows);
        write_file(paths.aggregate, format_aggregate_csv(agg));
        write_file(paths.plot, format_plot_data(agg));
        if (config.dump_trees) {
            std::string all;
            for (const std::string& d : dumps) all += d;
            write_file(paths.trees, all);
        }
    }
    return rows;
}

std::vector<AggregateRow> aggregate_results(const std::vector<EpisodeResult>& rows) {
    std::vector<AggregateRow> agg;
    auto find = [&](const EpisodeResult& r) -> AggregateRow& {
        for (AggregateRow& a : agg)
            if (a.env == r.env && a.variant == r.variant && a.budget == r.budget) return a;
        AggregateRow a;
        a.env = r.env;
        a.variant = r.variant;
        a.budget = r.budget;
        agg.push_back(a);
        return agg.back();
    };
    for (const EpisodeResult& r : rows) {
        AggregateRow& a = find(r);
        a.episodes += 1;
        a.mean_return += r.total_return;
        a.mean_steps += r.steps;
        a.mean_plan_ms += r.mean_plan_ms;
    }
    for (AggregateRow& a : agg) {
        a.mean_return /= a.episodes;
        a.mean_steps /= a.episodes;
        a.mean_plan_ms /= a.episodes;
    }
    // second pass for the standard error of the return
    for (AggregateRow& a : agg) {
        if (a.episodes < 2) continue;
        double ss = 0.0;
        for (const EpisodeResult& r : rows) {
            if (r.env == a.env && r.variant == a.variant && r.budget == a.budget) {
                const double d = r.total_return - a.mean_return;
                ss += d * d;
            }
        }
        a.stderr_return = std::sqrt(ss / (a.episodes - 1)) / std::sqrt(static_cast<double>(a.episodes));
    }
    return agg;
}

namespace {

std::string num6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string format_csv(const std::vector<EpisodeResult>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const EpisodeResult& r : rows) {
        out += r.env + "," + r.variant + "," + std::to_string(r.budget) + "," + std::to_string(r.episode) +
               "," + std::to_string(r.seed) + "," + num6(r.total_return) + "," + std::to_string(r.steps) +
               "," + num6(r.mean_plan_ms) + "\n";
    }
    return out;
}

std::string format_aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::string out = "env,variant,budget,episodes,mean_return,stderr_return,mean_steps,mean_plan_ms\n";
    for (const AggregateRow& a : rows) {
        out += a.env + "," + a.variant + "," + std::to_string(a.budget) + "," + std::to_string(a.episodes) +
               "," + num6(a.mean_return) + "," + num6(a.stderr_return) + "," + num6(a.mean_steps) + "," +
               num6(a.mean_plan_ms) + "\n";
    }
    return out;
}

std::string format_plot_data(const std::vector<AggregateRow>& rows) {
    std::string out = "# budget vs mean return, one series per variant\n";
    std::vector<std::string> variants;
    for (const AggregateRow& a : rows)
        if (std::find(variants.begin(), variants.end(), a.variant) == variants.end())
            variants.push_back(a.variant);
    bool first = true;
    for (const std::string& v : variants) {
        if (!first) out += '\n';
        first = false;
        out += "# series " + v + "\n";
        out += "# budget mean_return stderr\n";
        for (const AggregateRow& a : rows)
            if (a.variant == v)
                out += std::to_string(a.budget) + " " + num6(a.mean_return) + " " + num6(a.stderr_return) + "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

OutputPaths derive_output_paths(const std::string& out_path) {
    std::string stem = out_path;
    const std::string suffix = ".csv";
    if (stem.size() > suffix.size() && stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
        stem.resize(stem.size() - suffix.size());
    return {stem + ".csv", stem + "_agg.csv", stem + "_plot.txt", stem + "_trees.txt"};
}

}  // namespace treebench
