#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecotour/enumerate.hpp"
#include "ecotour/errors.hpp"
#include "ecotour/frontier_report.hpp"
#include "ecotour/instance_io.hpp"
#include "ecotour/local_search.hpp"
#include "ecotour/lp_export.hpp"
#include "ecotour/scalarization.hpp"
#include "ecotour/spb.hpp"

namespace fs = std::filesystem;

namespace ecotour::cli {
namespace {

struct Loaded {
    LineGraph graph;
    TimeWindowTable windows;
    std::string name;
};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Loaded load_any(const RunConfig& cfg) {
    if (ends_with(cfg.instance, ".json")) {
        Instance inst = load_instance(cfg.instance);
        return {std::move(inst.graph), std::move(inst.windows), std::move(inst.name)};
    }
    SpbInstance inst = load_spb_file(cfg.instance, cfg.spb_fraction, cfg.seed);
    return {std::move(inst.graph), std::move(inst.windows),
            fs::path(cfg.instance).stem().string()};
}

int resolve_cap(const RunConfig& cfg, const LineGraph& g) {
    if (cfg.revisit_cap > 0) return cfg.revisit_cap;
    return std::min(g.terminal_count(), 4);
}

SearchOptions search_options(const RunConfig& cfg) {
    SearchOptions so;
    so.theta = cfg.theta;
    so.budget_s = cfg.budget_s;
    so.max_iterations = cfg.budget_iters;
    so.init_frac = cfg.init_frac;
    so.seed = cfg.seed;
    so.filter_any_attribute = cfg.filter_any_attribute;
    return so;
}

std::vector<CostVector> costs_of(const std::vector<Tour>& tours) {
    std::vector<CostVector> out;
    out.reserve(tours.size());
    for (const Tour& t : tours) out.push_back(t.cost);
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParseError("cannot write " + path.string());
    os << content;
}

void emit_frontier(const fs::path& dir, const std::string& stem,
                   const std::vector<Tour>& frontier, const std::string& label) {
    std::ostringstream csv;
    write_frontier_csv(csv, frontier);
    write_text(dir / (stem + ".csv"), csv.str());
    std::ostringstream svg;
    write_frontier_svg(svg, {{label, costs_of(frontier)}});
    write_text(dir / (stem + ".svg"), svg.str());
}

} // namespace

int cmd_solve(const RunConfig& cfg) {
    Loaded in = load_any(cfg);
    fs::create_directories(cfg.out);

    std::ofstream progress(fs::path(cfg.out) / "progress.jsonl", std::ios::binary);
    std::ostringstream progress_copy;

    SearchOptions so = search_options(cfg);
    so.progress = &progress_copy;

    const SearchResult result = local_search(in.graph, in.windows, so);

    progress << progress_copy.str();
    if (cfg.echo_progress) std::cerr << progress_copy.str();

    emit_frontier(cfg.out, "frontier", result.frontier, in.name.empty() ? "search" : in.name);

    std::cout << "instance " << (in.name.empty() ? cfg.instance : in.name) << ": frontier "
              << result.frontier.size() << ", iterations " << result.iterations << ", pools y="
              << result.state.y.size() << " x=" << result.state.x.size() << "\n";
    for (const OperatorStats& op : result.ops)
        std::cout << "  " << op.name << ": calls " << op.calls << ", candidates " << op.emitted
                  << ", admitted " << op.admitted << "\n";

    if (result.frontier.empty()) {
        std::cerr << "no window-feasible tour found within the budget\n";
        return 2;
    }
    return 0;
}

int cmd_exact(const RunConfig& cfg) {
    Loaded in = load_any(cfg);
    fs::create_directories(cfg.out);
    const int cap = resolve_cap(cfg, in.graph);

    if (cfg.backend == "lp-export") {
        const int copies = std::min(in.graph.terminal_count(), cap);
        nlohmann::json manifest;
        manifest["instance"] = in.name;
        manifest["copies"] = copies;
        manifest["files"] = nlohmann::json::array();
        const std::pair<double, double> extremes[2] = {{1.0, 0.0}, {0.0, 1.0}};
        const char* names[2] = {"scalarize_turns.lp", "scalarize_energy.lp"};
        for (int k = 0; k < 2; ++k) {
            const MipModel model = build_model(in.graph, in.windows, cap, extremes[k].first,
                                               extremes[k].second, cfg.order_cuts);
            write_lp_file(model, (fs::path(cfg.out) / names[k]).string());
            manifest["files"].push_back({{"file", names[k]},
                                         {"alpha", extremes[k].first},
                                         {"beta", extremes[k].second}});
        }
        write_text(fs::path(cfg.out) / "lp_manifest.json", manifest.dump(2) + "\n");
        std::cout << "wrote " << manifest["files"].size() << " LP files and lp_manifest.json to "
                  << cfg.out << "\n";
        return 0;
    }
    if (cfg.backend != "builtin") {
        std::cerr << "unknown backend '" << cfg.backend << "' (expected builtin or lp-export)\n";
        return 1;
    }

    // the built-in solver keeps a dense simplex tableau; refuse models whose
    // tableau would not fit in a few hundred MB and point at lp-export
    const long long K = std::min(in.graph.terminal_count(), cap);
    const long long n = in.graph.node_count();
    const long long arcs = in.graph.edge_count();
    const long long vars = 2 * arcs * K * K + 2 * n * K;
    const long long rows =
        2 + 3 * n * K + in.graph.terminal_count() * K + arcs * K * K + n * (K - 1);
    const long long tableau_bytes = (rows + 64) * (vars + rows + 64) * 8;
    if (tableau_bytes > (400LL << 20)) {
        std::cerr << "instance too large for the built-in solver (relaxation tableau ~"
                  << (tableau_bytes >> 20)
                  << " MB); use --backend lp-export and hand the files to an external solver\n";
        return 1;
    }

    ScalarizeOptions zo;
    zo.exact.time_limit_s = cfg.budget_s;
    zo.exact.order_rows = cfg.order_cuts;
    const ScalarizationOutcome outcome = supported_frontier(in.graph, in.windows, cap, zo);

    emit_frontier(cfg.out, "frontier", outcome.frontier, "exact");
    std::cout << "instance " << in.name << ": supported points " << outcome.frontier.size()
              << ", scalarized solves " << outcome.solves << ", nodes " << outcome.nodes
              << (outcome.proven ? "" : " (limits hit, frontier may be partial)") << "\n";
    if (outcome.frontier.empty()) {
        std::cerr << "no window-feasible tour exists for this instance and cap\n";
        return 2;
    }
    return 0;
}

int cmd_bench(const RunConfig& cfg) {
    std::vector<fs::path> files;
    if (!fs::is_directory(cfg.instance)) {
        std::cerr << "bench expects --instance to name a directory of travel-time files\n";
        return 1;
    }
    for (const auto& entry : fs::directory_iterator(cfg.instance))
        if (entry.is_regular_file() && entry.path().extension() == ".spb")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "no .spb files in " << cfg.instance << "\n";
        return 1;
    }
    fs::create_directories(cfg.out);

    struct Task {
        fs::path file;
        double fraction = 0.0;
        std::uint64_t seed = 0;
    };
    std::vector<Task> tasks;
    for (const fs::path& f : files)
        for (double frac : cfg.scenarios)
            tasks.push_back({f, frac, cfg.seed + tasks.size()});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> cursor{0};

    auto run_task = [&](std::size_t idx) {
        const Task& task = tasks[idx];
        BenchRow& row = rows[idx];
        char frac_txt[16];
        std::snprintf(frac_txt, sizeof frac_txt, "%.2f", task.fraction);
        row.instance = task.file.stem().string();
        row.fraction = task.fraction;
        try {
            const auto t0 = std::chrono::steady_clock::now();
            SpbInstance inst = load_spb_file(task.file.string(), task.fraction, task.seed);
            row.terminals = inst.graph.terminal_count();

            SearchOptions so = search_options(cfg);
            so.seed = task.seed;
            const SearchResult res = local_search(inst.graph, inst.windows, so);

            row.frontier_size = res.frontier.size();
            if (!res.frontier.empty()) {
                row.best_turns = res.frontier.front().cost.turns;
                row.best_energy = res.frontier.back().cost.energy;
                for (const Tour& t : res.frontier) {
                    row.best_turns = std::min(row.best_turns, t.cost.turns);
                    row.best_energy = std::min(row.best_energy, t.cost.energy);
                }
            }
            if (cfg.budget_iters < 0) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.1f",
                              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                  .count());
                row.seconds = buf;
            }

            // exhaustive reference on desk-scale instances only
            if (inst.graph.node_count() <= 14 && inst.graph.terminal_count() <= 5) {
                const auto exact = brute_force_pareto(inst.graph, inst.windows,
                                                      std::min(inst.suggested_cap, 3));
                const FrontierComparison cmp =
                    compare_frontiers(costs_of(exact), costs_of(res.frontier));
                char buf[32];
                std::snprintf(buf, sizeof buf, "cov=%.2f", cmp.coverage);
                row.note = buf;
            }

            emit_frontier(cfg.out, row.instance + "_f" + frac_txt, res.frontier,
                          row.instance + " @" + frac_txt);
        } catch (const std::exception& e) {
            row.note = std::string("error: ") + e.what();
        }
    };

    const int jobs = std::max(1, std::min(cfg.jobs, static_cast<int>(tasks.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(i);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    const std::string table = render_bench_table(rows);
    write_text(fs::path(cfg.out) / "report.txt", table);
    std::cout << table;
    return 0;
}

namespace {

Theta parse_theta(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (...) {
            throw SchemaError("theta: bad number '" + item + "'");
        }
    }
    if (vals.size() != 6) throw SchemaError("theta needs 6 comma-separated values");
    for (double v : vals)
        if (v <= 0.0) throw SchemaError("theta values must be positive");
    Theta t;
    t.top_pairs = static_cast<int>(vals[0]);
    t.skew_width = vals[1];
    t.pool_cap = static_cast<int>(vals[2]);
    t.perm_rounds = static_cast<int>(vals[3]);
    t.quad_rounds = static_cast<int>(vals[4]);
    t.repair_rounds = static_cast<int>(vals[5]);
    return t;
}

std::vector<double> parse_scenarios(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw SchemaError("scenario: bad number '" + item + "'");
        }
    }
    if (out.empty()) throw SchemaError("scenario list is empty");
    for (double v : out)
        if (v <= 0.0 || v > 1.0) throw SchemaError("scenario fractions must be in (0, 1]");
    return out;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    std::string theta_text, scenario_text;

    CLI::App app{"bi-criterion tour planner: left turns against energy, windows respected"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--instance", cfg.instance,
                        "instance file (.json or travel-time .spb), directory for bench")
            ->required()
            ->envname("ECOTOUR_INSTANCE");
        sub->add_option("--budget-s", cfg.budget_s, "wall budget in seconds")
            ->envname("ECOTOUR_BUDGET_S");
        sub->add_option("--budget-iters", cfg.budget_iters,
                        "iteration budget; >= 0 disables all clocks for reproducible runs")
            ->envname("ECOTOUR_BUDGET_ITERS");
        sub->add_option("--init-frac", cfg.init_frac, "share of the budget spent on seeding")
            ->envname("ECOTOUR_INIT_FRAC");
        sub->add_option("--seed", cfg.seed, "rng seed")->envname("ECOTOUR_SEED");
        sub->add_option("--theta", theta_text, "six comma-separated search parameters")
            ->envname("ECOTOUR_THETA");
        sub->add_option("--revisit-cap", cfg.revisit_cap,
                        "node-visit cap for exact models; <= 0 means min(#terminals, 4)")
            ->envname("ECOTOUR_REVISIT_CAP");
        sub->add_option("--backend", cfg.backend, "exact backend: builtin or lp-export")
            ->envname("ECOTOUR_BACKEND");
        sub->add_option("--out", cfg.out, "output directory")->envname("ECOTOUR_OUT");
        sub->add_option("--jobs", cfg.jobs, "parallel instances (bench)")
            ->envname("ECOTOUR_JOBS");
        sub->add_option("--scenario", scenario_text,
                        "terminal-share scenarios for bench, comma-separated")
            ->envname("ECOTOUR_SCENARIO");
        sub->add_option("--spb-fraction", cfg.spb_fraction,
                        "terminal share when --instance is a travel-time file")
            ->envname("ECOTOUR_SPB_FRACTION");
        sub->add_flag("--filter-any", cfg.filter_any_attribute,
                      "three-cut segment filter passes on either attribute instead of both");
        sub->add_flag("!--no-order-cuts", cfg.order_cuts,
                      "drop copy-ordering cuts from exact models");
        sub->add_flag("--progress", cfg.echo_progress, "mirror the progress log to stderr");
    };

    CLI::App* solve = app.add_subcommand("solve", "seed then run the local search");
    CLI::App* exact = app.add_subcommand("exact", "supported frontier by weighted-sum dichotomy");
    CLI::App* bench = app.add_subcommand("bench", "run a travel-time benchmark directory");
    add_common(solve);
    add_common(exact);
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (!theta_text.empty()) cfg.theta = parse_theta(theta_text);
        if (!scenario_text.empty()) cfg.scenarios = parse_scenarios(scenario_text);
        if (cfg.budget_iters < 0 && cfg.budget_s <= 0.0)
            throw SchemaError("budget must be positive");
        if (cfg.init_frac <= 0.0 || cfg.init_frac >= 1.0)
            throw SchemaError("init fraction must be inside (0, 1)");

        if (solve->parsed()) {
            cfg.command = "solve";
            return cmd_solve(cfg);
        }
        if (exact->parsed()) {
            cfg.command = "exact";
            return cmd_exact(cfg);
        }
        cfg.command = "bench";
        return cmd_bench(cfg);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

} // namespace ecotour::cli
