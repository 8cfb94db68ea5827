// Command line front end: single games, sweeps, threshold searches, structure
// checks, exact solving, criterion calculators and random-system experiments.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbg/criteria.hpp"
#include "rbg/lab.hpp"
#include "rbg/solver.hpp"
#include "rbg/strategies.hpp"

using namespace rbg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParamPack load_params_file(const std::string& path) {
    ParamPack params;
    if (path.empty()) return params;
    const auto toml = TomlTable::parse_file(path);
    for (const auto& [key, value] : toml.values) {
        const std::string name = key.rfind("params.", 0) == 0 ? key.substr(7) : key;
        params[name] = value.as_double(0);
    }
    return params;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biased Maker-Breaker games on graph systems"};
    app.require_subcommand(1);

    // --- play -----------------------------------------------------------------
    auto* play = app.add_subcommand("play", "play one game and print the outcome");
    std::string game = "rc", maker = "random", breaker = "random", params_file, transcript_out;
    int n = 6, s = 2, b = 1;
    std::uint64_t seed = 0;
    std::string first = "maker";
    play->add_option("--game", game, "rc|diameter|rst|rpm|rhc");
    play->add_option("--n", n);
    play->add_option("--s", s);
    play->add_option("--b", b);
    play->add_option("--maker", maker);
    play->add_option("--breaker", breaker);
    play->add_option("--seed", seed);
    play->add_option("--first", first, "maker|breaker");
    play->add_option("--params", params_file, "TOML parameter pack");
    play->add_option("--transcript", transcript_out, "write JSONL transcript here");
    play->callback([&]() {
        ExperimentConfig cfg;
        cfg.game = game;
        cfg.params = load_params_file(params_file);
        cfg.first_player = first == "breaker" ? Player::Breaker : Player::Maker;
        GameConfig gc = game_config_for(cfg, n, s, b, seed);
        auto maker_s = make_strategy(maker);
        auto breaker_s = make_strategy(breaker);
        Board board = Board::layered_complete(gc.n, gc.s);
        auto [outcome, transcript] = play_game(std::move(board), *maker_s, *breaker_s, gc);
        nlohmann::json out;
        out["outcome"] = outcome_to_string(outcome);
        out["reason"] = outcome.reason;
        out["moves"] = transcript.moves.size();
        std::cout << out.dump() << '\n';
        if (!transcript_out.empty()) {
            std::ofstream f(transcript_out);
            f << transcript.to_jsonl();
        }
    });

    // --- sweep ------------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "factorial sweep from a TOML config");
    std::string sweep_config;
    sweep->add_option("--config", sweep_config)->required();
    sweep->callback([&]() {
        const auto cfg = ExperimentConfig::from_toml(TomlTable::parse_file(sweep_config));
        const auto rows = run_sweep(cfg);
        write_results_csv(cfg.output_path, rows);
        std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path << '\n';
    });

    // --- threshold ----------------------------------------------------------------
    auto* threshold = app.add_subcommand("threshold", "empirical threshold bracket");
    std::string thr_config;
    threshold->add_option("--config", thr_config)->required();
    threshold->callback([&]() {
        const auto toml = TomlTable::parse_file(thr_config);
        auto cfg = ExperimentConfig::from_toml(toml);
        nlohmann::json out = nlohmann::json::array();
        for (int nn : cfg.n_grid)
            for (int ss : cfg.s_grid) {
                const auto est = estimate_empirical_threshold(
                    cfg, nn, ss, static_cast<int>(toml.integer("experiment.b_min", 1)),
                    static_cast<int>(toml.integer("experiment.b_max", 1 << 20)));
                nlohmann::json row;
                row["n"] = nn;
                row["s"] = ss;
                row["b_low"] = est.b_low;
                row["b_high"] = est.b_high;
                for (const auto& [bb, rate] : est.win_rates)
                    row["rates"][std::to_string(bb)] = rate;
                out.push_back(row);
                std::cout << row.dump() << '\n';
            }
        if (!cfg.output_path.empty()) {
            std::ofstream f(cfg.output_path);
            f << out.dump(2) << '\n';
        }
    });

    // --- check -------------------------------------------------------------------
    auto* check = app.add_subcommand("check", "structure predicates on a graph file");
    std::string graph_file, predicate = "rainbow_connected";
    int max_len = -1;
    check->add_option("--graph", graph_file, "JSON {n, s, edges: [[layer,u,v],...]}")->required();
    check->add_option("--predicate", predicate,
                      "rainbow_connected|diameter|rainbow_spanning_tree|"
                      "rainbow_perfect_matching|rainbow_hamilton_cycle|partition_criterion");
    check->add_option("--max-len", max_len, "path length bound (default n-1)");
    check->callback([&]() {
        const auto g = ColoredSubgraph::from_json(read_file(graph_file));
        const int bound = max_len < 0 ? g.n() - 1 : max_len;
        nlohmann::json out;
        out["predicate"] = predicate;
        if (predicate == "rainbow_connected") {
            const auto rep = rainbow_connected(g, bound);
            out["holds"] = rep.connected;
            if (!rep.connected && rep.failing_pair)
                out["failing_pair"] = {rep.failing_pair->first, rep.failing_pair->second};
        } else if (predicate == "diameter") {
            out["holds"] = diameter_at_most(g, bound);
        } else if (predicate == "rainbow_spanning_tree") {
            const auto wit = has_rainbow_spanning_tree(g);
            out["holds"] = wit.has_value();
            if (wit) out["witness"] = nlohmann::json::parse(wit->to_json());
        } else if (predicate == "rainbow_perfect_matching") {
            const auto wit = has_rainbow_perfect_matching(g);
            out["holds"] = wit.has_value();
            if (wit) out["witness"] = nlohmann::json::parse(wit->to_json());
        } else if (predicate == "rainbow_hamilton_cycle") {
            const auto wit = has_rainbow_hamilton_cycle(g);
            out["holds"] = wit.has_value();
            if (wit) out["witness"] = nlohmann::json::parse(wit->to_json());
        } else if (predicate == "partition_criterion") {
            const auto res = partition_criterion_holds(g);
            out["holds"] = res.holds;
            if (!res.holds) out["violating_partition"] = res.violating_partition;
        } else {
            throw std::runtime_error("unknown predicate: " + predicate);
        }
        std::cout << out.dump() << '\n';
    });

    // --- solve ---------------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "exact solver on a tiny board");
    std::string solve_game = "rc", cache_path;
    int sn = 4, ss2 = 2, sb = 1, b_scan_max = 0;
    std::string solve_first = "maker";
    solve->add_option("--game", solve_game, "rc|diameter|rst");
    solve->add_option("--n", sn);
    solve->add_option("--s", ss2);
    solve->add_option("--b", sb);
    solve->add_option("--scan-bmax", b_scan_max, "scan b = 1.. and report the threshold");
    solve->add_option("--first", solve_first);
    solve->add_option("--cache", cache_path, "persist solved positions here");
    solve->callback([&]() {
        ExperimentConfig dummy;
        dummy.game = solve_game;
        const auto predicate = predicate_for_game(solve_game, sn, ss2);
        const int board_s = solve_game == "diameter" ? 1 : ss2;
        const Player first_p = solve_first == "breaker" ? Player::Breaker : Player::Maker;
        nlohmann::json out;
        if (b_scan_max > 0) {
            const auto scan = exact_threshold_bias(sn, board_s, predicate, b_scan_max, first_p);
            out["threshold"] = scan.threshold;
            auto arr = nlohmann::json::array();
            for (const auto w : scan.winners) arr.push_back(w == Player::Maker ? "maker" : "breaker");
            out["winners"] = arr;
        } else {
            GraphGameSolver solver(sn, board_s, predicate, 1, sb, first_p);
            if (!cache_path.empty()) solver.load_cache(cache_path);
            const Player w = solver.solve();
            if (!cache_path.empty()) solver.save_cache(cache_path);
            out["winner"] = w == Player::Maker ? "maker" : "breaker";
            out["nodes"] = solver.nodes_visited();
        }
        std::cout << out.dump() << '\n';
    });

    // --- criteria ---------------------------------------------------------------------
    auto* criteria = app.add_subcommand("criteria", "closed-form winning criteria");
    std::string cgame = "C";
    double cn = 100;
    int cs = 3;
    double cb = 10;
    criteria->add_option("--game", cgame, "C|C_large|RS|D|box|beck_paths|random_threshold");
    criteria->add_option("--n", cn);
    criteria->add_option("--s", cs);
    criteria->add_option("--b", cb);
    criteria->callback([&]() {
        nlohmann::json out;
        out["game"] = cgame;
        out["n"] = cn;
        out["s"] = cs;
        out["b"] = cb;
        if (cgame == "box") {
            out["maker_wins"] = box_criterion(static_cast<int>(cb), static_cast<int>(cn), cs);
        } else if (cgame == "beck_paths") {
            out["path_count_upper_bound"] = path_count_upper_bound(cn, cs, cb);
        } else if (cgame == "random_threshold") {
            out["constant_s"] = random_threshold_formulas("constant", cn, cs);
            out["large_s"] = random_threshold_formulas("large", cn, cs);
        } else {
            const auto tb = threshold_bounds(cgame, cn, cs);
            out["lower"] = tb.lower;
            out["upper"] = tb.upper;
            out["exponent"] = tb.exponent;
            out["asymptotic_only"] = tb.asymptotic_only;
        }
        std::cout << out.dump() << '\n';
    });

    // --- random-intuition ----------------------------------------------------------------
    auto* ri = app.add_subcommand("random-intuition", "random-system connectivity scan");
    std::string ri_config;
    ri->add_option("--config", ri_config)->required();
    ri->callback([&]() {
        const auto toml = TomlTable::parse_file(ri_config);
        const int rn = static_cast<int>(toml.integer("experiment.n", 50));
        const int rs = static_cast<int>(toml.integer("experiment.s", 2));
        const int samples = static_cast<int>(toml.integer("experiment.samples", 100));
        const std::uint64_t rseed = static_cast<std::uint64_t>(toml.integer("experiment.seed", 0));
        const std::string regime = toml.text("experiment.regime", "constant");
        const int rmax_len = static_cast<int>(toml.integer("experiment.max_len", rn - 1));
        auto factors = toml.numbers("experiment.p_factors");
        if (factors.empty()) factors = {0.25, 0.4, 0.6, 0.8, 1.0, 1.3, 1.8, 2.5, 4.0};
        const double center = random_threshold_formulas(regime, rn, rs);
        const auto rows = random_intuition_scan(rn, rs, center, factors, samples, rseed, rmax_len);
        const std::string path = toml.text("experiment.output", "random_intuition.csv");
        std::ofstream f(path);
        f << "# rbg-random-intuition v1\nn,s,p,samples,connected\n";
        for (const auto& row : rows)
            f << row.n << ',' << row.s << ',' << row.p << ',' << row.samples << ','
              << row.connected << '\n';
        const auto crossing = crossing_probability(rows);
        nlohmann::json out;
        out["predicted"] = center;
        if (crossing) out["crossing"] = *crossing;
        out["rows"] = rows.size();
        out["output"] = path;
        std::cout << out.dump() << '\n';
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
