// Acceptance suite: one numbered criterion per invocation (or "all").
// Each criterion prints a single PASS/FAIL line plus supporting detail and
// the process exits nonzero if the requested criteria did not all pass.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rbg/criteria.hpp"
#include "rbg/lab.hpp"
#include "rbg/solver.hpp"
#include "rbg/strategies.hpp"

using namespace rbg;

namespace {

int g_threads = 2;

void parallel_for(int count, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(1, g_threads); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::ostream&)> run;
};

// SBG condition (2) right-hand side, natural log
double sbg_cond2_rhs(int m, int b, double h, double max_size) {
    return 5.0 * m * b / (m + b) * std::sqrt(max_size * std::log(h) / (m + b));
}

// Documented desk-scale parameter pack for the constant-s Maker. The paper's
// asymptotic constants collapse at these board sizes, so the pack pins small
// explicit values and sizes the balancing-game slack from the criterion
// formulas themselves.
ParamPack desk_pack(int n, int b, int s_colors, int path_s, std::ostream& out,
                    bool verbose = true) {
    ParamPack pack;
    const double p = std::pow(n, -0.5);
    pack["path_s"] = path_s;
    pack["p"] = p;
    pack["d_target"] = 2;
    pack["expose_cap"] = 20;
    pack["minbox_bias"] = 6.0 * b;
    pack["delta"] = 0.05;
    pack["gamma"] = 0.2;
    const double h2 = static_cast<double>(s_colors) * n;
    pack["ell2"] = std::ceil(sbg_cond2_rhs(1, 3 * b, h2, n - 1)) + 1;
    const double h3 = std::pow(static_cast<double>(s_colors), 2.0 * 1 + 1) * n * n;
    const double m3 = std::ceil(9.0 * (1 + 3 * b) * std::log(h3)) + 1;
    pack["M3"] = m3;
    pack["ell3"] = std::ceil(sbg_cond2_rhs(1, 3 * b, h3, m3)) + 1;
    if (verbose) {
        out << "    pack(n=" << n << ", b=" << b << "): p=" << p
            << " d_target=2 expose_cap=20 minbox_bias=" << pack["minbox_bias"]
            << " ell2=" << pack["ell2"] << " M3=" << pack["M3"] << " ell3=" << pack["ell3"]
            << "\n";
    }
    return pack;
}

// ---------------------------------------------------------------------------
// C1: exact thresholds of the two-color game.
// ---------------------------------------------------------------------------

bool c1(std::ostream& out) {
    bool ok = true;
    for (const int n : {4, 5}) {
        const auto t0 = std::chrono::steady_clock::now();
        WinPredicate rc{"rainbow_connected", {{"max_len", static_cast<double>(n - 1)}}};
        const auto scan = exact_threshold_bias(n, 2, rc, 4);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << "    n=" << n << ": threshold=" << scan.threshold << " (" << secs << " s)\n";
        ok = ok && scan.threshold == 2;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C2: pairing strategies against an exhaustive adversary at n=4.
// ---------------------------------------------------------------------------

struct ExhaustiveDriver {
    GameConfig cfg;
    Player det_role;
    std::function<std::unique_ptr<Strategy>()> make_det;
    long long leaves = 0;
    long long det_goal_met = 0;

    // re-runs the deterministic strategy over the prefix to obtain its move
    std::optional<EdgeRef> det_move(const std::vector<Move>& history, int round,
                                    int claim_index) {
        auto strat = make_det();
        Board board = Board::layered_complete(cfg.n, cfg.s);
        strat->begin(board, cfg, det_role, 0);
        std::vector<Move> prefix;
        int replay_index = 0;
        int replay_round = 0;
        for (const auto& mv : history) {
            if (mv.round != replay_round) replay_index = 0;
            if (mv.player == det_role) {
                MoveCtx ctx{mv.round, replay_index, &prefix};
                const auto replayed = strat->choose(board, ctx);
                if (!replayed || !(*replayed == mv.edge))
                    throw std::runtime_error("deterministic strategy diverged on replay");
                ++replay_index;
            } else {
                replay_index = 0;
            }
            replay_round = mv.round;
            board.claim(mv.edge, mv.player);
            prefix.push_back(mv);
        }
        MoveCtx ctx{round, claim_index, &prefix};
        return strat->choose(board, ctx);
    }

    void dfs(std::vector<Move>& history, Player to_move, int claims_left, int round) {
        Board board = Board::layered_complete(cfg.n, cfg.s);
        for (const auto& mv : history) board.claim(mv.edge, mv.player);
        if (board.free_count() == 0) {
            ++leaves;
            ColoredSubgraph mg(cfg.n, cfg.s);
            for (const auto& mv : history)
                if (mv.player == Player::Maker) mg.add(mv.edge);
            const bool maker_wins = eval_predicate(cfg.predicate, mg);
            if ((det_role == Player::Maker) == maker_wins) ++det_goal_met;
            return;
        }
        const Player other = to_move == Player::Maker ? Player::Breaker : Player::Maker;
        const int other_bias = other == Player::Maker ? cfg.maker_bias : cfg.breaker_bias;
        const int bias = to_move == Player::Maker ? cfg.maker_bias : cfg.breaker_bias;
        const int claim_index = bias - claims_left;
        const int next_round = other == cfg.first_player ? round + 1 : round;
        if (to_move == det_role) {
            std::optional<EdgeRef> mv;
            try {
                mv = det_move(history, round, claim_index);
            } catch (const ForfeitSignal&) {
                ++leaves;  // a raised pairing invariant counts as a lost line
                return;
            }
            if (!mv) {
                dfs(history, other, other_bias, next_round);
                return;
            }
            history.push_back({round, to_move, *mv});
            if (claims_left > 1)
                dfs(history, to_move, claims_left - 1, round);
            else
                dfs(history, other, other_bias, next_round);
            history.pop_back();
            return;
        }
        const auto free_edges = board.all_free_edges();
        for (const auto& e : free_edges) {
            history.push_back({round, to_move, e});
            if (claims_left > 1)
                dfs(history, to_move, claims_left - 1, round);
            else
                dfs(history, other, other_bias, next_round);
            history.pop_back();
        }
    }

    bool run() {
        std::vector<Move> history;
        const int first_bias =
            cfg.first_player == Player::Maker ? cfg.maker_bias : cfg.breaker_bias;
        dfs(history, cfg.first_player, first_bias, 1);
        return leaves > 0 && det_goal_met == leaves;
    }
};

bool c2(std::ostream& out) {
    bool ok = true;
    {
        ExhaustiveDriver drv;
        drv.cfg.n = 4;
        drv.cfg.s = 2;
        drv.cfg.breaker_bias = 1;
        drv.cfg.predicate = {"rainbow_connected", {{"max_len", 3}}};
        drv.det_role = Player::Maker;
        drv.make_det = make_pairing_maker_rc2;
        const bool maker_ok = drv.run();
        out << "    maker pairing (1:1): won " << drv.det_goal_met << "/" << drv.leaves
            << " adversary lines\n";
        ok = ok && maker_ok;
    }
    {
        ExhaustiveDriver drv;
        drv.cfg.n = 4;
        drv.cfg.s = 2;
        drv.cfg.breaker_bias = 2;
        drv.cfg.predicate = {"rainbow_connected", {{"max_len", 3}}};
        drv.det_role = Player::Breaker;
        drv.make_det = make_pairing_breaker_rc2;
        const bool breaker_ok = drv.run();
        out << "    breaker pairing (1:2): blocked " << drv.det_goal_met << "/" << drv.leaves
            << " adversary lines\n";
        ok = ok && breaker_ok;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C3: MinBox invariant over seeded grids.
// ---------------------------------------------------------------------------

bool c3(std::ostream& out) {
    std::atomic<long long> games{0}, violations{0}, wins{0};
    struct Cell {
        int n_boxes, min_size, bias;
        double gamma;
        bool adversarial;
    };
    std::vector<Cell> cells;
    for (int n_boxes : {4, 8, 16, 32})
        for (int min_size : {10, 20, 40})
            for (int bias : {1, 2, 3})
                for (double gamma : {0.1, 0.25, 0.4})
                    for (bool adv : {false, true})
                        cells.push_back({n_boxes, min_size, bias, gamma, adv});
    const int seeds_per_cell = 1000 / static_cast<int>(cells.size()) + 1;
    parallel_for(static_cast<int>(cells.size()), [&](int i) {
        const auto& cell = cells[i];
        for (int seed = 0; seed < seeds_per_cell; ++seed) {
            Rng rng(split_seed(404, i, seed));
            const auto res = play_minbox_game(
                std::vector<int>(cell.n_boxes, cell.min_size), cell.gamma, cell.bias,
                cell.adversarial ? minbox_opponent_max_danger() : minbox_opponent_random(),
                rng);
            ++games;
            violations += res.invariant_violations;
            if (res.maker_won) ++wins;
        }
    });
    out << "    " << games.load() << " games, " << violations.load()
        << " invariant violations, " << wins.load() << " maker wins\n";
    return games.load() >= 1000 && violations.load() == 0;
}

// ---------------------------------------------------------------------------
// C4: Box criterion sweep.
// ---------------------------------------------------------------------------

bool c4(std::ostream& out) {
    // the balancing BoxMaker realizes the criterion; plain greedy-smallest is
    // reported alongside as data (it loses its whole investment each round to
    // the destroyer whenever m > p)
    std::atomic<long long> games{0}, losses{0}, greedy_losses{0};
    parallel_for(96, [&](int idx) {
        const int n_boxes = 5 + idx;
        for (int p : {2, 3, 4}) {
            const int m = static_cast<int>((p - 1) * std::log(n_boxes));
            if (m < 1) continue;
            for (int opp = 0; opp < 2; ++opp) {
                for (int seed = 0; seed < 3; ++seed) {
                    const auto opponent =
                        opp == 0 ? box_opponent_random() : box_opponent_greedy_destroyer();
                    Rng rng(split_seed(505, idx * 100 + p * 10 + opp, seed));
                    const bool won = play_box_game(std::vector<int>(n_boxes, m), p, opponent,
                                                   true, rng, box_maker_balance_policy());
                    ++games;
                    if (!won) ++losses;
                    Rng rng2(split_seed(505, idx * 100 + p * 10 + opp, seed));
                    if (!play_box_game(std::vector<int>(n_boxes, m), p, opponent, true, rng2,
                                       box_maker_greedy_policy()))
                        ++greedy_losses;
                }
            }
        }
    });
    out << "    balance maker: " << games.load() << " playouts, " << losses.load()
        << " losses (greedy maker for comparison: " << greedy_losses.load() << " losses)\n";
    return losses.load() == 0;
}

// ---------------------------------------------------------------------------
// C5: Beck criterion vs solver-optimal Maker.
// ---------------------------------------------------------------------------

bool c5(std::ostream& out) {
    std::atomic<int> generated{0}, breaker_losses{0};
    parallel_for(500, [&](int i) {
        Rng rng(split_seed(606, i));
        HypergraphGame game;
        game.first_player = Player::Breaker;
        while (true) {
            game.maker_bias = 1 + static_cast<int>(rng.below(2));
            game.breaker_bias = 1 + static_cast<int>(rng.below(3));
            game.num_elements = 10 + static_cast<int>(rng.below(11));  // 10..20
            game.winning_sets.clear();
            const int sets = 3 + static_cast<int>(rng.below(10));
            std::vector<long long> sizes;
            for (int f = 0; f < sets; ++f) {
                const int size = 2 + static_cast<int>(rng.below(7));
                std::uint64_t mask = 0;
                while (std::popcount(mask) < size)
                    mask |= 1ULL << rng.below(game.num_elements);
                game.winning_sets.push_back(mask);
                sizes.push_back(std::popcount(mask));
            }
            const auto sum = beck_sum(HypergraphSummary::from_sizes(sizes), game.maker_bias,
                                      game.breaker_bias);
            if (sum.breaker_wins) break;
        }
        ++generated;
        if (maker_best_response_beats_potential_breaker(game)) ++breaker_losses;
    });
    out << "    " << generated.load()
        << " hypergraphs with beck sum < 1, greedy breaker lost " << breaker_losses.load()
        << "\n";
    return generated.load() == 500 && breaker_losses.load() == 0;
}

// ---------------------------------------------------------------------------
// C6: rainbow-tree equivalence.
// ---------------------------------------------------------------------------

bool c6(std::ostream& out) {
    std::atomic<int> agree{0}, total{0}, positive{0};
    parallel_for(500, [&](int i) {
        Rng rng(split_seed(707, i));
        const int n = 4 + static_cast<int>(rng.below(4));  // 4..7
        const int s = 2 + static_cast<int>(rng.below(n));
        const double p = 0.15 + 0.1 * static_cast<double>(rng.below(6));
        const auto g = generate_random_system(n, s, p, split_seed(708, i));
        const bool via_tree = has_rainbow_spanning_tree(g).has_value();
        const bool via_partition = partition_criterion_holds(g).holds;
        ++total;
        if (via_tree == via_partition) ++agree;
        if (via_tree) ++positive;
    });
    out << "    " << agree.load() << "/" << total.load() << " agree (" << positive.load()
        << " positive instances)\n";
    return agree.load() == 500;
}

// ---------------------------------------------------------------------------
// C7: diameter Breaker at the stated bias.
// ---------------------------------------------------------------------------

bool c7(std::ostream& out) {
    bool ok = true;
    for (const int s : {3, 4}) {
        for (const int n : {30, 60}) {
            const int b = static_cast<int>(
                std::ceil(24.0 * s * std::pow(n, 1.0 - 1.0 / std::ceil(s / 2.0))));
            for (const std::string maker_name : {"random", "greedy_path"}) {
                std::atomic<int> forfeits{0}, short_paths{0}, c31{0}, c32{0};
                parallel_for(100, [&](int seed) {
                    auto maker = make_strategy(maker_name);
                    auto breaker = make_diameter_breaker();
                    auto* db = dynamic_cast<DiameterBreaker*>(breaker.get());
                    GameConfig cfg;
                    cfg.n = n;
                    cfg.s = s;
                    cfg.breaker_bias = b;
                    cfg.seed = split_seed(808, s * 1000 + n, seed);
                    cfg.predicate = {"rainbow_connected",
                                     {{"max_len", static_cast<double>(s)}}};
                    auto [outcome, t] =
                        play_game(Board::layered_complete(n, s), *maker, *breaker, cfg);
                    if (outcome.kind == Outcome::Kind::Forfeit) {
                        ++forfeits;
                        return;
                    }
                    ColoredSubgraph mg(n, s);
                    for (const auto& mv : t.moves)
                        if (mv.player == Player::Maker) mg.add(mv.edge);
                    const auto [v, w] = db->sentinels();
                    // color-blind distance between the sentinels must exceed s
                    const auto dist = oracle_all_pairs_distances(mg);
                    if (v >= 0 && dist[v][w] <= s) ++short_paths;
                    c31 += db->ball_bound_violations();
                    c32 += db->shell_round_violations();
                });
                out << "    s=" << s << " n=" << n << " b=" << b << " vs " << maker_name
                    << ": forfeits=" << forfeits.load()
                    << " short_paths=" << short_paths.load()
                    << " ball_bound_fires=" << c31.load() << " shell_round_fires=" << c32.load()
                    << "\n";
                ok = ok && forfeits.load() == 0 && short_paths.load() == 0 &&
                     c31.load() == 0 && c32.load() == 0;
            }
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C8: rainbow Maker at desk scale.
// ---------------------------------------------------------------------------

bool c8(std::ostream& out) {
    bool ok = true;
    for (const int n : {100, 200}) {
        const int b = static_cast<int>(std::ceil(0.2 * std::sqrt(n)));
        const auto pack = desk_pack(n, b, 3, 3, out);
        std::atomic<int> wins{0}, forfeits{0};
        std::mutex beta_mu;
        double beta_min = -1, beta_mean_sum = 0;
        int beta_samples = 0;
        const int trials = 200;
        parallel_for(trials, [&](int seed) {
            auto maker = make_rainbow_conn_maker();
            auto breaker = make_random_strategy();
            GameConfig cfg;
            cfg.n = n;
            cfg.s = 3;
            cfg.breaker_bias = b;
            cfg.seed = split_seed(909, n, seed);
            cfg.strategy_params = pack;
            cfg.predicate = {"rainbow_connected", {{"max_len", 3}}};
            auto [outcome, t] =
                play_game(Board::layered_complete(n, 3), *maker, *breaker, cfg);
            if (outcome.kind == Outcome::Kind::Forfeit &&
                outcome.forfeited_by == Player::Maker) {
                ++forfeits;
                return;
            }
            ColoredSubgraph mg(n, 3);
            for (const auto& mv : t.moves)
                if (mv.player == Player::Maker) mg.add(mv.edge);
            if (rainbow_coverage_len3(mg).connected) ++wins;
            if (seed % 10 == 0) {  // path-count fit on a subsample
                const auto fit = fit_path_count_beta(mg, b);
                std::lock_guard<std::mutex> lock(beta_mu);
                if (beta_min < 0 || fit.beta_min < beta_min) beta_min = fit.beta_min;
                beta_mean_sum += fit.beta_mean;
                ++beta_samples;
            }
        });
        const double rate = static_cast<double>(wins.load()) / trials;
        out << "    n=" << n << " b=" << b << ": wins " << wins.load() << "/" << trials
            << " forfeits=" << forfeits.load() << " beta_min=" << beta_min
            << " beta_mean=" << beta_mean_sum / std::max(1, beta_samples) << "\n";
        ok = ok && rate >= 0.95 && beta_min > 0;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C9: layer-isolation Breaker in the rainbow spanning tree game.
// ---------------------------------------------------------------------------

bool c9(std::ostream& out) {
    bool ok = true;
    for (const int n : {6, 8}) {
        const int b =
            static_cast<int>(std::ceil(n * (n - 1) / 2.0 / std::log(n - 1.0))) + 1;
        std::atomic<int> owned{0}, maker_trees{0};
        parallel_for(100, [&](int seed) {
            auto maker = make_random_strategy();
            auto breaker = make_layer_isolation_breaker();
            auto* lb = dynamic_cast<LayerIsolationBreaker*>(breaker.get());
            GameConfig cfg;
            cfg.n = n;
            cfg.s = n - 1;
            cfg.breaker_bias = b;
            cfg.seed = split_seed(1010, n, seed);
            cfg.predicate = {"rainbow_spanning_tree", {}};
            auto [outcome, t] =
                play_game(Board::layered_complete(n, n - 1), *maker, *breaker, cfg);
            Board final_board = Board::layered_complete(n, n - 1);
            ColoredSubgraph mg(n, n - 1);
            for (const auto& mv : t.moves) {
                final_board.claim(mv.edge, mv.player);
                if (mv.player == Player::Maker) mg.add(mv.edge);
            }
            if (lb->owned_layer(final_board)) ++owned;
            if (has_rainbow_spanning_tree(mg)) ++maker_trees;
        });
        out << "    n=" << n << " b=" << b << ": breaker owned a layer in " << owned.load()
            << "/100 games, maker trees " << maker_trees.load() << "\n";
        ok = ok && owned.load() == 100 && maker_trees.load() == 0;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C10: random graph intuition.
// ---------------------------------------------------------------------------

bool c10(std::ostream& out) {
    bool ok = true;
    const std::vector<double> factors{0.3, 0.45, 0.65, 0.9, 1.2, 1.6, 2.2, 3.0};
    for (const int s : {2, 3}) {
        std::vector<double> ns{50, 100, 200}, crossings;
        for (const int n : {50, 100, 200}) {
            const double center = random_threshold_formulas("constant", n, s);
            const auto rows = random_intuition_scan(n, s, center, factors, 200,
                                                    split_seed(1111, s, n), n - 1);
            const auto crossing = crossing_probability(rows);
            if (!crossing) {
                out << "    s=" << s << " n=" << n << ": no 50% crossing in the scan window\n";
                ok = false;
                continue;
            }
            out << "    s=" << s << " n=" << n << ": crossing p*=" << *crossing
                << " (predicted " << center << ")\n";
            crossings.push_back(*crossing);
        }
        if (crossings.size() == 3) {
            const double slope = loglog_slope(ns, crossings);
            const double target = -(static_cast<double>(s) - 1) / s;
            out << "    s=" << s << ": fitted exponent " << slope << " target " << target
                << "\n";
            ok = ok && std::abs(slope - target) <= 0.15;
        }
    }
    // large-s regime: crossing within a factor 2 of ln(n)/(sn)
    for (const int n : {50, 100, 200}) {
        const int s = 4 * static_cast<int>(std::ceil(std::log(n)));
        const double center = random_threshold_formulas("large", n, s);
        const auto rows =
            random_intuition_scan(n, s, center, factors, 200, split_seed(1112, s, n), n - 1);
        const auto crossing = crossing_probability(rows);
        if (!crossing) {
            out << "    large-s n=" << n << ": no crossing found\n";
            ok = false;
            continue;
        }
        const double ratio = *crossing / center;
        out << "    large-s n=" << n << " s=" << s << ": crossing " << *crossing
            << " predicted " << center << " ratio " << ratio << "\n";
        ok = ok && ratio >= 0.5 && ratio <= 2.0;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C11: diameter-game scaling with the paper strategies on both sides.
// ---------------------------------------------------------------------------

bool c11(std::ostream& out) {
    std::vector<double> ns, bhighs;
    bool ok = true;
    for (const int n : {50, 100, 200}) {
        ExperimentConfig cfg;
        cfg.game = "diameter";
        cfg.maker = "rainbow_maker";
        cfg.breaker = "diameter_breaker";
        cfg.trials = 25;
        cfg.seed = split_seed(1212, n);
        cfg.params["expose_cap"] = 10;
        cfg.params["ell2"] = 1e9;
        cfg.params["ell3"] = 1e9;
        cfg.params["M3"] = 1e9;
        try {
            const auto est = estimate_empirical_threshold(cfg, n, 3, 1, 4096);
            out << "    n=" << n << ": bracket [" << est.b_low << ", " << est.b_high << "]\n";
            ns.push_back(n);
            bhighs.push_back(est.b_high);
        } catch (const std::exception& e) {
            out << "    n=" << n << ": " << e.what() << "\n";
            ok = false;
        }
    }
    if (ns.size() == 3) {
        const double slope = loglog_slope(ns, bhighs);
        out << "    log-log slope of b_high: " << slope << " (target window [0.3, 0.7])\n";
        ok = ok && slope >= 0.3 && slope <= 0.7;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// C12: oracle independence for the derived example values.
// ---------------------------------------------------------------------------

bool c12(std::ostream& out) {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        out << "    " << (cond ? "ok   " : "FAIL ") << what << "\n";
        ok = ok && cond;
    };

    {
        bool agree = true;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = generate_random_system(8, 3, 0.35, split_seed(1313, seed));
            for (int w = 1; w < 8; ++w)
                if (rainbow_path_exists(g, 0, w, 7).has_value() !=
                    (oracle_count_rainbow_paths(g, 0, w, 7) > 0))
                    agree = false;
        }
        expect(agree, "rainbow_path_exists == path enumeration oracle (n=8, 10 seeds)");
    }
    {
        bool agree = true;
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const auto g = generate_random_system(7, 3, 0.4, split_seed(1414, seed));
            for (const auto& seq : {std::vector<int>{0, 1}, std::vector<int>{2, 1, 0}})
                for (int w = 1; w < 7; ++w)
                    if (rainbow_path_with_sequence(g, 0, w, seq) !=
                        oracle_count_sequence_paths(g, 0, w, seq))
                        agree = false;
        }
        expect(agree, "rainbow_path_with_sequence == sequence oracle (n=7)");
    }
    {
        bool agree = true;
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const auto g = generate_random_system(50, 1, 0.08, split_seed(1515, seed));
            const auto dist = oracle_all_pairs_distances(g);
            int diam = 0;
            for (int i = 0; i < 50; ++i)
                for (int j = 0; j < 50; ++j) diam = std::max(diam, dist[i][j]);
            for (int bound : {2, 3, 4, 6})
                if (diameter_at_most(g, bound) != (diam <= bound)) agree = false;
        }
        expect(agree, "diameter_at_most == Floyd-Warshall oracle (n=50)");
    }
    {
        bool agree = true;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const int n = 4 + static_cast<int>(seed % 4);
            const auto g = generate_random_system(n, n - 1, 0.3, split_seed(1616, seed));
            const bool a = has_rainbow_spanning_tree(g).has_value();
            const bool b = partition_criterion_holds(g).holds;
            const bool c = oracle_count_rainbow_spanning_trees(g) > 0;
            if (a != b || b != c) agree = false;
        }
        expect(agree, "tree checker == partition criterion == Pruefer oracle (100 instances)");
    }
    {
        bool agree = true;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto g = generate_random_system(6, 3, 0.4, split_seed(1717, seed));
            if (has_rainbow_perfect_matching(g).has_value() !=
                (oracle_count_rainbow_perfect_matchings(g) > 0))
                agree = false;
        }
        expect(agree, "matching search == pairing-first oracle (n=6, 30 seeds)");
    }
    {
        bool agree = true;
        for (const int n : {3, 4, 5}) {
            for (const double b : {1.0, 3.0}) {
                double brute = 0;
                std::vector<int> assign(static_cast<size_t>(n), 0);
                std::function<void(int, int)> rec = [&](int v, int blocks) {
                    if (v == n) {
                        if (blocks < 2) return;
                        long long crossing = 0;
                        for (int i = 0; i < n; ++i)
                            for (int j = i + 1; j < n; ++j)
                                if (assign[i] != assign[j]) ++crossing;
                        const int want = n - blocks + 1;
                        for (std::uint32_t set = 0; set < (1u << (n - 1)); ++set)
                            if (std::popcount(set) == want)
                                brute += std::pow(2.0, -1.0 * want * crossing / b);
                        return;
                    }
                    for (int blk = 0; blk <= blocks; ++blk) {
                        assign[v] = blk;
                        rec(v + 1, blk == blocks ? blocks + 1 : blocks);
                    }
                };
                rec(0, 0);
                const auto sums = rs_beck_partition_sum(n, b, true);
                if (std::abs(sums.total() - brute) > 1e-12 * std::max(1.0, brute))
                    agree = false;
            }
        }
        expect(agree, "rs_beck_partition_sum exact == independent enumerator (1e-12)");
    }
    {
        const int n = 6;
        long long all = 0, through = 0;
        for (int a = 0; a < n; ++a)
            for (int b2 = 0; b2 < n; ++b2) {
                if (a == b2 || a <= 1 || b2 <= 1) continue;
                ++all;
                if ((a == 2 && b2 == 3) || (a == 3 && b2 == 2)) ++through;
            }
        const double f1 = (all - through) * 27.0 + through * 2 * 9.0;
        const double f2 = through * 9.0;
        const double expected = f1 / 8 + f2 / 4;
        expect(std::abs(path_count_upper_bound(6, 3, 1) - expected) < 1e-12,
               "path_count_upper_bound == brute v,w-path enumeration (n=6, s=3)");
    }
    {
        HypergraphGame game;
        game.num_elements = 3;
        game.winning_sets = {0b011};
        game.first_player = Player::Maker;
        game.breaker_bias = 1;
        expect(solve_hypergraph(game) == Player::Breaker,
               "hand minimax: one winning pair, (1:1), maker first -> breaker");
    }
    expect(oracle_count_partitions(4) == 15, "Bell(4) == 15");
    expect(oracle_count_labeled_trees(4) == 16, "Cayley 4^2 == 16");
    expect(sbg_conditions(1, 3, 10, 83, 26).first && !sbg_conditions(1, 3, 10, 82, 26).first,
           "sbg condition (1) boundary at M = 83");
    expect(sbg_conditions(1, 3, 10, 83, 26).second && !sbg_conditions(1, 3, 10, 83, 25).second,
           "sbg condition (2) boundary at l = 26");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "exact threshold of the two-color connectivity game", c1},
        {2, "pairing strategies vs exhaustive adversary", c2},
        {3, "minbox invariant never violated", c3},
        {4, "box criterion playouts", c4},
        {5, "beck criterion: greedy breaker beats optimal maker", c5},
        {6, "rainbow-tree equivalence", c6},
        {7, "diameter breaker blocks short paths", c7},
        {8, "rainbow maker wins at desk scale", c8},
        {9, "layer isolation breaker owns a layer", c9},
        {10, "random graph intuition exponents", c10},
        {11, "diameter-game threshold scaling", c11},
        {12, "oracle independence for derived values", c12},
    };

    g_threads = lab_thread_count();
    std::vector<int> wanted;
    if (argc < 2 || std::strcmp(argv[1], "all") == 0) {
        for (const auto& c : criteria) wanted.push_back(c.id);
    } else {
        for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    }

    bool all_ok = true;
    for (const int id : wanted) {
        const auto it = std::find_if(criteria.begin(), criteria.end(),
                                     [&](const Criterion& c) { return c.id == id; });
        if (it == criteria.end()) {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        std::ostringstream detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = it->run(detail);
        } catch (const std::exception& e) {
            detail << "    exception: " << e.what() << "\n";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << it->name << " ("
                  << secs << " s)\n"
                  << detail.str();
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
