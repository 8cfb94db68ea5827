#include "rbg/engine.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace rbg {

namespace {

int int_param(const ParamPack& p, const std::string& key, int fallback) {
    return static_cast<int>(param_or(p, key, fallback));
}

}  // namespace

bool predicate_registered(const std::string& id) {
    return id == "rainbow_connected" || id == "diameter" || id == "rainbow_spanning_tree" ||
           id == "rainbow_perfect_matching" || id == "rainbow_hamilton_cycle" ||
           id == "own_edge";
}

bool predicate_split_independent(const std::string& id) {
    // all current predicates are invariant under arbitrary vertex relabeling
    return id != "own_edge";
}

bool eval_predicate(const WinPredicate& pred, const ColoredSubgraph& g) {
    if (pred.id == "rainbow_connected") {
        const int max_len = int_param(pred.params, "max_len", g.n() - 1);
        if (max_len <= 3) {
            // cheap cover check: lengths 1..3 without building witnesses
            const int n = g.n();
            for (int v = 0; v < n; ++v) {
                for (int w = v + 1; w < n; ++w) {
                    if (!rainbow_path_exists(g, v, w, max_len)) return false;
                }
            }
            return true;
        }
        return rainbow_connected(g, max_len).connected;
    }
    if (pred.id == "diameter") return diameter_at_most(g, int_param(pred.params, "bound", g.n() - 1));
    if (pred.id == "rainbow_spanning_tree") return has_rainbow_spanning_tree(g).has_value();
    if (pred.id == "rainbow_perfect_matching") return has_rainbow_perfect_matching(g).has_value();
    if (pred.id == "rainbow_hamilton_cycle") return has_rainbow_hamilton_cycle(g).has_value();
    if (pred.id == "own_edge") {
        EdgeRef e(int_param(pred.params, "layer", 0), int_param(pred.params, "u", 0),
                  int_param(pred.params, "v", 1));
        return g.contains(e);
    }
    throw std::runtime_error("unregistered predicate: " + pred.id);
}

std::string outcome_to_string(const Outcome& o) {
    switch (o.kind) {
        case Outcome::Kind::MakerWin: return "maker";
        case Outcome::Kind::BreakerWin: return "breaker";
        case Outcome::Kind::Undecided: return "undecided";
        case Outcome::Kind::Forfeit:
            return std::string("forfeit:") +
                   (o.forfeited_by == Player::Maker ? "maker" : "breaker");
    }
    return "?";
}

std::pair<Outcome, Transcript> play_game(Board board, Strategy& maker, Strategy& breaker,
                                         const GameConfig& config) {
    Transcript t;
    t.config = config;
    if (!predicate_registered(config.predicate.id))
        throw std::runtime_error("unregistered predicate: " + config.predicate.id);

    maker.begin(board, config, Player::Maker, split_seed(config.seed, 1));
    breaker.begin(board, config, Player::Breaker, split_seed(config.seed, 2));

    ColoredSubgraph maker_graph(board.n(), board.s());
    Outcome out;
    int maker_claims_since_check = 0;
    bool decided = false;

    const Player order[2] = {config.first_player,
                             config.first_player == Player::Maker ? Player::Breaker
                                                                  : Player::Maker};

    for (int round = 1; !decided && board.free_count() > 0; ++round) {
        int claims_this_round = 0;
        for (const Player who : order) {
            Strategy& strat = who == Player::Maker ? maker : breaker;
            const int bias = who == Player::Maker ? config.maker_bias : config.breaker_bias;
            for (int k = 0; k < bias && board.free_count() > 0; ++k) {
                MoveCtx ctx{round, k, &t.moves};
                std::optional<EdgeRef> pick;
                try {
                    pick = strat.choose(board, ctx);
                } catch (const ForfeitSignal& f) {
                    out.kind = Outcome::Kind::Forfeit;
                    out.forfeited_by = who;
                    out.reason = f.reason;
                    decided = true;
                    break;
                }
                if (!pick) break;  // pass the rest of this round
                if (!board.is_free(*pick)) {
                    out.kind = Outcome::Kind::Forfeit;
                    out.forfeited_by = who;
                    out.reason = "illegal-move";
                    decided = true;
                    break;
                }
                board.claim(*pick, who);
                t.moves.push_back({round, who, *pick});
                ++claims_this_round;
                if (who == Player::Maker) {
                    maker_graph.add(*pick);
                    if (config.maker_win_check_interval > 0 &&
                        ++maker_claims_since_check >= config.maker_win_check_interval) {
                        maker_claims_since_check = 0;
                        if (eval_predicate(config.predicate, maker_graph)) {
                            out.kind = Outcome::Kind::MakerWin;
                            decided = true;
                            break;
                        }
                    }
                }
            }
            if (decided) break;
        }
        if (!decided && claims_this_round == 0) break;  // both sides passed
    }

    if (!decided) {
        out.kind = eval_predicate(config.predicate, maker_graph) ? Outcome::Kind::MakerWin
                                                                 : Outcome::Kind::BreakerWin;
    }
    t.outcome = out;
    return {out, t};
}

Outcome replay(const Transcript& t) {
    const auto& cfg = t.config;
    Board board = Board::layered_complete(cfg.n, cfg.s);
    ColoredSubgraph maker_graph(cfg.n, cfg.s);

    const Player first = cfg.first_player;
    const Player second = first == Player::Maker ? Player::Breaker : Player::Maker;
    auto bias_of = [&](Player p) {
        return p == Player::Maker ? cfg.maker_bias : cfg.breaker_bias;
    };

    int round = 0;
    int idx_in_block = 0;
    Player block_player = second;  // forces a new round on the first move
    for (const auto& mv : t.moves) {
        if (mv.round < round) throw CorruptTranscript("round numbers decrease");
        if (mv.round > round) {
            if (mv.round != round + 1) throw CorruptTranscript("round skipped");
            // a round may open with the second player when the first one passed
            round = mv.round;
            block_player = mv.player;
            idx_in_block = 0;
        } else if (mv.player != block_player) {
            if (block_player == first && mv.player == second) {
                block_player = second;
                idx_in_block = 0;
            } else {
                throw CorruptTranscript("alternation violated");
            }
        }
        if (++idx_in_block > bias_of(block_player)) throw CorruptTranscript("bias exceeded");
        if (!board.is_free(mv.edge)) throw CorruptTranscript("edge not free at claim time");
        board.claim(mv.edge, mv.player);
        if (mv.player == Player::Maker) maker_graph.add(mv.edge);
    }

    Outcome out;
    if (board.free_count() == 0) {
        out.kind = eval_predicate(cfg.predicate, maker_graph) ? Outcome::Kind::MakerWin
                                                              : Outcome::Kind::BreakerWin;
    } else if (t.outcome.kind == Outcome::Kind::Forfeit) {
        out = t.outcome;  // a forfeit ends the game where it stands
    } else if (eval_predicate(cfg.predicate, maker_graph)) {
        out.kind = Outcome::Kind::MakerWin;  // early-stop win
    } else {
        out.kind = Outcome::Kind::Undecided;
    }
    return out;
}

// --- transcript serialization ----------------------------------------------

namespace {

nlohmann::json config_to_json(const GameConfig& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["s"] = c.s;
    j["maker_bias"] = c.maker_bias;
    j["breaker_bias"] = c.breaker_bias;
    j["first"] = c.first_player == Player::Maker ? "maker" : "breaker";
    j["predicate"] = {{"id", c.predicate.id}, {"params", c.predicate.params}};
    j["seed"] = c.seed;
    j["strategy_params"] = c.strategy_params;
    j["maker_win_check_interval"] = c.maker_win_check_interval;
    return j;
}

GameConfig config_from_json(const nlohmann::json& j) {
    GameConfig c;
    c.n = j.at("n").get<int>();
    c.s = j.at("s").get<int>();
    c.maker_bias = j.at("maker_bias").get<int>();
    c.breaker_bias = j.at("breaker_bias").get<int>();
    c.first_player = j.at("first").get<std::string>() == "maker" ? Player::Maker : Player::Breaker;
    c.predicate.id = j.at("predicate").at("id").get<std::string>();
    c.predicate.params = j.at("predicate").at("params").get<ParamPack>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.strategy_params = j.at("strategy_params").get<ParamPack>();
    c.maker_win_check_interval = j.value("maker_win_check_interval", 0);
    return c;
}

}  // namespace

std::string Transcript::to_jsonl() const {
    std::ostringstream out;
    nlohmann::json header;
    header["type"] = "header";
    header["config"] = config_to_json(config);
    out << header.dump() << '\n';
    for (const auto& mv : moves) {
        nlohmann::json j;
        j["type"] = "move";
        j["round"] = mv.round;
        j["player"] = mv.player == Player::Maker ? "maker" : "breaker";
        j["edge"] = {mv.edge.layer, mv.edge.u, mv.edge.v};
        out << j.dump() << '\n';
    }
    nlohmann::json tail;
    tail["type"] = "outcome";
    tail["kind"] = outcome_to_string(outcome);
    tail["reason"] = outcome.reason;
    if (!rng_trace.empty()) tail["rng_trace"] = rng_trace;
    out << tail.dump() << '\n';
    return out.str();
}

Transcript Transcript::from_jsonl(const std::string& text) {
    Transcript t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const auto type = j.at("type").get<std::string>();
        if (type == "header") {
            t.config = config_from_json(j.at("config"));
            have_header = true;
        } else if (type == "move") {
            if (!have_header) throw CorruptTranscript("move before header");
            Move mv;
            mv.round = j.at("round").get<int>();
            mv.player = j.at("player").get<std::string>() == "maker" ? Player::Maker
                                                                     : Player::Breaker;
            const auto& e = j.at("edge");
            mv.edge = EdgeRef(e[0].get<int>(), e[1].get<int>(), e[2].get<int>());
            t.moves.push_back(mv);
        } else if (type == "outcome") {
            const auto kind = j.at("kind").get<std::string>();
            if (kind == "maker") t.outcome.kind = Outcome::Kind::MakerWin;
            else if (kind == "breaker") t.outcome.kind = Outcome::Kind::BreakerWin;
            else if (kind == "undecided") t.outcome.kind = Outcome::Kind::Undecided;
            else {
                t.outcome.kind = Outcome::Kind::Forfeit;
                t.outcome.forfeited_by =
                    kind == "forfeit:maker" ? Player::Maker : Player::Breaker;
            }
            t.outcome.reason = j.value("reason", "");
        } else {
            throw CorruptTranscript("unknown line type: " + type);
        }
    }
    if (!have_header) throw CorruptTranscript("missing header");
    return t;
}

// --- baseline strategies ----------------------------------------------------

namespace {

class RandomStrategy final : public Strategy {
  public:
    void begin(const Board&, const GameConfig&, Player, std::uint64_t seed) override {
        rng_.reseed(seed);
    }

    std::optional<EdgeRef> choose(const Board& board, const MoveCtx&) override {
        const int total = board.total_edges();
        const int free = board.free_count();
        if (free == 0) return std::nullopt;
        // rejection sample directly on edge indices
        while (true) {
            const int idx = static_cast<int>(rng_.below(total));
            if (board.state_at(idx) == ClaimState::Free) return board.edge_from_index(idx);
        }
    }

  private:
    Rng rng_;
};

class GreedyPathStrategy final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig&, Player role, std::uint64_t seed) override {
        rng_.reseed(seed);
        role_ = role;
        n_ = board.n();
        own_adj_.assign(static_cast<size_t>(n_), {});
    }

    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override {
        sync_history(*ctx.history);
        // find the farthest pair in own color-blind graph, then pick the free
        // edge minimizing dist(u*, a) + 1 + dist(b, w*)
        auto [u_star, w_star] = farthest_pair();
        const auto du = bfs_from(u_star);
        const auto dw = bfs_from(w_star);
        long long best = -1;
        EdgeRef best_edge;
        const long long inf = 1 << 20;
        for (int idx = 0; idx < board.total_edges(); ++idx) {
            if (board.state_at(idx) != ClaimState::Free) continue;
            const EdgeRef e = board.edge_from_index(idx);
            auto val = [&](int a, int b) {
                const long long x = du[a] < 0 ? inf : du[a];
                const long long y = dw[b] < 0 ? inf : dw[b];
                return x + 1 + y;
            };
            const long long score = std::min(val(e.u, e.v), val(e.v, e.u));
            if (best < 0 || score < best) {
                best = score;
                best_edge = e;
            }
        }
        if (best < 0) return std::nullopt;
        return best_edge;
    }

  private:
    void sync_history(const std::vector<Move>& history) {
        for (; seen_ < history.size(); ++seen_) {
            const auto& mv = history[seen_];
            if (mv.player != role_) continue;
            own_adj_[mv.edge.u].push_back(mv.edge.v);
            own_adj_[mv.edge.v].push_back(mv.edge.u);
        }
    }

    std::vector<int> bfs_from(int src) const {
        std::vector<int> dist(static_cast<size_t>(n_), -1);
        std::vector<int> q(static_cast<size_t>(n_));
        int head = 0, tail = 0;
        q[tail++] = src;
        dist[src] = 0;
        while (head < tail) {
            const int v = q[head++];
            for (int w : own_adj_[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q[tail++] = w;
                }
        }
        return dist;
    }

    std::pair<int, int> farthest_pair() const {
        int bu = 0, bw = n_ > 1 ? 1 : 0, best = -1;
        for (int v = 0; v < n_; ++v) {
            const auto d = bfs_from(v);
            for (int w = v + 1; w < n_; ++w) {
                const int dv = d[w] < 0 ? 1 << 20 : d[w];
                if (dv > best) {
                    best = dv;
                    bu = v;
                    bw = w;
                }
            }
        }
        return {bu, bw};
    }

    Rng rng_;
    Player role_ = Player::Maker;
    int n_ = 0;
    size_t seen_ = 0;
    std::vector<std::vector<int>> own_adj_;
};

}  // namespace

std::unique_ptr<Strategy> make_random_strategy() { return std::make_unique<RandomStrategy>(); }
std::unique_ptr<Strategy> make_greedy_path_strategy() {
    return std::make_unique<GreedyPathStrategy>();
}

}  // namespace rbg
