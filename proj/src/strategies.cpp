#include "rbg/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>

namespace rbg {

namespace {

std::vector<EdgeRef> new_breaker_edges(const std::vector<Move>& history, size_t& cursor) {
    std::vector<EdgeRef> out;
    for (; cursor < history.size(); ++cursor)
        if (history[cursor].player == Player::Breaker) out.push_back(history[cursor].edge);
    return out;
}

std::vector<EdgeRef> new_maker_edges(const std::vector<Move>& history, size_t& cursor) {
    std::vector<EdgeRef> out;
    for (; cursor < history.size(); ++cursor)
        if (history[cursor].player == Player::Maker) out.push_back(history[cursor].edge);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Pairing strategies (s = 2)
// ---------------------------------------------------------------------------

namespace {

class PairingMakerRc2 final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig&, Player, std::uint64_t) override {
        if (board.s() != 2) throw std::runtime_error("pairing strategies require s = 2");
        n_ = board.n();
        seen_ = 0;
        pending_.clear();
    }

    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override {
        for (const auto& e : new_breaker_edges(*ctx.history, seen_)) pending_.push_back(e);
        // answer the oldest unanswered Breaker edge whose twin is still free
        while (!pending_.empty()) {
            const EdgeRef e = pending_.front();
            pending_.erase(pending_.begin());
            const EdgeRef twin(1 - e.layer, e.u, e.v);
            if (board.is_free(twin)) return twin;
        }
        // otherwise open a fresh pair (both layers free)
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (board.is_free(EdgeRef(0, u, v)) && board.is_free(EdgeRef(1, u, v)))
                    return EdgeRef(0, u, v);
        for (int c = 0; c < 2; ++c)
            for (int u = 0; u < n_; ++u)
                for (int v = u + 1; v < n_; ++v)
                    if (board.is_free(EdgeRef(c, u, v))) return EdgeRef(c, u, v);
        return std::nullopt;
    }

  private:
    int n_ = 0;
    size_t seen_ = 0;
    std::vector<EdgeRef> pending_;
};

class PairingBreakerRc2 final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig&, Player, std::uint64_t) override {
        if (board.s() != 2) throw std::runtime_error("pairing strategies require s = 2");
        n_ = board.n();
        seen_ = 0;
        v_ = w_ = -1;
        queue_.clear();
        queue_pos_ = 0;
    }

    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override {
        if (ctx.claim_index == 0) plan_round(board, ctx);
        while (queue_pos_ < queue_.size()) {
            const EdgeRef e = queue_[queue_pos_++];
            if (board.is_free(e)) return e;
        }
        // fill the bias with the lowest free edge
        for (int c = 0; c < 2; ++c)
            for (int u = 0; u < n_; ++u)
                for (int v = u + 1; v < n_; ++v)
                    if (board.is_free(EdgeRef(c, u, v))) return EdgeRef(c, u, v);
        return std::nullopt;
    }

    std::pair<int, int> sentinels() const { return {v_, w_}; }

  private:
    void plan_round(const Board& board, const MoveCtx& ctx) {
        queue_.clear();
        queue_pos_ = 0;
        auto makers = new_maker_edges(*ctx.history, seen_);
        if (v_ < 0) {
            // first Breaker round: grab both edges of a Maker-untouched pair
            std::vector<char> touched(static_cast<size_t>(n_), 0);
            for (const auto& mv : *ctx.history)
                if (mv.player == Player::Maker) touched[mv.edge.u] = touched[mv.edge.v] = 1;
            for (int a = 0; a < n_ && v_ < 0; ++a) {
                if (touched[a]) continue;
                for (int b = a + 1; b < n_; ++b) {
                    if (touched[b]) continue;
                    v_ = a;
                    w_ = b;
                    break;
                }
            }
            if (v_ < 0) throw ForfeitSignal{"no-untouched-pair"};
            queue_.push_back(EdgeRef(0, v_, w_));
            queue_.push_back(EdgeRef(1, v_, w_));
            return;
        }
        for (const auto& e : makers) {
            int sentinel = -1, x = -1;
            if (e.u == v_ || e.u == w_) { sentinel = e.u; x = e.v; }
            else if (e.v == v_ || e.v == w_) { sentinel = e.v; x = e.u; }
            if (sentinel < 0 || x == v_ || x == w_) continue;
            const int other = sentinel == v_ ? w_ : v_;
            const EdgeRef answer(1 - e.layer, x, other);
            if (!board.is_free(answer)) {
                // a Maker-owned answer edge would mean the pairing broke
                if (board.state(answer) == ClaimState::Maker) throw ForfeitSignal{"pairing-broken"};
                continue;
            }
            queue_.push_back(answer);
        }
    }

    int n_ = 0;
    size_t seen_ = 0;
    int v_ = -1, w_ = -1;
    std::vector<EdgeRef> queue_;
    size_t queue_pos_ = 0;
};

}  // namespace

std::unique_ptr<Strategy> make_pairing_maker_rc2() { return std::make_unique<PairingMakerRc2>(); }
std::unique_ptr<Strategy> make_pairing_breaker_rc2() {
    return std::make_unique<PairingBreakerRc2>();
}

// ---------------------------------------------------------------------------
// Diameter Breaker
// ---------------------------------------------------------------------------

void DiameterBreaker::begin(const Board& board, const GameConfig& config, Player role,
                            std::uint64_t seed) {
    if (role != Player::Breaker) throw std::runtime_error("diameter strategy plays Breaker");
    rng_.reseed(seed);
    n_ = board.n();
    s_ = board.s();
    b_ = config.breaker_bias;
    path_s_ = static_cast<int>(param_or(config.strategy_params, "path_s",
                                        config.predicate.id == "diameter"
                                            ? param_or(config.predicate.params, "bound", s_)
                                            : s_));
    k_ = static_cast<int>(std::ceil(path_s_ / 2.0)) - 1;
    v_ = w_ = -1;
    seen_ = 0;
    round_count_ = 0;
    maker_adj_.assign(static_cast<size_t>(n_), {});
    maker_touched_.assign(static_cast<size_t>(n_), 0);
    queue_.clear();
    queue_pos_ = 0;
    ball_bound_violations_ = shell_round_violations_ = 0;
}

std::vector<int> DiameterBreaker::bfs_layers(int src) const {
    std::vector<int> dist(static_cast<size_t>(n_), -1);
    std::vector<int> q(static_cast<size_t>(n_));
    int head = 0, tail = 0;
    dist[src] = 0;
    q[tail++] = src;
    while (head < tail) {
        const int a = q[head++];
        for (int b : maker_adj_[a])
            if (dist[b] < 0) {
                dist[b] = dist[a] + 1;
                q[tail++] = b;
            }
    }
    return dist;
}

void DiameterBreaker::plan_round(const Board& board, const MoveCtx& ctx) {
    queue_.clear();
    queue_pos_ = 0;
    ++round_count_;
    int last_x = -1, last_y = -1;
    for (const auto& e : new_maker_edges(*ctx.history, seen_)) {
        maker_adj_[e.u].push_back(e.v);
        maker_adj_[e.v].push_back(e.u);
        maker_touched_[e.u] = maker_touched_[e.v] = 1;
        last_x = e.u;
        last_y = e.v;
    }
    if (v_ < 0) {
        for (int a = 0; a < n_ && w_ < 0; ++a) {
            if (maker_touched_[a]) continue;
            if (v_ < 0) v_ = a;
            else w_ = a;
        }
        if (w_ < 0) throw ForfeitSignal{"no-untouched-pair"};
    }

    const int quarter = b_ / 4;
    std::vector<char> planned(static_cast<size_t>(board.total_edges()), 0);
    auto push = [&](const EdgeRef& e) {
        const int id = board.edge_index(e);
        if (planned[id]) return false;
        planned[id] = 1;
        queue_.push_back(e);
        return true;
    };

    // (i) + (ii): random free edges at the endpoints of Maker's last edge
    for (const int z : {last_x, last_y}) {
        if (z < 0) continue;
        std::vector<EdgeRef> candidates;
        for (int c = 0; c < s_; ++c)
            for (int u = 0; u < n_; ++u) {
                if (u == z) continue;
                EdgeRef e(c, z, u);
                if (board.is_free(e) && !planned[board.edge_index(e)]) candidates.push_back(e);
            }
        for (int t = 0; t < quarter && !candidates.empty(); ++t) {
            const auto i = rng_.below(candidates.size());
            push(candidates[i]);
            candidates[i] = candidates.back();
            candidates.pop_back();
        }
    }

    const auto dist_v = bfs_layers(v_);
    const auto dist_w = bfs_layers(w_);
    auto c_dist = [&](int z) {
        int d = -1;
        if (dist_v[z] >= 0) d = dist_v[z];
        if (dist_w[z] >= 0) d = d < 0 ? dist_w[z] : std::min(d, dist_w[z]);
        return d;  // -1: in neither component
    };

    // (iii): repeatedly claim a free edge at the smallest-i shell C^i_v u C^i_w.
    // Among edges of the minimal shell, edges with both endpoints in the shell
    // come first (this seals the parallel v,w edges in round one, closing the
    // length-1 path the part (iv) bookkeeping never covers), then ties go to
    // the lexicographically smallest edge.
    for (int t = 0; t < quarter; ++t) {
        EdgeRef best;
        int best_i = -1;
        bool best_both = false;
        for (int z = 0; z < n_; ++z) {
            const int dz = c_dist(z);
            if (dz < 0 || (best_i >= 0 && dz > best_i)) continue;
            for (int c = 0; c < s_; ++c)
                for (int u = 0; u < n_; ++u) {
                    if (u == z) continue;
                    EdgeRef e(c, z, u);
                    if (!board.is_free(e) || planned[board.edge_index(e)]) continue;
                    const int du = c_dist(u);
                    const bool both = du >= 0 && du <= dz;
                    const auto better = [&] {
                        if (best_i < 0 || dz < best_i) return true;
                        if (dz > best_i) return false;
                        if (both != best_both) return both;
                        return e < best;
                    };
                    if (better()) {
                        best = e;
                        best_i = dz;
                        best_both = both;
                    }
                }
        }
        if (best_i < 0) break;
        push(best);
    }

    // (iv): all free edges between C^{<=k} and V_M; forfeit if more than b/4
    std::vector<EdgeRef> part4;
    for (int idx = 0; idx < board.total_edges(); ++idx) {
        if (board.state_at(idx) != ClaimState::Free || planned[idx]) continue;
        const EdgeRef e = board.edge_from_index(idx);
        const bool a_in = (dist_v[e.u] >= 0 && dist_v[e.u] <= k_) ||
                          (dist_w[e.u] >= 0 && dist_w[e.u] <= k_);
        const bool b_in = (dist_v[e.v] >= 0 && dist_v[e.v] <= k_) ||
                          (dist_w[e.v] >= 0 && dist_w[e.v] <= k_);
        if ((a_in && maker_touched_[e.v]) || (b_in && maker_touched_[e.u])) part4.push_back(e);
    }
    if (static_cast<int>(part4.size()) > quarter) throw ForfeitSignal{"part-iv-over-budget"};
    for (const auto& e : part4) push(e);

    // runtime bound checks
    const double ratio = 4.0 * s_ * n_ / b_;
    for (int x = 0; x < n_; ++x) {
        const auto d = bfs_layers(x);
        for (int i = 0; i <= k_; ++i) {
            const double bound = 2.0 * std::pow(ratio, i);
            int size_le = 0;
            for (int z = 0; z < n_; ++z)
                if (d[z] >= 0 && d[z] <= i) ++size_le;
            if (size_le > bound) ++ball_bound_violations_;
        }
    }
    for (int i = 0; i <= k_; ++i) {
        bool free_incident = false;
        for (int idx = 0; idx < board.total_edges() && !free_incident; ++idx) {
            if (board.state_at(idx) != ClaimState::Free || planned[idx]) continue;
            const EdgeRef e = board.edge_from_index(idx);
            const int du = c_dist(e.u), dv = c_dist(e.v);
            if ((du >= 0 && du <= i) || (dv >= 0 && dv <= i)) free_incident = true;
        }
        if (free_incident && round_count_ >= 4.0 * std::pow(ratio, i + 1)) ++shell_round_violations_;
    }
}

std::optional<EdgeRef> DiameterBreaker::choose(const Board& board, const MoveCtx& ctx) {
    if (ctx.claim_index == 0) plan_round(board, ctx);
    while (queue_pos_ < queue_.size()) {
        const EdgeRef e = queue_[queue_pos_++];
        if (board.is_free(e)) return e;
    }
    return std::nullopt;  // parts (i)-(iv) exhausted: pass the rest of the round
}

std::unique_ptr<DiameterBreaker> make_diameter_breaker() {
    return std::make_unique<DiameterBreaker>();
}

// ---------------------------------------------------------------------------
// Clique isolation Breaker
// ---------------------------------------------------------------------------

void CliqueIsolationBreaker::begin(const Board& board, const GameConfig& config, Player role,
                                   std::uint64_t seed) {
    if (role != Player::Breaker) throw std::runtime_error("clique isolation plays Breaker");
    rng_.reseed(seed);
    n_ = board.n();
    s_ = board.s();
    b_ = config.breaker_bias;
    phase1_rounds_ = std::max(1, b_ / (4 * s_));
    round_count_ = 0;
    seen_ = 0;
    phase2_ = false;
    maker_touched_.assign(static_cast<size_t>(n_), 0);
    clique_.clear();
    queue_.clear();
    queue_pos_ = 0;
}

void CliqueIsolationBreaker::plan_round(const Board& board, const MoveCtx& ctx) {
    queue_.clear();
    queue_pos_ = 0;
    ++round_count_;
    for (const auto& e : new_maker_edges(*ctx.history, seen_))
        maker_touched_[e.u] = maker_touched_[e.v] = 1;

    if (!phase2_ && round_count_ <= phase1_rounds_) {
        // drop clique vertices Maker touched, then top the clique back up
        std::erase_if(clique_, [&](int v) { return maker_touched_[v] != 0; });
        const int want = round_count_ - static_cast<int>(clique_.size());
        std::vector<int> fresh;
        for (int v = 0; v < n_ && static_cast<int>(fresh.size()) < want; ++v) {
            if (maker_touched_[v]) continue;
            if (std::find(clique_.begin(), clique_.end(), v) != clique_.end()) continue;
            fresh.push_back(v);
        }
        if (static_cast<int>(fresh.size()) < want) {
            phase2_ = true;  // clique-exhausted: no two untouched vertices remain
        } else {
            for (int x : fresh) {
                for (int a : clique_)
                    for (int c = 0; c < s_; ++c) {
                        EdgeRef e(c, x, a);
                        if (board.is_free(e)) queue_.push_back(e);
                    }
                clique_.push_back(x);
            }
            if (round_count_ == phase1_rounds_) phase2_ = true;  // boxes from next round
            return;
        }
    }

    // phase 2: Box game over the stars of untouched clique vertices
    std::vector<int> free_at(static_cast<size_t>(n_), 0);
    for (int idx = 0; idx < board.total_edges(); ++idx) {
        if (board.state_at(idx) != ClaimState::Free) continue;
        const EdgeRef e = board.edge_from_index(idx);
        ++free_at[e.u];
        ++free_at[e.v];
    }
    std::vector<char> planned(static_cast<size_t>(board.total_edges()), 0);
    for (int t = 0; t < b_; ++t) {
        int best = -1;
        for (int v : clique_) {
            if (maker_touched_[v] || free_at[v] == 0) continue;
            if (best < 0 || free_at[v] < free_at[best]) best = v;
        }
        if (best < 0) break;
        EdgeRef pick;
        bool found = false;
        for (int c = 0; c < s_ && !found; ++c)
            for (int u = 0; u < n_ && !found; ++u) {
                if (u == best) continue;
                EdgeRef e(c, best, u);
                if (board.is_free(e) && !planned[board.edge_index(e)]) {
                    pick = e;
                    found = true;
                }
            }
        if (!found) {
            free_at[best] = 0;
            continue;
        }
        planned[board.edge_index(pick)] = 1;
        queue_.push_back(pick);
        --free_at[pick.u];
        --free_at[pick.v];
    }
}

std::optional<EdgeRef> CliqueIsolationBreaker::choose(const Board& board, const MoveCtx& ctx) {
    if (ctx.claim_index == 0) plan_round(board, ctx);
    while (queue_pos_ < queue_.size()) {
        const EdgeRef e = queue_[queue_pos_++];
        if (board.is_free(e)) return e;
    }
    // keep the bias pressure with arbitrary free edges
    for (int idx = 0; idx < board.total_edges(); ++idx)
        if (board.state_at(idx) == ClaimState::Free) return board.edge_from_index(idx);
    return std::nullopt;
}

std::optional<int> CliqueIsolationBreaker::isolated_vertex(const Board& board) const {
    for (int v = 0; v < n_; ++v) {
        bool isolated = true;
        for (int c = 0; c < s_ && isolated; ++c)
            for (int u = 0; u < n_ && isolated; ++u) {
                if (u == v) continue;
                if (board.state(EdgeRef(c, v, u)) == ClaimState::Maker) isolated = false;
            }
        if (isolated) return v;
    }
    return std::nullopt;
}

std::unique_ptr<CliqueIsolationBreaker> make_clique_isolation_breaker() {
    return std::make_unique<CliqueIsolationBreaker>();
}

// ---------------------------------------------------------------------------
// Layer isolation Breaker
// ---------------------------------------------------------------------------

void LayerIsolationBreaker::begin(const Board& board, const GameConfig&, Player role,
                                  std::uint64_t) {
    if (role != Player::Breaker) throw std::runtime_error("layer isolation plays Breaker");
    n_ = board.n();
    s_ = board.s();
    seen_ = 0;
    layer_destroyed_.assign(static_cast<size_t>(s_), 0);
}

std::optional<EdgeRef> LayerIsolationBreaker::choose(const Board& board, const MoveCtx& ctx) {
    for (const auto& e : new_maker_edges(*ctx.history, seen_)) layer_destroyed_[e.layer] = 1;
    // greedy Box move: smallest free count among layers Maker has not touched
    const int pairs = board.pairs();
    std::vector<int> free_in(static_cast<size_t>(s_), 0);
    for (int c = 0; c < s_; ++c)
        for (int i = 0; i < pairs; ++i)
            if (board.state_at(c * pairs + i) == ClaimState::Free) ++free_in[c];
    int best = -1;
    for (int c = 0; c < s_; ++c) {
        if (layer_destroyed_[c] || free_in[c] == 0) continue;
        if (best < 0 || free_in[c] < free_in[best]) best = c;
    }
    if (best < 0) {
        for (int idx = 0; idx < board.total_edges(); ++idx)
            if (board.state_at(idx) == ClaimState::Free) return board.edge_from_index(idx);
        return std::nullopt;
    }
    for (int i = 0; i < pairs; ++i)
        if (board.state_at(best * pairs + i) == ClaimState::Free)
            return board.edge_from_index(best * pairs + i);
    return std::nullopt;
}

std::optional<int> LayerIsolationBreaker::owned_layer(const Board& board) const {
    const int pairs = board.pairs();
    for (int c = 0; c < s_; ++c) {
        bool full = true;
        for (int i = 0; i < pairs && full; ++i)
            if (board.state_at(c * pairs + i) != ClaimState::Breaker) full = false;
        if (full) return c;
    }
    return std::nullopt;
}

std::unique_ptr<LayerIsolationBreaker> make_layer_isolation_breaker() {
    return std::make_unique<LayerIsolationBreaker>();
}

// ---------------------------------------------------------------------------
// Rainbow connectivity Maker (constant s, expansion depth k = 1)
// ---------------------------------------------------------------------------

void RainbowConnMaker::begin(const Board& board, const GameConfig& config, Player role,
                             std::uint64_t seed) {
    if (role != Player::Maker) throw std::runtime_error("rainbow strategy plays Maker");
    rng_.reseed(seed);
    n_ = board.n();
    s_ = board.s();
    b_ = config.breaker_bias;
    if (n_ % 2 != 0) throw std::runtime_error("rainbow maker requires even n");
    if (s_ > 8) throw std::runtime_error("rainbow maker supports at most 8 colors");
    const auto& params = config.strategy_params;
    path_s_ = static_cast<int>(param_or(params, "path_s", s_));
    k_ = (path_s_ - 1) / 2;
    if (k_ != 1) throw std::runtime_error("rainbow maker implemented for k = 1 (paths of length 3)");
    const double t_exp = 1.0 - 1.0 / std::ceil(path_s_ / 2.0);
    p_ = param_or(params, "p", std::pow(n_, -t_exp));
    const int n_half = n_ / 2;
    d_target_ = static_cast<int>(
        param_or(params, "d_target", std::max(1.0, std::floor(n_ / (100.0 * b_)))));
    d_target_ = std::clamp(d_target_, 1, 8);
    expose_cap_ = static_cast<int>(param_or(params, "expose_cap", 2.0 * d_target_));
    expose_cap_ = std::clamp(expose_cap_, d_target_, n_half - 1);
    minbox_bias_ = static_cast<int>(param_or(params, "minbox_bias", 6.0 * b_));
    const double delta = param_or(params, "delta", std::pow(10.0, -80.0 * path_s_));
    const double gamma = std::max(param_or(params, "gamma", 1e-300), 1e-300);
    ell2_ = param_or(params, "ell2", delta * p_ * n_);
    m3_cap_ = param_or(params, "M3", std::pow(p_ * n_ / (100.0 * gamma), 2.0 * k_));
    ell3_ = param_or(params, "ell3", delta * p_ * std::pow(p_ * n_, 2.0 * k_));

    maker_moves_ = 0;
    for (auto& f : feed_pos_) f = 0;
    minbox_ = MinBoxState::make(std::vector<int>(static_cast<size_t>(2 * s_ * n_), n_half),
                                (d_target_ - 0.5) / n_half, minbox_bias_);
    box_dead_.assign(static_cast<size_t>(2 * s_ * n_), 0);
    exposed_.assign(static_cast<size_t>(n_) * s_ * 2 * n_, 0);
    exposed_count_.assign(static_cast<size_t>(2 * s_ * n_), 0);
    a_out_.assign(static_cast<size_t>(2 * s_ * n_), {});
    rev_.assign(static_cast<size_t>(2 * n_), {});

    const size_t total = static_cast<size_t>(board.total_edges());
    coin_.assign(total, Untossed);
    sbg2_state_.assign(total, 0);
    sbg3_state_.assign(total, 0);
    sbg2_cf_.assign(static_cast<size_t>(n_) * s_, 0);
    sbg2_cfm_.assign(static_cast<size_t>(n_) * s_, 0);
    sbg2_haunt_.assign(static_cast<size_t>(n_) * s_, 0);
    sbg3_.assign(static_cast<size_t>(n_) * n_ * s_ * s_ * s_, {});
    sbg3_heap_ = {};
    growth_queue_.clear();
    sbg2_cursor_ = sbg3_cursor_ = 0;

    gamma2_deg_.assign(static_cast<size_t>(n_) * s_, 0);
    gamma2_count_ = sp_count_ = coins_tossed_ = 0;
    double_coin_attempts_ = gamma2_sp_overlap_ = 0;
}

void RainbowConnMaker::feed_breaker_edges(const Board& board, const MoveCtx& ctx, int type) {
    auto& pos = feed_pos_[type];
    const auto& history = *ctx.history;
    for (; pos < history.size(); ++pos) {
        if (history[pos].player != Player::Breaker) continue;
        const EdgeRef e = history[pos].edge;
        const int id = board.edge_index(e);
        if (type == 1) {
            const int side_u = board.side_of(e.u) == Side::L ? 0 : 1;
            const int side_v = board.side_of(e.v) == Side::L ? 0 : 1;
            ++minbox_.boxes[slot(e.u, e.layer, side_v)].w_b;
            ++minbox_.boxes[slot(e.v, e.layer, side_u)].w_b;
        } else if (type == 2) {
            if (coin_[id] == Fail) continue;  // spooky edges belong to Ghost
            if (sbg2_state_[id] == 0) {
                sbg2_state_[id] = 2;  // Breaker
                ++sbg2_cf_[e.u * s_ + e.layer];
                ++sbg2_cf_[e.v * s_ + e.layer];
            }
        } else {
            if (coin_[id] == Fail) continue;
            if (sbg3_state_[id] == 0) {
                sbg3_state_[id] = 2;
                sbg3_update_edge(board, e, 1, 0, 0);
            }
        }
    }
}

void RainbowConnMaker::record_maker_out_edge(const Board& board, int v, int c, int side, int w) {
    (void)board;
    auto& out = a_out_[slot(v, c, side)];
    const int pos = static_cast<int>(out.size());
    out.push_back(w);
    rev_[side == 0 ? w : n_ + w].push_back({v, c, pos});
    growth_queue_.push_back({v, c, side, w, pos});
    ++minbox_.boxes[slot(v, c, side)].w_m;
}

std::optional<EdgeRef> RainbowConnMaker::random_free_fallback(const Board& board) {
    if (board.free_count() == 0) return std::nullopt;
    const int total = board.total_edges();
    while (true) {
        const int idx = static_cast<int>(rng_.below(total));
        if (board.state_at(idx) == ClaimState::Free) return board.edge_from_index(idx);
    }
}

std::optional<EdgeRef> RainbowConnMaker::type1_move(const Board& board) {
    const int n_half = n_ / 2;
    while (true) {
        // danger-greedy over active boxes that can still expose fresh edges
        int best = -1;
        for (int i = 0; i < 2 * s_ * n_; ++i) {
            if (box_dead_[i] || !minbox_.active(i)) continue;
            const int v = i / (2 * s_);
            const int side = i & 1;
            const int candidates = n_half - ((board.side_of(v) == Side::L ? 0 : 1) == side);
            if (exposed_count_[i] >= candidates) {
                box_dead_[i] = 1;
                continue;
            }
            if (best < 0 || minbox_.danger(i) > minbox_.danger(best)) best = i;
        }
        if (best < 0) return random_free_fallback(board);
        const int v = best / (2 * s_);
        const int c = (best / 2) % s_;
        const int side = best & 1;
        const int lo = side == 0 ? 0 : (n_ + 1) / 2;
        const int hi = side == 0 ? (n_ + 1) / 2 : n_;
        bool dead_end = false;
        while (true) {
            if (exposed_count_[best] >= expose_cap_) throw ForfeitSignal{"type1-exposure-cap"};
            std::vector<int> fresh;
            for (int w = lo; w < hi; ++w) {
                if (w == v) continue;
                if (!exposed_[static_cast<size_t>(best) * n_ + w]) fresh.push_back(w);
            }
            if (fresh.empty()) {
                box_dead_[best] = 1;
                dead_end = true;
                break;
            }
            const int w = fresh[rng_.below(fresh.size())];
            exposed_[static_cast<size_t>(best) * n_ + w] = 1;
            ++exposed_count_[best];
            const EdgeRef e(c, v, w);
            const ClaimState st = board.state(e);
            if (st == ClaimState::Breaker) continue;  // failure: resample
            record_maker_out_edge(board, v, c, side, w);
            if (minbox_.boxes[best].w_m >= d_target_) {
                // box complete: bulk-expose the rest of the alpha_2 budget
                std::vector<int> pool;
                for (int u = lo; u < hi; ++u) {
                    if (u == v) continue;
                    if (!exposed_[static_cast<size_t>(best) * n_ + u]) pool.push_back(u);
                }
                while (exposed_count_[best] < expose_cap_ && !pool.empty()) {
                    const auto j = rng_.below(pool.size());
                    exposed_[static_cast<size_t>(best) * n_ + pool[j]] = 1;
                    ++exposed_count_[best];
                    pool[j] = pool.back();
                    pool.pop_back();
                }
            }
            if (st == ClaimState::Free) return e;
            return std::nullopt;  // already hers from a type 2/3 move: imagined claim
        }
        if (dead_end) continue;
    }
}

void RainbowConnMaker::sbg3_update_edge(const Board& board, const EdgeRef& e, int delta_cf,
                                        int delta_cfm, int delta_haunt) {
    // affected keys: L-memberships of one endpoint x R-memberships of the other
    const int u = e.u, v = e.v;
    const int left = board.side_of(u) == Side::L ? u : (board.side_of(v) == Side::L ? v : -1);
    const int right = board.side_of(v) == Side::R ? v : (board.side_of(u) == Side::R ? u : -1);
    if (left < 0 || right < 0) return;  // same-side edges are never set members
    for (const auto& [a, c1, i] : rev_[left]) {
        for (const auto& [b, c3, j] : rev_[n_ + right]) {
            auto& key = sbg3_[key_index(a, b, c1, e.layer, c3)];
            if (!((key.member_mask >> (i * 8 + j)) & 1)) continue;
            key.c_f += static_cast<std::int16_t>(delta_cf);
            key.c_fm += static_cast<std::int16_t>(delta_cfm);
            key.haunted += static_cast<std::int16_t>(delta_haunt);
            sbg3_heap_.push({key_deficit(key), key_index(a, b, c1, e.layer, c3)});
        }
    }
}

void RainbowConnMaker::process_growth_queue(const Board& board) {
    for (const auto& g : growth_queue_) {
        if (g.side == 0) {
            // new member of A(v, c1): pair with every existing R-side out-set
            for (int w2 = 0; w2 < n_; ++w2)
                for (int c3 = 0; c3 < s_; ++c3) {
                    const auto& bset = a_out_[slot(w2, c3, 1)];
                    for (int j = 0; j < static_cast<int>(bset.size()); ++j)
                        for (int c = 0; c < s_; ++c) {
                            const EdgeRef e(c, g.w, bset[j]);
                            const int id = board.edge_index(e);
                            if (board.state_at(id) != ClaimState::Free || coin_[id] == Fail)
                                continue;
                            if (sbg3_state_[id] != 0) continue;
                            auto& key = sbg3_[key_index(g.v, w2, g.c1, c, c3)];
                            const int bit = g.pos * 8 + j;
                            if ((key.member_mask >> bit) & 1) continue;
                            key.member_mask |= 1ULL << bit;
                            ++key.size;
                            if (key.size > m3_cap_) throw ForfeitSignal{"type3-set-overflow"};
                            sbg3_heap_.push(
                                {key_deficit(key), key_index(g.v, w2, g.c1, c, c3)});
                        }
                }
        } else {
            for (int v2 = 0; v2 < n_; ++v2)
                for (int c1 = 0; c1 < s_; ++c1) {
                    const auto& aset = a_out_[slot(v2, c1, 0)];
                    for (int i = 0; i < static_cast<int>(aset.size()); ++i)
                        for (int c = 0; c < s_; ++c) {
                            const EdgeRef e(c, aset[i], g.w);
                            const int id = board.edge_index(e);
                            if (board.state_at(id) != ClaimState::Free || coin_[id] == Fail)
                                continue;
                            if (sbg3_state_[id] != 0) continue;
                            auto& key = sbg3_[key_index(v2, g.v, c1, c, g.c1)];
                            const int bit = i * 8 + g.pos;
                            if ((key.member_mask >> bit) & 1) continue;
                            key.member_mask |= 1ULL << bit;
                            ++key.size;
                            if (key.size > m3_cap_) throw ForfeitSignal{"type3-set-overflow"};
                            sbg3_heap_.push(
                                {key_deficit(key), key_index(v2, g.v, c1, c, g.c1)});
                        }
                }
        }
    }
    growth_queue_.clear();
}

void RainbowConnMaker::haunt_everywhere(const Board& board, const EdgeRef& e) {
    const int id = board.edge_index(e);
    if (sbg2_state_[id] == 0) {
        sbg2_state_[id] = 3;
        ++sbg2_haunt_[e.u * s_ + e.layer];
        ++sbg2_haunt_[e.v * s_ + e.layer];
    }
    if (sbg3_state_[id] == 0) {
        sbg3_state_[id] = 3;
        sbg3_update_edge(board, e, 0, 0, 1);
    }
}

std::optional<EdgeRef> RainbowConnMaker::coin_claim_loop(const Board& board, bool sbg3) {
    while (true) {
        EdgeRef edge;
        bool have = false;
        if (sbg3) {
            while (!sbg3_heap_.empty()) {
                const auto [defval, key_id] = sbg3_heap_.top();
                const Sbg3Key& key = sbg3_[key_id];
                if (std::abs(defval - key_deficit(key)) > 1e-9 ||
                    key.size - key.c_f - key.haunted <= 0) {
                    sbg3_heap_.pop();
                    continue;
                }
                if (key_deficit(key) <= -ell3_) break;  // every set is safe
                // decode the key and find its lowest free member
                int rest = key_id;
                const int c3 = rest % s_; rest /= s_;
                const int c = rest % s_; rest /= s_;
                const int c1 = rest % s_; rest /= s_;
                const int w = rest % n_; rest /= n_;
                const int v = rest;
                const auto& aset = a_out_[slot(v, c1, 0)];
                const auto& bset = a_out_[slot(w, c3, 1)];
                for (int i = 0; i < static_cast<int>(aset.size()) && !have; ++i)
                    for (int j = 0; j < static_cast<int>(bset.size()) && !have; ++j) {
                        if (!((key.member_mask >> (i * 8 + j)) & 1)) continue;
                        const EdgeRef cand(c, aset[i], bset[j]);
                        if (sbg3_state_[board.edge_index(cand)] == 0) {
                            edge = cand;
                            have = true;
                        }
                    }
                if (have) break;
                sbg3_heap_.pop();  // counters stale relative to the mask scan
            }
            if (!have) {
                // no endangered set has a free member: lowest-index free element
                const int total = board.total_edges();
                while (sbg3_cursor_ < total && sbg3_state_[sbg3_cursor_] != 0) ++sbg3_cursor_;
                if (sbg3_cursor_ < total) {
                    edge = board.edge_from_index(sbg3_cursor_);
                    have = true;
                }
            }
        } else {
            int best = -1;
            double best_deficit = 0;
            for (int f = 0; f < n_ * s_; ++f) {
                const int free_elems = (n_ - 1) - sbg2_cf_[f] - sbg2_haunt_[f];
                if (free_elems <= 0) continue;
                const double deficit = sbg2_cf_[f] / (3.0 * b_ + 1.0) - sbg2_cfm_[f];
                if (best < 0 || deficit > best_deficit) {
                    best = f;
                    best_deficit = deficit;
                }
            }
            if (best >= 0 && best_deficit > -ell2_) {
                const int v = best / s_;
                const int c = best % s_;
                for (int w = 0; w < n_ && !have; ++w) {
                    if (w == v) continue;
                    const EdgeRef cand(c, v, w);
                    if (sbg2_state_[board.edge_index(cand)] == 0) {
                        edge = cand;
                        have = true;
                    }
                }
            }
            if (!have) {
                const int total = board.total_edges();
                while (sbg2_cursor_ < total && sbg2_state_[sbg2_cursor_] != 0) ++sbg2_cursor_;
                if (sbg2_cursor_ < total) {
                    edge = board.edge_from_index(sbg2_cursor_);
                    have = true;
                }
            }
        }
        if (!have) return random_free_fallback(board);

        const int id = board.edge_index(edge);
        auto sbg_claim = [&]() {
            if (sbg3) {
                sbg3_state_[id] = 1;
                sbg3_update_edge(board, edge, 1, 1, 0);
            } else {
                sbg2_state_[id] = 1;
                ++sbg2_cf_[edge.u * s_ + edge.layer];
                ++sbg2_cf_[edge.v * s_ + edge.layer];
                ++sbg2_cfm_[edge.u * s_ + edge.layer];
                ++sbg2_cfm_[edge.v * s_ + edge.layer];
            }
        };

        if (coin_[id] == Success) {
            // revealed earlier by the other balancing game; the edge is already
            // Maker's, so she imagines claiming it now
            sbg_claim();
            return std::nullopt;
        }
        if (coin_[id] == Fail) {
            ++double_coin_attempts_;  // must be unreachable
            haunt_everywhere(board, edge);
            continue;
        }
        ++coins_tossed_;
        if (rng_.coin(p_)) {
            coin_[id] = Success;
            ++gamma2_deg_[edge.u * s_ + edge.layer];
            ++gamma2_deg_[edge.v * s_ + edge.layer];
            ++gamma2_count_;
            sbg_claim();
            if (board.state_at(id) == ClaimState::Free) return edge;
            return std::nullopt;  // hers already via type 1
        }
        coin_[id] = Fail;
        ++sp_count_;
        haunt_everywhere(board, edge);
    }
}

std::optional<EdgeRef> RainbowConnMaker::type2_move(const Board& board) {
    return coin_claim_loop(board, false);
}

std::optional<EdgeRef> RainbowConnMaker::type3_move(const Board& board) {
    process_growth_queue(board);
    return coin_claim_loop(board, true);
}

std::optional<EdgeRef> RainbowConnMaker::choose(const Board& board, const MoveCtx& ctx) {
    ++maker_moves_;
    const int type = (maker_moves_ - 1) % 3 + 1;
    feed_breaker_edges(board, ctx, type);
    switch (type) {
        case 1: return type1_move(board);
        case 2: return type2_move(board);
        default: return type3_move(board);
    }
}

void RainbowConnMaker::finalize_gamma2(const Board& board) {
    const int total = board.total_edges();
    for (int id = 0; id < total; ++id) {
        if (coin_[id] != Untossed) continue;
        ++coins_tossed_;
        if (rng_.coin(p_)) {
            coin_[id] = Success;
            const EdgeRef e = board.edge_from_index(id);
            ++gamma2_deg_[e.u * s_ + e.layer];
            ++gamma2_deg_[e.v * s_ + e.layer];
            ++gamma2_count_;
        } else {
            coin_[id] = Fail;
        }
    }
}

std::unique_ptr<RainbowConnMaker> make_rainbow_conn_maker() {
    return std::make_unique<RainbowConnMaker>();
}

// ---------------------------------------------------------------------------
// Large-s Maker
// ---------------------------------------------------------------------------

int LargeSMaker::side_of_color(int c) const {
    if (c < s1_) return 0;
    if (c < 2 * s1_) return 1;
    return 2;
}

int LargeSMaker::rank_in_side(int c) const { return c < s1_ ? c : c - s1_; }

void LargeSMaker::begin(const Board& board, const GameConfig& config, Player role,
                        std::uint64_t seed) {
    if (role != Player::Maker) throw std::runtime_error("large-s strategy plays Maker");
    rng_.reseed(seed);
    n_ = board.n();
    s_ = board.s();
    b_ = config.breaker_bias;
    const auto& params = config.strategy_params;
    const double loglog = std::log(std::max(1.001, std::log(static_cast<double>(n_))));
    s3_ = static_cast<int>(param_or(params, "s3", std::max(1.0, std::round(s_ / loglog))));
    s3_ = std::clamp(s3_, 1, s_ - 2);
    if ((s_ - s3_) % 2 != 0) s3_ += (s3_ + 2 < s_) ? 1 : -1;
    s1_ = (s_ - s3_) / 2;
    if (s1_ < 1) throw std::runtime_error("large-s split needs |S1| = |S2| >= 1");
    t_ = static_cast<int>(param_or(params, "t", std::max(2.0, std::ceil(loglog))));
    t_ = std::max(t_, 2);
    b_prime_ = static_cast<int>(std::ceil(static_cast<double>(t_) * b_ / (t_ - 1)));
    const double eps = param_or(params, "eps", 0.4);
    const int d = std::clamp(
        static_cast<int>(std::ceil(eps * s1_ * n_ / b_prime_)), 1, s1_);
    mindeg_ = std::make_unique<MinDegState>(n_, s1_, d, b_prime_, eps);
    type2_exact_ = param_or(params, "type2_exact", 0.0) != 0.0;
    blockset_ = static_cast<int>(param_or(params, "blockset", std::max(1.0, std::round(n_ / loglog))));
    blockset_ = std::clamp(blockset_, 1, n_ / 2);

    maker_moves_ = 0;
    seen_ = 0;
    portions_.clear();
    next_portion_ = 0;
    fed_count_ = 0;
    out_pair_.assign(static_cast<size_t>(n_) * s_ * n_, 0);
    out_count_.assign(static_cast<size_t>(n_) * s_, 0);
    d_b_real_.assign(static_cast<size_t>(n_) * s_, 0);
    db_seen_ = 0;
    oriented_.clear();
    s3_degree_.assign(static_cast<size_t>(n_), 0);

    exact_sets_.clear();
    exact_elem_sets_.clear();
    if (type2_exact_) {
        if (n_ > 12) throw std::runtime_error("exact S3 blocking limited to n <= 12");
        build_exact_family(board);
    }
}

void LargeSMaker::build_exact_family(const Board& board) {
    // universe: S3-layer edges; sets: all S3 edges between two disjoint
    // blockset_-sized vertex sets
    const int bs = blockset_;
    std::vector<int> avail(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) avail[i] = i;
    std::vector<std::vector<int>> blocks;
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int from) {
        if (static_cast<int>(cur.size()) == bs) {
            blocks.push_back(cur);
            return;
        }
        for (int v = from; v < n_; ++v) {
            cur.push_back(v);
            gen(v + 1);
            cur.pop_back();
        }
    };
    gen(0);
    exact_elem_sets_.assign(static_cast<size_t>(board.total_edges()), {});
    for (size_t a = 0; a < blocks.size(); ++a) {
        for (size_t b2 = a + 1; b2 < blocks.size(); ++b2) {
            bool disjoint = true;
            for (int x : blocks[a])
                for (int y : blocks[b2])
                    if (x == y) disjoint = false;
            if (!disjoint) continue;
            ExactSet set;
            for (int x : blocks[a])
                for (int y : blocks[b2])
                    for (int c = 2 * s1_; c < s_; ++c) {
                        const int id = board.edge_index(EdgeRef(c, x, y));
                        set.elements.push_back(id);
                        exact_elem_sets_[id].push_back(static_cast<int>(exact_sets_.size()));
                    }
            set.free_count = static_cast<int>(set.elements.size());
            exact_sets_.push_back(std::move(set));
        }
    }
}

void LargeSMaker::feed_mindeg(const Board&, const std::vector<EdgeRef>& edges) {
    for (const auto& e : edges) {
        const int side = side_of_color(e.layer);
        if (side == 2) continue;  // S3 stays out of the degree game
        const int off = side * n_;
        const int copy = mindeg_->copy_id(off + e.u, off + e.v, rank_in_side(e.layer));
        if (mindeg_->breaker_can_claim(copy)) {
            mindeg_->breaker_claim(copy);
            ++fed_count_;
        }
    }
}

std::optional<EdgeRef> LargeSMaker::type1_move(const Board& board,
                                               const std::vector<EdgeRef>& delta) {
    std::vector<EdgeRef> feed = delta;
    if (next_portion_ < portions_.size()) {
        const auto& portion = portions_[next_portion_++];
        feed.insert(feed.end(), portion.begin(), portion.end());
    }
    feed_mindeg(board, feed);

    int best_v = -1;
    for (int v = 0; v < mindeg_->num_vertices(); ++v) {
        if (!mindeg_->active(v)) continue;
        if (best_v < 0 || mindeg_->dang(v) > mindeg_->dang(best_v)) best_v = v;
    }
    if (best_v < 0) {  // every vertex reached its target: nothing left to do here
        if (board.free_count() == 0) return std::nullopt;
        while (true) {
            const int idx = static_cast<int>(rng_.below(board.total_edges()));
            if (board.state_at(idx) == ClaimState::Free) return board.edge_from_index(idx);
        }
    }
    const int side = best_v / n_;
    const int v = best_v % n_;
    // fresh color in this side with the smallest Breaker degree at v
    int best_c = -1;
    for (int r = 0; r < s1_; ++r) {
        const int c = side * s1_ + r;
        if (out_count_[v * s_ + c] > 0) continue;
        if (best_c < 0 || d_b_real_[v * s_ + c] < d_b_real_[v * s_ + best_c]) best_c = c;
    }
    if (best_c < 0) throw ForfeitSignal{"type1-no-color"};
    std::vector<int> candidates;
    for (int w = 0; w < n_; ++w) {
        if (w == v) continue;
        const EdgeRef e(best_c, v, w);
        if (board.state(e) == ClaimState::Breaker) continue;
        if (out_pair_[(static_cast<size_t>(v) * s_ + best_c) * n_ + w]) continue;
        candidates.push_back(w);
    }
    if (candidates.empty()) throw ForfeitSignal{"type1-stuck"};
    const int w = candidates[rng_.below(candidates.size())];
    out_pair_[(static_cast<size_t>(v) * s_ + best_c) * n_ + w] = 1;
    ++out_count_[v * s_ + best_c];
    oriented_.push_back({v, w, best_c});
    const int off = side * n_;
    mindeg_->maker_orient(mindeg_->copy_id(off + v, off + w, rank_in_side(best_c)), off + v);
    const EdgeRef e(best_c, v, w);
    if (board.state(e) == ClaimState::Free) return e;
    return std::nullopt;  // second orientation of an edge she already owns
}

std::optional<EdgeRef> LargeSMaker::type2_move(const Board& board) {
    if (type2_exact_) {
        const double log_base = std::log(2.0);
        int best = -1;
        double best_pot = -1;
        for (int id = 0; id < board.total_edges(); ++id) {
            if (exact_elem_sets_[id].empty() || board.state_at(id) != ClaimState::Free) continue;
            double pot = 0;
            for (int si : exact_elem_sets_[id]) {
                const auto& set = exact_sets_[si];
                if (set.maker_hit) continue;
                pot += std::exp(-static_cast<double>(set.free_count) / (t_ * b_) * log_base);
            }
            if (pot > best_pot) {
                best_pot = pot;
                best = id;
            }
        }
        if (best < 0) return random_free(board);
        for (int si : exact_elem_sets_[best]) exact_sets_[si].maker_hit = true;
        return board.edge_from_index(best);
    }
    // heuristic: spread S3 edges toward the least-covered vertex pair
    EdgeRef best;
    long long best_score = -1;
    for (int c = 2 * s1_; c < s_; ++c)
        for (int u = 0; u < n_; ++u)
            for (int w = u + 1; w < n_; ++w) {
                const EdgeRef e(c, u, w);
                if (!board.is_free(e)) continue;
                const long long score = s3_degree_[u] + s3_degree_[w];
                if (best_score < 0 || score < best_score) {
                    best_score = score;
                    best = e;
                }
            }
    if (best_score < 0) return random_free(board);
    ++s3_degree_[best.u];
    ++s3_degree_[best.v];
    return best;
}

std::optional<EdgeRef> LargeSMaker::random_free(const Board& board) {
    if (board.free_count() == 0) return std::nullopt;
    while (true) {
        const int idx = static_cast<int>(rng_.below(board.total_edges()));
        if (board.state_at(idx) == ClaimState::Free) return board.edge_from_index(idx);
    }
}

std::optional<EdgeRef> LargeSMaker::choose(const Board& board, const MoveCtx& ctx) {
    ++maker_moves_;
    auto delta = new_breaker_edges(*ctx.history, seen_);
    for (const auto& e : delta) {
        ++d_b_real_[e.u * s_ + e.layer];
        ++d_b_real_[e.v * s_ + e.layer];
        if (type2_exact_ && !exact_elem_sets_.empty()) {
            const int id = board.edge_index(e);
            for (int si : exact_elem_sets_[id]) --exact_sets_[si].free_count;
        }
    }
    if ((maker_moves_ - 1) % t_ == 0) {
        // block opener: defer this delta, equipartitioned over the block
        portions_.assign(static_cast<size_t>(t_ - 1), {});
        next_portion_ = 0;
        for (size_t i = 0; i < delta.size(); ++i) portions_[i % (t_ - 1)].push_back(delta[i]);
        return type2_move(board);
    }
    return type1_move(board, delta);
}

int LargeSMaker::out_degree_in_side(int v, int side) const {
    int total = 0;
    for (int r = 0; r < s1_; ++r) total += out_count_[v * s_ + side * s1_ + r];
    return total;
}

long long LargeSMaker::buffered_edges() const {
    long long buffered = 0;
    for (size_t i = next_portion_; i < portions_.size(); ++i) {
        for (const auto& e : portions_[i])
            if (side_of_color(e.layer) != 2) ++buffered;
    }
    return buffered;
}

bool LargeSMaker::sim_feed_conserved(const Board& board) const {
    long long total = 0;
    const int pairs = board.pairs();
    for (int c = 0; c < 2 * s1_; ++c)
        for (int i = 0; i < pairs; ++i)
            if (board.state_at(c * pairs + i) == ClaimState::Breaker) ++total;
    // everything seen is either fed or still buffered; at most one round of
    // claims can be pending unseen
    const long long accounted = fed_count_ + buffered_edges();
    return accounted <= total &&
           total - accounted <= static_cast<long long>(b_) * (t_ + 1);
}

std::unique_ptr<LargeSMaker> make_large_s_maker() { return std::make_unique<LargeSMaker>(); }

// ---------------------------------------------------------------------------
// Counting and extraction helpers
// ---------------------------------------------------------------------------

namespace {

using Mat = std::vector<std::vector<std::int64_t>>;

Mat adjacency_of_layer(const ColoredSubgraph& g, int c) {
    const int n = g.n();
    Mat a(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (const auto& e : g.edges())
        if (e.layer == c) a[e.u][e.v] = a[e.v][e.u] = 1;
    return a;
}

Mat multiply(const Mat& a, const Mat& b) {
    const int n = static_cast<int>(a.size());
    Mat out(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const std::int64_t aik = a[i][k];
            if (!aik) continue;
            const auto& row = b[k];
            auto& dst = out[i];
            for (int j = 0; j < n; ++j) dst[j] += aik * row[j];
        }
    return out;
}

}  // namespace

std::vector<std::vector<long long>> sequence_count_matrix(const ColoredSubgraph& g,
                                                          const std::vector<int>& seq) {
    const int n = g.n();
    std::vector<std::vector<long long>> out(static_cast<size_t>(n),
                                            std::vector<long long>(static_cast<size_t>(n), 0));
    if (seq.empty() || seq.size() > 3)
        throw std::invalid_argument("sequence_count_matrix supports lengths 1..3");
    const Mat a1 = adjacency_of_layer(g, seq[0]);
    if (seq.size() == 1) {
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) out[v][w] = a1[v][w];
        return out;
    }
    const Mat a2 = adjacency_of_layer(g, seq[1]);
    if (seq.size() == 2) {
        const Mat w2 = multiply(a1, a2);
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) out[v][w] = v == w ? 0 : w2[v][w];
        return out;
    }
    const Mat a3 = adjacency_of_layer(g, seq[2]);
    const Mat b23 = multiply(a2, a3);
    const Mat w3 = multiply(a1, b23);
    // subtract walks that revisit an endpoint: x = w or y = v
    std::vector<std::int64_t> diag12(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x) diag12[v] += a1[v][x] * a2[x][v];
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            if (v == w) continue;
            long long c = w3[v][w];
            c -= a1[v][w] * b23[w][w];
            c -= diag12[v] * a3[v][w];
            c += a1[v][w] * a2[w][v] * a3[v][w];
            out[v][w] = c;
        }
    return out;
}

CoverageReport rainbow_coverage_len3(const ColoredSubgraph& g) {
    const int n = g.n();
    CoverageReport rep;
    std::vector<std::vector<std::uint64_t>> mask(static_cast<size_t>(n),
                                                 std::vector<std::uint64_t>(static_cast<size_t>(n), 0));
    for (const auto& e : g.edges()) {
        mask[e.u][e.v] |= 1ULL << e.layer;
        mask[e.v][e.u] |= 1ULL << e.layer;
    }
    auto covered_pair = [&](int v, int w) {
        if (mask[v][w]) return true;  // length 1
        for (int x = 0; x < n; ++x) {  // length 2: two colors, not both the same single color
            if (x == v || x == w) continue;
            const std::uint64_t mv = mask[v][x], mw = mask[x][w];
            if (!mv || !mw) continue;
            if ((mv & ~mw) || (mw & ~mv) || std::popcount(mv) > 1) return true;
        }
        // length 3 via all intermediate pairs
        for (int x = 0; x < n; ++x) {
            if (x == v || x == w) continue;
            const std::uint64_t m1 = mask[v][x];
            if (!m1) continue;
            for (int y = 0; y < n; ++y) {
                if (y == v || y == w || y == x) continue;
                const std::uint64_t m2 = mask[x][y], m3 = mask[y][w];
                if (!m2 || !m3) continue;
                // a rainbow selection exists unless the three masks collapse
                for (int c1 = 0; c1 < g.s(); ++c1) {
                    if (!((m1 >> c1) & 1)) continue;
                    const std::uint64_t m2p = m2 & ~(1ULL << c1);
                    if (!m2p) continue;
                    for (int c2 = 0; c2 < g.s(); ++c2) {
                        if (!((m2p >> c2) & 1)) continue;
                        if (m3 & ~(1ULL << c1) & ~(1ULL << c2)) return true;
                    }
                }
            }
        }
        return false;
    };
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w)
            if (!covered_pair(v, w)) {
                ++rep.uncovered;
                if (rep.connected) rep.first_uncovered = {v, w};
                rep.connected = false;
            }
    return rep;
}

BetaFit fit_path_count_beta(const ColoredSubgraph& g, double b) {
    if (g.s() != 3) throw std::invalid_argument("beta fit expects s = 3");
    const int n = g.n();
    BetaFit fit;
    fit.min_count = -1;
    double sum = 0;
    long long cells = 0;
    std::vector<int> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end());
    do {
        const auto counts = sequence_count_matrix(g, perm);
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
                if (v == w) continue;
                const long long c = counts[v][w];
                sum += static_cast<double>(c);
                ++cells;
                if (c == 0) ++fit.zero_cells;
                if (fit.min_count < 0 || c < fit.min_count) fit.min_count = c;
            }
    } while (std::next_permutation(perm.begin(), perm.end()));
    fit.mean_count = sum / static_cast<double>(cells);
    const double scale = std::pow(b, 3.0) / (static_cast<double>(n) * n);
    fit.beta_min = fit.min_count * scale;
    fit.beta_mean = fit.mean_count * scale;
    return fit;
}

ExtractionResult extract_rainbow_path_trees(const DirectedColored& directed,
                                            const ColoredSubgraph& maker_all, int x, int y,
                                            const std::vector<int>& s1_colors,
                                            const std::vector<int>& s2_colors,
                                            const std::vector<int>& s3_colors, int leaf_target,
                                            int depth_cap) {
    const int n = directed.n;
    struct Tree {
        std::vector<int> parent, parent_color;
        std::vector<char> in_tree;
        std::vector<int> leaves;
    };
    auto colors_flag = [&](const std::vector<int>& cs) {
        std::vector<char> f(static_cast<size_t>(maker_all.s()), 0);
        for (int c : cs) f[c] = 1;
        return f;
    };
    auto grow = [&](int root, const std::vector<int>& cset) {
        Tree t;
        t.parent.assign(static_cast<size_t>(n), -1);
        t.parent_color.assign(static_cast<size_t>(n), -1);
        t.in_tree.assign(static_cast<size_t>(n), 0);
        t.in_tree[root] = 1;
        t.leaves = {root};
        const auto allowed = colors_flag(cset);
        for (int depth = 0; depth < depth_cap; ++depth) {
            if (static_cast<int>(t.leaves.size()) >= leaf_target) break;
            std::vector<int> next;
            for (int v : t.leaves) {
                // colors already used on the root path
                std::vector<char> used(static_cast<size_t>(maker_all.s()), 0);
                for (int u = v; t.parent[u] >= 0; u = t.parent[u]) used[t.parent_color[u]] = 1;
                for (const auto& [w, c] : directed.out[v]) {
                    if (!allowed[c] || used[c] || t.in_tree[w]) continue;
                    t.in_tree[w] = 1;
                    t.parent[w] = v;
                    t.parent_color[w] = c;
                    next.push_back(w);
                }
            }
            if (next.empty()) break;
            t.leaves = std::move(next);
        }
        return t;
    };
    const Tree tx = grow(x, s1_colors);
    const Tree ty = grow(y, s2_colors);

    auto root_path = [&](const Tree& t, int v) {
        std::vector<std::pair<int, int>> path;  // (vertex, color of edge to parent)
        for (int u = v; t.parent[u] >= 0; u = t.parent[u]) path.push_back({u, t.parent_color[u]});
        return path;  // from v back toward the root, root excluded
    };
    auto assemble = [&](int meet_x, int meet_y, std::optional<EdgeRef> bridge)
        -> std::optional<RainbowWitness> {
        RainbowWitness wit;
        wit.kind = WitnessKind::Path;
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<EdgeRef> edges;
        const auto up = root_path(tx, meet_x);
        for (auto it = up.rbegin(); it != up.rend(); ++it) {
            const int child = it->first;
            const int par = tx.parent[child];
            edges.emplace_back(it->second, par, child);
        }
        if (bridge) edges.push_back(*bridge);
        const auto down = root_path(ty, meet_y);
        for (const auto& [child, c] : down) edges.emplace_back(c, ty.parent[child], child);
        // simplicity check over the vertex sequence
        seen[x] = 1;
        int cur = x;
        for (const auto& e : edges) {
            const int nxt = e.u == cur ? e.v : e.u;
            if (e.u != cur && e.v != cur) return std::nullopt;
            if (seen[nxt]) return std::nullopt;
            seen[nxt] = 1;
            cur = nxt;
        }
        if (cur != y) return std::nullopt;
        wit.edges = edges;
        for (const auto& e : edges) wit.colors.push_back(e.layer);
        if (!wit.colors_distinct()) return std::nullopt;
        return wit;
    };

    // intersection first
    for (int v = 0; v < n; ++v) {
        if (!tx.in_tree[v] || !ty.in_tree[v]) continue;
        if (auto wit = assemble(v, v, std::nullopt)) return {wit, ""};
    }
    // otherwise close with an S3 edge between the leaf sets
    for (int c : s3_colors) {
        for (int u : tx.leaves) {
            for (int w : ty.leaves) {
                if (u == w || !maker_all.contains_pair(u, w, c)) continue;
                if (auto wit = assemble(u, w, EdgeRef(c, u, w))) return {wit, ""};
            }
        }
    }
    ExtractionResult fail;
    fail.diagnostic = "extraction-failed: |T_x leaves| = " + std::to_string(tx.leaves.size()) +
                      ", |T_y leaves| = " + std::to_string(ty.leaves.size()) +
                      (tx.in_tree == ty.in_tree ? "" : ", no closing S3 edge found");
    return fail;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

std::unique_ptr<Strategy> make_strategy(const std::string& name) {
    if (name == "random") return make_random_strategy();
    if (name == "greedy_path") return make_greedy_path_strategy();
    if (name == "pairing_maker_rc2") return make_pairing_maker_rc2();
    if (name == "pairing_breaker_rc2") return make_pairing_breaker_rc2();
    if (name == "diameter_breaker") return make_diameter_breaker();
    if (name == "clique_isolation_breaker") return make_clique_isolation_breaker();
    if (name == "layer_isolation_breaker") return make_layer_isolation_breaker();
    if (name == "rainbow_maker") return make_rainbow_conn_maker();
    if (name == "large_s_maker") return make_large_s_maker();
    throw std::runtime_error("unknown-strategy: " + name);
}

std::vector<std::string> strategy_names() {
    return {"random",          "greedy_path",        "pairing_maker_rc2",
            "pairing_breaker_rc2", "diameter_breaker",   "clique_isolation_breaker",
            "layer_isolation_breaker", "rainbow_maker", "large_s_maker"};
}

}  // namespace rbg
