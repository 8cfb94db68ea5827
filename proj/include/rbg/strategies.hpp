#pragma once

#include <array>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "rbg/engine.hpp"
#include "rbg/subgames.hpp"

namespace rbg {

// ---------------------------------------------------------------------------
// Pairing strategies for the two-color rainbow connectivity game.
// ---------------------------------------------------------------------------

// b = 1: answer Breaker's edge with its parallel twin; otherwise open a fresh
// pair. Guarantees one edge of every parallel pair.
std::unique_ptr<Strategy> make_pairing_maker_rc2();

// b = 2: first round takes both edges of a Maker-untouched pair {v,w}; then
// answers xv in one color with xw in the other.
std::unique_ptr<Strategy> make_pairing_breaker_rc2();

// ---------------------------------------------------------------------------
// Diameter Breaker: block every short v,w-path, colors ignored.
// ---------------------------------------------------------------------------

class DiameterBreaker final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig& config, Player role,
               std::uint64_t seed) override;
    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override;

    std::pair<int, int> sentinels() const { return {v_, w_}; }
    // runtime checks: the ball-size bound |C^{<=i}| <= 2(4sn/b)^i and the
    // round bound on surviving shell edges r < 4(4sn/b)^{i+1}
    int ball_bound_violations() const { return ball_bound_violations_; }
    int shell_round_violations() const { return shell_round_violations_; }
    int path_len_target() const { return path_s_; }

  private:
    void plan_round(const Board& board, const MoveCtx& ctx);
    std::vector<int> bfs_layers(int src) const;  // distances in Maker's graph

    Rng rng_;
    int n_ = 0, s_ = 0, b_ = 0;
    int path_s_ = 0, k_ = 0;
    int v_ = -1, w_ = -1;
    size_t seen_ = 0;
    int round_count_ = 0;
    std::vector<std::vector<int>> maker_adj_;
    std::vector<char> maker_touched_;
    std::vector<EdgeRef> queue_;
    size_t queue_pos_ = 0;
    int ball_bound_violations_ = 0;
    int shell_round_violations_ = 0;
};

std::unique_ptr<DiameterBreaker> make_diameter_breaker();

// ---------------------------------------------------------------------------
// Clique isolation Breaker (large-s upper bound): grow a Breaker clique of
// Maker-untouched vertices, then win a Box game over their remaining stars.
// ---------------------------------------------------------------------------

class CliqueIsolationBreaker final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig& config, Player role,
               std::uint64_t seed) override;
    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override;

    const std::vector<int>& clique() const { return clique_; }
    std::optional<int> isolated_vertex(const Board& board) const;

  private:
    void plan_round(const Board& board, const MoveCtx& ctx);

    Rng rng_;
    int n_ = 0, s_ = 0, b_ = 0;
    int phase1_rounds_ = 0;
    int round_count_ = 0;
    size_t seen_ = 0;
    bool phase2_ = false;
    std::vector<char> maker_touched_;
    std::vector<int> clique_;
    std::vector<EdgeRef> queue_;
    size_t queue_pos_ = 0;
};

std::unique_ptr<CliqueIsolationBreaker> make_clique_isolation_breaker();

// ---------------------------------------------------------------------------
// Layer isolation Breaker (rainbow spanning tree upper bound): Box game over
// the n-1 layers; owning a full layer empties one color class.
// ---------------------------------------------------------------------------

class LayerIsolationBreaker final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig& config, Player role,
               std::uint64_t seed) override;
    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override;

    std::optional<int> owned_layer(const Board& board) const;

  private:
    int n_ = 0, s_ = 0;
    size_t seen_ = 0;
    std::vector<char> layer_destroyed_;  // Maker holds an edge there
};

std::unique_ptr<LayerIsolationBreaker> make_layer_isolation_breaker();

// ---------------------------------------------------------------------------
// Rainbow connectivity Maker (constant s): MinBox-driven degree expansion,
// two balancing games over coin-revealed random layers, spooky bookkeeping.
// Implemented for expansion depth k = 1, i.e. target paths of length 3
// (covers s in {3, 4} and the diameter-3 reuse on one layer).
//
// Parameter pack (strategy_params): path_s, p, d_target, expose_cap,
// minbox_bias, ell2, M3, ell3, delta, gamma. Defaults follow the formulas
// with b from the config.
// ---------------------------------------------------------------------------

class RainbowConnMaker final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig& config, Player role,
               std::uint64_t seed) override;
    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override;

    // coin the still-untossed edges so Gamma2 is a complete Bernoulli family
    void finalize_gamma2(const Board& board);

    int d_target() const { return d_target_; }
    long long coins_tossed() const { return coins_tossed_; }
    long long double_coin_attempts() const { return double_coin_attempts_; }
    long long sp_size() const { return sp_count_; }
    long long gamma2_edges() const { return gamma2_count_; }
    int gamma2_degree(int v, int c) const { return gamma2_deg_[v * s_ + c]; }
    bool gamma2_sp_disjoint() const { return gamma2_sp_overlap_ == 0; }
    const std::vector<int>& out_set(int v, int c, int side) const {
        return a_out_[slot(v, c, side)];
    }

  private:
    enum CoinState : std::uint8_t { Untossed = 0, Success = 1, Fail = 2 };
    struct Sbg3Key {
        std::uint64_t member_mask = 0;  // bit (i * 8 + j): (A[i], B[j]) pair is a member
        std::int16_t size = 0, c_f = 0, c_fm = 0, haunted = 0;
    };
    struct RevEntry {
        int v, c, pos;  // member sits at position pos of A(v, c) on its side
    };
    struct Growth {
        int v, c1, side, w, pos;
    };

    int slot(int v, int c, int side) const { return (v * s_ + c) * 2 + side; }
    int key_index(int v, int w, int c1, int c, int c3) const {
        return (((v * n_ + w) * s_ + c1) * s_ + c) * s_ + c3;
    }
    double key_deficit(const Sbg3Key& k) const {
        return static_cast<double>(k.c_f) / (3.0 * b_ + 1.0) - k.c_fm;
    }

    void feed_breaker_edges(const Board& board, const MoveCtx& ctx, int type);
    std::optional<EdgeRef> type1_move(const Board& board);
    std::optional<EdgeRef> type2_move(const Board& board);
    std::optional<EdgeRef> type3_move(const Board& board);
    std::optional<EdgeRef> coin_claim_loop(const Board& board, bool sbg3);
    void process_growth_queue(const Board& board);
    void record_maker_out_edge(const Board& board, int v, int c, int side, int w);
    void haunt_everywhere(const Board& board, const EdgeRef& e);
    void sbg3_update_edge(const Board& board, const EdgeRef& e, int delta_cf, int delta_cfm,
                          int delta_haunt);
    std::optional<EdgeRef> random_free_fallback(const Board& board);
    int edge_id(const Board& board, const EdgeRef& e) const { return board.edge_index(e); }

    Rng rng_;
    int n_ = 0, s_ = 0, b_ = 0, k_ = 1, path_s_ = 3;
    double p_ = 0.1;
    int d_target_ = 1, expose_cap_ = 2;
    int minbox_bias_ = 6;
    double ell2_ = 0, ell3_ = 0;
    double m3_cap_ = 0;
    int maker_moves_ = 0;
    size_t feed_pos_[4] = {0, 0, 0, 0};  // per move type

    MinBoxState minbox_;
    std::vector<char> box_dead_;
    std::vector<char> exposed_;       // (v, c, side, w) flags
    std::vector<int> exposed_count_;  // per (v, c, side)
    std::vector<std::vector<int>> a_out_;  // claimed oriented out-sets per (v, c, side)
    std::vector<std::vector<RevEntry>> rev_;  // member vertex (L: v, R: n+v) -> owners

    std::vector<std::uint8_t> coin_;        // per edge index
    std::vector<std::uint8_t> sbg2_state_;  // 0 free, 1 maker, 2 breaker, 3 haunted
    std::vector<std::uint8_t> sbg3_state_;
    std::vector<std::int16_t> sbg2_cf_, sbg2_cfm_, sbg2_haunt_;  // per (v, c)
    int sbg2_cursor_ = 0, sbg3_cursor_ = 0;

    std::vector<Sbg3Key> sbg3_;
    std::priority_queue<std::pair<double, int>> sbg3_heap_;
    std::vector<Growth> growth_queue_;

    std::vector<int> gamma2_deg_;
    long long gamma2_count_ = 0, sp_count_ = 0, coins_tossed_ = 0;
    long long double_coin_attempts_ = 0, gamma2_sp_overlap_ = 0;
};

std::unique_ptr<RainbowConnMaker> make_rainbow_conn_maker();

// ---------------------------------------------------------------------------
// Large-s rainbow connectivity Maker: color split S1/S2/S3, a simulated
// MinDeg+ on two disjoint multigraphs fed in t-round batches, and S3 blocking
// moves every t rounds.
//
// Parameter pack: s3, t, eps, type2_exact (0/1), blockset (exact-mode set size).
// ---------------------------------------------------------------------------

class LargeSMaker final : public Strategy {
  public:
    void begin(const Board& board, const GameConfig& config, Player role,
               std::uint64_t seed) override;
    std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) override;

    int s1() const { return s1_; }
    int s3() const { return s3_; }
    int block_len() const { return t_; }
    int out_target() const { return mindeg_ ? mindeg_->target() : 0; }
    int out_degree_in_side(int v, int side) const;  // sum over colors of that side
    const MinDegState& mindeg() const { return *mindeg_; }
    // conservation check: fed + buffered + pending == Breaker's S1/S2 edges
    bool sim_feed_conserved(const Board& board) const;
    long long fed_to_sim() const { return fed_count_; }
    long long buffered_edges() const;
    // Maker's oriented edges as (v, w, color) triples
    const std::vector<std::array<int, 3>>& oriented_edges() const { return oriented_; }

  private:
    struct ExactSet {
        std::vector<int> elements;  // edge indices
        int free_count = 0;
        bool maker_hit = false;
    };

    int side_of_color(int c) const;  // 0, 1 or 2 (S3)
    int rank_in_side(int c) const;
    void build_exact_family(const Board& board);
    void feed_mindeg(const Board& board, const std::vector<EdgeRef>& edges);
    std::optional<EdgeRef> type1_move(const Board& board, const std::vector<EdgeRef>& delta);
    std::optional<EdgeRef> type2_move(const Board& board);
    std::optional<EdgeRef> random_free(const Board& board);

    Rng rng_;
    int n_ = 0, s_ = 0, b_ = 0;
    int s1_ = 0, s3_ = 0, t_ = 2, b_prime_ = 0;
    bool type2_exact_ = false;
    int blockset_ = 1;
    int maker_moves_ = 0;
    size_t seen_ = 0, db_seen_ = 0;
    std::unique_ptr<MinDegState> mindeg_;
    std::vector<std::vector<EdgeRef>> portions_;  // deferred block-opening feed
    size_t next_portion_ = 0;
    long long fed_count_ = 0;
    std::vector<char> out_pair_;    // (v, c, w) -> oriented out of v already
    std::vector<int> out_count_;    // per (v, c)
    std::vector<int> d_b_real_;     // Breaker degree per (v, c) in the real game
    std::vector<std::array<int, 3>> oriented_;
    std::vector<int> s3_degree_;    // Maker S3-degree per vertex (heuristic mode)
    std::vector<ExactSet> exact_sets_;
    std::vector<std::vector<int>> exact_elem_sets_;  // edge index -> set ids
};

std::unique_ptr<LargeSMaker> make_large_s_maker();

// ---------------------------------------------------------------------------
// Path counting and extraction helpers.
// ---------------------------------------------------------------------------

// exact simple-path counts between all ordered pairs for a fixed color
// sequence; |seq| <= 3 (walk counts with inclusion-exclusion corrections)
std::vector<std::vector<long long>> sequence_count_matrix(const ColoredSubgraph& g,
                                                          const std::vector<int>& seq);

struct CoverageReport {
    bool connected = true;
    long long uncovered = 0;
    std::pair<int, int> first_uncovered{-1, -1};
};

// every pair joined by a rainbow path of length <= 3
CoverageReport rainbow_coverage_len3(const ColoredSubgraph& g);

struct BetaFit {
    long long min_count = 0;
    double mean_count = 0;
    double beta_min = 0;   // min over pairs and full-color orderings of count * b^s / n^{s-1}
    double beta_mean = 0;
    long long zero_cells = 0;
};

// fit against the beta * n^{s-1} * b^{-s} path-count form; s = g.s() must be 3
BetaFit fit_path_count_beta(const ColoredSubgraph& g, double b);

// Maker's oriented claims for tree-growth extraction
struct DirectedColored {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> out;  // v -> (w, color)
};

struct ExtractionResult {
    std::optional<RainbowWitness> path;
    std::string diagnostic;  // set when extraction failed
};

// grow color-disjoint trees from x (colors S1) and y (colors S2) by repeated
// out-neighborhood expansion, then close with an S3 edge if the trees are
// disjoint
ExtractionResult extract_rainbow_path_trees(const DirectedColored& directed,
                                            const ColoredSubgraph& maker_all, int x, int y,
                                            const std::vector<int>& s1_colors,
                                            const std::vector<int>& s2_colors,
                                            const std::vector<int>& s3_colors, int leaf_target,
                                            int depth_cap);

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

std::unique_ptr<Strategy> make_strategy(const std::string& name);
std::vector<std::string> strategy_names();

}  // namespace rbg
