#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbg/engine.hpp"

namespace rbg {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kSolverEdgeCap = 24;

// Exact minimax for (p:b) play on a layered board with a monotone Maker
// predicate. Positions are memoized on a canonical form under the board's
// color and vertex symmetries.
class GraphGameSolver {
  public:
    GraphGameSolver(int n, int s, WinPredicate predicate, int maker_bias, int breaker_bias,
                    Player first_player, bool use_symmetry = true);

    Player solve();

    size_t nodes_visited() const { return nodes_; }
    size_t memo_size() const { return memo_.size(); }

    // versioned on-disk cache of solved canonical positions
    void save_cache(const std::string& path) const;
    bool load_cache(const std::string& path);  // false if fingerprint mismatch

  private:
    bool maker_wins(std::uint64_t maker_mask, std::uint64_t breaker_mask, Player to_move,
                    int claims_left);
    std::uint64_t canonical_key(std::uint64_t maker_mask, std::uint64_t breaker_mask,
                                Player to_move, int claims_left) const;
    bool predicate_on(std::uint64_t mask) const;
    std::string fingerprint() const;

    int n_, s_, edges_;
    WinPredicate predicate_;
    int maker_bias_, breaker_bias_;
    Player first_;
    bool use_symmetry_;
    std::vector<std::vector<int>> edge_perms_;  // symmetry group as edge permutations
    // pattern table: pair -> list of edge masks, any of which rainbow-connects it
    bool pattern_mode_ = false;
    std::vector<std::vector<std::uint64_t>> pair_patterns_;
    mutable std::unordered_map<std::uint64_t, std::uint64_t> predicate_cache_;
    std::unordered_map<std::uint64_t, bool> memo_;
    size_t nodes_ = 0;
};

// smallest b <= b_max such that Breaker wins the (1:b) game; ascending scan
struct ThresholdScan {
    int threshold = -1;              // -1 when Maker wins through b_max
    std::vector<Player> winners;     // winners[b-1] for b = 1..last solved
};

ThresholdScan exact_threshold_bias(int n, int s, const WinPredicate& predicate, int b_max,
                                   Player first_player = Player::Maker);

// Abstract hypergraph game: elements 0..m-1, Maker owns a full winning set.
struct HypergraphGame {
    int num_elements = 0;
    std::vector<std::uint64_t> winning_sets;
    int maker_bias = 1;
    int breaker_bias = 1;
    Player first_player = Player::Maker;
};

Player solve_hypergraph(const HypergraphGame& game);

// Beck-style potential greedy: each claim takes the free element maximizing
// the summed potential (1+q)^{-|F_free|/p} over alive sets containing it.
int potential_breaker_pick(const HypergraphGame& game, std::uint64_t maker_mask,
                           std::uint64_t breaker_mask);

// Optimal Maker vs the fixed potential-greedy Breaker. True iff Maker has any
// line completing a winning set.
bool maker_best_response_beats_potential_breaker(const HypergraphGame& game);

// ---------------------------------------------------------------------------
// Independent enumeration oracles (deliberately coded apart from the main
// algorithms; used to pin down expected values in tests).
// ---------------------------------------------------------------------------

// all simple rainbow v,w-paths of length <= max_len, counted by vertex-sequence
// recursion with explicit color-list distinctness checks
long long oracle_count_rainbow_paths(const ColoredSubgraph& g, int v, int w, int max_len);

// rainbow v,w-paths of exact length len whose i-th edge has color seq[i]
long long oracle_count_sequence_paths(const ColoredSubgraph& g, int v, int w,
                                      const std::vector<int>& seq);

long long oracle_count_partitions(int n);  // Bell number via block assignment recursion

// spanning trees of K_n via Pruefer sequences (Cayley count when g is complete);
// returns how many distinct labeled trees admit a rainbow coloring in g
long long oracle_count_rainbow_spanning_trees(const ColoredSubgraph& g);
long long oracle_count_labeled_trees(int n);

// rainbow perfect matchings by enumerating vertex pairings first, then
// searching a system of distinct colors per pairing
long long oracle_count_rainbow_perfect_matchings(const ColoredSubgraph& g);

// all-pairs shortest paths by Floyd-Warshall on the color-blind graph
std::vector<std::vector<int>> oracle_all_pairs_distances(const ColoredSubgraph& g);

}  // namespace rbg
