#include "rbg/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rbg {

namespace {

// all permutations of [0, n)
std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

GraphGameSolver::GraphGameSolver(int n, int s, WinPredicate predicate, int maker_bias,
                                 int breaker_bias, Player first_player, bool use_symmetry)
    : n_(n),
      s_(s),
      edges_(s * n * (n - 1) / 2),
      predicate_(std::move(predicate)),
      maker_bias_(maker_bias),
      breaker_bias_(breaker_bias),
      first_(first_player),
      use_symmetry_(use_symmetry) {
    if (edges_ > kSolverEdgeCap) throw SolverError("too-large: solver capped at 24 edges");
    if (!predicate_registered(predicate_.id))
        throw SolverError("unregistered predicate: " + predicate_.id);

    Board board = Board::layered_complete(n_, s_);
    // symmetry applies only when the predicate is invariant under relabeling;
    // every registered predicate except own_edge is, under the full vertex and
    // layer groups
    if (use_symmetry_ && predicate_split_independent(predicate_.id)) {
        const auto vperms = all_perms(n_);
        const auto lperms = all_perms(s_);
        for (const auto& vp : vperms)
            for (const auto& lp : lperms) {
                std::vector<int> ep(static_cast<size_t>(edges_));
                for (int idx = 0; idx < edges_; ++idx) {
                    const EdgeRef e = board.edge_from_index(idx);
                    ep[idx] = board.edge_index(EdgeRef(lp[e.layer], vp[e.u], vp[e.v]));
                }
                edge_perms_.push_back(std::move(ep));
            }
    } else {
        use_symmetry_ = false;
    }

    // pattern table for rainbow connectivity when every rainbow path has
    // length <= 2 (the s = 2 boards of the threshold experiments); a length-1
    // bound would make the 2-path patterns unsound on n >= 3 boards
    const int max_len_param = static_cast<int>(
        predicate_.params.count("max_len") ? predicate_.params.at("max_len") : n_ - 1);
    if (predicate_.id == "rainbow_connected" && s_ == 2 && (max_len_param >= 2 || n_ == 2)) {
        pattern_mode_ = true;
        pair_patterns_.clear();
        for (int v = 0; v < n_; ++v) {
            for (int w = v + 1; w < n_; ++w) {
                std::vector<std::uint64_t> pats;
                for (int c = 0; c < s_; ++c)
                    pats.push_back(1ULL << board.edge_index(EdgeRef(c, v, w)));
                for (int x = 0; x < n_; ++x) {
                    if (x == v || x == w) continue;
                    for (int c1 = 0; c1 < s_; ++c1)
                        for (int c2 = 0; c2 < s_; ++c2) {
                            if (c1 == c2) continue;
                            pats.push_back((1ULL << board.edge_index(EdgeRef(c1, v, x))) |
                                           (1ULL << board.edge_index(EdgeRef(c2, x, w))));
                        }
                }
                pair_patterns_.push_back(std::move(pats));
            }
        }
    }
}

bool GraphGameSolver::predicate_on(std::uint64_t mask) const {
    if (pattern_mode_) {
        for (const auto& pats : pair_patterns_) {
            bool ok = false;
            for (const auto p : pats)
                if ((p & mask) == p) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }
    auto it = predicate_cache_.find(mask);
    if (it != predicate_cache_.end()) return it->second & 1;
    Board board = Board::layered_complete(n_, s_);
    ColoredSubgraph g(n_, s_);
    for (int i = 0; i < edges_; ++i)
        if ((mask >> i) & 1) g.add(board.edge_from_index(i));
    const bool res = eval_predicate(predicate_, g);
    predicate_cache_[mask] = res ? 1 : 0;
    return res;
}

std::uint64_t GraphGameSolver::canonical_key(std::uint64_t maker_mask,
                                             std::uint64_t breaker_mask, Player to_move,
                                             int claims_left) const {
    auto pack = [&](std::uint64_t m, std::uint64_t b) {
        // 2 bits per edge: 01 maker, 10 breaker
        std::uint64_t key = 0;
        for (int i = 0; i < edges_; ++i) {
            std::uint64_t bits = ((m >> i) & 1) | (((b >> i) & 1) << 1);
            key |= bits << (2 * i);
        }
        return key;
    };
    std::uint64_t best;
    if (!use_symmetry_) {
        best = pack(maker_mask, breaker_mask);
    } else {
        best = ~0ULL;
        for (const auto& ep : edge_perms_) {
            std::uint64_t pm = 0, pb = 0;
            for (int i = 0; i < edges_; ++i) {
                if ((maker_mask >> i) & 1) pm |= 1ULL << ep[i];
                if ((breaker_mask >> i) & 1) pb |= 1ULL << ep[i];
            }
            best = std::min(best, pack(pm, pb));
        }
    }
    // 48 bits of state, 1 bit side to move, 5 bits intra-round counter
    return best ^ (static_cast<std::uint64_t>(to_move == Player::Maker) << 48) ^
           (static_cast<std::uint64_t>(claims_left) << 49);
}

bool GraphGameSolver::maker_wins(std::uint64_t maker_mask, std::uint64_t breaker_mask,
                                 Player to_move, int claims_left) {
    ++nodes_;
    if (predicate_on(maker_mask)) return true;  // monotone: already satisfied
    const std::uint64_t all = edges_ == 64 ? ~0ULL : (1ULL << edges_) - 1;
    const std::uint64_t free_mask = all & ~(maker_mask | breaker_mask);
    // even owning every free edge would not be enough
    if (!predicate_on(maker_mask | free_mask)) return false;
    if (free_mask == 0) return predicate_on(maker_mask);

    const std::uint64_t key = canonical_key(maker_mask, breaker_mask, to_move, claims_left);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const Player other = to_move == Player::Maker ? Player::Breaker : Player::Maker;
    const int other_bias = other == Player::Maker ? maker_bias_ : breaker_bias_;
    bool result = to_move == Player::Breaker;  // Maker node: exists; Breaker node: forall
    for (int i = 0; i < edges_; ++i) {
        if (!((free_mask >> i) & 1)) continue;
        const std::uint64_t bit = 1ULL << i;
        const bool child =
            claims_left > 1
                ? maker_wins(maker_mask | (to_move == Player::Maker ? bit : 0),
                             breaker_mask | (to_move == Player::Breaker ? bit : 0), to_move,
                             claims_left - 1)
                : maker_wins(maker_mask | (to_move == Player::Maker ? bit : 0),
                             breaker_mask | (to_move == Player::Breaker ? bit : 0), other,
                             other_bias);
        if (to_move == Player::Maker && child) {
            result = true;
            break;
        }
        if (to_move == Player::Breaker && !child) {
            result = false;
            break;
        }
    }
    memo_[key] = result;
    return result;
}

Player GraphGameSolver::solve() {
    const int first_bias = first_ == Player::Maker ? maker_bias_ : breaker_bias_;
    return maker_wins(0, 0, first_, first_bias) ? Player::Maker : Player::Breaker;
}

std::string GraphGameSolver::fingerprint() const {
    std::ostringstream out;
    out << "rbgsolve v1 n=" << n_ << " s=" << s_ << " pred=" << predicate_.id;
    for (const auto& [k, v] : predicate_.params) out << ' ' << k << '=' << v;
    out << " p=" << maker_bias_ << " b=" << breaker_bias_
        << " first=" << (first_ == Player::Maker ? "maker" : "breaker")
        << " sym=" << use_symmetry_;
    return out.str();
}

void GraphGameSolver::save_cache(const std::string& path) const {
    std::ofstream out(path);
    out << fingerprint() << '\n';
    for (const auto& [key, win] : memo_) out << key << ' ' << (win ? 1 : 0) << '\n';
}

bool GraphGameSolver::load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    if (!std::getline(in, header) || header != fingerprint()) return false;
    std::uint64_t key;
    int win;
    while (in >> key >> win) memo_[key] = win != 0;
    return true;
}

ThresholdScan exact_threshold_bias(int n, int s, const WinPredicate& predicate, int b_max,
                                   Player first_player) {
    ThresholdScan scan;
    for (int b = 1; b <= b_max; ++b) {
        GraphGameSolver solver(n, s, predicate, 1, b, first_player);
        const Player w = solver.solve();
        scan.winners.push_back(w);
        if (w == Player::Breaker) {
            scan.threshold = b;
            break;
        }
    }
    return scan;
}

// --- abstract hypergraph games ----------------------------------------------

namespace {

struct HyperSolver {
    const HypergraphGame& game;
    std::unordered_map<std::uint64_t, bool> memo;

    std::uint64_t all_mask() const {
        return game.num_elements == 64 ? ~0ULL : (1ULL << game.num_elements) - 1;
    }

    bool maker_owns_set(std::uint64_t maker) const {
        for (const auto f : game.winning_sets)
            if ((f & maker) == f) return true;
        return false;
    }

    bool all_sets_dead(std::uint64_t breaker) const {
        for (const auto f : game.winning_sets)
            if ((f & breaker) == 0) return false;
        return true;
    }

    bool maker_wins(std::uint64_t maker, std::uint64_t breaker, Player to_move,
                    int claims_left) {
        if (maker_owns_set(maker)) return true;
        if (all_sets_dead(breaker)) return false;
        const std::uint64_t free_mask = all_mask() & ~(maker | breaker);
        if (free_mask == 0) return false;
        // exact packing: two 24-bit masks + side to move + intra-round counter
        const std::uint64_t key = maker | (breaker << 24) |
                                  (static_cast<std::uint64_t>(to_move == Player::Maker) << 48) |
                                  (static_cast<std::uint64_t>(claims_left) << 49);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const Player other = to_move == Player::Maker ? Player::Breaker : Player::Maker;
        const int other_bias =
            other == Player::Maker ? game.maker_bias : game.breaker_bias;
        bool result = to_move == Player::Breaker;
        for (int i = 0; i < game.num_elements; ++i) {
            if (!((free_mask >> i) & 1)) continue;
            const std::uint64_t bit = 1ULL << i;
            const bool child = claims_left > 1
                                   ? maker_wins(maker | (to_move == Player::Maker ? bit : 0),
                                                breaker | (to_move == Player::Breaker ? bit : 0),
                                                to_move, claims_left - 1)
                                   : maker_wins(maker | (to_move == Player::Maker ? bit : 0),
                                                breaker | (to_move == Player::Breaker ? bit : 0),
                                                other, other_bias);
            if (to_move == Player::Maker && child) {
                result = true;
                break;
            }
            if (to_move == Player::Breaker && !child) {
                result = false;
                break;
            }
        }
        memo[key] = result;
        return result;
    }
};

}  // namespace

Player solve_hypergraph(const HypergraphGame& game) {
    if (game.num_elements > kSolverEdgeCap)
        throw SolverError("too-large: solver capped at 24 elements");
    HyperSolver hs{game, {}};
    const int first_bias =
        game.first_player == Player::Maker ? game.maker_bias : game.breaker_bias;
    return hs.maker_wins(0, 0, game.first_player, first_bias) ? Player::Maker : Player::Breaker;
}

int potential_breaker_pick(const HypergraphGame& game, std::uint64_t maker_mask,
                           std::uint64_t breaker_mask) {
    const int p = game.maker_bias;
    const int q = game.breaker_bias;
    const double log_base = std::log1p(static_cast<double>(q));
    int best = -1;
    double best_pot = -1.0;
    for (int x = 0; x < game.num_elements; ++x) {
        const std::uint64_t bit = 1ULL << x;
        if ((maker_mask | breaker_mask) & bit) continue;
        double pot = 0.0;
        for (const auto f : game.winning_sets) {
            if (!(f & bit)) continue;
            if (f & breaker_mask) continue;  // dead set
            const int free_left = std::popcount(f & ~maker_mask);
            pot += std::exp(-static_cast<double>(free_left) / p * log_base);
        }
        if (pot > best_pot) {
            best_pot = pot;
            best = x;
        }
    }
    return best;
}

namespace {

struct BestResponse {
    const HypergraphGame& game;
    std::unordered_map<std::uint64_t, bool> memo;

    bool maker_can_win(std::uint64_t maker, std::uint64_t breaker) {
        // position right before a Maker round (Breaker's greedy claims applied)
        for (const auto f : game.winning_sets)
            if ((f & maker) == f) return true;
        bool any_alive = false;
        for (const auto f : game.winning_sets)
            if (!(f & breaker)) any_alive = true;
        if (!any_alive) return false;
        const std::uint64_t all =
            game.num_elements == 64 ? ~0ULL : (1ULL << game.num_elements) - 1;
        if ((all & ~(maker | breaker)) == 0) return false;
        const std::uint64_t key = maker | (breaker << 24);  // exact 48-bit packing
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        // Maker tries every way to spend her p claims this round; only the
        // claimed set matters, so claims are enumerated ascending
        const bool result = try_maker_claims(maker, breaker, 0, game.maker_bias);
        memo[key] = result;
        return result;
    }

    bool try_maker_claims(std::uint64_t maker, std::uint64_t breaker, int from, int left) {
        for (const auto f : game.winning_sets)
            if ((f & maker) == f) return true;
        const std::uint64_t all =
            game.num_elements == 64 ? ~0ULL : (1ULL << game.num_elements) - 1;
        std::uint64_t free_mask = all & ~(maker | breaker);
        if (left == 0 || free_mask == 0) {
            // Breaker answers with his greedy claims, then next Maker round
            std::uint64_t b2 = breaker;
            for (int k = 0; k < game.breaker_bias; ++k) {
                const int pick = potential_breaker_pick(game, maker, b2);
                if (pick < 0) break;
                b2 |= 1ULL << pick;
            }
            if ((all & ~(maker | b2)) == 0 && !maker_owns(maker)) return false;
            return maker_can_win(maker, b2);
        }
        for (int i = from; i < game.num_elements; ++i) {
            if (!((free_mask >> i) & 1)) continue;
            if (try_maker_claims(maker | (1ULL << i), breaker, i + 1, left - 1)) return true;
        }
        return false;
    }

    bool maker_owns(std::uint64_t maker) const {
        for (const auto f : game.winning_sets)
            if ((f & maker) == f) return true;
        return false;
    }
};

}  // namespace

bool maker_best_response_beats_potential_breaker(const HypergraphGame& game) {
    if (game.num_elements > kSolverEdgeCap)
        throw SolverError("too-large: solver capped at 24 elements");
    BestResponse br{game, {}};
    std::uint64_t breaker = 0;
    if (game.first_player == Player::Breaker) {
        for (int k = 0; k < game.breaker_bias; ++k) {
            const int pick = potential_breaker_pick(game, 0, breaker);
            if (pick < 0) break;
            breaker |= 1ULL << pick;
        }
    }
    return br.maker_can_win(0, breaker);
}

// --- independent oracles ------------------------------------------------------

namespace {

long long oracle_paths_rec(const ColoredSubgraph& g, std::vector<int>& seq_vertices,
                           std::vector<int>& seq_colors, int w, int max_len) {
    const int at = seq_vertices.back();
    long long total = 0;
    if (at == w && seq_vertices.size() > 1) {
        // verify color distinctness the pedestrian way
        auto colors = seq_colors;
        std::sort(colors.begin(), colors.end());
        if (std::adjacent_find(colors.begin(), colors.end()) == colors.end()) total += 1;
        return total;  // simple paths cannot revisit w later
    }
    if (static_cast<int>(seq_colors.size()) >= max_len) return 0;
    for (int next = 0; next < g.n(); ++next) {
        if (std::find(seq_vertices.begin(), seq_vertices.end(), next) != seq_vertices.end())
            continue;
        for (int c = 0; c < g.s(); ++c) {
            if (!g.contains_pair(at, next, c)) continue;
            seq_vertices.push_back(next);
            seq_colors.push_back(c);
            total += oracle_paths_rec(g, seq_vertices, seq_colors, w, max_len);
            seq_vertices.pop_back();
            seq_colors.pop_back();
        }
    }
    return total;
}

}  // namespace

long long oracle_count_rainbow_paths(const ColoredSubgraph& g, int v, int w, int max_len) {
    std::vector<int> vs{v}, cs;
    return oracle_paths_rec(g, vs, cs, w, max_len);
}

long long oracle_count_sequence_paths(const ColoredSubgraph& g, int v, int w,
                                      const std::vector<int>& seq) {
    // build vertex sequences position by position, colors forced by seq
    struct Rec {
        const ColoredSubgraph& g;
        const std::vector<int>& seq;
        int w;
        long long count = 0;
        std::vector<int> path;

        void go(size_t depth) {
            if (depth == seq.size()) {
                if (path.back() == w) ++count;
                return;
            }
            for (int next = 0; next < g.n(); ++next) {
                if (std::find(path.begin(), path.end(), next) != path.end()) continue;
                if (!g.contains_pair(path.back(), next, seq[depth])) continue;
                path.push_back(next);
                go(depth + 1);
                path.pop_back();
            }
        }
    } rec{g, seq, w, 0, {v}};
    rec.go(0);
    return rec.count;
}

long long oracle_count_partitions(int n) {
    // assign element i to one of the blocks used so far or a fresh block
    struct Rec {
        int n;
        long long count = 0;
        void go(int i, int blocks) {
            if (i == n) {
                ++count;
                return;
            }
            for (int b = 0; b < blocks; ++b) go(i + 1, blocks);
            go(i + 1, blocks + 1);
        }
    } rec{n, 0};
    rec.go(0, 0);
    return rec.count;
}

namespace {

// decode a Pruefer sequence into tree edges
std::vector<std::pair<int, int>> pruefer_decode(const std::vector<int>& code, int n) {
    std::vector<int> degree(static_cast<size_t>(n), 1);
    for (int x : code) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    std::vector<char> used(static_cast<size_t>(n), 0);
    for (int x : code) {
        for (int leaf = 0; leaf < n; ++leaf) {
            if (degree[leaf] == 1 && !used[leaf]) {
                edges.push_back({leaf, x});
                used[leaf] = 1;
                --degree[x];
                break;
            }
        }
    }
    std::vector<int> last;
    for (int v = 0; v < n; ++v)
        if (!used[v] && degree[v] >= 1) last.push_back(v);
    edges.push_back({last[0], last[1]});
    return edges;
}

bool rainbow_colorable(const ColoredSubgraph& g,
                       const std::vector<std::pair<int, int>>& tree_edges, size_t i,
                       std::vector<char>& used_colors) {
    if (i == tree_edges.size()) return true;
    const auto [u, v] = tree_edges[i];
    for (int c = 0; c < g.s(); ++c) {
        if (used_colors[c] || !g.contains_pair(u, v, c)) continue;
        used_colors[c] = 1;
        if (rainbow_colorable(g, tree_edges, i + 1, used_colors)) {
            used_colors[c] = 0;
            return true;
        }
        used_colors[c] = 0;
    }
    return false;
}

}  // namespace

long long oracle_count_labeled_trees(int n) {
    if (n == 1) return 1;
    if (n == 2) return 1;
    long long count = 0;
    std::vector<int> code(static_cast<size_t>(n - 2), 0);
    while (true) {
        ++count;
        int i = n - 3;
        while (i >= 0 && code[i] == n - 1) {
            code[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++code[i];
    }
    return count;
}

long long oracle_count_rainbow_spanning_trees(const ColoredSubgraph& g) {
    const int n = g.n();
    if (n > 7) throw SolverError("too-large: tree oracle capped at n = 7");
    if (n == 1) return 1;
    long long count = 0;
    std::vector<int> code(static_cast<size_t>(std::max(0, n - 2)), 0);
    std::vector<char> used_colors(static_cast<size_t>(g.s()), 0);
    while (true) {
        const auto edges = pruefer_decode(code, n);
        bool present = true;
        for (const auto& [u, v] : edges) {
            bool any = false;
            for (int c = 0; c < g.s() && !any; ++c) any = g.contains_pair(u, v, c);
            if (!any) {
                present = false;
                break;
            }
        }
        if (present && rainbow_colorable(g, edges, 0, used_colors)) ++count;
        if (code.empty()) break;
        int i = n - 3;
        while (i >= 0 && code[i] == n - 1) {
            code[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++code[i];
    }
    return count;
}

namespace {

void all_pairings(std::vector<int>& pool, std::vector<std::pair<int, int>>& cur,
                  const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
    if (pool.empty()) {
        visit(cur);
        return;
    }
    const int a = pool[0];
    for (size_t j = 1; j < pool.size(); ++j) {
        const int b = pool[j];
        std::vector<int> rest;
        for (size_t k = 1; k < pool.size(); ++k)
            if (k != j) rest.push_back(pool[k]);
        cur.push_back({a, b});
        all_pairings(rest, cur, visit);
        cur.pop_back();
    }
}

}  // namespace

long long oracle_count_rainbow_perfect_matchings(const ColoredSubgraph& g) {
    const int n = g.n();
    if (n % 2 != 0) return 0;
    if (n > 12) throw SolverError("too-large: matching oracle capped at n = 12");
    std::vector<int> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    long long count = 0;
    std::vector<std::pair<int, int>> cur;
    std::vector<char> used(static_cast<size_t>(g.s()), 0);
    all_pairings(pool, cur, [&](const std::vector<std::pair<int, int>>& pairing) {
        // count distinct color systems for this pairing
        struct Rec {
            const ColoredSubgraph& g;
            const std::vector<std::pair<int, int>>& pairing;
            std::vector<char>& used;
            long long local = 0;
            void go(size_t i) {
                if (i == pairing.size()) {
                    ++local;
                    return;
                }
                for (int c = 0; c < g.s(); ++c) {
                    if (used[c] || !g.contains_pair(pairing[i].first, pairing[i].second, c))
                        continue;
                    used[c] = 1;
                    go(i + 1);
                    used[c] = 0;
                }
            }
        } rec{g, pairing, used, 0};
        rec.go(0);
        count += rec.local;
    });
    return count;
}

std::vector<std::vector<int>> oracle_all_pairs_distances(const ColoredSubgraph& g) {
    const int n = g.n();
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n), inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

}  // namespace rbg
