#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbg/rng.hpp"

namespace rbg {

struct SubgameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Box(p, 1; a_1, ..., a_n): disjoint boxes, BoxMaker claims p elements per
// round and wins by fully claiming a box; the opponent claims 1 per round.
// ---------------------------------------------------------------------------

struct BoxState {
    struct BoxInfo {
        int size = 0;
        int maker = 0;
        int opponent = 0;
        int free() const { return size - maker - opponent; }
        bool destroyed() const { return opponent > 0; }
        bool complete() const { return maker == size; }
    };
    int p = 1;
    std::vector<BoxInfo> boxes;

    static BoxState make(const std::vector<int>& sizes, int p);
    bool maker_won() const;
    bool maker_lost() const;  // every box destroyed
    std::string to_json() const;
};

// Greedy rule: a free element from the box with the fewest free elements among
// boxes the opponent has not destroyed. Returns the box index.
int box_maker_move(const BoxState& state);

// Balancing rule: complete a box whenever one fits into the rest of the turn,
// otherwise claim from the fullest alive box so the whole field descends as a
// flat block. A destroyed box then carries almost no invested claims, and the
// common level drops by p/(alive-1) per round, reaching p while two boxes
// remain whenever m <= p (ln n + 1). Plain greedy-smallest instead loses its
// whole investment each round to an opponent who answers in the most-filled
// box. claims_left counts the current claim.
int box_balance_move(const BoxState& state, int claims_left);

using BoxMakerPolicy = std::function<int(const BoxState&, int claims_left)>;
BoxMakerPolicy box_maker_greedy_policy();
BoxMakerPolicy box_maker_balance_policy();

// Opponent callback gets the state and returns a box index to claim from
// (must have a free element), or -1 to pass.
using BoxOpponent = std::function<int(const BoxState&, Rng&)>;

BoxOpponent box_opponent_random();
// claims from the alive box closest to completion (the one BoxMaker is
// racing for)
BoxOpponent box_opponent_greedy_destroyer();

// Full playout; maker_second runs BoxMaker on the harder, second-player side.
bool play_box_game(const std::vector<int>& sizes, int p, const BoxOpponent& opponent,
                   bool maker_second, Rng& rng,
                   const BoxMakerPolicy& maker = box_maker_balance_policy());

// ---------------------------------------------------------------------------
// MinBox(n, D, gamma, b): Maker needs a gamma-fraction of every box.
// ---------------------------------------------------------------------------

struct MinBoxState {
    struct BoxInfo {
        int size = 0;
        int w_m = 0;
        int w_b = 0;
        int free() const { return size - w_m - w_b; }
    };
    int bias = 1;  // b
    double gamma = 0.5;
    std::vector<BoxInfo> boxes;

    static MinBoxState make(const std::vector<int>& sizes, double gamma, int bias);
    bool active(int i) const {
        return boxes[i].w_m < gamma * boxes[i].size;
    }
    double danger(int i) const { return boxes[i].w_b - static_cast<double>(bias) * boxes[i].w_m; }
    bool maker_won() const {
        for (size_t i = 0; i < boxes.size(); ++i)
            if (active(static_cast<int>(i))) return false;
        return true;
    }
    std::string to_json() const;
};

// Danger-greedy rule: active box with a free element maximizing
// w_B - b*w_M, ties by lowest box index. Throws no-active-box.
int minbox_maker_move(const MinBoxState& state);

// w_B(F) <= b * (w_M(F) + ln(n_boxes) + 1) for every active box
bool minbox_invariant_check(const MinBoxState& state);

using MinBoxOpponent = std::function<int(const MinBoxState&, Rng&)>;
MinBoxOpponent minbox_opponent_random();
MinBoxOpponent minbox_opponent_max_danger();

struct MinBoxPlayout {
    bool maker_won = false;
    int invariant_violations = 0;  // counted after every single claim
};

MinBoxPlayout play_minbox_game(const std::vector<int>& sizes, double gamma, int bias,
                               const MinBoxOpponent& opponent, Rng& rng);

// ---------------------------------------------------------------------------
// Spooky Balancing Game (m, b, V, h, l, M): growable overlapping winning sets,
// Ghost may haunt elements; Maker keeps c_FM >= m/(b+m) * c_F - l everywhere.
// ---------------------------------------------------------------------------

enum class SbgElem : std::uint8_t { Free = 0, Maker = 1, Breaker = 2, Haunted = 3 };

class SbgState {
  public:
    SbgState(int num_elements, int num_hyperedges, int m, int bias, double ell, int max_size);

    int m() const { return m_; }
    int bias() const { return bias_; }
    double ell() const { return ell_; }
    int max_size() const { return max_size_; }
    int num_elements() const { return static_cast<int>(elems_.size()); }
    int num_hyperedges() const { return static_cast<int>(edges_.size()); }

    SbgElem elem_state(int e) const { return elems_[e]; }
    int c_f(int edge) const { return edges_[edge].c_f; }
    int c_fm(int edge) const { return edges_[edge].c_fm; }
    int size_of(int edge) const { return static_cast<int>(edges_[edge].members.size()); }
    const std::vector<int>& members(int edge) const { return edges_[edge].members; }

    double deficit(int edge) const {
        return static_cast<double>(m_) / (bias_ + m_) * edges_[edge].c_f - edges_[edge].c_fm;
    }

    // Ghost adds free elements; growth-overflow if a hyperedge would exceed M.
    void grow(int edge, const std::vector<int>& elements);
    void maker_claim(int element);
    void breaker_claim(int element);
    void haunt(int element);

    bool has_free_element(int edge) const;
    std::string to_json() const;

  private:
    friend int sbg_maker_move(const SbgState&);
    struct Hyperedge {
        std::vector<int> members;
        int c_f = 0;
        int c_fm = 0;
        int haunted = 0;
    };
    void check_elem(int e) const;

    int m_;
    int bias_;
    double ell_;
    int max_size_;
    std::vector<SbgElem> elems_;
    std::vector<Hyperedge> edges_;
    std::vector<std::vector<int>> elem_edges_;  // element -> hyperedges containing it
};

// Deficit-greedy pick: a free element of the hyperedge maximizing the deficit
// (ties: hyperedge index, then element order); when no hyperedge holds a free
// element or all deficits are <= -l, the lowest-index free element of V.
int sbg_maker_move(const SbgState& state);

// Eq-style win condition: c_FM >= m/(b+m) * c_F - l for every hyperedge.
bool sbg_goal_holds(const SbgState& state);

// Criterion conditions (natural log):
//   (1) M >= 9 (m+b) log(h)    (2) l >= 5mb/(m+b) * sqrt(M log(h) / (m+b))
std::pair<bool, bool> sbg_conditions(int m, int b, int h, int max_size, double ell);

// One full round: Ghost growth, Maker's pick/haunt-or-grant loop (until m
// grants or no free elements), then Breaker's claims.
struct SbgRoundInput {
    std::vector<std::pair<int, std::vector<int>>> growth;  // (hyperedge, new elements)
    std::function<int(const SbgState&)> maker = sbg_maker_move;
    std::function<bool(const SbgState&, int)> ghost_haunts;  // pick -> haunt?
    std::vector<int> breaker_claims;
};

void sbg_round(SbgState& state, const SbgRoundInput& input);

// ---------------------------------------------------------------------------
// MinDeg+(H, d, b, alpha) on H = two disjoint complete multigraphs with
// multiplicity mult on n vertices each; Breaker moves first. Maker claims and
// orients edges and may claim an edge again for the second direction.
// ---------------------------------------------------------------------------

class MinDegState {
  public:
    MinDegState(int n_per_side, int mult, int target_outdeg, int bias, double alpha);

    int n_per_side() const { return n_; }
    int mult() const { return mult_; }
    int num_vertices() const { return 2 * n_; }
    int target() const { return d_; }
    int bias() const { return bias_; }
    double alpha() const { return alpha_; }
    int copies_per_side() const { return n_ * (n_ - 1) / 2 * mult_; }
    int total_copies() const { return 2 * copies_per_side(); }

    int degree_full(int) const { return mult_ * (n_ - 1); }
    int d_b(int v) const { return d_b_[v]; }
    int d_m_plus(int v) const { return d_m_plus_[v]; }
    double dang(int v) const { return d_b_[v] - 2.0 * bias_ * d_m_plus_[v]; }
    bool active(int v) const { return d_m_plus_[v] < d_; }

    // losing condition: some active vertex already has d_B >= (1-alpha) d_H
    std::optional<int> losing_vertex() const;
    bool maker_won() const;

    // copy ids pack (side, pair, multiplicity slot)
    int copy_id(int u, int v, int slot) const;
    std::pair<int, int> copy_endpoints(int copy) const;

    bool breaker_can_claim(int copy) const { return state_[copy] == 0; }
    void breaker_claim(int copy);
    bool maker_can_orient(int copy, int from) const;
    void maker_orient(int copy, int from);

    std::vector<int> eligible_copies_at(int v) const;
    std::string to_json() const;

  private:
    int side_of(int v) const { return v < n_ ? 0 : 1; }

    int n_, mult_, d_, bias_;
    double alpha_;
    std::vector<std::uint8_t> state_;  // 0 free, 1 breaker, 2 maker
    std::vector<std::uint8_t> out_low_, out_high_;  // orientation out of lower/higher endpoint
    std::vector<int> d_b_, d_m_plus_;
};

struct MinDegMove {
    int vertex;
    int copy;
};

// Strategy S+: active vertex of largest danger (ties lowest index), then a
// uniformly random eligible copy at it; throws "stuck" when none exists.
MinDegMove mindeg_plus_move(const MinDegState& state, Rng& rng);

using MinDegOpponent = std::function<std::vector<int>(const MinDegState&, Rng&)>;
MinDegOpponent mindeg_opponent_random();
MinDegOpponent mindeg_opponent_max_degree_attack();

struct MinDegPlayout {
    bool maker_won = false;
    bool lost_by_degree = false;
    bool stuck = false;
};

MinDegPlayout play_mindeg_game(MinDegState state, const MinDegOpponent& opponent, Rng& rng);

}  // namespace rbg
