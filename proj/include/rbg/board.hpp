#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbg {

enum class ClaimState : std::uint8_t { Free = 0, Maker = 1, Breaker = 2, Ghost = 3 };

enum class Player : std::uint8_t { Maker, Breaker };

inline ClaimState to_claim_state(Player p) {
    return p == Player::Maker ? ClaimState::Maker : ClaimState::Breaker;
}

enum class Side : std::uint8_t { L, R };

// One edge of the layered board: layer = color index in [0, s),
// endpoints stored canonically with u < v.
struct EdgeRef {
    int layer = 0;
    int u = 0;
    int v = 0;

    EdgeRef() = default;
    EdgeRef(int layer_, int a, int b) : layer(layer_), u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const EdgeRef& x, const EdgeRef& y) = default;
    friend auto operator<=>(const EdgeRef& x, const EdgeRef& y) = default;
};

struct BoardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// s parallel copies of K_n on vertex set [0, n), with per-edge claim state and
// a fixed vertex bipartition V_L = [0, ceil(n/2)), V_R = rest.
class Board {
  public:
    static Board layered_complete(int n, int s) {
        if (n < 2 || s < 1) throw BoardError("invalid-dimensions: need n >= 2, s >= 1");
        return Board(n, s);
    }

    int n() const { return n_; }
    int s() const { return s_; }
    int pairs() const { return n_ * (n_ - 1) / 2; }
    int total_edges() const { return s_ * pairs(); }

    int left_size() const { return (n_ + 1) / 2; }
    Side side_of(int v) const { return v < left_size() ? Side::L : Side::R; }

    int pair_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        return u * n_ - u * (u + 1) / 2 + (v - u - 1);
    }

    int edge_index(const EdgeRef& e) const { return e.layer * pairs() + pair_index(e.u, e.v); }

    EdgeRef edge_from_index(int idx) const {
        const int layer = idx / pairs();
        int rest = idx % pairs();
        int u = 0;
        while (rest >= n_ - 1 - u) {
            rest -= n_ - 1 - u;
            ++u;
        }
        return EdgeRef(layer, u, u + 1 + rest);
    }

    ClaimState state(const EdgeRef& e) const { return states_[edge_index(e)]; }
    ClaimState state_at(int idx) const { return states_[idx]; }

    bool is_free(const EdgeRef& e) const { return state(e) == ClaimState::Free; }

    void claim(const EdgeRef& e, ClaimState who) {
        if (who == ClaimState::Free) throw BoardError("cannot claim as Free");
        check_edge(e);
        auto& slot = states_[edge_index(e)];
        if (slot != ClaimState::Free) throw BoardError("already-claimed");
        slot = who;
        --counts_[0];
        ++counts_[static_cast<int>(who)];
    }

    void claim(const EdgeRef& e, Player p) { claim(e, to_claim_state(p)); }

    int count(ClaimState st) const { return counts_[static_cast<int>(st)]; }
    int free_count() const { return counts_[0]; }

    // Free edges at v in the given layer, opposite endpoint ascending;
    // optionally restricted to edges whose opposite endpoint lies in V_side.
    std::vector<EdgeRef> free_edges_at(int v, int layer,
                                       std::optional<Side> side = std::nullopt) const {
        check_vertex(v);
        check_layer(layer);
        std::vector<EdgeRef> out;
        for (int w = 0; w < n_; ++w) {
            if (w == v) continue;
            if (side && side_of(w) != *side) continue;
            EdgeRef e(layer, v, w);
            if (is_free(e)) out.push_back(e);
        }
        return out;
    }

    std::vector<EdgeRef> all_free_edges() const {
        std::vector<EdgeRef> out;
        out.reserve(free_count());
        for (int i = 0; i < total_edges(); ++i)
            if (states_[i] == ClaimState::Free) out.push_back(edge_from_index(i));
        return out;
    }

    std::vector<EdgeRef> edges_of(ClaimState st) const {
        std::vector<EdgeRef> out;
        for (int i = 0; i < total_edges(); ++i)
            if (states_[i] == st) out.push_back(edge_from_index(i));
        return out;
    }

    // JSON round trip lives in board.cpp (base64 run-length encoded states).
    std::string to_json() const;
    static Board from_json(const std::string& text);

    const std::vector<ClaimState>& raw_states() const { return states_; }

  private:
    Board(int n, int s) : n_(n), s_(s), states_(static_cast<size_t>(s) * (n * (n - 1) / 2)) {
        counts_[0] = total_edges();
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw BoardError("vertex out of range");
    }
    void check_layer(int c) const {
        if (c < 0 || c >= s_) throw BoardError("layer out of range");
    }
    void check_edge(const EdgeRef& e) const {
        check_vertex(e.u);
        check_vertex(e.v);
        check_layer(e.layer);
        if (e.u == e.v) throw BoardError("loop edge");
    }

    int n_;
    int s_;
    std::vector<ClaimState> states_;
    int counts_[4] = {0, 0, 0, 0};
};

}  // namespace rbg
