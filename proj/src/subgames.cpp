#include "rbg/subgames.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace rbg {

// --- Box --------------------------------------------------------------------

BoxState BoxState::make(const std::vector<int>& sizes, int p) {
    BoxState st;
    st.p = p;
    for (int a : sizes) {
        if (a < 1) throw SubgameError("box sizes must be positive");
        st.boxes.push_back({a, 0, 0});
    }
    return st;
}

bool BoxState::maker_won() const {
    return std::any_of(boxes.begin(), boxes.end(), [](const auto& b) { return b.complete(); });
}

bool BoxState::maker_lost() const {
    return std::all_of(boxes.begin(), boxes.end(), [](const auto& b) { return b.destroyed(); });
}

std::string BoxState::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    auto arr = nlohmann::json::array();
    for (const auto& b : boxes) arr.push_back({{"size", b.size}, {"maker", b.maker}, {"opponent", b.opponent}});
    j["boxes"] = arr;
    return j.dump();
}

int box_maker_move(const BoxState& state) {
    int best = -1;
    for (size_t i = 0; i < state.boxes.size(); ++i) {
        const auto& b = state.boxes[i];
        if (b.destroyed() || b.free() == 0) continue;
        if (best < 0 || b.free() < state.boxes[best].free()) best = static_cast<int>(i);
    }
    if (best < 0) throw SubgameError("no-free-element");
    return best;
}

int box_balance_move(const BoxState& state, int claims_left) {
    int lowest = -1, fullest = -1;
    for (size_t i = 0; i < state.boxes.size(); ++i) {
        const auto& b = state.boxes[i];
        if (b.destroyed() || b.free() == 0) continue;
        const int idx = static_cast<int>(i);
        if (lowest < 0 || b.free() < state.boxes[lowest].free()) lowest = idx;
        if (fullest < 0 || b.free() > state.boxes[fullest].free()) fullest = idx;
    }
    if (lowest < 0) throw SubgameError("no-free-element");
    if (state.boxes[lowest].free() <= claims_left) return lowest;  // run to completion
    return fullest;
}

BoxMakerPolicy box_maker_greedy_policy() {
    return [](const BoxState& st, int) { return box_maker_move(st); };
}

BoxMakerPolicy box_maker_balance_policy() {
    return [](const BoxState& st, int claims_left) { return box_balance_move(st, claims_left); };
}

BoxOpponent box_opponent_random() {
    return [](const BoxState& st, Rng& rng) {
        int total_free = 0;
        for (const auto& b : st.boxes) total_free += b.free();
        if (total_free == 0) return -1;
        auto pick = static_cast<long long>(rng.below(total_free));
        for (size_t i = 0; i < st.boxes.size(); ++i) {
            pick -= st.boxes[i].free();
            if (pick < 0) return static_cast<int>(i);
        }
        return -1;
    };
}

BoxOpponent box_opponent_greedy_destroyer() {
    return [](const BoxState& st, Rng&) {
        int best = -1;
        for (size_t i = 0; i < st.boxes.size(); ++i) {
            const auto& b = st.boxes[i];
            if (b.destroyed() || b.free() == 0) continue;
            if (best < 0 || b.free() < st.boxes[best].free()) best = static_cast<int>(i);
        }
        if (best >= 0) return best;
        for (size_t i = 0; i < st.boxes.size(); ++i)
            if (st.boxes[i].free() > 0) return static_cast<int>(i);
        return -1;
    };
}

bool play_box_game(const std::vector<int>& sizes, int p, const BoxOpponent& opponent,
                   bool maker_second, Rng& rng, const BoxMakerPolicy& maker) {
    BoxState st = BoxState::make(sizes, p);
    auto opponent_turn = [&]() {
        const int i = opponent(st, rng);
        if (i >= 0 && st.boxes[i].free() > 0) ++st.boxes[i].opponent;
    };
    auto maker_turn = [&]() {
        for (int k = 0; k < st.p; ++k) {
            bool any_free = false;
            for (const auto& b : st.boxes)
                if (!b.destroyed() && b.free() > 0) any_free = true;
            if (!any_free) return;
            ++st.boxes[maker(st, st.p - k)].maker;
            if (st.maker_won()) return;
        }
    };
    while (true) {
        if (maker_second) opponent_turn();
        if (st.maker_won()) return true;
        if (st.maker_lost()) return false;
        maker_turn();
        if (st.maker_won()) return true;
        if (st.maker_lost()) return false;
        if (!maker_second) opponent_turn();
        if (st.maker_won()) return true;
        if (st.maker_lost()) return false;
        int total_free = 0;
        for (const auto& b : st.boxes) total_free += b.free();
        if (total_free == 0) return st.maker_won();
    }
}

// --- MinBox -----------------------------------------------------------------

MinBoxState MinBoxState::make(const std::vector<int>& sizes, double gamma, int bias) {
    MinBoxState st;
    st.bias = bias;
    st.gamma = gamma;
    for (int a : sizes) {
        if (a < 1) throw SubgameError("box sizes must be positive");
        st.boxes.push_back({a, 0, 0});
    }
    return st;
}

std::string MinBoxState::to_json() const {
    nlohmann::json j;
    j["bias"] = bias;
    j["gamma"] = gamma;
    auto arr = nlohmann::json::array();
    for (const auto& b : boxes) arr.push_back({{"size", b.size}, {"w_m", b.w_m}, {"w_b", b.w_b}});
    j["boxes"] = arr;
    return j.dump();
}

int minbox_maker_move(const MinBoxState& state) {
    int best = -1;
    for (size_t i = 0; i < state.boxes.size(); ++i) {
        const int idx = static_cast<int>(i);
        if (!state.active(idx) || state.boxes[i].free() == 0) continue;
        if (best < 0 || state.danger(idx) > state.danger(best)) best = idx;
    }
    if (best < 0) throw SubgameError("no-active-box");
    return best;
}

bool minbox_invariant_check(const MinBoxState& state) {
    const double slack = std::log(static_cast<double>(state.boxes.size())) + 1.0;
    for (size_t i = 0; i < state.boxes.size(); ++i) {
        if (!state.active(static_cast<int>(i))) continue;
        if (state.boxes[i].w_b > state.bias * (state.boxes[i].w_m + slack) + 1e-9) return false;
    }
    return true;
}

MinBoxOpponent minbox_opponent_random() {
    return [](const MinBoxState& st, Rng& rng) {
        int total_free = 0;
        for (const auto& b : st.boxes) total_free += b.free();
        if (total_free == 0) return -1;
        auto pick = static_cast<long long>(rng.below(total_free));
        for (size_t i = 0; i < st.boxes.size(); ++i) {
            pick -= st.boxes[i].free();
            if (pick < 0) return static_cast<int>(i);
        }
        return -1;
    };
}

MinBoxOpponent minbox_opponent_max_danger() {
    return [](const MinBoxState& st, Rng&) {
        // pile onto the active box that is already most dangerous
        int best = -1;
        for (size_t i = 0; i < st.boxes.size(); ++i) {
            const int idx = static_cast<int>(i);
            if (st.boxes[i].free() == 0) continue;
            if (!st.active(idx)) continue;
            if (best < 0 || st.danger(idx) > st.danger(best)) best = idx;
        }
        if (best >= 0) return best;
        for (size_t i = 0; i < st.boxes.size(); ++i)
            if (st.boxes[i].free() > 0) return static_cast<int>(i);
        return -1;
    };
}

MinBoxPlayout play_minbox_game(const std::vector<int>& sizes, double gamma, int bias,
                               const MinBoxOpponent& opponent, Rng& rng) {
    MinBoxState st = MinBoxState::make(sizes, gamma, bias);
    MinBoxPlayout result;
    auto check = [&]() {
        if (!minbox_invariant_check(st)) ++result.invariant_violations;
    };
    while (true) {
        int total_free = 0;
        for (const auto& b : st.boxes) total_free += b.free();
        if (total_free == 0) break;
        // Maker: 1 claim
        bool claimable = false;
        for (size_t i = 0; i < st.boxes.size(); ++i)
            if (st.active(static_cast<int>(i)) && st.boxes[i].free() > 0) claimable = true;
        if (claimable) {
            ++st.boxes[minbox_maker_move(st)].w_m;
            check();
        }
        if (st.maker_won()) break;
        // Breaker: b claims
        for (int k = 0; k < bias; ++k) {
            const int i = opponent(st, rng);
            if (i < 0 || st.boxes[i].free() == 0) break;
            ++st.boxes[i].w_b;
            check();
        }
    }
    result.maker_won = st.maker_won();
    return result;
}

// --- SBG --------------------------------------------------------------------

SbgState::SbgState(int num_elements, int num_hyperedges, int m, int bias, double ell,
                   int max_size)
    : m_(m),
      bias_(bias),
      ell_(ell),
      max_size_(max_size),
      elems_(static_cast<size_t>(num_elements), SbgElem::Free),
      edges_(static_cast<size_t>(num_hyperedges)),
      elem_edges_(static_cast<size_t>(num_elements)) {}

void SbgState::check_elem(int e) const {
    if (e < 0 || e >= num_elements()) throw SubgameError("element out of range");
}

void SbgState::grow(int edge, const std::vector<int>& elements) {
    auto& he = edges_[edge];
    if (static_cast<int>(he.members.size() + elements.size()) > max_size_)
        throw SubgameError("growth-overflow");
    for (int e : elements) {
        check_elem(e);
        if (elems_[e] != SbgElem::Free) throw SubgameError("growth adds only free elements");
        if (std::find(he.members.begin(), he.members.end(), e) != he.members.end())
            throw SubgameError("element already in hyperedge");
        he.members.push_back(e);
        elem_edges_[e].push_back(edge);
    }
}

void SbgState::maker_claim(int element) {
    check_elem(element);
    if (elems_[element] != SbgElem::Free) throw SubgameError("illegal-claim");
    elems_[element] = SbgElem::Maker;
    for (int edge : elem_edges_[element]) {
        ++edges_[edge].c_f;
        ++edges_[edge].c_fm;
    }
}

void SbgState::breaker_claim(int element) {
    check_elem(element);
    if (elems_[element] != SbgElem::Free) throw SubgameError("illegal-claim");
    elems_[element] = SbgElem::Breaker;
    for (int edge : elem_edges_[element]) ++edges_[edge].c_f;
}

void SbgState::haunt(int element) {
    check_elem(element);
    if (elems_[element] != SbgElem::Free) throw SubgameError("only free elements can be haunted");
    elems_[element] = SbgElem::Haunted;
    for (int edge : elem_edges_[element]) ++edges_[edge].haunted;
}

bool SbgState::has_free_element(int edge) const {
    for (int e : edges_[edge].members)
        if (elems_[e] == SbgElem::Free) return true;
    return false;
}

std::string SbgState::to_json() const {
    nlohmann::json j;
    j["m"] = m_;
    j["bias"] = bias_;
    j["ell"] = ell_;
    j["max_size"] = max_size_;
    auto arr = nlohmann::json::array();
    for (const auto& he : edges_)
        arr.push_back({{"size", he.members.size()}, {"c_f", he.c_f}, {"c_fm", he.c_fm}});
    j["hyperedges"] = arr;
    std::vector<int> states;
    states.reserve(elems_.size());
    for (auto e : elems_) states.push_back(static_cast<int>(e));
    j["elements"] = states;
    return j.dump();
}

int sbg_maker_move(const SbgState& state) {
    int best_edge = -1;
    for (int f = 0; f < state.num_hyperedges(); ++f) {
        if (!state.has_free_element(f)) continue;
        if (best_edge < 0 || state.deficit(f) > state.deficit(best_edge)) best_edge = f;
    }
    if (best_edge >= 0 && state.deficit(best_edge) > -state.ell()) {
        for (int e : state.members(best_edge))
            if (state.elem_state(e) == SbgElem::Free) return e;
    }
    // all sets safe (or empty of free elements): lowest-index free element
    for (int e = 0; e < state.num_elements(); ++e)
        if (state.elem_state(e) == SbgElem::Free) return e;
    throw SubgameError("no-free-element");
}

bool sbg_goal_holds(const SbgState& state) {
    for (int f = 0; f < state.num_hyperedges(); ++f)
        if (state.deficit(f) > state.ell() + 1e-12) return false;
    return true;
}

std::pair<bool, bool> sbg_conditions(int m, int b, int h, int max_size, double ell) {
    const double logh = std::log(static_cast<double>(h));
    const bool cond1 = max_size >= 9.0 * (m + b) * logh;
    const double rhs = 5.0 * m * b / (m + b) * std::sqrt(max_size * logh / (m + b));
    const bool cond2 = ell >= rhs;
    return {cond1, cond2};
}

void sbg_round(SbgState& state, const SbgRoundInput& input) {
    for (const auto& [edge, elems] : input.growth) state.grow(edge, elems);
    int granted = 0;
    while (granted < state.m()) {
        bool any_free = false;
        for (int e = 0; e < state.num_elements() && !any_free; ++e)
            if (state.elem_state(e) == SbgElem::Free) any_free = true;
        if (!any_free) break;
        const int pick = input.maker(state);
        if (input.ghost_haunts && input.ghost_haunts(state, pick)) {
            state.haunt(pick);
        } else {
            state.maker_claim(pick);
            ++granted;
        }
    }
    int claimed = 0;
    for (int e : input.breaker_claims) {
        if (claimed >= state.bias()) throw SubgameError("breaker bias exceeded");
        if (state.elem_state(e) != SbgElem::Free) throw SubgameError("illegal-claim");
        state.breaker_claim(e);
        ++claimed;
    }
}

// --- MinDeg+ ----------------------------------------------------------------

MinDegState::MinDegState(int n_per_side, int mult, int target_outdeg, int bias, double alpha)
    : n_(n_per_side), mult_(mult), d_(target_outdeg), bias_(bias), alpha_(alpha) {
    if (n_ < 2 || mult_ < 1 || d_ < 1 || bias_ < 1) throw SubgameError("bad MinDeg parameters");
    state_.assign(static_cast<size_t>(total_copies()), 0);
    out_low_.assign(state_.size(), 0);
    out_high_.assign(state_.size(), 0);
    d_b_.assign(static_cast<size_t>(num_vertices()), 0);
    d_m_plus_.assign(static_cast<size_t>(num_vertices()), 0);
}

int MinDegState::copy_id(int u, int v, int slot) const {
    if (u > v) std::swap(u, v);
    const int side = side_of(u);
    if (side != side_of(v)) throw SubgameError("edge crosses the two cliques");
    const int lu = u - side * n_;
    const int lv = v - side * n_;
    const int pair = lu * n_ - lu * (lu + 1) / 2 + (lv - lu - 1);
    return side * copies_per_side() + pair * mult_ + slot;
}

std::pair<int, int> MinDegState::copy_endpoints(int copy) const {
    const int side = copy / copies_per_side();
    int rest = (copy % copies_per_side()) / mult_;
    int u = 0;
    while (rest >= n_ - 1 - u) {
        rest -= n_ - 1 - u;
        ++u;
    }
    return {side * n_ + u, side * n_ + u + 1 + rest};
}

std::optional<int> MinDegState::losing_vertex() const {
    for (int v = 0; v < num_vertices(); ++v)
        if (active(v) && d_b_[v] >= (1.0 - alpha_) * degree_full(v)) return v;
    return std::nullopt;
}

bool MinDegState::maker_won() const {
    for (int v = 0; v < num_vertices(); ++v)
        if (active(v)) return false;
    return true;
}

void MinDegState::breaker_claim(int copy) {
    if (state_[copy] != 0) throw SubgameError("illegal-claim");
    state_[copy] = 1;
    const auto [u, v] = copy_endpoints(copy);
    ++d_b_[u];
    ++d_b_[v];
}

bool MinDegState::maker_can_orient(int copy, int from) const {
    if (state_[copy] == 1) return false;
    const auto [u, v] = copy_endpoints(copy);
    if (from == u) return !out_low_[copy];
    if (from == v) return !out_high_[copy];
    return false;
}

void MinDegState::maker_orient(int copy, int from) {
    if (!maker_can_orient(copy, from)) throw SubgameError("illegal orientation");
    const auto [u, v] = copy_endpoints(copy);
    state_[copy] = 2;
    if (from == u) out_low_[copy] = 1;
    else out_high_[copy] = 1;
    ++d_m_plus_[from];
}

std::vector<int> MinDegState::eligible_copies_at(int v) const {
    std::vector<int> out;
    const int side = side_of(v);
    for (int w = side * n_; w < (side + 1) * n_; ++w) {
        if (w == v) continue;
        for (int slot = 0; slot < mult_; ++slot) {
            const int c = copy_id(v, w, slot);
            if (maker_can_orient(c, v)) out.push_back(c);
        }
    }
    return out;
}

std::string MinDegState::to_json() const {
    nlohmann::json j;
    j["n_per_side"] = n_;
    j["mult"] = mult_;
    j["target"] = d_;
    j["bias"] = bias_;
    j["alpha"] = alpha_;
    j["d_b"] = d_b_;
    j["d_m_plus"] = d_m_plus_;
    return j.dump();
}

MinDegMove mindeg_plus_move(const MinDegState& state, Rng& rng) {
    int best = -1;
    for (int v = 0; v < state.num_vertices(); ++v) {
        if (!state.active(v)) continue;
        if (best < 0 || state.dang(v) > state.dang(best)) best = v;
    }
    if (best < 0) throw SubgameError("no active vertex");
    const auto eligible = state.eligible_copies_at(best);
    if (eligible.empty()) throw SubgameError("stuck");
    return {best, eligible[rng.below(eligible.size())]};
}

MinDegOpponent mindeg_opponent_random() {
    return [](const MinDegState& st, Rng& rng) {
        std::vector<int> free_ids;
        for (int c = 0; c < st.total_copies(); ++c)
            if (st.breaker_can_claim(c)) free_ids.push_back(c);
        std::vector<int> picks;
        for (int k = 0; k < st.bias() && !free_ids.empty(); ++k) {
            const auto i = rng.below(free_ids.size());
            picks.push_back(free_ids[i]);
            free_ids[i] = free_ids.back();
            free_ids.pop_back();
        }
        return picks;
    };
}

MinDegOpponent mindeg_opponent_max_degree_attack() {
    return [](const MinDegState& st, Rng&) {
        // pour everything into the active vertex with the highest Breaker degree
        std::vector<int> picks;
        std::vector<char> taken(static_cast<size_t>(st.total_copies()), 0);
        auto claimable = [&](int c) { return !taken[c] && st.breaker_can_claim(c); };
        for (int k = 0; k < st.bias(); ++k) {
            int target = -1;
            for (int v = 0; v < st.num_vertices(); ++v) {
                if (!st.active(v)) continue;
                if (target < 0 || st.d_b(v) > st.d_b(target)) target = v;
            }
            if (target < 0) break;
            int copy = -1;
            const int side = target < st.n_per_side() ? 0 : 1;
            const int base = side * st.n_per_side();
            for (int w = base; w < base + st.n_per_side() && copy < 0; ++w) {
                if (w == target) continue;
                for (int slot = 0; slot < st.mult(); ++slot) {
                    const int c = st.copy_id(target, w, slot);
                    if (claimable(c)) {
                        copy = c;
                        break;
                    }
                }
            }
            if (copy < 0) {  // target saturated: claim anywhere to keep the bias
                for (int c = 0; c < st.total_copies() && copy < 0; ++c)
                    if (claimable(c)) copy = c;
            }
            if (copy < 0) break;
            taken[copy] = 1;
            picks.push_back(copy);
        }
        return picks;
    };
}

MinDegPlayout play_mindeg_game(MinDegState state, const MinDegOpponent& opponent, Rng& rng) {
    MinDegPlayout result;
    while (true) {
        // Breaker first
        auto picks = opponent(state, rng);
        if (static_cast<int>(picks.size()) > state.bias())
            throw SubgameError("breaker bias exceeded");
        for (int c : picks) state.breaker_claim(c);
        if (auto v = state.losing_vertex()) {
            (void)v;
            result.lost_by_degree = true;
            return result;
        }
        if (state.maker_won()) {
            result.maker_won = true;
            return result;
        }
        try {
            const auto mv = mindeg_plus_move(state, rng);
            state.maker_orient(mv.copy, mv.vertex);
        } catch (const SubgameError& err) {
            if (std::string(err.what()) == "stuck") {
                result.stuck = true;
                return result;
            }
            throw;
        }
        if (auto v = state.losing_vertex()) {
            (void)v;
            result.lost_by_degree = true;
            return result;
        }
        if (state.maker_won()) {
            result.maker_won = true;
            return result;
        }
    }
}

}  // namespace rbg
