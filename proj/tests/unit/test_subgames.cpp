#include <doctest.h>

#include <cmath>

#include "rbg/criteria.hpp"
#include "rbg/subgames.hpp"

using namespace rbg;

TEST_CASE("box greedy picks the smallest alive box") {
    auto st = BoxState::make({2, 5}, 1);
    CHECK(box_maker_move(st) == 0);

    st.boxes[0].opponent = 1;  // destroyed
    CHECK(box_maker_move(st) == 1);

    auto single = BoxState::make({1}, 1);
    CHECK(box_maker_move(single) == 0);
    single.boxes[0].maker = 1;
    CHECK(single.maker_won());
}

TEST_CASE("box criterion regime: greedy maker wins as second player") {
    // p = 2, 10 equal boxes of size 2 <= (p-1) ln 10 ~ 2.30
    CHECK(box_criterion(2, 10, 2));
    CHECK_FALSE(box_criterion(2, 10, 3));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        CHECK(play_box_game(std::vector<int>(10, 2), 2, box_opponent_random(), true, rng));
        Rng rng2(seed);
        CHECK(play_box_game(std::vector<int>(10, 2), 2, box_opponent_greedy_destroyer(), true,
                            rng2));
    }
}

TEST_CASE("minbox danger rule and tie break") {
    auto st = MinBoxState::make({10, 10}, 0.5, 2);
    st.boxes[0].w_b = 3;
    st.boxes[1].w_b = 1;
    CHECK(minbox_maker_move(st) == 0);  // dang 3 vs 1

    st.boxes[0].w_m = 1;  // dang 3 - 2 = 1
    st.boxes[1].w_b = 2;  // dang 2
    CHECK(minbox_maker_move(st) == 1);

    st.boxes[0].w_b = 4;  // dang 2 == dang 2: lowest index wins
    CHECK(minbox_maker_move(st) == 0);
}

TEST_CASE("minbox invariant formula") {
    auto st = MinBoxState::make(std::vector<int>(8, 30), 0.9, 1);
    CHECK(minbox_invariant_check(st));
    st.boxes[0].w_b = 4;  // 4 > 1*(0 + ln 8 + 1) ~ 3.08
    CHECK_FALSE(minbox_invariant_check(st));
    st.boxes[0].w_m = 1;  // 4 <= 1*(1 + 3.08)
    CHECK(minbox_invariant_check(st));
}

TEST_CASE("minbox strategy keeps the invariant and wins in the criterion regime") {
    // gamma < 1/(b+1) and D > b(ln n + 1)/(1 - gamma (b+1))
    const int b = 2;
    const double gamma = 0.3;
    const int n_boxes = 12;
    const int min_size =
        static_cast<int>(b * (std::log(n_boxes) + 1) / (1 - gamma * (b + 1))) + 2;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        const auto res = play_minbox_game(std::vector<int>(n_boxes, min_size), gamma, b,
                                          minbox_opponent_random(), rng);
        CHECK(res.invariant_violations == 0);
        CHECK(res.maker_won);
        Rng rng2(seed);
        const auto res2 = play_minbox_game(std::vector<int>(n_boxes, min_size), gamma, b,
                                           minbox_opponent_max_danger(), rng2);
        CHECK(res2.invariant_violations == 0);
        CHECK(res2.maker_won);
    }
}

TEST_CASE("sbg counters and round flow") {
    SbgState st(10, 2, 1, 2, 1.0, 5);
    SbgRoundInput round;
    round.growth = {{0, {0, 1, 2}}};
    int picks = 0;
    round.ghost_haunts = [&](const SbgState&, int) { return false; };
    round.breaker_claims = {1, 2};
    sbg_round(st, round);
    (void)picks;
    CHECK(st.c_f(0) == 3);   // one maker grant + two breaker claims, all inside edge 0
    CHECK(st.c_fm(0) == 1);
    CHECK(st.size_of(0) == 3);

    // haunted elements never count toward c_F
    SbgState st2(5, 1, 1, 1, 0.0, 5);
    st2.grow(0, {0, 1});
    st2.haunt(0);
    st2.breaker_claim(1);
    CHECK(st2.c_f(0) == 1);
    CHECK(st2.elem_state(0) == SbgElem::Haunted);

    // growth past M overflows
    SbgState st3(10, 1, 1, 1, 0.0, 2);
    st3.grow(0, {0, 1});
    CHECK_THROWS_AS(st3.grow(0, {2}), SubgameError);
}

TEST_CASE("sbg ghost may haunt the maker's pick, she re-picks") {
    SbgState st(4, 1, 1, 1, 0.0, 4);
    st.grow(0, {0, 1, 2, 3});
    SbgRoundInput round;
    int calls = 0;
    round.ghost_haunts = [&](const SbgState&, int) { return ++calls == 1; };
    sbg_round(st, round);
    CHECK(st.c_fm(0) == 1);
    CHECK(st.c_f(0) == 1);
    CHECK(st.size_of(0) == 4);
    int haunted = 0;
    for (int e = 0; e < 4; ++e)
        if (st.elem_state(e) == SbgElem::Haunted) ++haunted;
    CHECK(haunted == 1);
}

TEST_CASE("sbg greedy deficit rule") {
    SbgState st(10, 2, 1, 3, 10.0, 10);
    st.grow(0, {0, 1, 2, 3});
    st.grow(1, {4, 5});
    // push deficits apart: edge 0 has 2 breaker claims, edge 1 has 1
    st.breaker_claim(0);
    st.breaker_claim(1);
    st.breaker_claim(4);
    CHECK(st.deficit(0) > st.deficit(1));
    const int pick = sbg_maker_move(st);
    CHECK((pick == 2 || pick == 3));  // a free element of hyperedge 0
}

TEST_CASE("sbg goal formula") {
    SbgState st(20, 1, 1, 3, 2.0, 20);
    std::vector<int> first8, next5;
    for (int i = 0; i < 8; ++i) first8.push_back(i);
    st.grow(0, first8);
    for (int i = 0; i < 8; ++i) st.breaker_claim(i);
    // c_F = 8, c_FM = 0: 0 >= 8/4 - 2 = 0 holds
    CHECK(sbg_goal_holds(st));
    for (int i = 8; i < 13; ++i) next5.push_back(i);
    st.grow(0, next5);
    for (int i = 8; i < 13; ++i) st.breaker_claim(i);
    // c_F = 13, c_FM = 0 < 13/4 - 2 = 1.25 fails
    CHECK_FALSE(sbg_goal_holds(st));

    SbgState fresh(3, 2, 1, 3, 2.0, 3);
    CHECK(sbg_goal_holds(fresh));
}

TEST_CASE("sbg criterion conditions") {
    CHECK(sbg_conditions(1, 3, 10, 83, 26.0).first);
    CHECK_FALSE(sbg_conditions(1, 3, 10, 82, 26.0).first);
    CHECK(sbg_conditions(1, 3, 10, 83, 26.0).second);
    CHECK_FALSE(sbg_conditions(1, 3, 10, 83, 25.0).second);
}

TEST_CASE("sbg playouts in the criterion regime keep the goal") {
    // m=1, b=3, h=4 growable sets, M chosen to satisfy (1), l to satisfy (2)
    const int m = 1, b = 3, h = 4;
    const int M = static_cast<int>(std::ceil(9.0 * (m + b) * std::log(h))) + 1;
    const double ell = 5.0 * m * b / (m + b) * std::sqrt(M * std::log(h) / (m + b)) + 1;
    REQUIRE(sbg_conditions(m, b, h, M, ell) == std::pair<bool, bool>{true, true});

    int violating_playouts = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        SbgState st(400, h, m, b, ell, M);
        bool violated = false;
        for (int round = 0; round < 40; ++round) {
            SbgRoundInput input;
            // ghost grows a random hyperedge by a couple of free elements
            const int target = static_cast<int>(rng.below(h));
            std::vector<int> adds;
            for (int e = 0; e < 400 && static_cast<int>(adds.size()) < 2; ++e) {
                if (st.elem_state(e) != SbgElem::Free) continue;
                bool member = false;
                for (int x : st.members(target))
                    if (x == e) member = true;
                if (!member && rng.coin(0.05)) adds.push_back(e);
            }
            if (st.size_of(target) + static_cast<int>(adds.size()) <= M)
                input.growth = {{target, adds}};
            input.ghost_haunts = [&](const SbgState&, int) { return rng.coin(0.2); };
            sbg_round(st, input);  // growth plus Maker's pick loop
            // breaker then claims b free elements, preferring hyperedge members
            for (int k = 0; k < b; ++k) {
                int pick = -1;
                for (int f = 0; f < h && pick < 0; ++f)
                    for (int x : st.members(f))
                        if (st.elem_state(x) == SbgElem::Free) {
                            pick = x;
                            break;
                        }
                if (pick < 0) break;
                st.breaker_claim(pick);
            }
            if (!sbg_goal_holds(st)) violated = true;
        }
        if (violated) ++violating_playouts;
    }
    // criterion-satisfying parameters: the greedy stand-in should essentially
    // always keep the goal; violations are recorded, not asserted impossible
    CHECK(violating_playouts <= 2);
}

TEST_CASE("mindeg danger bookkeeping") {
    MinDegState st(4, 2, 2, 2, 0.25);
    CHECK(st.total_copies() == 2 * 6 * 2);
    const int c01 = st.copy_id(0, 1, 0);
    st.breaker_claim(c01);
    CHECK(st.d_b(0) == 1);
    CHECK(st.d_b(1) == 1);
    CHECK(st.dang(0) == 1.0);

    const int c02 = st.copy_id(0, 2, 0);
    st.maker_orient(c02, 0);
    CHECK(st.d_m_plus(0) == 1);
    CHECK(st.dang(0) == 1.0 - 4.0);

    // claiming the same copy again flips the other direction only
    CHECK_FALSE(st.maker_can_orient(c02, 0));
    CHECK(st.maker_can_orient(c02, 2));
    st.maker_orient(c02, 2);
    CHECK(st.d_m_plus(2) == 1);

    // breaker cannot take a maker copy
    CHECK_FALSE(st.breaker_can_claim(c02));
}

TEST_CASE("mindeg argmax and stuck signal") {
    MinDegState st(3, 1, 1, 1, 0.5);
    Rng rng(1);
    // dangers: vertex 0 gets hammered
    st.breaker_claim(st.copy_id(0, 1, 0));
    const auto mv = mindeg_plus_move(st, rng);
    CHECK((mv.vertex == 0 || mv.vertex == 1));  // both touched, tie at dang=1 goes to 0
    CHECK(mv.vertex == 0);

    // saturate all edges at vertex 0 with breaker claims: stuck
    MinDegState st2(3, 1, 1, 1, 0.9);
    st2.breaker_claim(st2.copy_id(0, 1, 0));
    st2.breaker_claim(st2.copy_id(0, 2, 0));
    Rng rng2(2);
    CHECK_THROWS_WITH_AS(mindeg_plus_move(st2, rng2), "stuck", SubgameError);
}

TEST_CASE("mindeg lemma regime: S+ wins against both opponents") {
    // b = 0.5 s'n / ln n, d = eps s'n / b
    for (const int n : {24, 48}) {
        for (const int mult : {1, 2}) {
            const int b = std::max(1, static_cast<int>(0.5 * mult * n / std::log(n)));
            const double eps = 0.2;
            const int d = std::max(1, static_cast<int>(eps * mult * n / b));
            for (std::uint64_t seed = 0; seed < 8; ++seed) {
                Rng rng(seed);
                const auto res = play_mindeg_game(MinDegState(n, mult, d, b, eps),
                                                  mindeg_opponent_random(), rng);
                CHECK(res.maker_won);
                Rng rng2(seed);
                const auto res2 = play_mindeg_game(MinDegState(n, mult, d, b, eps),
                                                   mindeg_opponent_max_degree_attack(), rng2);
                CHECK(res2.maker_won);
            }
        }
    }
}

TEST_CASE("subgame states serialize") {
    auto box = BoxState::make({2, 3}, 1);
    CHECK(box.to_json().find("boxes") != std::string::npos);
    auto minbox = MinBoxState::make({4}, 0.5, 1);
    CHECK(minbox.to_json().find("gamma") != std::string::npos);
    SbgState sbg(4, 1, 1, 1, 0.5, 4);
    CHECK(sbg.to_json().find("hyperedges") != std::string::npos);
    MinDegState md(3, 1, 1, 1, 0.5);
    CHECK(md.to_json().find("d_m_plus") != std::string::npos);
}

TEST_CASE("mindeg orientation sum matches maker claims") {
    MinDegState st(6, 2, 2, 2, 0.3);
    Rng rng(5);
    int claims = 0;
    for (int round = 0; round < 12; ++round) {
        // breaker: 2 random claims
        for (int k = 0; k < 2; ++k) {
            std::vector<int> free_ids;
            for (int c = 0; c < st.total_copies(); ++c)
                if (st.breaker_can_claim(c)) free_ids.push_back(c);
            if (free_ids.empty()) break;
            st.breaker_claim(free_ids[rng.below(free_ids.size())]);
        }
        if (st.maker_won()) break;
        const int v_before_claims = claims;
        (void)v_before_claims;
        try {
            const auto mv = mindeg_plus_move(st, rng);
            const int dang_before = static_cast<int>(st.dang(mv.vertex));
            st.maker_orient(mv.copy, mv.vertex);
            ++claims;
            CHECK(st.dang(mv.vertex) == dang_before - 2 * st.bias());
        } catch (const SubgameError&) {
            break;
        }
        long long total_out = 0;
        for (int v = 0; v < st.num_vertices(); ++v) total_out += st.d_m_plus(v);
        CHECK(total_out == claims);
    }
}
