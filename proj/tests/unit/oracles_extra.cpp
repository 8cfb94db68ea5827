// Cross-checks that tie the independent oracles to each other, so a bug in
// one of them cannot silently validate the main implementation.

#include <doctest.h>

#include "rbg/lab.hpp"
#include "rbg/solver.hpp"

using namespace rbg;

TEST_CASE("tree oracle reduces to Cayley counts on complete rainbow boards") {
    // every pair present in all n-1 colors: every labeled tree is rainbow-colorable
    for (int n : {3, 4, 5}) {
        ColoredSubgraph g(n, n - 1);
        for (int c = 0; c < n - 1; ++c)
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) g.add(EdgeRef(c, u, v));
        CHECK(oracle_count_rainbow_spanning_trees(g) == oracle_count_labeled_trees(n));
    }
}

TEST_CASE("matching oracle on the complete two-colored K4") {
    ColoredSubgraph g(4, 2);
    for (int c = 0; c < 2; ++c)
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) g.add(EdgeRef(c, u, v));
    // 3 pairings x 2 color systems (colors distinct across the 2 edges)
    CHECK(oracle_count_rainbow_perfect_matchings(g) == 6);
}

TEST_CASE("path oracle linearity on a disjoint union") {
    // paths through separate middle vertices add up
    ColoredSubgraph g(6, 2);
    g.add(EdgeRef(0, 0, 2));
    g.add(EdgeRef(1, 2, 1));
    g.add(EdgeRef(0, 0, 3));
    g.add(EdgeRef(1, 3, 1));
    g.add(EdgeRef(0, 0, 4));
    g.add(EdgeRef(0, 4, 1));  // repeated color: not rainbow
    CHECK(oracle_count_rainbow_paths(g, 0, 1, 2) == 2);
}

TEST_CASE("distance oracle on a known geometry") {
    ColoredSubgraph g(5, 1);
    g.add(EdgeRef(0, 0, 1));
    g.add(EdgeRef(0, 1, 2));
    g.add(EdgeRef(0, 2, 3));
    const auto d = oracle_all_pairs_distances(g);
    CHECK(d[0][3] == 3);
    CHECK(d[0][4] > 4 * 5);  // unreachable sentinel
}
