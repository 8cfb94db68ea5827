#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbg/board.hpp"

namespace rbg {

// A single player's claimed edges on an (n, s) layered board, set semantics.
class ColoredSubgraph {
  public:
    ColoredSubgraph(int n, int s) : n_(n), s_(s), adj_(static_cast<size_t>(n)) {}

    static ColoredSubgraph from_claims(const Board& b, ClaimState who) {
        ColoredSubgraph g(b.n(), b.s());
        for (const auto& e : b.edges_of(who)) g.add(e);
        return g;
    }

    int n() const { return n_; }
    int s() const { return s_; }
    size_t edge_count() const { return edges_.size(); }
    const std::vector<EdgeRef>& edges() const { return edges_; }

    bool add(const EdgeRef& e);  // false if already present
    bool contains(const EdgeRef& e) const;
    bool contains_pair(int u, int v, int layer) const { return contains(EdgeRef(layer, u, v)); }

    // neighbors of v as (w, layer) pairs, ascending (w, layer)
    const std::vector<std::pair<int, int>>& at(int v) const { return adj_[v]; }

    std::string to_json() const;
    static ColoredSubgraph from_json(const std::string& text);

  private:
    int n_;
    int s_;
    std::vector<EdgeRef> edges_;                       // sorted
    std::vector<std::vector<std::pair<int, int>>> adj_;  // per vertex: (neighbor, layer)
};

enum class WitnessKind { Path, Tree, Matching, Cycle };

// A rainbow structure: edges plus their (pairwise distinct) colors.
struct RainbowWitness {
    WitnessKind kind = WitnessKind::Path;
    std::vector<EdgeRef> edges;
    std::vector<int> colors;

    bool colors_distinct() const;
    // Structural self-check per the witness kind (incidence + distinct colors).
    bool valid(int n) const;
    std::string to_json() const;
};

struct RainbowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxColorsExact = 62;  // color sets tracked in a 64-bit mask

// Shortest rainbow v,w-path of length <= max_len, or nullopt.
// Deterministic: shortest length first, lexicographically smallest expansion.
std::optional<RainbowWitness> rainbow_path_exists(const ColoredSubgraph& g, int v, int w,
                                                  int max_len);

// Exact number of v,w-paths of length |seq| whose i-th edge has color seq[i]
// and whose vertices are pairwise distinct.
long long rainbow_path_with_sequence(const ColoredSubgraph& g, int v, int w,
                                     const std::vector<int>& seq);

struct ConnectivityReport {
    bool connected = false;
    // one witness per unordered pair {v,w}, keyed (v,w) with v < w; missing pairs failed
    std::map<std::pair<int, int>, RainbowWitness> witnesses;
    std::optional<std::pair<int, int>> failing_pair;
};

ConnectivityReport rainbow_connected(const ColoredSubgraph& g, int max_len);

// Color-blind diameter check via BFS from every vertex.
bool diameter_at_most(const ColoredSubgraph& g, int bound);

// Rainbow spanning tree via matroid intersection (graphic x partition matroid).
std::optional<RainbowWitness> has_rainbow_spanning_tree(const ColoredSubgraph& g);

struct PartitionCriterionResult {
    bool holds = false;
    std::vector<int> violating_partition;  // vertex -> block id when holds == false
};

// Partition criterion: every k-partition is crossed by >= k-1 distinct colors.
// Exhaustive over all set partitions; n <= 10.
PartitionCriterionResult partition_criterion_holds(const ColoredSubgraph& g);

std::optional<RainbowWitness> has_rainbow_perfect_matching(const ColoredSubgraph& g);
std::optional<RainbowWitness> has_rainbow_hamilton_cycle(const ColoredSubgraph& g);

}  // namespace rbg
