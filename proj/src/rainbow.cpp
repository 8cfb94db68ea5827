#include "rbg/rainbow.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <set>

#include <json.hpp>

namespace rbg {

bool ColoredSubgraph::add(const EdgeRef& e) {
    if (e.u < 0 || e.v >= n_ || e.u == e.v || e.layer < 0 || e.layer >= s_)
        throw RainbowError("edge out of range");
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return false;
    edges_.insert(it, e);
    adj_[e.u].insert(std::lower_bound(adj_[e.u].begin(), adj_[e.u].end(),
                                      std::make_pair(e.v, e.layer)),
                     {e.v, e.layer});
    adj_[e.v].insert(std::lower_bound(adj_[e.v].begin(), adj_[e.v].end(),
                                      std::make_pair(e.u, e.layer)),
                     {e.u, e.layer});
    return true;
}

bool ColoredSubgraph::contains(const EdgeRef& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::string ColoredSubgraph::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["s"] = s_;
    auto arr = nlohmann::json::array();
    for (const auto& e : edges_) arr.push_back({e.layer, e.u, e.v});
    j["edges"] = arr;
    return j.dump();
}

ColoredSubgraph ColoredSubgraph::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ColoredSubgraph g(j.at("n").get<int>(), j.at("s").get<int>());
    for (const auto& e : j.at("edges")) g.add(EdgeRef(e[0].get<int>(), e[1].get<int>(), e[2].get<int>()));
    return g;
}

bool RainbowWitness::colors_distinct() const {
    std::set<int> seen(colors.begin(), colors.end());
    return seen.size() == colors.size();
}

bool RainbowWitness::valid(int n) const {
    if (edges.size() != colors.size()) return false;
    if (!colors_distinct()) return false;
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].layer != colors[i]) return false;
    switch (kind) {
        case WitnessKind::Path: {
            // consecutive edges share exactly one endpoint, no repeated vertex
            if (edges.empty()) return true;
            std::set<int> seen;
            // reconstruct the vertex sequence
            if (edges.size() == 1) return edges[0].u != edges[0].v;
            int prev;
            {
                const auto& a = edges[0];
                const auto& b = edges[1];
                if (a.u == b.u || a.u == b.v) prev = a.v;
                else if (a.v == b.u || a.v == b.v) prev = a.u;
                else return false;
            }
            seen.insert(prev);
            for (const auto& e : edges) {
                int next;
                if (e.u == prev) next = e.v;
                else if (e.v == prev) next = e.u;
                else return false;
                if (!seen.insert(next).second) return false;
                prev = next;
            }
            return true;
        }
        case WitnessKind::Matching: {
            std::set<int> seen;
            for (const auto& e : edges)
                if (!seen.insert(e.u).second || !seen.insert(e.v).second) return false;
            return true;
        }
        case WitnessKind::Tree: {
            // connected and acyclic over the touched vertices
            std::vector<int> parent(n);
            for (int i = 0; i < n; ++i) parent[i] = i;
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            for (const auto& e : edges) {
                int a = find(e.u), b = find(e.v);
                if (a == b) return false;
                parent[a] = b;
            }
            return true;
        }
        case WitnessKind::Cycle: {
            std::vector<int> deg(n, 0);
            for (const auto& e : edges) {
                ++deg[e.u];
                ++deg[e.v];
            }
            for (const auto& e : edges)
                if (deg[e.u] != 2 || deg[e.v] != 2) return false;
            return !edges.empty();
        }
    }
    return false;
}

std::string RainbowWitness::to_json() const {
    nlohmann::json j;
    const char* names[] = {"path", "tree", "matching", "cycle"};
    j["kind"] = names[static_cast<int>(kind)];
    auto arr = nlohmann::json::array();
    for (const auto& e : edges) arr.push_back({e.layer, e.u, e.v});
    j["edges"] = arr;
    j["colors"] = colors;
    return j.dump();
}

namespace {

struct PathSearch {
    const ColoredSubgraph& g;
    int target;
    std::vector<char> on_path;
    std::vector<EdgeRef> stack;

    PathSearch(const ColoredSubgraph& graph, int w)
        : g(graph), target(w), on_path(static_cast<size_t>(graph.n()), 0) {}

    bool dfs(int at, std::uint64_t mask, int remaining) {
        if (at == target) return true;
        if (remaining == 0) return false;
        for (const auto& [w, c] : g.at(at)) {
            if (on_path[w] || (mask >> c) & 1) continue;
            if (w == target && remaining < 1) continue;
            on_path[w] = 1;
            stack.emplace_back(c, at, w);
            if (dfs(w, mask | (1ULL << c), remaining - 1)) return true;
            stack.pop_back();
            on_path[w] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<RainbowWitness> rainbow_path_exists(const ColoredSubgraph& g, int v, int w,
                                                  int max_len) {
    if (g.s() > kMaxColorsExact)
        throw RainbowError("bound-too-large: exact rainbow search capped at 62 colors");
    if (v == w) return RainbowWitness{WitnessKind::Path, {}, {}};
    const int cap = std::min({max_len, g.n() - 1, g.s()});
    for (int len = 1; len <= cap; ++len) {
        PathSearch search(g, w);
        search.on_path[v] = 1;
        if (search.dfs(v, 0, len)) {
            RainbowWitness out;
            out.kind = WitnessKind::Path;
            out.edges = search.stack;
            for (const auto& e : out.edges) out.colors.push_back(e.layer);
            return out;
        }
    }
    return std::nullopt;
}

namespace {

long long count_sequence_paths_dfs(const ColoredSubgraph& g, int at, int w,
                                   const std::vector<int>& seq, size_t depth,
                                   std::vector<char>& used) {
    if (depth == seq.size()) return at == w ? 1 : 0;
    long long total = 0;
    const int want = seq[depth];
    for (const auto& [next, c] : g.at(at)) {
        if (c != want || used[next]) continue;
        // the final vertex must be w, inner vertices must avoid w
        if (depth + 1 < seq.size() && next == w) continue;
        if (depth + 1 == seq.size() && next != w) continue;
        used[next] = 1;
        total += count_sequence_paths_dfs(g, next, w, seq, depth + 1, used);
        used[next] = 0;
    }
    return total;
}

}  // namespace

long long rainbow_path_with_sequence(const ColoredSubgraph& g, int v, int w,
                                     const std::vector<int>& seq) {
    if (seq.empty()) return v == w ? 1 : 0;
    if (static_cast<int>(seq.size()) > g.n() - 1) return 0;  // simple paths only
    std::vector<char> used(static_cast<size_t>(g.n()), 0);
    used[v] = 1;
    return count_sequence_paths_dfs(g, v, w, seq, 0, used);
}

ConnectivityReport rainbow_connected(const ColoredSubgraph& g, int max_len) {
    ConnectivityReport rep;
    rep.connected = true;
    for (int v = 0; v < g.n() && rep.connected; ++v) {
        for (int w = v + 1; w < g.n(); ++w) {
            auto path = rainbow_path_exists(g, v, w, max_len);
            if (!path) {
                rep.connected = false;
                rep.failing_pair = {v, w};
                break;
            }
            rep.witnesses.emplace(std::make_pair(v, w), std::move(*path));
        }
    }
    return rep;
}

bool diameter_at_most(const ColoredSubgraph& g, int bound) {
    const int n = g.n();
    std::vector<int> dist(static_cast<size_t>(n));
    std::vector<int> queue(static_cast<size_t>(n));
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[src] = 0;
        int head = 0, tail = 0;
        queue[tail++] = src;
        int reached = 1;
        while (head < tail) {
            const int v = queue[head++];
            if (dist[v] >= bound) continue;
            for (const auto& [w, c] : g.at(v)) {
                (void)c;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue[tail++] = w;
                    ++reached;
                }
            }
        }
        if (reached < n) return false;
        for (int v = 0; v < n; ++v)
            if (dist[v] > bound) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Rainbow spanning tree: matroid intersection between the graphic matroid and
// the color partition matroid, shortest augmenting paths in the exchange graph.
// ---------------------------------------------------------------------------

namespace {

struct ForestIndex {
    int n;
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (vertex, edge id)

    explicit ForestIndex(int n_) : n(n_), adj(static_cast<size_t>(n_)) {}

    void rebuild(const std::vector<EdgeRef>& edges, const std::vector<char>& in_set) {
        for (auto& a : adj) a.clear();
        for (size_t i = 0; i < edges.size(); ++i) {
            if (!in_set[i]) continue;
            adj[edges[i].u].push_back({edges[i].v, static_cast<int>(i)});
            adj[edges[i].v].push_back({edges[i].u, static_cast<int>(i)});
        }
    }

    // edge ids on the unique forest path between a and b; empty if disconnected
    std::vector<int> path_edges(int a, int b) const {
        std::vector<int> par_edge(static_cast<size_t>(n), -1);
        std::vector<int> par_vertex(static_cast<size_t>(n), -1);
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::queue<int> q;
        q.push(a);
        seen[a] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (v == b) break;
            for (const auto& [w, id] : adj[v]) {
                if (seen[w]) continue;
                seen[w] = 1;
                par_edge[w] = id;
                par_vertex[w] = v;
                q.push(w);
            }
        }
        if (!seen[b]) return {};
        std::vector<int> out;
        for (int v = b; v != a; v = par_vertex[v]) out.push_back(par_edge[v]);
        return out;
    }

    bool connected(int a, int b) const { return !path_edges(a, b).empty() || a == b; }
};

}  // namespace

std::optional<RainbowWitness> has_rainbow_spanning_tree(const ColoredSubgraph& g) {
    const auto& edges = g.edges();
    const int m = static_cast<int>(edges.size());
    const int n = g.n();
    if (m < n - 1) return std::nullopt;

    std::vector<char> in_set(static_cast<size_t>(m), 0);
    std::vector<int> color_owner(static_cast<size_t>(g.s()), -1);  // color -> edge id in set
    ForestIndex forest(n);
    int size = 0;

    while (size < n - 1) {
        forest.rebuild(edges, in_set);
        // BFS over the exchange graph from M1-independent additions toward
        // color-free additions; parent pointers recover the augmenting path.
        std::vector<int> parent(static_cast<size_t>(m), -2);  // -2 unvisited, -1 root
        std::queue<int> q;
        int goal = -1;
        for (int y = 0; y < m && goal < 0; ++y) {
            if (in_set[y]) continue;
            if (forest.connected(edges[y].u, edges[y].v)) continue;  // would close a cycle
            parent[y] = -1;
            if (color_owner[edges[y].layer] < 0) goal = y;  // free color: augment directly
            else q.push(y);
        }
        while (goal < 0 && !q.empty()) {
            const int y = q.front();
            q.pop();
            // y is outside the set: the only M2 exchange removes the edge holding y's color
            const int x = color_owner[edges[y].layer];
            if (x < 0 || parent[x] != -2) continue;
            parent[x] = y;
            // from x (inside) we may add any z whose fundamental cycle contains x
            for (int z = 0; z < m && goal < 0; ++z) {
                if (in_set[z] || parent[z] != -2) continue;
                const auto cycle = forest.path_edges(edges[z].u, edges[z].v);
                if (cycle.empty()) continue;  // z itself is M1-independent, already a root
                if (std::find(cycle.begin(), cycle.end(), x) == cycle.end()) continue;
                parent[z] = x;
                if (color_owner[edges[z].layer] < 0) goal = z;
                else q.push(z);
            }
        }
        if (goal < 0) return std::nullopt;  // maximum common independent set reached
        // flip along the path: add elements outside the set, drop those inside
        for (int cur = goal; cur != -1; cur = parent[cur]) in_set[cur] ^= 1;
        ++size;
        color_owner.assign(static_cast<size_t>(g.s()), -1);
        for (int i = 0; i < m; ++i)
            if (in_set[i]) color_owner[edges[i].layer] = i;
    }

    RainbowWitness out;
    out.kind = WitnessKind::Tree;
    for (int i = 0; i < m; ++i) {
        if (!in_set[i]) continue;
        out.edges.push_back(edges[i]);
        out.colors.push_back(edges[i].layer);
    }
    return out;
}

PartitionCriterionResult partition_criterion_holds(const ColoredSubgraph& g) {
    const int n = g.n();
    if (n > 10) throw RainbowError("too-large: partition enumeration capped at n = 10");
    PartitionCriterionResult res;
    // restricted growth strings enumerate every set partition exactly once
    std::vector<int> a(static_cast<size_t>(n), 0);
    std::vector<char> color_seen(static_cast<size_t>(g.s()), 0);
    while (true) {
        int k = 0;
        for (int v = 0; v < n; ++v) k = std::max(k, a[v] + 1);
        if (k >= 2) {
            std::fill(color_seen.begin(), color_seen.end(), 0);
            int crossing = 0;
            for (const auto& e : g.edges()) {
                if (a[e.u] == a[e.v] || color_seen[e.layer]) continue;
                color_seen[e.layer] = 1;
                ++crossing;
            }
            if (crossing < k - 1) {
                res.holds = false;
                res.violating_partition = a;
                return res;
            }
        }
        // next restricted growth string
        int i = n - 1;
        while (i > 0) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
            if (a[i] <= prefix_max) break;
            --i;
        }
        if (i == 0) break;
        ++a[i];
        for (int j = i + 1; j < n; ++j) a[j] = 0;
    }
    res.holds = true;
    return res;
}

namespace {

bool matching_dfs(const ColoredSubgraph& g, std::vector<char>& matched,
                  std::vector<char>& color_used, RainbowWitness& acc, int pairs_left) {
    if (pairs_left == 0) return true;
    int u = 0;
    while (matched[u]) ++u;
    matched[u] = 1;
    for (const auto& [w, c] : g.at(u)) {
        if (matched[w] || color_used[c]) continue;
        matched[w] = 1;
        color_used[c] = 1;
        acc.edges.emplace_back(c, u, w);
        acc.colors.push_back(c);
        if (matching_dfs(g, matched, color_used, acc, pairs_left - 1)) return true;
        acc.edges.pop_back();
        acc.colors.pop_back();
        color_used[c] = 0;
        matched[w] = 0;
    }
    matched[u] = 0;
    return false;
}

bool hamilton_dfs(const ColoredSubgraph& g, int at, std::vector<char>& visited,
                  std::vector<char>& color_used, RainbowWitness& acc, int remaining) {
    if (remaining == 0) {
        for (const auto& [w, c] : g.at(at)) {
            if (w != 0 || color_used[c]) continue;
            acc.edges.emplace_back(c, at, 0);
            acc.colors.push_back(c);
            return true;
        }
        return false;
    }
    for (const auto& [w, c] : g.at(at)) {
        if (visited[w] || color_used[c]) continue;
        visited[w] = 1;
        color_used[c] = 1;
        acc.edges.emplace_back(c, at, w);
        acc.colors.push_back(c);
        if (hamilton_dfs(g, w, visited, color_used, acc, remaining - 1)) return true;
        acc.edges.pop_back();
        acc.colors.pop_back();
        color_used[c] = 0;
        visited[w] = 0;
    }
    return false;
}

}  // namespace

std::optional<RainbowWitness> has_rainbow_perfect_matching(const ColoredSubgraph& g) {
    if (g.n() > 12) throw RainbowError("too-large: matching search capped at n = 12");
    if (g.n() % 2 != 0) return std::nullopt;
    std::vector<char> matched(static_cast<size_t>(g.n()), 0);
    std::vector<char> color_used(static_cast<size_t>(g.s()), 0);
    RainbowWitness acc;
    acc.kind = WitnessKind::Matching;
    if (matching_dfs(g, matched, color_used, acc, g.n() / 2)) return acc;
    return std::nullopt;
}

std::optional<RainbowWitness> has_rainbow_hamilton_cycle(const ColoredSubgraph& g) {
    if (g.n() > 12) throw RainbowError("too-large: hamilton search capped at n = 12");
    if (g.n() < 3) return std::nullopt;
    std::vector<char> visited(static_cast<size_t>(g.n()), 0);
    std::vector<char> color_used(static_cast<size_t>(g.s()), 0);
    RainbowWitness acc;
    acc.kind = WitnessKind::Cycle;
    visited[0] = 1;
    if (hamilton_dfs(g, 0, visited, color_used, acc, g.n() - 1)) return acc;
    return std::nullopt;
}

}  // namespace rbg
