#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lattice_walks/errors.hpp"

namespace lattice_walks {

// Finite simple undirected graph.  Vertices are 0-based internally; all file
// formats and CLI flags use 1-based labels.  Immutable after construction.
class Graph {
public:
    Graph() = default;

    // `edge_list` is 0-based here; duplicates collapse, self-loops reject.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edge_list) {
        if (n < 1) throw input_error("graph needs at least one vertex");
        std::set<std::pair<int, int>> canon;
        for (auto [a, b] : edge_list) {
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw input_error("edge endpoint out of range");
            if (a == b) throw input_error("self-loops are not allowed");
            canon.insert(std::minmax(a, b));
        }
        Graph g;
        g.n_ = n;
        g.edges_.assign(canon.begin(), canon.end());
        g.adj_.assign(static_cast<std::size_t>(n) * n, 0);
        g.neighbors_.assign(n, {});
        for (auto [a, b] : g.edges_) {
            g.adj_[static_cast<std::size_t>(a) * n + b] = 1;
            g.adj_[static_cast<std::size_t>(b) * n + a] = 1;
            g.neighbors_[a].push_back(b);
            g.neighbors_[b].push_back(a);
        }
        for (auto& nb : g.neighbors_) std::sort(nb.begin(), nb.end());
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
    bool adjacent(int a, int b) const { return adj_[static_cast<std::size_t>(a) * n_ + b] != 0; }
    int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }

    int min_degree() const {
        int m = n_ > 0 ? degree(0) : 0;
        for (int v = 1; v < n_; ++v) m = std::min(m, degree(v));
        return m;
    }
    int max_degree() const {
        int m = 0;
        for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
        return m;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;   // canonical, i < j, sorted
    std::vector<std::uint8_t> adj_;            // n x n, symmetric, zero diagonal
    std::vector<std::vector<int>> neighbors_;
};

// build_graph with 1-based labels, matching the external file format.
inline Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges_1based) {
    std::vector<std::pair<int, int>> zero;
    zero.reserve(edges_1based.size());
    for (auto [a, b] : edges_1based) zero.emplace_back(a - 1, b - 1);
    return Graph::from_edges(n, zero);
}

enum class GraphFamily { Complete, Star, Cycle, Path, Edgeless };

// Standard constructions.  The star's central vertex is vertex 1 (external
// label), i.e. index 0.
inline Graph named_graph(GraphFamily family, int size) {
    std::vector<std::pair<int, int>> e;
    switch (family) {
    case GraphFamily::Complete:
        if (size < 1) throw input_error("complete graph needs n >= 1");
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j) e.emplace_back(i, j);
        return Graph::from_edges(size, e);
    case GraphFamily::Star:
        if (size < 1) throw input_error("star K_{1,m} needs m >= 1");
        for (int leaf = 1; leaf <= size; ++leaf) e.emplace_back(0, leaf);
        return Graph::from_edges(size + 1, e);
    case GraphFamily::Cycle:
        if (size < 3) throw input_error("cycle needs n >= 3");
        for (int i = 0; i < size; ++i) e.emplace_back(i, (i + 1) % size);
        return Graph::from_edges(size, e);
    case GraphFamily::Path:
        if (size < 1) throw input_error("path needs n >= 1");
        for (int i = 0; i + 1 < size; ++i) e.emplace_back(i, i + 1);
        return Graph::from_edges(size, e);
    case GraphFamily::Edgeless:
        if (size < 1) throw input_error("edgeless graph needs n >= 1");
        return Graph::from_edges(size, {});
    }
    throw input_error("unknown graph family");
}

struct GraphComponent {
    Graph graph;
    std::vector<int> vertex_map;   // component index -> original index
};

inline std::vector<GraphComponent> connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> label(n, -1);
    int comp_count = 0;
    for (int s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::vector<int> stack{s};
        label[s] = comp_count;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v))
                if (label[w] < 0) {
                    label[w] = comp_count;
                    stack.push_back(w);
                }
        }
        ++comp_count;
    }
    std::vector<GraphComponent> out(comp_count);
    std::vector<std::vector<int>> members(comp_count);
    for (int v = 0; v < n; ++v) members[label[v]].push_back(v);
    for (int c = 0; c < comp_count; ++c) {
        std::vector<int> inv(n, -1);
        for (int k = 0; k < static_cast<int>(members[c].size()); ++k) inv[members[c][k]] = k;
        std::vector<std::pair<int, int>> ce;
        for (auto [a, b] : g.edges())
            if (label[a] == c) ce.emplace_back(inv[a], inv[b]);
        out[c].graph = Graph::from_edges(static_cast<int>(members[c].size()), ce);
        out[c].vertex_map = members[c];
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    return connected_components(g).size() == 1;
}

namespace detail {

// Branch-and-bound maximum independent set on a <=64-vertex mask.  Every
// path through the recursion carries an independent partial set of `size`
// vertices; the popcount bound prunes branches that cannot beat `best`.
inline void mis_recurse(const std::vector<std::uint64_t>& closed_nb, std::uint64_t candidates,
                        int size, int& best) {
    if (size > best) best = size;
    while (candidates != 0) {
        if (size + __builtin_popcountll(candidates) <= best) return;
        // Branch on the candidate with the most candidate-neighbours; its
        // inclusion prunes the most.
        int pick = -1, pick_deg = -1;
        for (std::uint64_t m = candidates; m != 0; m &= m - 1) {
            int v = __builtin_ctzll(m);
            int d = __builtin_popcountll(closed_nb[v] & candidates) - 1;
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        mis_recurse(closed_nb, candidates & ~closed_nb[pick], size + 1, best);
        candidates &= ~(std::uint64_t{1} << pick);
        // loop continues as the exclude-branch
    }
}

} // namespace detail

// Exact independence number.  Hard-capped: no approximation is ever
// substituted silently.
inline int independence_number(const Graph& g, int exact_cap = 40) {
    const int n = g.vertex_count();
    if (n > exact_cap || n > 64)
        throw capability_error("independence_number: graph exceeds the exact-search cap");
    std::vector<std::uint64_t> closed(n, 0);
    for (int v = 0; v < n; ++v) {
        closed[v] = std::uint64_t{1} << v;
        for (int w : g.neighbors(v)) closed[v] |= std::uint64_t{1} << w;
    }
    // Greedy seed (smallest degree first) gives the initial bound.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) < g.degree(b); });
    std::uint64_t blocked = 0;
    int greedy = 0;
    for (int v : order)
        if (!((blocked >> v) & 1)) {
            blocked |= closed[v];
            ++greedy;
        }
    int best = greedy;
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    detail::mis_recurse(closed, all, 0, best);
    return best;
}

} // namespace lattice_walks
