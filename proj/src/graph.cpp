#include "qdecomp/graph.hpp"

#include "qdecomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace qdecomp {

WeightedGraph::WeightedGraph(int n) : WeightedGraph(n, {}) {}

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), adj_(n < 0 ? 0 : n) {
    if (n < 0) {
        throw InputError("vertex count must be non-negative");
    }
    for (auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw InputError("edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                             std::to_string(e.v) + ")");
        }
        if (e.u == e.v) {
            throw InputError("self-loop on vertex " + std::to_string(e.u));
        }
        if (!std::isfinite(e.w)) {
            throw InputError("non-finite edge weight");
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
            throw InputError("duplicate edge (" + std::to_string(edges[i].u) + ", " +
                             std::to_string(edges[i].v) + ")");
        }
    }
    edges_ = std::move(edges);
    for (const auto& e : edges_) {
        adj_[e.u].push_back({e.v, e.w});
        adj_[e.v].push_back({e.u, e.w});
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.v < b.v; });
    }
}

bool WeightedGraph::has_edge(Vertex a, Vertex b) const {
    const auto& list = adj_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& nb, Vertex x) { return nb.v < x; });
    return it != list.end() && it->v == b;
}

double WeightedGraph::weight(Vertex a, Vertex b) const {
    const auto& list = adj_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& nb, Vertex x) { return nb.v < x; });
    return (it != list.end() && it->v == b) ? it->w : 0.0;
}

bool WeightedGraph::is_complete() const {
    const auto nn = static_cast<std::size_t>(n_);
    return edges_.size() == nn * (nn - (nn > 0 ? 1 : 0)) / 2;
}

InducedGraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> subset) {
    std::vector<Vertex> verts(subset.begin(), subset.end());
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
        throw InputError("induced_subgraph: repeated vertex in subset");
    }
    std::vector<int> local(g.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] >= g.size()) {
            throw InputError("induced_subgraph: vertex " + std::to_string(verts[i]) +
                             " not in graph");
        }
        local[verts[i]] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (local[e.u] >= 0 && local[e.v] >= 0) {
            edges.push_back({local[e.u], local[e.v], e.w});
        }
    }
    return {WeightedGraph(static_cast<int>(verts.size()), std::move(edges)), std::move(verts)};
}

std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g,
                                                      std::span<const Vertex> removed) {
    std::vector<char> seen(g.size(), 0);
    for (Vertex v : removed) {
        if (v < 0 || v >= g.size()) {
            throw InputError("removed vertex out of range");
        }
        seen[v] = 1;
    }
    std::vector<std::vector<Vertex>> comps;
    std::queue<Vertex> frontier;
    for (Vertex start = 0; start < g.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        std::vector<Vertex> comp;
        seen[start] = 1;
        frontier.push(start);
        while (!frontier.empty()) {
            Vertex v = frontier.front();
            frontier.pop();
            comp.push_back(v);
            for (const auto& nb : g.neighbors(v)) {
                if (!seen[nb.v]) {
                    seen[nb.v] = 1;
                    frontier.push(nb.v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const WeightedGraph& g) {
    return g.size() <= 1 || connected_components(g).size() == 1;
}

CutPartition split_components(const WeightedGraph& g, std::span<const Vertex> K) {
    std::vector<Vertex> cut(K.begin(), K.end());
    std::sort(cut.begin(), cut.end());
    if (std::adjacent_find(cut.begin(), cut.end()) != cut.end()) {
        throw InputError("split_components: repeated vertex in cut set");
    }
    auto comps = connected_components(g, cut);
    if (comps.size() < 2) {
        throw NoCutError("removing the cut set leaves the graph connected");
    }
    // Components arrive ordered by smallest label, so the first minimum wins ties.
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
        if (comps[i].size() < comps[smallest].size()) {
            smallest = i;
        }
    }
    CutPartition part;
    part.K = std::move(cut);
    part.V2 = comps[smallest];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i != smallest) {
            part.V1.insert(part.V1.end(), comps[i].begin(), comps[i].end());
        }
    }
    std::sort(part.V1.begin(), part.V1.end());
    return part;
}

bool is_valid_partition(const WeightedGraph& g, const CutPartition& part) {
    std::vector<int> side(g.size(), -1);
    auto mark = [&](const std::vector<Vertex>& set, int label) {
        for (Vertex v : set) {
            if (v < 0 || v >= g.size() || side[v] != -1) {
                return false;
            }
            side[v] = label;
        }
        return true;
    };
    if (!mark(part.K, 0) || !mark(part.V1, 1) || !mark(part.V2, 2)) {
        return false;
    }
    if (std::find(side.begin(), side.end(), -1) != side.end()) {
        return false;
    }
    if (part.V1.empty() || part.V2.empty()) {
        return false;
    }
    for (const auto& e : g.edges()) {
        if ((side[e.u] == 1 && side[e.v] == 2) || (side[e.u] == 2 && side[e.v] == 1)) {
            return false;
        }
    }
    return true;
}

} // namespace qdecomp
