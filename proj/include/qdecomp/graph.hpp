#pragma once

#include <span>
#include <utility>
#include <vector>

namespace qdecomp {

using Vertex = int;

/// Undirected weighted edge, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    double w = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    Vertex v = 0;
    double w = 0.0;
};

/// Simple undirected weighted graph on vertices 0..n-1.
///
/// Immutable after construction. Edges are normalized to u < v and kept sorted;
/// adjacency lists are sorted by neighbor label. Construction rejects self-loops,
/// duplicate pairs, out-of-range endpoints and non-finite weights.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n);
    WeightedGraph(int n, std::vector<Edge> edges);

    int size() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Neighbor> neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(Vertex a, Vertex b) const;
    /// Weight of edge {a, b}, or 0 when absent.
    double weight(Vertex a, Vertex b) const;
    bool is_complete() const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adj_;
};

/// Subgraph together with the map from its local labels back to the parent graph.
struct InducedGraph {
    WeightedGraph graph;
    std::vector<Vertex> to_parent;
};

/// Cut set K and the two sides left after removing it. All three are sorted.
struct CutPartition {
    std::vector<Vertex> K;
    std::vector<Vertex> V1;
    std::vector<Vertex> V2;

    friend bool operator==(const CutPartition&, const CutPartition&) = default;
};

/// G[S]. Local label i corresponds to the i-th smallest element of S.
InducedGraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> subset);

/// Components of the graph with `removed` deleted, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g,
                                                      std::span<const Vertex> removed = {});

bool is_connected(const WeightedGraph& g);

/// Splits V \ K into V2 (smallest component, ties to the smallest label) and V1 (the rest).
/// Throws NoCutError when fewer than two components remain.
CutPartition split_components(const WeightedGraph& g, std::span<const Vertex> K);

/// True when the sets partition V and no edge joins V1 and V2.
bool is_valid_partition(const WeightedGraph& g, const CutPartition& part);

} // namespace qdecomp
