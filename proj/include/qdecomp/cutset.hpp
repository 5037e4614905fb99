#pragma once

#include "qdecomp/graph.hpp"

#include <string_view>

namespace qdecomp {

enum class CutStrategy {
    GlobalMin,             ///< minimum-cardinality vertex separator (max-flow)
    MinDegreeNeighborhood, ///< N(v) for a minimum-degree vertex v
};

std::string_view to_string(CutStrategy s);
CutStrategy parse_cut_strategy(std::string_view name);

/// Minimum number of vertices whose removal disconnects g. Edge weights are ignored.
/// Requires a connected, non-complete graph with at least 2 vertices.
int vertex_connectivity(const WeightedGraph& g);

/// Lexicographically smallest (on sorted K) minimum vertex separator, split per
/// split_components.
///
/// Connectivity comes from unit-capacity max-flow on the vertex-split digraph, probing only
/// the pairs of the Esfahanian-Hakimi reduction: a minimum-degree vertex u against each
/// non-neighbor, and non-adjacent pairs inside N(u). The smallest K is then built greedily:
/// a vertex is kept if the rest of the graph still has a separator of the remaining size.
///
/// Throws NoCutError for complete graphs, InputError for disconnected input or n < 2.
CutPartition min_vertex_cut(const WeightedGraph& g);

/// K = N(v), V2 = {v}. Throws NoCutError when N(v) plus v covers V.
CutPartition neighborhood_cut(const WeightedGraph& g, Vertex v);

/// Dispatch on strategy. MinDegreeNeighborhood uses the smallest-label minimum-degree vertex.
CutPartition choose_cut(const WeightedGraph& g, CutStrategy strategy);

} // namespace qdecomp
