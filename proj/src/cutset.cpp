#include "qdecomp/cutset.hpp"

#include "qdecomp/error.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace qdecomp {

namespace {

/// Unit vertex-capacity flow network: vertex v becomes in(v) = 2v -> out(v) = 2v + 1 with
/// capacity 1, every undirected edge {a, b} becomes out(a) -> in(b) and out(b) -> in(a) with
/// unbounded capacity. Vertices flagged in `removed` are left out entirely.
class SplitNetwork {
public:
    SplitNetwork(const WeightedGraph& g, const std::vector<char>& removed)
        : heads_(2 * static_cast<std::size_t>(g.size())) {
        const int inf = g.size() + 1;
        for (Vertex v = 0; v < g.size(); ++v) {
            if (!removed[v]) {
                add_arc(2 * v, 2 * v + 1, 1);
            }
        }
        for (const auto& e : g.edges()) {
            if (removed[e.u] || removed[e.v]) {
                continue;
            }
            add_arc(2 * e.u + 1, 2 * e.v, inf);
            add_arc(2 * e.v + 1, 2 * e.u, inf);
        }
    }

    /// Number of internally vertex-disjoint s-t paths, counting stops once `limit` is reached.
    int max_flow(Vertex s, Vertex t, int limit) {
        for (auto& a : arcs_) {
            a.cap = a.base;
        }
        const int source = 2 * s + 1;
        const int sink = 2 * t;
        int flow = 0;
        std::vector<int> parent_arc(heads_.size());
        while (flow < limit) {
            std::fill(parent_arc.begin(), parent_arc.end(), -1);
            std::queue<int> frontier;
            frontier.push(source);
            parent_arc[source] = -2;
            while (!frontier.empty() && parent_arc[sink] == -1) {
                int x = frontier.front();
                frontier.pop();
                for (int id : heads_[x]) {
                    const auto& a = arcs_[id];
                    if (a.cap > 0 && parent_arc[a.to] == -1) {
                        parent_arc[a.to] = id;
                        frontier.push(a.to);
                    }
                }
            }
            if (parent_arc[sink] == -1) {
                break;
            }
            for (int x = sink; x != source;) {
                int id = parent_arc[x];
                arcs_[id].cap -= 1;
                arcs_[id ^ 1].cap += 1;
                x = arcs_[id ^ 1].to;
            }
            ++flow;
        }
        return flow;
    }

private:
    struct Arc {
        int to;
        int cap;
        int base;
    };

    void add_arc(int from, int to, int cap) {
        heads_[from].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, cap, cap});
        heads_[to].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, 0, 0});
    }

    std::vector<std::vector<int>> heads_;
    std::vector<Arc> arcs_;
};

struct Masked {
    const WeightedGraph& g;
    const std::vector<char>& removed;

    int alive_count() const {
        return static_cast<int>(std::count(removed.begin(), removed.end(), 0));
    }
    int degree(Vertex v) const {
        int d = 0;
        for (const auto& nb : g.neighbors(v)) {
            d += removed[nb.v] ? 0 : 1;
        }
        return d;
    }
};

bool masked_connected(const Masked& m) {
    const WeightedGraph& g = m.g;
    Vertex start = -1;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (!m.removed[v]) {
            start = v;
            break;
        }
    }
    if (start < 0) {
        return true;
    }
    std::vector<char> seen(m.removed);
    std::queue<Vertex> frontier;
    frontier.push(start);
    seen[start] = 1;
    int reached = 0;
    while (!frontier.empty()) {
        Vertex v = frontier.front();
        frontier.pop();
        ++reached;
        for (const auto& nb : g.neighbors(v)) {
            if (!seen[nb.v]) {
                seen[nb.v] = 1;
                frontier.push(nb.v);
            }
        }
    }
    return reached == m.alive_count();
}

/// Smallest separator size of the masked graph if it is below `bound`, otherwise `bound`.
/// The masked graph must be connected and not complete.
int connectivity_below(const Masked& m, int bound) {
    const WeightedGraph& g = m.g;
    Vertex u = -1;
    int best_deg = std::numeric_limits<int>::max();
    for (Vertex v = 0; v < g.size(); ++v) {
        if (m.removed[v]) {
            continue;
        }
        int d = m.degree(v);
        if (d < best_deg) {
            best_deg = d;
            u = v;
        }
    }
    int best = std::min(bound, best_deg);
    if (best == 0) {
        return 0;
    }
    SplitNetwork net(g, m.removed);
    std::vector<char> adjacent_to_u(g.size(), 0);
    std::vector<Vertex> nbrs;
    for (const auto& nb : g.neighbors(u)) {
        if (!m.removed[nb.v]) {
            adjacent_to_u[nb.v] = 1;
            nbrs.push_back(nb.v);
        }
    }
    for (Vertex w = 0; w < g.size() && best > 0; ++w) {
        if (w == u || m.removed[w] || adjacent_to_u[w]) {
            continue;
        }
        best = std::min(best, net.max_flow(u, w, best));
    }
    for (std::size_t a = 0; a < nbrs.size() && best > 0; ++a) {
        for (std::size_t b = a + 1; b < nbrs.size() && best > 0; ++b) {
            if (g.has_edge(nbrs[a], nbrs[b])) {
                continue;
            }
            best = std::min(best, net.max_flow(nbrs[a], nbrs[b], best));
        }
    }
    return best;
}

bool masked_complete(const Masked& m) {
    const int alive = m.alive_count();
    for (Vertex v = 0; v < m.g.size(); ++v) {
        if (!m.removed[v] && m.degree(v) != alive - 1) {
            return false;
        }
    }
    return true;
}

/// Whether the masked graph has a vertex separator with at most `r` vertices.
bool has_separator_within(const Masked& m, int r) {
    if (!masked_connected(m)) {
        return true;
    }
    if (r == 0 || masked_complete(m)) {
        return false;
    }
    return connectivity_below(m, r + 1) <= r;
}

void require_cuttable(const WeightedGraph& g) {
    if (g.size() < 2) {
        throw InputError("vertex cut needs at least 2 vertices");
    }
    if (!is_connected(g)) {
        throw InputError("vertex cut requires a connected graph; split components first");
    }
    if (g.is_complete()) {
        throw NoCutError("complete graph has no vertex cut");
    }
}

} // namespace

std::string_view to_string(CutStrategy s) {
    switch (s) {
    case CutStrategy::GlobalMin:
        return "global-min";
    case CutStrategy::MinDegreeNeighborhood:
        return "min-degree-neighborhood";
    }
    return "unknown";
}

CutStrategy parse_cut_strategy(std::string_view name) {
    if (name == "global-min") {
        return CutStrategy::GlobalMin;
    }
    if (name == "min-degree-neighborhood") {
        return CutStrategy::MinDegreeNeighborhood;
    }
    throw InputError("unknown cut strategy '" + std::string(name) + "'");
}

int vertex_connectivity(const WeightedGraph& g) {
    require_cuttable(g);
    std::vector<char> none(g.size(), 0);
    return connectivity_below(Masked{g, none}, g.size());
}

CutPartition min_vertex_cut(const WeightedGraph& g) {
    const int kappa = vertex_connectivity(g);
    std::vector<char> removed(g.size(), 0);
    std::vector<Vertex> K;
    Vertex next = 0;
    while (static_cast<int>(K.size()) < kappa) {
        const int remaining = kappa - static_cast<int>(K.size()) - 1;
        bool placed = false;
        for (Vertex v = next; v < g.size(); ++v) {
            removed[v] = 1;
            if (has_separator_within(Masked{g, removed}, remaining)) {
                K.push_back(v);
                next = v + 1;
                placed = true;
                break;
            }
            removed[v] = 0;
        }
        if (!placed) {
            throw NumericError("min_vertex_cut: greedy extension failed (inconsistent flow)");
        }
    }
    return split_components(g, K);
}

CutPartition neighborhood_cut(const WeightedGraph& g, Vertex v) {
    if (v < 0 || v >= g.size()) {
        throw InputError("neighborhood_cut: vertex out of range");
    }
    if (g.degree(v) + 1 >= g.size()) {
        throw NoCutError("neighborhood of vertex " + std::to_string(v) + " covers the graph");
    }
    std::vector<Vertex> K;
    for (const auto& nb : g.neighbors(v)) {
        K.push_back(nb.v);
    }
    CutPartition part;
    part.K = K;
    part.V2 = {v};
    std::vector<char> taken(g.size(), 0);
    for (Vertex k : K) {
        taken[k] = 1;
    }
    taken[v] = 1;
    for (Vertex w = 0; w < g.size(); ++w) {
        if (!taken[w]) {
            part.V1.push_back(w);
        }
    }
    return part;
}

CutPartition choose_cut(const WeightedGraph& g, CutStrategy strategy) {
    switch (strategy) {
    case CutStrategy::GlobalMin:
        return min_vertex_cut(g);
    case CutStrategy::MinDegreeNeighborhood: {
        require_cuttable(g);
        Vertex best = 0;
        for (Vertex v = 1; v < g.size(); ++v) {
            if (g.degree(v) < g.degree(best)) {
                best = v;
            }
        }
        return neighborhood_cut(g, best);
    }
    }
    throw InputError("unknown cut strategy");
}

} // namespace qdecomp
