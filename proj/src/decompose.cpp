#include "qdecomp/decompose.hpp"

#include "qdecomp/error.hpp"
#include "qdecomp/io.hpp"
#include "qdecomp/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace qdecomp {

namespace {

std::optional<CutPartition> find_cut(const WeightedGraph& g, CutStrategy strategy) {
    std::optional<CutPartition> best;
    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 3) {
            continue;
        }
        const InducedGraph sub = induced_subgraph(g, comp);
        if (sub.graph.is_complete()) {
            continue;
        }
        CutPartition local;
        try {
            local = choose_cut(sub.graph, strategy);
        } catch (const NoCutError&) {
            continue;
        }
        if (best && local.K.size() >= best->K.size()) {
            continue;
        }
        CutPartition part;
        for (Vertex v : local.K) {
            part.K.push_back(sub.to_parent[v]);
        }
        for (Vertex v : local.V2) {
            part.V2.push_back(sub.to_parent[v]);
        }
        best = std::move(part);
    }
    if (best) {
        std::vector<char> taken(g.size(), 0);
        for (Vertex v : best->K) {
            taken[v] = 1;
        }
        for (Vertex v : best->V2) {
            taken[v] = 1;
        }
        for (Vertex v = 0; v < g.size(); ++v) {
            if (!taken[v]) {
                best->V1.push_back(v);
            }
        }
    }
    return best;
}

std::vector<Vertex> relabel(const std::vector<Vertex>& local, const std::vector<Vertex>& map) {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) {
        out.push_back(map[v]);
    }
    return out;
}

struct GraphState {
    WeightedGraph g;

    int size() const { return g.size(); }
    const WeightedGraph& structure() const { return g; }
    SubproblemTable table(const CutPartition& part, const BackendChoice& b) const {
        return build_table(g, part, b);
    }
    std::pair<std::vector<Vertex>, double> apply(const CutPartition& part,
                                                 const ReweightResult& rw) {
        ReducedGraph r = apply_reweight(g, part, rw);
        g = std::move(r.graph);
        return {std::move(r.to_parent), r.c_hat};
    }
    QuboInstance instance() const { return maxcut_to_qubo(g); }
};

struct QuboState {
    QuboInstance q;
    WeightedGraph cut_graph;

    explicit QuboState(QuboInstance inst) : q(std::move(inst)), cut_graph(interaction_graph(q)) {}

    int size() const { return q.size(); }
    const WeightedGraph& structure() const { return cut_graph; }
    SubproblemTable table(const CutPartition& part, const BackendChoice& b) const {
        return build_table(q, part, b);
    }
    std::pair<std::vector<Vertex>, double> apply(const CutPartition& part,
                                                 const ReweightResult& rw) {
        ReducedQubo r = apply_reweight(q, part, rw);
        q = std::move(r.instance);
        cut_graph = interaction_graph(q);
        return {std::move(r.to_parent), r.c_hat};
    }
    const QuboInstance& instance() const { return q; }
};

template <class State>
void run(State& state, const DecompConfig& cfg, DecompositionResult& out,
         const IterationObserver& observer) {
    out.to_original.resize(state.size());
    for (int v = 0; v < state.size(); ++v) {
        out.to_original[v] = v;
    }
    for (int index = 0;; ++index) {
        if (state.size() <= cfg.min_vertices) {
            out.stop = StopReason::MinVertices;
            return;
        }
        if (cfg.max_iterations > 0 && index >= cfg.max_iterations) {
            out.stop = StopReason::IterationLimit;
            return;
        }
        const std::optional<CutPartition> part = find_cut(state.structure(), cfg.strategy);
        if (!part) {
            out.stop = StopReason::NoCut;
            return;
        }
        if (static_cast<int>(part->K.size()) >= cfg.max_cut) {
            out.stop = StopReason::CutTooLarge;
            return;
        }
        BackendChoice backend = cfg.backend;
        backend.seed = substream(cfg.seed, "iteration", {static_cast<std::uint64_t>(index)});
        SubproblemTable table = state.table(*part, backend);
        ReweightResult rw = reweight(table, cfg.mode);

        IterationRecord rec;
        rec.index = index;
        rec.vertices_before = state.size();
        rec.K = relabel(part->K, out.to_original);
        rec.V2 = relabel(part->V2, out.to_original);

        const auto [keep, c_hat] = state.apply(*part, rw);
        out.c_total += c_hat;
        rec.vertices_after = state.size();

        table.K_order = rec.K;
        table.V2 = rec.V2;
        rec.table = std::move(table);
        rw.K_order = rec.K;
        for (auto& t : rw.quad_hat) {
            t.i = out.to_original[t.i];
            t.j = out.to_original[t.j];
        }
        rec.rw = std::move(rw);
        out.to_original = relabel(keep, out.to_original);
        out.iterations.push_back(std::move(rec));
        if (observer) {
            observer(out.iterations.back(), state.instance(), out.c_total);
        }
    }
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

StopReason parse_stop(const std::string& s) {
    if (s == "cut-too-large") {
        return StopReason::CutTooLarge;
    }
    if (s == "no-cut") {
        return StopReason::NoCut;
    }
    if (s == "min-vertices") {
        return StopReason::MinVertices;
    }
    if (s == "iteration-limit") {
        return StopReason::IterationLimit;
    }
    throw InputError("unknown stop reason '" + s + "'");
}

nlohmann::json graph_edges_json(const WeightedGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({e.u, e.v, e.w});
    }
    return {{"n", g.size()}, {"edges", edges}};
}

WeightedGraph graph_from_edges_json(const nlohmann::json& j) {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    return WeightedGraph(j.at("n").get<int>(), std::move(edges));
}

} // namespace

void DecompConfig::validate() const {
    if (max_cut < 2) {
        throw InputError("max cut size M must be >= 2");
    }
    if (min_vertices < 1) {
        throw InputError("min_vertices must be >= 1");
    }
    if (max_iterations < 0) {
        throw InputError("max_iterations must be >= 0");
    }
    if (backend.qaoa_restarts < 1) {
        throw InputError("qaoa_restarts must be >= 1");
    }
}

std::string IterationRecord::table_digest() const {
    return hex64(fnv1a(table_to_json(table).dump()));
}

std::string_view to_string(StopReason r) {
    switch (r) {
    case StopReason::CutTooLarge:
        return "cut-too-large";
    case StopReason::NoCut:
        return "no-cut";
    case StopReason::MinVertices:
        return "min-vertices";
    case StopReason::IterationLimit:
        return "iteration-limit";
    }
    return "unknown";
}

bool DecompositionResult::all_exact() const {
    return std::all_of(iterations.begin(), iterations.end(),
                       [](const IterationRecord& r) { return r.exact(); });
}

double DecompositionResult::error_budget() const {
    double total = 0.0;
    for (const auto& r : iterations) {
        total += r.error_sum();
    }
    return total;
}

QuboInstance DecompositionResult::total_instance() const {
    return reduced.with_offset(reduced.offset() + c_total);
}

DecompositionResult decompose(const WeightedGraph& g, const DecompConfig& cfg,
                              const IterationObserver& observer) {
    cfg.validate();
    if (cfg.mode == ReweightMode::QuboProduct) {
        return decompose(maxcut_to_qubo(g), cfg, observer);
    }
    DecompositionResult out;
    out.cfg = cfg;
    out.original_n = g.size();
    GraphState state{g};
    run(state, cfg, out, observer);
    out.reduced = maxcut_to_qubo(state.g);
    out.reduced_graph = std::move(state.g);
    return out;
}

DecompositionResult decompose(const QuboInstance& inst, const DecompConfig& cfg,
                              const IterationObserver& observer) {
    cfg.validate();
    DecompositionResult out;
    out.cfg = cfg;
    out.original_n = inst.size();
    QuboState state(inst);
    run(state, cfg, out, observer);
    out.reduced = std::move(state.q);
    return out;
}

Bitstring lift_solution(const DecompositionResult& result, std::span<const std::uint8_t> reduced) {
    if (reduced.size() != result.to_original.size()) {
        throw InputError("reduced solution has " + std::to_string(reduced.size()) +
                         " entries; the final instance has " +
                         std::to_string(result.to_original.size()));
    }
    std::vector<int> full(result.original_n, -1);
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        full[result.to_original[i]] = reduced[i] ? 1 : 0;
    }
    for (auto it = result.iterations.rbegin(); it != result.iterations.rend(); ++it) {
        std::uint32_t s = 0;
        for (std::size_t l = 0; l < it->K.size(); ++l) {
            const int value = full[it->K[l]];
            if (value < 0) {
                throw InputError("trace is inconsistent: cut vertex " +
                                 std::to_string(it->K[l]) + " unassigned during lifting");
            }
            s |= static_cast<std::uint32_t>(value) << l;
        }
        const auto& witness = it->table.rows.at(s).witness;
        if (!witness) {
            throw UnsupportedError("iteration " + std::to_string(it->index) +
                                   " has no stored witnesses; lifting needs the exact backend");
        }
        if (witness->size() != it->V2.size()) {
            throw InputError("witness length does not match V2");
        }
        for (std::size_t p = 0; p < it->V2.size(); ++p) {
            full[it->V2[p]] = (*witness)[p];
        }
    }
    Bitstring out(full.size());
    for (std::size_t v = 0; v < full.size(); ++v) {
        if (full[v] < 0) {
            throw InputError("trace leaves vertex " + std::to_string(v) + " unassigned");
        }
        out[v] = static_cast<std::uint8_t>(full[v]);
    }
    return out;
}

bool reduction_bound_check(const WeightedGraph& original, const DecompositionResult& result,
                           int k) {
    const int n = original.size();
    for (Vertex v = 0; v < n; ++v) {
        if (original.degree(v) != k) {
            throw InputError("reduction bound needs a " + std::to_string(k) + "-regular graph");
        }
    }
    if (k >= n - 1) {
        throw InputError("complete graph has no vertex cut");
    }
    if (result.cfg.strategy != CutStrategy::MinDegreeNeighborhood) {
        throw InputError("reduction bound applies to the min-degree-neighborhood strategy");
    }
    if (result.cfg.max_cut <= k) {
        throw InputError("reduction bound needs M > k");
    }
    if (result.original_n != n) {
        throw InputError("decomposition does not belong to this graph");
    }
    return result.final_size() <= (k * n + k) / (k + 1);
}

nlohmann::json config_to_json(const DecompConfig& cfg) {
    return {{"max_cut", cfg.max_cut},
            {"min_vertices", cfg.min_vertices},
            {"max_iterations", cfg.max_iterations},
            {"backend",
             {{"kind", to_string(cfg.backend.kind)},
              {"qaoa_restarts", cfg.backend.qaoa_restarts},
              {"exact_limit", cfg.backend.exact_limit}}},
            {"strategy", to_string(cfg.strategy)},
            {"mode", to_string(cfg.mode)},
            {"seed", cfg.seed}};
}

DecompConfig config_from_json(const nlohmann::json& j) {
    DecompConfig cfg;
    cfg.max_cut = j.at("max_cut").get<int>();
    cfg.min_vertices = j.at("min_vertices").get<int>();
    cfg.max_iterations = j.value("max_iterations", 0);
    const auto& b = j.at("backend");
    cfg.backend.kind = parse_backend(b.at("kind").get<std::string>());
    cfg.backend.qaoa_restarts = b.at("qaoa_restarts").get<int>();
    cfg.backend.exact_limit = b.at("exact_limit").get<int>();
    cfg.strategy = parse_cut_strategy(j.at("strategy").get<std::string>());
    cfg.mode = parse_reweight_mode(j.at("mode").get<std::string>());
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

nlohmann::json result_to_json(const DecompositionResult& result) {
    nlohmann::json iterations = nlohmann::json::array();
    for (const auto& r : result.iterations) {
        iterations.push_back({{"index", r.index},
                              {"K", r.K},
                              {"V2", r.V2},
                              {"V2_size", r.V2.size()},
                              {"vertices_before", r.vertices_before},
                              {"vertices_after", r.vertices_after},
                              {"exact", r.exact()},
                              {"error_sum", r.error_sum()},
                              {"table_digest", r.table_digest()},
                              {"table", table_to_json(r.table)},
                              {"reweight", reweight_to_json(r.rw)}});
    }
    nlohmann::json final_part = {{"to_original", result.to_original},
                                 {"qubo", qubo_to_json(result.reduced)}};
    if (result.reduced_graph) {
        final_part["graph"] = graph_edges_json(*result.reduced_graph);
    }
    return {{"format", "qdecomp-trace"},
            {"version", 1},
            {"config", config_to_json(result.cfg)},
            {"original_n", result.original_n},
            {"c_total", result.c_total},
            {"stop", to_string(result.stop)},
            {"iterations", iterations},
            {"final", final_part}};
}

DecompositionResult result_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "qdecomp-trace") {
        throw InputError("not a decomposition trace");
    }
    DecompositionResult out;
    out.cfg = config_from_json(j.at("config"));
    out.original_n = j.at("original_n").get<int>();
    out.c_total = j.at("c_total").get<double>();
    out.stop = parse_stop(j.at("stop").get<std::string>());
    for (const auto& it : j.at("iterations")) {
        IterationRecord r;
        r.index = it.at("index").get<int>();
        r.K = it.at("K").get<std::vector<Vertex>>();
        r.V2 = it.at("V2").get<std::vector<Vertex>>();
        r.vertices_before = it.at("vertices_before").get<int>();
        r.vertices_after = it.at("vertices_after").get<int>();
        r.table = table_from_json(it.at("table"));
        r.rw = reweight_from_json(it.at("reweight"));
        out.iterations.push_back(std::move(r));
    }
    const auto& fin = j.at("final");
    out.to_original = fin.at("to_original").get<std::vector<Vertex>>();
    out.reduced = qubo_from_json(fin.at("qubo"));
    if (fin.contains("graph")) {
        out.reduced_graph = graph_from_edges_json(fin.at("graph"));
    }
    return out;
}

} // namespace qdecomp
