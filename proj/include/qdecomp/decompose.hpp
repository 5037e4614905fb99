#pragma once

#include "qdecomp/cutset.hpp"
#include "qdecomp/graph.hpp"
#include "qdecomp/qubo.hpp"
#include "qdecomp/reweight.hpp"
#include "qdecomp/subsolver.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qdecomp {

struct DecompConfig {
    /// Stop once the smallest available cut has at least this many vertices.
    int max_cut = 8;
    /// Stop once the instance has at most this many vertices.
    int min_vertices = 2;
    /// Stop after this many iterations; 0 means no limit.
    int max_iterations = 0;
    BackendChoice backend;
    CutStrategy strategy = CutStrategy::GlobalMin;
    ReweightMode mode = ReweightMode::MaxcutCutform;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One cut/solve/reweight step. Vertex labels are those of the original instance.
struct IterationRecord {
    int index = 0;
    std::vector<Vertex> K;
    std::vector<Vertex> V2;
    SubproblemTable table;
    ReweightResult rw;
    int vertices_before = 0;
    int vertices_after = 0;

    bool exact() const { return rw.exact; }
    double error_sum() const { return rw.error_sum(); }
    /// FNV-1a of the serialized table, hex encoded.
    std::string table_digest() const;
};

enum class StopReason { CutTooLarge, NoCut, MinVertices, IterationLimit };

std::string_view to_string(StopReason r);

struct DecompositionResult {
    DecompConfig cfg;
    int original_n = 0;
    /// Final instance over `to_original.size()` variables, without c_total.
    QuboInstance reduced;
    /// Final graph when the run stayed in MaxCut form.
    std::optional<WeightedGraph> reduced_graph;
    /// Original label of every variable of the final instance (ascending).
    std::vector<Vertex> to_original;
    double c_total = 0.0;
    std::vector<IterationRecord> iterations;
    StopReason stop = StopReason::NoCut;

    int final_size() const { return reduced.size(); }
    bool all_exact() const;
    double error_budget() const;
    /// `reduced` with c_total folded into its offset: its optimum approximates the original's.
    QuboInstance total_instance() const;
};

/// Called after every iteration with the record and the instance reached so far
/// (c_total not folded in) and the running constant.
using IterationObserver =
    std::function<void(const IterationRecord&, const QuboInstance&, double c_total)>;

/// MaxCut input. Cut-form runs keep a graph throughout; product mode runs on the QUBO form.
DecompositionResult decompose(const WeightedGraph& g, const DecompConfig& cfg,
                              const IterationObserver& observer = {});
DecompositionResult decompose(const QuboInstance& inst, const DecompConfig& cfg,
                              const IterationObserver& observer = {});

/// Full assignment of the original variables from an assignment of the final instance.
/// Throws UnsupportedError when an iteration has no stored witnesses.
Bitstring lift_solution(const DecompositionResult& result, std::span<const std::uint8_t> reduced);

/// True iff the final vertex count is at most ceil(k n / (k + 1)).
/// Requires a k-regular original, the neighborhood strategy and max_cut > k.
bool reduction_bound_check(const WeightedGraph& original, const DecompositionResult& result,
                           int k);

nlohmann::json config_to_json(const DecompConfig& cfg);
DecompConfig config_from_json(const nlohmann::json& j);
nlohmann::json result_to_json(const DecompositionResult& result);
DecompositionResult result_from_json(const nlohmann::json& j);

} // namespace qdecomp
