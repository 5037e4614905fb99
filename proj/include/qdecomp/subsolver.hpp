#pragma once

#include "qdecomp/graph.hpp"
#include "qdecomp/qubo.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qdecomp {

inline constexpr int kDefaultExactLimit = 22;

struct BackendChoice {
    enum class Kind { Exact, QaoaP1 };

    Kind kind = Kind::Exact;
    int qaoa_restarts = 100;
    /// Largest variable count the brute-force backend accepts.
    int exact_limit = kDefaultExactLimit;
    std::uint64_t seed = 0;
};

std::string_view to_string(BackendChoice::Kind k);
BackendChoice::Kind parse_backend(std::string_view name);

struct ExactSolution {
    double value = 0.0;
    /// Lexicographically smallest maximizer (z_0 most significant).
    Bitstring witness;
    /// Number of bitstrings attaining `value` (within 1e-9 relative).
    std::uint64_t n_opt = 0;
};

/// Brute-force maximum over all 2^n assignments (Gray-code walk with incremental updates).
/// Throws ResourceError when n > limit.
ExactSolution exact_optimum(const QuboInstance& inst, int limit = kDefaultExactLimit);

/// Best p = 1 QAOA expectation over `restarts` BFGS starts, offset included.
double qaoa_heuristic_value(const QuboInstance& inst, int restarts, std::uint64_t seed);

struct SubproblemRow {
    /// Bit l of s is the value of cut vertex K_order[l].
    std::uint32_t s = 0;
    /// Optimum (exact) or expectation (QAOA) over the V2 variables.
    double value = 0.0;
    /// Constant produced by fixing K to s.
    double constant = 0.0;
    /// Assignment of V2 (in V2 order) attaining `value`; exact backend only.
    std::optional<Bitstring> witness;

    double total() const { return value + constant; }
};

struct SubproblemTable {
    std::vector<Vertex> K_order;
    std::vector<Vertex> V2;
    std::vector<SubproblemRow> rows; ///< rows[s].s == s, exactly 2^|K| rows
};

/// Text form of s with K_order[0] first, e.g. "001" sets only the last cut vertex.
std::string s_label(std::uint32_t s, std::size_t k);

/// Enumerates all fixings of K and solves the restriction of `local` (the instance induced on
/// V2 and K) over the V2 variables. `local_k` and `local_v2` are positions inside `local`.
SubproblemTable solve_fixings(const QuboInstance& local, const std::vector<int>& local_k,
                              const std::vector<int>& local_v2, const BackendChoice& backend);

/// MaxCut form: the subproblem is the cut function of G[V2 u K].
SubproblemTable build_table(const WeightedGraph& g, const CutPartition& part,
                            const BackendChoice& backend);

/// QUBO form: the subproblem carries every term inside V2 u K, including K's linear terms.
SubproblemTable build_table(const QuboInstance& inst, const CutPartition& part,
                            const BackendChoice& backend);

nlohmann::json table_to_json(const SubproblemTable& table);
SubproblemTable table_from_json(const nlohmann::json& j);

} // namespace qdecomp
