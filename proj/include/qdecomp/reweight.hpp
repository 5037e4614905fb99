#pragma once

#include "qdecomp/graph.hpp"
#include "qdecomp/qubo.hpp"
#include "qdecomp/subsolver.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qdecomp {

/// How the replacement terms on K are parameterized.
///  - QuboProduct:   sum_{pairs} Jh_ij s_i s_j + sum_i Jh_ii s_i + c   (general QUBO)
///  - MaxcutCutform: sum_{pairs} Jh_ij [s_i != s_j] + c                (new MaxCut edges inside K)
enum class ReweightMode { QuboProduct, MaxcutCutform };

std::string_view to_string(ReweightMode m);
ReweightMode parse_reweight_mode(std::string_view name);

struct SystemColumn {
    enum class Kind { Pair, Single, Constant };
    Kind kind = Kind::Constant;
    int a = -1; ///< position in K_order
    int b = -1;
};

/// Rows A x = b, one per fixing s (cut form: one per complement class when both members agree).
struct LinearSystem {
    ReweightMode mode = ReweightMode::MaxcutCutform;
    std::vector<Vertex> K_order;
    std::vector<SystemColumn> columns;
    std::vector<std::uint32_t> row_s; ///< representative fixing of each row
    std::vector<int> row_of_s;        ///< row index used by every fixing s
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
};

struct ReweightResult {
    ReweightMode mode = ReweightMode::MaxcutCutform;
    std::vector<Vertex> K_order;
    std::vector<QuadTerm> quad_hat; ///< over vertex labels of K, i < j
    std::vector<double> lin_hat;    ///< per K position; QuboProduct only
    double c_hat = 0.0;
    std::vector<double> errors;     ///< e_s for every fixing s
    bool exact = false;
    bool used_lp = false;

    double error_sum() const;
};

LinearSystem build_rows(const SubproblemTable& table, ReweightMode mode);

/// Zero-residual solution (minimum norm when rank deficient), or nullopt if the rows are
/// inconsistent (max residual above 1e-9).
std::optional<ReweightResult> solve_exact(const LinearSystem& sys);

/// min sum_s e_s  s.t.  A x + e = b,  e >= 0,  x free.
ReweightResult solve_lp(const LinearSystem& sys);

/// Exact solve when possible, LP otherwise.
ReweightResult reweight(const SubproblemTable& table, ReweightMode mode);

struct ReducedGraph {
    WeightedGraph graph;
    std::vector<Vertex> to_parent;
    double c_hat = 0.0;
};

struct ReducedQubo {
    QuboInstance instance;
    std::vector<Vertex> to_parent;
    double c_hat = 0.0;
};

/// Graph on V1 u K: V1 and V1-K edges unchanged, K-K edges replaced by the new weights
/// (|w| <= 1e-12 dropped), V2 removed. Cut form only.
ReducedGraph apply_reweight(const WeightedGraph& g, const CutPartition& part,
                            const ReweightResult& rw);

/// Instance on V1 u K: every term touching V1 unchanged, terms inside K replaced, V2 removed.
ReducedQubo apply_reweight(const QuboInstance& inst, const CutPartition& part,
                           const ReweightResult& rw);

nlohmann::json system_to_json(const LinearSystem& sys);
nlohmann::json reweight_to_json(const ReweightResult& rw);
ReweightResult reweight_from_json(const nlohmann::json& j);

} // namespace qdecomp
