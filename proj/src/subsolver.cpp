#include "qdecomp/subsolver.hpp"

#include "qdecomp/error.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace qdecomp {

namespace {

/// Ordering key that makes integer comparison lexicographic with z_0 first.
std::uint64_t lex_key(std::uint64_t mask, int n) {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i) {
        key = (key << 1) | ((mask >> i) & 1U);
    }
    return key;
}

std::vector<int> positions_in(const std::vector<Vertex>& sorted_subset,
                              const std::vector<Vertex>& wanted) {
    std::vector<int> out;
    out.reserve(wanted.size());
    for (Vertex v : wanted) {
        auto it = std::lower_bound(sorted_subset.begin(), sorted_subset.end(), v);
        out.push_back(static_cast<int>(it - sorted_subset.begin()));
    }
    return out;
}

void check_partition_shape(const CutPartition& part) {
    if (part.K.size() > 20) {
        throw ResourceError("cut set of size " + std::to_string(part.K.size()) +
                            " is too large to enumerate");
    }
}

std::vector<Vertex> union_sorted(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

std::string_view to_string(BackendChoice::Kind k) {
    return k == BackendChoice::Kind::Exact ? "exact" : "qaoa";
}

BackendChoice::Kind parse_backend(std::string_view name) {
    if (name == "exact") {
        return BackendChoice::Kind::Exact;
    }
    if (name == "qaoa" || name == "qaoa-p1") {
        return BackendChoice::Kind::QaoaP1;
    }
    throw InputError("unknown backend '" + std::string(name) + "'");
}

ExactSolution exact_optimum(const QuboInstance& inst, int limit) {
    const int n = inst.size();
    if (n > limit || n > 62) {
        throw ResourceError("exact solver limited to " + std::to_string(limit) +
                            " variables; got " + std::to_string(n));
    }
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& t : inst.quad()) {
        adj[t.i].emplace_back(t.j, t.J);
        adj[t.j].emplace_back(t.i, t.J);
    }
    // field[q]: change in value when z_q goes from 0 to 1 given the other bits.
    std::vector<double> field(inst.lin());
    double value = inst.offset();
    std::uint64_t mask = 0;

    double best = value;
    std::uint64_t best_mask = 0;
    std::uint64_t count = 1;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int q = std::countr_zero(step);
        const std::uint64_t bit = std::uint64_t{1} << q;
        const double sign = (mask & bit) ? -1.0 : 1.0;
        value += sign * field[q];
        mask ^= bit;
        for (const auto& [k, J] : adj[q]) {
            field[k] += sign * J;
        }
        const double tol = 1e-9 * std::max(1.0, std::abs(best));
        if (value > best + tol) {
            best = value;
            best_mask = mask;
            count = 1;
        } else if (value >= best - tol) {
            ++count;
            best = std::max(best, value);
            if (lex_key(mask, n) < lex_key(best_mask, n)) {
                best_mask = mask;
            }
        }
    }
    ExactSolution out;
    out.witness.resize(n);
    for (int i = 0; i < n; ++i) {
        out.witness[i] = static_cast<std::uint8_t>((best_mask >> i) & 1U);
    }
    out.value = evaluate(inst, out.witness);
    out.n_opt = count;
    return out;
}

double qaoa_heuristic_value(const QuboInstance& inst, int restarts, std::uint64_t seed) {
    return optimize_params(qubo_to_ising(inst), restarts, seed).value;
}

std::string s_label(std::uint32_t s, std::size_t k) {
    std::string out(k, '0');
    for (std::size_t l = 0; l < k; ++l) {
        if ((s >> l) & 1U) {
            out[l] = '1';
        }
    }
    return out;
}

SubproblemTable solve_fixings(const QuboInstance& local, const std::vector<int>& local_k,
                              const std::vector<int>& local_v2, const BackendChoice& backend) {
    if (backend.qaoa_restarts < 1) {
        throw InputError("qaoa_restarts must be >= 1");
    }
    if (backend.kind == BackendChoice::Kind::Exact &&
        static_cast<int>(local_v2.size()) > backend.exact_limit) {
        throw ResourceError("V2 has " + std::to_string(local_v2.size()) +
                            " vertices, above the exact backend limit of " +
                            std::to_string(backend.exact_limit));
    }
    const std::size_t k = local_k.size();
    SubproblemTable table;
    table.rows.reserve(std::size_t{1} << k);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << k); ++s) {
        Restriction fix;
        for (std::size_t l = 0; l < k; ++l) {
            ((s >> l) & 1U ? fix.fixed1 : fix.fixed0).push_back(local_k[l]);
        }
        const RestrictedInstance r = restrict(local, fix);
        if (r.free_vars != local_v2) {
            throw InputError("subproblem instance must contain exactly V2 and K");
        }
        SubproblemRow row;
        row.s = s;
        row.constant = r.constant;
        if (backend.kind == BackendChoice::Kind::Exact) {
            ExactSolution sol = exact_optimum(r.sub, backend.exact_limit);
            row.value = sol.value;
            row.witness = std::move(sol.witness);
        } else {
            row.value = qaoa_heuristic_value(r.sub, backend.qaoa_restarts,
                                             substream(backend.seed, "subproblem-row", {s}));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SubproblemTable build_table(const WeightedGraph& g, const CutPartition& part,
                            const BackendChoice& backend) {
    check_partition_shape(part);
    const auto subset = union_sorted(part.V2, part.K);
    const InducedGraph sub = induced_subgraph(g, subset);
    SubproblemTable table = solve_fixings(maxcut_to_qubo(sub.graph), positions_in(subset, part.K),
                                          positions_in(subset, part.V2), backend);
    table.K_order = part.K;
    table.V2 = part.V2;
    return table;
}

SubproblemTable build_table(const QuboInstance& inst, const CutPartition& part,
                            const BackendChoice& backend) {
    check_partition_shape(part);
    const auto subset = union_sorted(part.V2, part.K);
    const InducedQubo sub = induced_instance(inst, subset);
    SubproblemTable table = solve_fixings(sub.instance, positions_in(subset, part.K),
                                          positions_in(subset, part.V2), backend);
    table.K_order = part.K;
    table.V2 = part.V2;
    return table;
}

nlohmann::json table_to_json(const SubproblemTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = {{"s", s_label(row.s, table.K_order.size())},
                            {"value", row.value},
                            {"constant", row.constant}};
        if (row.witness) {
            r["witness"] = *row.witness;
        }
        rows.push_back(std::move(r));
    }
    return {{"K", table.K_order}, {"V2", table.V2}, {"rows", rows}};
}

SubproblemTable table_from_json(const nlohmann::json& j) {
    SubproblemTable table;
    table.K_order = j.at("K").get<std::vector<Vertex>>();
    table.V2 = j.at("V2").get<std::vector<Vertex>>();
    for (const auto& r : j.at("rows")) {
        SubproblemRow row;
        const auto label = r.at("s").get<std::string>();
        if (label.size() != table.K_order.size()) {
            throw InputError("table row label length does not match |K|");
        }
        for (std::size_t l = 0; l < label.size(); ++l) {
            if (label[l] == '1') {
                row.s |= std::uint32_t{1} << l;
            }
        }
        row.value = r.at("value").get<double>();
        row.constant = r.at("constant").get<double>();
        if (r.contains("witness")) {
            row.witness = r.at("witness").get<Bitstring>();
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.size() != (std::size_t{1} << table.K_order.size())) {
        throw InputError("table must have 2^|K| rows");
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].s != i) {
            throw InputError("table rows must be ordered by s");
        }
    }
    return table;
}

} // namespace qdecomp
