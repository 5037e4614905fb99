#include "qdecomp/reweight.hpp"

#include "qdecomp/error.hpp"
#include "qdecomp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace qdecomp {

namespace {

constexpr double kPruneEps = 1e-12;

double row_tolerance(const Eigen::VectorXd& b) {
    return 1e-9 * std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
}

ReweightResult assemble(const LinearSystem& sys, const Eigen::VectorXd& x) {
    ReweightResult rw;
    rw.mode = sys.mode;
    rw.K_order = sys.K_order;
    if (sys.mode == ReweightMode::QuboProduct) {
        rw.lin_hat.assign(sys.K_order.size(), 0.0);
    }
    for (std::size_t c = 0; c < sys.columns.size(); ++c) {
        const auto& col = sys.columns[c];
        switch (col.kind) {
        case SystemColumn::Kind::Pair:
            rw.quad_hat.push_back({sys.K_order[col.a], sys.K_order[col.b], x(c)});
            break;
        case SystemColumn::Kind::Single:
            rw.lin_hat[col.a] = x(c);
            break;
        case SystemColumn::Kind::Constant:
            rw.c_hat = x(c);
            break;
        }
    }
    return rw;
}

bool in_set(const std::vector<char>& flag, Vertex v) { return flag[v] != 0; }

std::vector<char> membership(int n, const std::vector<Vertex>& set) {
    std::vector<char> flag(n, 0);
    for (Vertex v : set) {
        flag[v] = 1;
    }
    return flag;
}

void check_match(const CutPartition& part, const ReweightResult& rw) {
    if (part.K != rw.K_order) {
        throw InputError("reweight result was computed for a different cut set");
    }
}

} // namespace

std::string_view to_string(ReweightMode m) {
    return m == ReweightMode::QuboProduct ? "product" : "cutform";
}

ReweightMode parse_reweight_mode(std::string_view name) {
    if (name == "product" || name == "qubo-product") {
        return ReweightMode::QuboProduct;
    }
    if (name == "cutform" || name == "maxcut-cutform") {
        return ReweightMode::MaxcutCutform;
    }
    throw InputError("unknown reweight mode '" + std::string(name) + "'");
}

double ReweightResult::error_sum() const {
    double s = 0.0;
    for (double e : errors) {
        s += e;
    }
    return s;
}

LinearSystem build_rows(const SubproblemTable& table, ReweightMode mode) {
    const std::size_t k = table.K_order.size();
    const std::uint32_t count = std::uint32_t{1} << k;
    if (table.rows.size() != count) {
        throw InputError("subproblem table is incomplete");
    }
    LinearSystem sys;
    sys.mode = mode;
    sys.K_order = table.K_order;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            sys.columns.push_back({SystemColumn::Kind::Pair, int(a), int(b)});
        }
    }
    if (mode == ReweightMode::QuboProduct) {
        for (std::size_t a = 0; a < k; ++a) {
            sys.columns.push_back({SystemColumn::Kind::Single, int(a), -1});
        }
    }
    sys.columns.push_back({SystemColumn::Kind::Constant, -1, -1});

    auto indicator = [&](std::uint32_t s, const SystemColumn& col) -> double {
        const bool sa = col.a >= 0 && ((s >> col.a) & 1U);
        const bool sb = col.b >= 0 && ((s >> col.b) & 1U);
        switch (col.kind) {
        case SystemColumn::Kind::Pair:
            return mode == ReweightMode::QuboProduct ? double(sa && sb) : double(sa != sb);
        case SystemColumn::Kind::Single:
            return double(sa);
        case SystemColumn::Kind::Constant:
            return 1.0;
        }
        return 0.0;
    };

    std::vector<double> rhs;
    sys.row_of_s.assign(count, -1);
    auto add_row = [&](std::uint32_t s) {
        sys.row_s.push_back(s);
        rhs.push_back(table.rows[s].total());
        sys.row_of_s[s] = static_cast<int>(sys.row_s.size()) - 1;
    };
    const std::uint32_t full = count - 1;
    for (std::uint32_t s = 0; s < count; ++s) {
        if (sys.row_of_s[s] >= 0) {
            continue;
        }
        add_row(s);
        if (mode != ReweightMode::MaxcutCutform || (s ^ full) == s) {
            continue;
        }
        // s and its complement cut the same pairs; share the row when the targets agree.
        const std::uint32_t c = s ^ full;
        const double bs = table.rows[s].total();
        const double bc = table.rows[c].total();
        if (std::abs(bs - bc) <= 1e-9 * std::max(1.0, std::abs(bs))) {
            sys.row_of_s[c] = sys.row_of_s[s];
        } else {
            add_row(c);
        }
    }

    sys.A.resize(static_cast<Eigen::Index>(sys.row_s.size()),
                 static_cast<Eigen::Index>(sys.columns.size()));
    sys.b.resize(static_cast<Eigen::Index>(rhs.size()));
    for (std::size_t r = 0; r < sys.row_s.size(); ++r) {
        for (std::size_t c = 0; c < sys.columns.size(); ++c) {
            sys.A(r, c) = indicator(sys.row_s[r], sys.columns[c]);
        }
        sys.b(r) = rhs[r];
    }
    return sys;
}

std::optional<ReweightResult> solve_exact(const LinearSystem& sys) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.A);
    const Eigen::VectorXd x = cod.solve(sys.b);
    const Eigen::VectorXd residual = sys.A * x - sys.b;
    if (!x.allFinite() || residual.cwiseAbs().maxCoeff() > row_tolerance(sys.b)) {
        return std::nullopt;
    }
    ReweightResult rw = assemble(sys, x);
    rw.errors.assign(sys.row_of_s.size(), 0.0);
    rw.exact = true;
    return rw;
}

ReweightResult solve_lp(const LinearSystem& sys) {
    const Eigen::Index m = sys.A.rows();
    const Eigen::Index c = sys.A.cols();
    // Variables: [x+ (c), x- (c), e (m)], all non-negative.
    Eigen::MatrixXd A(m, 2 * c + m);
    A << sys.A, -sys.A, Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(2 * c + m);
    cost.tail(m).setOnes();
    const LpResult lp = solve_standard_lp(A, sys.b, cost);
    if (lp.status != LpResult::Status::Optimal) {
        throw NumericError("reweighting LP did not reach an optimum");
    }
    const Eigen::VectorXd x = lp.x.head(c) - lp.x.segment(c, c);
    ReweightResult rw = assemble(sys, x);
    rw.used_lp = true;
    rw.errors.resize(sys.row_of_s.size());
    double max_error = 0.0;
    for (std::size_t s = 0; s < sys.row_of_s.size(); ++s) {
        double e = lp.x(2 * c + sys.row_of_s[s]);
        if (e < 0.0 && e > -1e-9) {
            e = 0.0;
        }
        rw.errors[s] = e;
        max_error = std::max(max_error, e);
    }
    rw.exact = max_error <= 1e-9;
    return rw;
}

ReweightResult reweight(const SubproblemTable& table, ReweightMode mode) {
    const LinearSystem sys = build_rows(table, mode);
    if (auto exact = solve_exact(sys)) {
        return *exact;
    }
    return solve_lp(sys);
}

ReducedGraph apply_reweight(const WeightedGraph& g, const CutPartition& part,
                            const ReweightResult& rw) {
    check_match(part, rw);
    if (rw.mode != ReweightMode::MaxcutCutform) {
        throw UnsupportedError("product-form terms cannot be expressed as graph edges; "
                               "reweight the QUBO instead");
    }
    std::vector<Vertex> keep;
    std::set_union(part.V1.begin(), part.V1.end(), part.K.begin(), part.K.end(),
                   std::back_inserter(keep));
    std::vector<int> local(g.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        local[keep[i]] = static_cast<int>(i);
    }
    const auto in_k = membership(g.size(), part.K);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (local[e.u] < 0 || local[e.v] < 0) {
            continue;
        }
        if (in_set(in_k, e.u) && in_set(in_k, e.v)) {
            continue;
        }
        edges.push_back({local[e.u], local[e.v], e.w});
    }
    for (const auto& t : rw.quad_hat) {
        if (std::abs(t.J) > kPruneEps) {
            edges.push_back({local[t.i], local[t.j], t.J});
        }
    }
    return {WeightedGraph(static_cast<int>(keep.size()), std::move(edges)), std::move(keep),
            rw.c_hat};
}

ReducedQubo apply_reweight(const QuboInstance& inst, const CutPartition& part,
                           const ReweightResult& rw) {
    check_match(part, rw);
    std::vector<Vertex> keep;
    std::set_union(part.V1.begin(), part.V1.end(), part.K.begin(), part.K.end(),
                   std::back_inserter(keep));
    std::vector<int> local(inst.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        local[keep[i]] = static_cast<int>(i);
    }
    const auto in_k = membership(inst.size(), part.K);
    QuboBuilder b(static_cast<int>(keep.size()));
    b.add_offset(inst.offset());
    for (const auto& t : inst.quad()) {
        if (local[t.i] < 0 || local[t.j] < 0) {
            continue;
        }
        if (in_set(in_k, t.i) && in_set(in_k, t.j)) {
            continue;
        }
        b.add_quad(local[t.i], local[t.j], t.J);
    }
    for (Vertex v : part.V1) {
        b.add_lin(local[v], inst.lin()[v]);
    }
    for (const auto& t : rw.quad_hat) {
        if (std::abs(t.J) <= kPruneEps) {
            continue;
        }
        if (rw.mode == ReweightMode::QuboProduct) {
            b.add_quad(local[t.i], local[t.j], t.J);
        } else {
            // J [s_i != s_j] = J (s_i + s_j - 2 s_i s_j)
            b.add_quad(local[t.i], local[t.j], -2.0 * t.J);
            b.add_lin(local[t.i], t.J);
            b.add_lin(local[t.j], t.J);
        }
    }
    for (std::size_t a = 0; a < rw.lin_hat.size(); ++a) {
        if (std::abs(rw.lin_hat[a]) > kPruneEps) {
            b.add_lin(local[rw.K_order[a]], rw.lin_hat[a]);
        }
    }
    return {b.build(), std::move(keep), rw.c_hat};
}

nlohmann::json system_to_json(const LinearSystem& sys) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : sys.columns) {
        switch (col.kind) {
        case SystemColumn::Kind::Pair:
            cols.push_back({{"pair", {sys.K_order[col.a], sys.K_order[col.b]}}});
            break;
        case SystemColumn::Kind::Single:
            cols.push_back({{"single", sys.K_order[col.a]}});
            break;
        case SystemColumn::Kind::Constant:
            cols.push_back("constant");
            break;
        }
    }
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
        std::vector<double> coeffs(sys.A.cols());
        for (Eigen::Index c = 0; c < sys.A.cols(); ++c) {
            coeffs[c] = sys.A(r, c);
        }
        rows.push_back({{"s", s_label(sys.row_s[r], sys.K_order.size())},
                        {"a", coeffs},
                        {"b", sys.b(r)}});
    }
    return {{"mode", to_string(sys.mode)}, {"K", sys.K_order}, {"columns", cols}, {"rows", rows}};
}

nlohmann::json reweight_to_json(const ReweightResult& rw) {
    nlohmann::json quad = nlohmann::json::array();
    for (const auto& t : rw.quad_hat) {
        quad.push_back({t.i, t.j, t.J});
    }
    return {{"mode", to_string(rw.mode)},
            {"K", rw.K_order},
            {"quad_hat", quad},
            {"lin_hat", rw.lin_hat},
            {"c_hat", rw.c_hat},
            {"errors", rw.errors},
            {"error_sum", rw.error_sum()},
            {"exact", rw.exact},
            {"used_lp", rw.used_lp}};
}

ReweightResult reweight_from_json(const nlohmann::json& j) {
    ReweightResult rw;
    rw.mode = parse_reweight_mode(j.at("mode").get<std::string>());
    rw.K_order = j.at("K").get<std::vector<Vertex>>();
    for (const auto& t : j.at("quad_hat")) {
        rw.quad_hat.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>()});
    }
    rw.lin_hat = j.at("lin_hat").get<std::vector<double>>();
    rw.c_hat = j.at("c_hat").get<double>();
    rw.errors = j.at("errors").get<std::vector<double>>();
    rw.exact = j.at("exact").get<bool>();
    rw.used_lp = j.at("used_lp").get<bool>();
    return rw;
}

} // namespace qdecomp
