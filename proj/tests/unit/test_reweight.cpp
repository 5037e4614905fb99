#include "oracles.hpp"

#include "qdecomp/cutset.hpp"
#include "qdecomp/error.hpp"
#include "qdecomp/reweight.hpp"

#include <doctest.h>

using namespace qdecomp;

namespace {

CutPartition example_partition() { return {{1, 2, 3}, {4, 5}, {0}}; }

SubproblemTable constant_table(std::size_t k, double value) {
    SubproblemTable t;
    for (std::size_t l = 0; l < k; ++l) {
        t.K_order.push_back(static_cast<Vertex>(l));
    }
    for (std::uint32_t s = 0; s < (1U << k); ++s) {
        t.rows.push_back({s, value, 0.0, std::nullopt});
    }
    return t;
}

/// Graph on 8 vertices where K = {0,1,2,3} separates V2 = {4,5} from V1 = {6,7}.
WeightedGraph separated_graph(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(1, 4);
    std::bernoulli_distribution keep(0.6);
    std::vector<Edge> edges;
    auto side = [](int v) { return v < 4 ? 0 : (v < 6 ? 2 : 1); };
    for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
            const int sa = side(a);
            const int sb = side(b);
            if ((sa == 1 && sb == 2) || (sa == 2 && sb == 1)) {
                continue;
            }
            if (keep(rng) || (sa == 0 && sb != 0)) {
                edges.push_back({a, b, double(w(rng))});
            }
        }
    }
    return WeightedGraph(8, edges);
}

void check_lp_contract(const LinearSystem& sys, const ReweightResult& rw) {
    Eigen::VectorXd x(sys.columns.size());
    for (std::size_t c = 0; c < sys.columns.size(); ++c) {
        const auto& col = sys.columns[c];
        if (col.kind == SystemColumn::Kind::Constant) {
            x(c) = rw.c_hat;
        } else if (col.kind == SystemColumn::Kind::Single) {
            x(c) = rw.lin_hat[col.a];
        } else {
            for (const auto& t : rw.quad_hat) {
                if (t.i == sys.K_order[col.a] && t.j == sys.K_order[col.b]) {
                    x(c) = t.J;
                }
            }
        }
    }
    double max_e = 0.0;
    for (std::size_t s = 0; s < sys.row_of_s.size(); ++s) {
        const int r = sys.row_of_s[s];
        CHECK(rw.errors[s] >= -1e-12);
        CHECK(std::abs(sys.A.row(r).dot(x) + rw.errors[s] - sys.b(r)) <= 1e-7);
        max_e = std::max(max_e, rw.errors[s]);
    }
    CHECK(rw.exact == (max_e <= 1e-9));
}

} // namespace

TEST_CASE("worked example system") {
    const auto table = build_table(oracle::example_graph(), example_partition(), BackendChoice{});
    const auto sys = build_rows(table, ReweightMode::MaxcutCutform);
    REQUIRE(sys.A.rows() == 4);
    REQUIRE(sys.A.cols() == 4);
    Eigen::MatrixXd expected(4, 4);
    expected << 0, 0, 0, 1,  //
        1, 1, 0, 1,          //
        1, 0, 1, 1,          //
        0, 1, 1, 1;
    CHECK(sys.A == expected);
    CHECK(sys.b == Eigen::Vector4d(3, 2, 2, 2));
    CHECK(sys.row_of_s == std::vector<int>{0, 1, 2, 3, 3, 2, 1, 0});

    const auto rw = solve_exact(sys);
    REQUIRE(rw);
    REQUIRE(rw->quad_hat.size() == 3);
    for (const auto& t : rw->quad_hat) {
        CHECK(std::abs(t.J + 0.5) <= 1e-9);
    }
    CHECK(std::abs(rw->c_hat - 3.0) <= 1e-9);
    CHECK(rw->exact);

    const auto lp = solve_lp(sys);
    CHECK(lp.error_sum() <= 1e-9);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(lp.quad_hat[i].J - rw->quad_hat[i].J) <= 1e-9);
    }
    CHECK(std::abs(lp.c_hat - 3.0) <= 1e-9);
}

TEST_CASE("system shapes") {
    const auto one = build_rows(constant_table(1, 0.0), ReweightMode::QuboProduct);
    CHECK(one.A.rows() == 2);
    CHECK(one.A.cols() == 2);
    Eigen::MatrixXd e1(2, 2);
    e1 << 0, 1, 1, 1;
    CHECK(one.A == e1);

    const auto two = build_rows(constant_table(2, 1.0), ReweightMode::MaxcutCutform);
    CHECK(two.A.rows() == 2);
    CHECK(two.A.cols() == 2);

    const auto prod3 = build_rows(constant_table(3, 1.0), ReweightMode::QuboProduct);
    CHECK(prod3.A.rows() == 8);
    CHECK(prod3.A.cols() == 7);
}

TEST_CASE("constant table gives no within-K terms") {
    const auto rw = reweight(constant_table(3, 4.0), ReweightMode::MaxcutCutform);
    CHECK(rw.exact);
    for (const auto& t : rw.quad_hat) {
        CHECK(std::abs(t.J) <= 1e-12);
    }
    CHECK(rw.c_hat == doctest::Approx(4.0));

    // K = {1,2,3} of the worked example with zero replacement weights.
    ReweightResult zero = rw;
    zero.K_order = {1, 2, 3};
    for (auto& t : zero.quad_hat) {
        t.i = zero.K_order[t.i];
        t.j = zero.K_order[t.j];
    }
    const auto reduced = apply_reweight(oracle::example_graph(), example_partition(), zero);
    for (const auto& e : reduced.graph.edges()) {
        CHECK_FALSE((e.u < 3 && e.v < 3));
    }
}

TEST_CASE("worked example reduced graph") {
    const auto g = oracle::example_graph();
    const auto table = build_table(g, example_partition(), BackendChoice{});
    const auto rw = reweight(table, ReweightMode::MaxcutCutform);
    const auto red = apply_reweight(g, example_partition(), rw);
    CHECK(red.to_parent == std::vector<Vertex>{1, 2, 3, 4, 5});
    REQUIRE(red.graph.edge_count() == 9);
    int unit = 0;
    int half = 0;
    for (const auto& e : red.graph.edges()) {
        if (e.u < 3 && e.v < 3) {
            CHECK(std::abs(e.w + 0.5) <= 1e-9);
            ++half;
        } else {
            CHECK(e.u < 3);
            CHECK(e.w == 1.0);
            ++unit;
        }
    }
    CHECK(unit == 6);
    CHECK(half == 3);
    CHECK(std::abs(oracle::max_cut(red.graph) - 6.0) <= 1e-9);
    CHECK(std::abs(oracle::max_cut(red.graph) + red.c_hat - 9.0) <= 1e-9);
}

TEST_CASE("cut indicators are complement symmetric") {
    std::mt19937_64 rng(43);
    const auto g = separated_graph(rng);
    const CutPartition part{{0, 1, 2, 3}, {6, 7}, {4, 5}};
    const auto sys = build_rows(build_table(g, part, BackendChoice{}), ReweightMode::MaxcutCutform);
    for (std::uint32_t s = 0; s < 16; ++s) {
        CHECK(sys.A.row(sys.row_of_s[s]) == sys.A.row(sys.row_of_s[s ^ 15U]));
    }
}

TEST_CASE("cut sets of size at most three are always exact") {
    std::mt19937_64 rng(47);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const auto g = oracle::random_connected_graph(5 + trial % 8, 0.25, rng);
        if (g.is_complete()) {
            continue;
        }
        const auto part = min_vertex_cut(g);
        if (part.K.size() > 3) {
            continue;
        }
        const auto table = build_table(g, part, BackendChoice{});
        const auto sys = build_rows(table, ReweightMode::MaxcutCutform);
        const auto rw = solve_exact(sys);
        REQUIRE(rw);
        const auto red = apply_reweight(g, part, *rw);
        CHECK(std::abs(oracle::max_cut(red.graph) + red.c_hat - oracle::max_cut(g)) <= 1e-9);
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("LP contract on four-vertex cut sets") {
    std::mt19937_64 rng(53);
    int inexact = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = separated_graph(rng);
        const CutPartition part{{0, 1, 2, 3}, {6, 7}, {4, 5}};
        const auto table = build_table(g, part, BackendChoice{});
        for (auto mode : {ReweightMode::MaxcutCutform, ReweightMode::QuboProduct}) {
            const auto sys = build_rows(table, mode);
            const auto lp = solve_lp(sys);
            check_lp_contract(sys, lp);
            const auto exact = solve_exact(sys);
            CHECK(exact.has_value() == (lp.error_sum() <= 1e-9));
            inexact += lp.exact ? 0 : 1;
        }
    }
    CHECK(inexact > 0);
}

TEST_CASE("one perturbed row costs at most one error unit") {
    auto table = build_table(oracle::example_graph(), example_partition(), BackendChoice{});
    table.rows[5].value += 1.0;
    const auto sys = build_rows(table, ReweightMode::MaxcutCutform);
    CHECK(sys.A.rows() == 5);
    CHECK_FALSE(solve_exact(sys).has_value());
    const auto lp = solve_lp(sys);
    CHECK(lp.used_lp);
    CHECK_FALSE(lp.exact);
    CHECK(lp.error_sum() <= 1.0 + 1e-9);
    CHECK(lp.error_sum() >= 0.0);
    check_lp_contract(sys, lp);
}

TEST_CASE("QUBO reweighting preserves the optimum") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        // K = {0,1}, V2 = {2,3}, V1 = {4,5,6}; no V1-V2 terms.
        QuboBuilder b(7);
        auto side = [](int v) { return v < 2 ? 0 : (v < 4 ? 2 : 1); };
        for (int i = 0; i < 7; ++i) {
            b.add_lin(i, coef(rng));
            for (int j = i + 1; j < 7; ++j) {
                if (side(i) + side(j) != 3) {
                    b.add_quad(i, j, coef(rng));
                }
            }
        }
        b.add_offset(coef(rng));
        const QuboInstance q = b.build();
        const CutPartition part{{0, 1}, {4, 5, 6}, {2, 3}};
        const auto table = build_table(q, part, BackendChoice{});
        const auto rw = reweight(table, ReweightMode::QuboProduct);
        CHECK(rw.exact);
        const auto red = apply_reweight(q, part, rw);
        CHECK(red.to_parent == std::vector<Vertex>{0, 1, 4, 5, 6});
        CHECK(std::abs(oracle::max_qubo(red.instance) + red.c_hat - oracle::max_qubo(q)) <= 1e-9);
    }
}

TEST_CASE("cut form on a MaxCut QUBO matches the graph path") {
    const auto g = oracle::example_graph();
    const auto q = maxcut_to_qubo(g);
    const auto rw = reweight(build_table(q, example_partition(), BackendChoice{}),
                             ReweightMode::MaxcutCutform);
    const auto red = apply_reweight(q, example_partition(), rw);
    CHECK(std::abs(oracle::max_qubo(red.instance) + red.c_hat - 9.0) <= 1e-9);
}

TEST_CASE("mode names, errors and serialization") {
    CHECK(parse_reweight_mode("cutform") == ReweightMode::MaxcutCutform);
    CHECK(parse_reweight_mode("product") == ReweightMode::QuboProduct);
    CHECK_THROWS_AS(parse_reweight_mode("sum"), InputError);

    const auto g = oracle::example_graph();
    const auto table = build_table(g, example_partition(), BackendChoice{});
    const auto prod = reweight(table, ReweightMode::QuboProduct);
    CHECK_THROWS_AS(apply_reweight(g, example_partition(), prod), UnsupportedError);
    CHECK_THROWS_AS(apply_reweight(g, CutPartition{{0}, {1}, {2}}, prod), InputError);

    const auto rw = reweight(table, ReweightMode::MaxcutCutform);
    const auto back = reweight_from_json(nlohmann::json::parse(reweight_to_json(rw).dump()));
    CHECK(back.K_order == rw.K_order);
    CHECK(back.quad_hat == rw.quad_hat);
    CHECK(back.c_hat == rw.c_hat);
    CHECK(back.errors == rw.errors);
    CHECK(back.exact == rw.exact);
    const auto sys = system_to_json(build_rows(table, ReweightMode::MaxcutCutform));
    CHECK(sys.at("rows").size() == 4);
    CHECK(sys.at("rows")[3].at("s") == "110");
}
