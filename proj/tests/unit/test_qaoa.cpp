#include "oracles.hpp"

#include "qdecomp/bfgs.hpp"
#include "qdecomp/error.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/subsolver.hpp"

#include <doctest.h>

#include <numbers>

using namespace qdecomp;

namespace {

constexpr double kPi = std::numbers::pi;

IsingInstance random_ising(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> w(-1.5, 1.5);
    std::bernoulli_distribution keep(0.5);
    IsingInstance is;
    is.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (keep(rng)) {
                is.couplings.push_back({i, j, w(rng)});
            }
        }
        is.fields.push_back(w(rng));
    }
    is.offset = w(rng);
    return is;
}

double oracle_expectation(const IsingInstance& is, double gamma, double beta) {
    const auto cost = [&](std::uint64_t x) { return oracle::ising_energy(is, oracle::bits_of(x, is.n)); };
    return oracle::expectation(oracle::dense_qaoa_state(is.n, cost, {gamma}, {beta}), cost);
}

} // namespace

TEST_CASE("zero angles give zero correlations") {
    std::mt19937_64 rng(1);
    const auto is = random_ising(5, rng);
    const auto b = expectation_p1(is, QaoaParams::p1(0.0, 0.0));
    for (double v : b.vertex_terms) {
        CHECK(v == 0.0);
    }
    for (const auto& e : b.edge_terms) {
        CHECK(e.value == 0.0);
    }
    CHECK(b.total == doctest::Approx(is.offset));
}

TEST_CASE("single coupling closed form") {
    IsingInstance is{2, {{0, 1, 1.0}}, {0.0, 0.0}, 0.0};
    for (double g : {0.3, 1.1, 2.0}) {
        for (double b : {0.2, 0.7, 1.9}) {
            const auto br = expectation_p1(is, QaoaParams::p1(g, b));
            REQUIRE(br.edge_terms.size() == 1);
            CHECK(br.edge_terms[0].value == doctest::Approx(std::sin(4 * b) * std::sin(2 * g)));
        }
    }
}

TEST_CASE("breakdown sums to total") {
    std::mt19937_64 rng(2);
    const auto is = random_ising(7, rng);
    const auto b = expectation_p1(is, QaoaParams::p1(0.4, 1.3));
    double sum = is.offset;
    for (double v : b.vertex_terms) {
        sum += v;
    }
    for (const auto& e : b.edge_terms) {
        sum += e.value;
    }
    CHECK(std::abs(sum - b.total) <= 1e-12);
    CHECK_THROWS_AS(expectation_p1(is, QaoaParams{{0.1, 0.2}, {0.3, 0.4}}), UnsupportedError);
}

TEST_CASE("closed form matches a dense-matrix simulation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    for (int trial = 0; trial < 12; ++trial) {
        const auto is = random_ising(2 + trial % 5, rng);
        for (int k = 0; k < 4; ++k) {
            const double g = angle(rng);
            const double b = angle(rng);
            const double analytic = expectation_p1(is, QaoaParams::p1(g, b)).total;
            CHECK(std::abs(analytic - oracle_expectation(is, g, b)) <= 1e-9);
        }
    }
}

TEST_CASE("statevector matches a dense-matrix simulation for several layers") {
    std::mt19937_64 rng(4);
    const auto dense = oracle::random_qubo(5, rng);
    const auto inst = dense.to_instance();
    const std::vector<double> gammas{0.3, -0.8, 1.7};
    const std::vector<double> betas{0.5, 0.25, -1.1};
    const auto psi = statevector(inst, {gammas, betas});
    const auto ref = oracle::dense_qaoa_state(
        5, [&](std::uint64_t x) { return dense.value(oracle::bits_of(x, 5)); }, gammas, betas);
    REQUIRE(psi.size() == ref.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        CHECK(std::abs(psi[i] - ref[i]) <= 1e-12);
    }
}

TEST_CASE("statevector basics") {
    std::mt19937_64 rng(5);
    const auto inst = oracle::random_qubo(6, rng).to_instance();
    const auto uniform = statevector(inst, {});
    for (const auto& a : uniform) {
        CHECK(std::abs(a - std::complex<double>(0.125, 0.0)) <= 1e-15);
    }
    for (int p = 1; p <= 4; ++p) {
        QaoaParams params;
        for (int l = 0; l < p; ++l) {
            params.gammas.push_back(0.3 * (l + 1));
            params.betas.push_back(0.7 - 0.1 * l);
        }
        double norm = 0.0;
        for (const auto& a : statevector(inst, params)) {
            norm += std::norm(a);
        }
        CHECK(std::abs(norm - 1.0) <= 1e-10);
    }
    CHECK_THROWS_AS(statevector(QuboInstance(25), QaoaParams::p1(0.1, 0.1)), ResourceError);
}

TEST_CASE("p=1 statevector expectation equals the closed form") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = oracle::random_qubo(3 + trial % 8, rng).to_instance();
        const auto params = QaoaParams::p1(0.37 * trial, 1.9 - 0.2 * trial);
        const double sv = expectation_from_state(statevector(inst, params), cost_table(inst));
        CHECK(std::abs(sv - expectation_p1(qubo_to_ising(inst), params).total) <= 1e-8);
    }
}

TEST_CASE("closed-form gradient agrees with statevector finite differences") {
    std::mt19937_64 rng(7);
    const auto inst = oracle::random_qubo(6, rng).to_instance();
    const auto is = qubo_to_ising(inst);
    const Objective analytic = [&](std::span<const double> x) {
        return expectation_p1(is, QaoaParams::p1(x[0], x[1])).total;
    };
    const Objective sv = [&](std::span<const double> x) {
        return expectation_from_state(statevector(inst, QaoaParams::p1(x[0], x[1])),
                                      cost_table(inst));
    };
    for (const auto& x : std::vector<std::vector<double>>{{0.2, 0.4}, {1.3, 2.2}, {3.9, 0.1}}) {
        const auto ga = numerical_gradient(analytic, x, 1e-6);
        const auto gs = numerical_gradient(sv, x, 1e-6);
        CHECK(std::abs(ga[0] - gs[0]) <= 1e-5);
        CHECK(std::abs(ga[1] - gs[1]) <= 1e-5);
    }
}

TEST_CASE("gamma shift by pi leaves even-integer costs unchanged") {
    const QuboInstance inst(3, {{0, 1, 2.0}, {1, 2, -4.0}}, {2.0, 0.0, 6.0}, 2.0);
    const auto costs = cost_table(inst);
    for (double g : {0.3, 1.4}) {
        const double a = expectation_from_state(statevector(inst, QaoaParams::p1(g, 0.6)), costs);
        const double b =
            expectation_from_state(statevector(inst, QaoaParams::p1(g + kPi, 0.6)), costs);
        CHECK(std::abs(a - b) <= 1e-10);
    }
}

TEST_CASE("optimizer on a single edge reaches 1") {
    const auto edge = maxcut_to_qubo(WeightedGraph(2, {{0, 1, 1.0}}));
    const auto best = optimize_params(qubo_to_ising(edge), 20, 9);
    CHECK(best.value == doctest::Approx(1.0).epsilon(1e-6));
    const auto psi = statevector(edge, best.params);
    CHECK(std::norm(psi[1]) + std::norm(psi[2]) >= 0.99);
    CHECK(std::abs(std::norm(psi[1]) - std::norm(psi[2])) <= 1e-9);
    const auto rep = report(edge, best.params, 200, 1, 1.0, 2);
    REQUIRE(rep.approx_ratio);
    CHECK(*rep.approx_ratio == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.p_opt_qaoa == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("optimizer on a triangle matches a parameter grid") {
    const auto tri = maxcut_to_qubo(oracle::complete_graph(3));
    const auto is = qubo_to_ising(tri);
    const P1Evaluator eval(is);
    double grid = -INFINITY;
    const int steps = 400;
    for (int a = 0; a < steps; ++a) {
        for (int b = 0; b < steps; ++b) {
            grid = std::max(grid, eval(2 * kPi * a / steps, kPi * b / steps));
        }
    }
    const auto best = optimize_params(is, 100, 12);
    CHECK(std::abs(best.value - grid) <= 1e-4);
    CHECK(best.value >= grid - 1e-9);
    CHECK(best.value <= 2.0);
    CHECK(qaoa_heuristic_value(tri, 100, 12) == doctest::Approx(best.value));
}

TEST_CASE("optimizer corner cases") {
    IsingInstance flat{3, {}, {0.0, 0.0, 0.0}, 4.5};
    CHECK(optimize_params(flat, 5, 1).value == 4.5);
    CHECK_THROWS_AS(optimize_params(flat, 0, 1), InputError);
    std::mt19937_64 rng(8);
    const auto is = random_ising(6, rng);
    const auto a = optimize_params(is, 10, 77);
    const auto b = optimize_params(is, 10, 77);
    CHECK(a.value == b.value);
    CHECK(a.params.gammas == b.params.gammas);
}

TEST_CASE("expectation never exceeds the optimum") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = oracle::random_qubo(7, rng).to_instance();
        const double cmax = oracle::max_qubo(inst);
        CHECK(optimize_params(qubo_to_ising(inst), 10, trial).value <= cmax + 1e-9);
    }
}

TEST_CASE("sampling") {
    std::vector<std::complex<double>> basis(8, 0.0);
    basis[5] = 1.0;
    for (auto idx : sample(basis, 100, 3)) {
        CHECK(idx == 5);
    }
    const int n = 3;
    std::vector<std::complex<double>> uniform(8, std::sqrt(1.0 / 8));
    const int shots = 100000;
    std::vector<int> counts(8, 0);
    for (auto idx : sample(uniform, shots, 4)) {
        ++counts[idx];
    }
    const double p = 1.0 / (1 << n);
    const double sigma = std::sqrt(shots * p * (1 - p));
    for (int c : counts) {
        CHECK(std::abs(c - shots * p) <= 5 * sigma);
    }
    CHECK(sample(uniform, 50, 9) == sample(uniform, 50, 9));
}

TEST_CASE("uniform state reports the uniform baseline") {
    std::mt19937_64 rng(10);
    const auto inst = oracle::random_qubo(6, rng).to_instance();
    const auto best = exact_optimum(inst);
    const auto rep = report(inst, QaoaParams::p1(0.0, 0.0), 100, 2, best.value, best.n_opt);
    CHECK(rep.p_opt_qaoa == doctest::Approx(rep.p_opt_uniform).epsilon(1e-12));
    CHECK(rep.p_uniform_enhanced == doctest::Approx(rep.p_opt_uniform * 8.0));
}
