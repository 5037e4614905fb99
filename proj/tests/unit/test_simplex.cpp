#include "qdecomp/simplex.hpp"

#include <doctest.h>

#include <random>

using namespace qdecomp;

namespace {

/// Minimum over basic feasible solutions (every choice of m columns), or +inf.
double enumerate_vertices(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    double best = INFINITY;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (__builtin_popcount(mask) != m) {
            continue;
        }
        Eigen::MatrixXd B(m, m);
        std::vector<int> cols;
        for (int j = 0; j < n; ++j) {
            if ((mask >> j) & 1U) {
                B.col(static_cast<int>(cols.size())) = A.col(j);
                cols.push_back(j);
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (lu.rank() < m) {
            continue;
        }
        const Eigen::VectorXd xb = lu.solve(b);
        if (xb.minCoeff() < -1e-9) {
            continue;
        }
        double obj = 0.0;
        for (int i = 0; i < m; ++i) {
            obj += c(cols[i]) * xb(i);
        }
        best = std::min(best, obj);
    }
    return best;
}

} // namespace

TEST_CASE("small LPs with known optima") {
    Eigen::MatrixXd A(1, 2);
    A << 1, 2;
    Eigen::VectorXd b(1);
    b << 4;
    Eigen::VectorXd c(2);
    c << 1, 1;
    const auto r = solve_standard_lp(A, b, c);
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(2.0));
    CHECK(r.x(1) == doctest::Approx(2.0));
}

TEST_CASE("infeasible and unbounded LPs") {
    Eigen::MatrixXd A(1, 1);
    A << 1;
    Eigen::VectorXd b(1);
    b << -1;
    Eigen::VectorXd c(1);
    c << 1;
    CHECK(solve_standard_lp(A, b, c).status == LpResult::Status::Infeasible);

    Eigen::MatrixXd A2(1, 2);
    A2 << 1, -1;
    Eigen::VectorXd b2(1);
    b2 << 0;
    Eigen::VectorXd c2(2);
    c2 << -1, 0;
    CHECK(solve_standard_lp(A2, b2, c2).status == LpResult::Status::Unbounded);
}

TEST_CASE("redundant rows") {
    Eigen::MatrixXd A(3, 3);
    A << 1, 1, 0, 1, 1, 0, 0, 1, 1;
    Eigen::VectorXd b(3);
    b << 2, 2, 3;
    Eigen::VectorXd c(3);
    c << 1, 2, 3;
    const auto r = solve_standard_lp(A, b, c);
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(7.0));
    CHECK((A * r.x - b).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("random bounded LPs match vertex enumeration") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> pos(0, 4);
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + trial % 3;
        const int n = m + 1 + trial % 4;
        Eigen::MatrixXd A(m, n);
        Eigen::VectorXd b(m);
        Eigen::VectorXd c(n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                A(i, j) = coef(rng);
            }
            b(i) = coef(rng);
        }
        for (int j = 0; j < n; ++j) {
            c(j) = pos(rng); // non-negative costs keep the problem bounded
        }
        if (Eigen::FullPivLU<Eigen::MatrixXd>(A).rank() < m) {
            continue;
        }
        const auto r = solve_standard_lp(A, b, c);
        const double ref = enumerate_vertices(A, b, c);
        if (std::isinf(ref)) {
            CHECK(r.status == LpResult::Status::Infeasible);
            continue;
        }
        REQUIRE(r.status == LpResult::Status::Optimal);
        CHECK(r.objective == doctest::Approx(ref).epsilon(1e-9));
        CHECK(r.x.minCoeff() >= -1e-12);
        CHECK((A * r.x - b).cwiseAbs().maxCoeff() <= 1e-9);
        ++solved;
    }
    CHECK(solved > 50);
}
