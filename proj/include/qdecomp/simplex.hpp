#pragma once

#include <Eigen/Dense>

namespace qdecomp {

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

    Status status = Status::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    int pivots = 0;
};

/// min c^T x  subject to  A x = b,  x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule, intended for the small systems the
/// reweighting step produces (a few hundred columns at most).
LpResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, int max_pivots = 100000);

} // namespace qdecomp
