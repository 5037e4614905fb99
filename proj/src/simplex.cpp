#include "qdecomp/simplex.hpp"

#include "qdecomp/error.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qdecomp {

namespace {

constexpr double kPivotEps = 1e-9;

class Tableau {
public:
    // Columns: structural 0..n-1, artificial n..n+m-1, rhs last. Row m holds reduced costs.
    Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
        : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())),
          T_(Eigen::MatrixXd::Zero(m_ + 1, n_ + m_ + 1)), basis_(m_) {
        for (int r = 0; r < m_; ++r) {
            const double sign = b(r) < 0.0 ? -1.0 : 1.0;
            T_.row(r).head(n_) = sign * A.row(r);
            T_(r, n_ + r) = 1.0;
            T_(r, rhs()) = sign * b(r);
            basis_[r] = n_ + r;
        }
    }

    int rhs() const { return n_ + m_; }

    void set_objective(const Eigen::VectorXd& cost_full) {
        T_.row(m_).setZero();
        T_.row(m_).head(n_ + m_) = cost_full.transpose();
        for (int r = 0; r < m_; ++r) {
            const double cb = cost_full(basis_[r]);
            if (cb != 0.0) {
                T_.row(m_) -= cb * T_.row(r);
            }
        }
    }

    /// Runs Bland's-rule pivots over columns [0, allowed). Returns false when unbounded.
    LpResult::Status optimize(int allowed, int& pivots, int max_pivots) {
        while (true) {
            int enter = -1;
            for (int j = 0; j < allowed; ++j) {
                if (T_(m_, j) < -kPivotEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                return LpResult::Status::Optimal;
            }
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m_; ++r) {
                const double a = T_(r, enter);
                if (a <= kPivotEps) {
                    continue;
                }
                const double ratio = T_(r, rhs()) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 && basis_[r] < basis_[leave])) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave < 0) {
                return LpResult::Status::Unbounded;
            }
            if (++pivots > max_pivots) {
                return LpResult::Status::IterationLimit;
            }
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        T_.row(row) /= T_(row, col);
        for (int r = 0; r <= m_; ++r) {
            if (r != row && T_(r, col) != 0.0) {
                T_.row(r) -= T_(r, col) * T_.row(row);
            }
        }
        basis_[row] = col;
    }

    /// Pivots artificial variables out of the basis where a structural column allows it.
    void expel_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < n_) {
                continue;
            }
            for (int j = 0; j < n_; ++j) {
                if (std::abs(T_(r, j)) > kPivotEps) {
                    pivot(r, j);
                    break;
                }
            }
            // Otherwise the row is redundant; its artificial stays basic at zero.
        }
    }

    double objective_value() const { return -T_(m_, rhs()); }

    Eigen::VectorXd structural_solution() const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < n_) {
                x(basis_[r]) = T_(r, rhs());
            }
        }
        return x;
    }

private:
    int m_;
    int n_;
    Eigen::MatrixXd T_;
    std::vector<int> basis_;
};

} // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, int max_pivots) {
    if (A.rows() != b.size() || A.cols() != c.size()) {
        throw InputError("LP dimension mismatch");
    }
    if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
        throw InputError("LP data must be finite");
    }
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    LpResult out;
    Tableau tab(A, b);

    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
    phase1.tail(m).setOnes();
    tab.set_objective(phase1);
    auto status = tab.optimize(n + m, out.pivots, max_pivots);
    if (status == LpResult::Status::IterationLimit) {
        out.status = status;
        return out;
    }
    const double scale = std::max(1.0, b.cwiseAbs().sum());
    if (tab.objective_value() > 1e-9 * scale) {
        out.status = LpResult::Status::Infeasible;
        return out;
    }
    tab.expel_artificials();

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
    phase2.head(n) = c;
    tab.set_objective(phase2);
    status = tab.optimize(n, out.pivots, max_pivots);
    out.status = status;
    out.x = tab.structural_solution();
    out.objective = c.dot(out.x);
    return out;
}

} // namespace qdecomp
