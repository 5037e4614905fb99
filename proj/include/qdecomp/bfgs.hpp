#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qdecomp {

struct BfgsOptions {
    int max_iterations = 200;
    double gradient_tolerance = 1e-9;
    /// Central-difference step for the numerical gradient.
    double fd_step = 1e-6;
};

struct BfgsResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Set when a line search could not find a decreasing step before convergence.
    bool line_search_failed = false;
};

using Objective = std::function<double(std::span<const double>)>;

std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x,
                                       double step);

/// Dense BFGS minimization with a numerical gradient and backtracking Armijo line search.
BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0,
                         const BfgsOptions& options = {});

} // namespace qdecomp
