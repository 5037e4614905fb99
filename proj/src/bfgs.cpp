#include "qdecomp/bfgs.hpp"

#include <algorithm>
#include <cmath>

namespace qdecomp {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double inf_norm(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

} // namespace

std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x,
                                       double step) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + step;
        const double up = f(probe);
        probe[i] = x[i] - step;
        const double down = f(probe);
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

BfgsResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& options) {
    const std::size_t n = x0.size();
    BfgsResult out;
    out.x = std::move(x0);
    out.value = f(out.x);
    if (n == 0) {
        out.converged = true;
        return out;
    }
    // Inverse Hessian approximation, row-major.
    std::vector<double> H(n * n, 0.0);
    auto reset = [&] {
        std::fill(H.begin(), H.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            H[i * n + i] = 1.0;
        }
    };
    reset();
    std::vector<double> g = numerical_gradient(f, out.x, options.fd_step);
    std::vector<double> p(n), s(n), y(n), x_new(n), Hy(n);

    for (int it = 0; it < options.max_iterations; ++it) {
        out.iterations = it;
        if (inf_norm(g) <= options.gradient_tolerance * std::max(1.0, std::abs(out.value))) {
            out.converged = true;
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                p[i] -= H[i * n + j] * g[j];
            }
        }
        double slope = dot(g, p);
        if (!(slope < 0.0)) {
            reset();
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = -g[i];
            }
            slope = dot(g, p);
        }
        double alpha = 1.0;
        double f_new = 0.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                x_new[i] = out.x[i] + alpha * p[i];
            }
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= out.value + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // Gradient noise dominates at this point; treat a tiny gradient as converged.
            out.converged = inf_norm(g) <= 1e-6 * std::max(1.0, std::abs(out.value));
            out.line_search_failed = !out.converged;
            return out;
        }
        std::vector<double> g_new = numerical_gradient(f, x_new, options.fd_step);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - out.x[i];
            y[i] = g_new[i] - g[i];
        }
        out.x = x_new;
        out.value = f_new;
        g = std::move(g_new);
        const double sy = dot(s, y);
        if (sy > 1e-14) {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                Hy[i] = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    Hy[i] += H[i * n + j] * y[j];
                }
            }
            const double yHy = dot(y, Hy);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    H[i * n + j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                                    rho * (Hy[i] * s[j] + s[i] * Hy[j]);
                }
            }
        }
        if (inf_norm(s) < 1e-15) {
            out.converged = true;
            return out;
        }
    }
    out.iterations = options.max_iterations;
    return out;
}

} // namespace qdecomp
